#include "matlang/builtins.hpp"

#include <cmath>

#include "matlang/eval.hpp"

namespace matlang {

namespace {

// Float-tower predicates at the configured tolerance.
bool f_is_zero(const FloatComplex& z, const EvalConfig& c) { return std::abs(z) <= c.eps; }
bool f_is_real(const FloatComplex& z, const EvalConfig& c) { return std::abs(z.imag()) <= c.eps; }
bool f_truthy(const FloatComplex& z, const EvalConfig& c) {
    return std::abs(z - FloatComplex(1, 0)) <= c.eps;
}
bool q_truthy(const RatComplex& z) { return z == RatComplex(1); }

FloatComplex fbool(bool b) { return {b ? 1.0 : 0.0, 0.0}; }
RatComplex qbool(bool b) { return RatComplex(b ? 1 : 0); }

using FArgs = std::span<const FloatComplex>;
using QArgs = std::span<const RatComplex>;

BuiltinFn fn(std::string name, int arity,
             std::function<FloatComplex(FArgs, const EvalConfig&)> f,
             std::function<RatComplex(QArgs, const EvalConfig&)> q) {
    return BuiltinFn{std::move(name), arity, q != nullptr, std::move(f), std::move(q)};
}

std::map<std::string, BuiltinFn> make_registry() {
    std::map<std::string, BuiltinFn> r;
    auto put = [&](BuiltinFn b) { r.emplace(b.name, std::move(b)); };

    put(fn("add", 2, [](FArgs a, const EvalConfig&) { return a[0] + a[1]; },
           [](QArgs a, const EvalConfig&) { return a[0] + a[1]; }));
    put(fn("sub", 2, [](FArgs a, const EvalConfig&) { return a[0] - a[1]; },
           [](QArgs a, const EvalConfig&) { return a[0] - a[1]; }));
    put(fn("mul", 2, [](FArgs a, const EvalConfig&) { return a[0] * a[1]; },
           [](QArgs a, const EvalConfig&) { return a[0] * a[1]; }));
    put(fn("div", 2,
           [](FArgs a, const EvalConfig& c) {
               return f_is_zero(a[1], c) ? FloatComplex(0) : a[0] / a[1];
           },
           [](QArgs a, const EvalConfig&) {
               return a[1].is_zero() ? RatComplex() : a[0] / a[1];
           }));
    put(fn("recip", 1,
           [](FArgs a, const EvalConfig& c) {
               return f_is_zero(a[0], c) ? FloatComplex(0) : FloatComplex(1) / a[0];
           },
           [](QArgs a, const EvalConfig&) {
               return a[0].is_zero() ? RatComplex() : RatComplex(1) / a[0];
           }));
    put(fn("recip1p", 1,
           [](FArgs a, const EvalConfig& c) {
               FloatComplex d = a[0] + FloatComplex(1);
               return f_is_zero(d, c) ? FloatComplex(0) : FloatComplex(1) / d;
           },
           [](QArgs a, const EvalConfig&) {
               RatComplex d = a[0] + RatComplex(1);
               return d.is_zero() ? RatComplex() : RatComplex(1) / d;
           }));
    // x - y clipped at zero; zero unless both arguments are real with x >= y
    put(fn("monus", 2,
           [](FArgs a, const EvalConfig& c) {
               if (!f_is_real(a[0], c) || !f_is_real(a[1], c)) return FloatComplex(0);
               return a[0].real() >= a[1].real() ? FloatComplex(a[0].real() - a[1].real())
                                                 : FloatComplex(0);
           },
           [](QArgs a, const EvalConfig&) {
               if (!a[0].is_real() || !a[1].is_real()) return RatComplex();
               return a[0].re >= a[1].re ? RatComplex(a[0].re - a[1].re) : RatComplex();
           }));
    put(fn("le", 2,
           [](FArgs a, const EvalConfig& c) {
               return fbool(f_is_real(a[0], c) && f_is_real(a[1], c) &&
                            a[0].real() <= a[1].real() + c.eps);
           },
           [](QArgs a, const EvalConfig&) {
               return qbool(a[0].is_real() && a[1].is_real() && a[0].re <= a[1].re);
           }));
    put(fn("eq", 2,
           [](FArgs a, const EvalConfig& c) {
               return fbool(f_is_real(a[0], c) && f_is_real(a[1], c) &&
                            std::abs(a[0].real() - a[1].real()) <= c.eps);
           },
           [](QArgs a, const EvalConfig&) {
               return qbool(a[0].is_real() && a[1].is_real() && a[0].re == a[1].re);
           }));
    put(fn("ne0", 1,
           [](FArgs a, const EvalConfig& c) {
               return fbool(f_is_real(a[0], c) && std::abs(a[0].real()) > c.eps);
           },
           [](QArgs a, const EvalConfig&) {
               return qbool(a[0].is_real() && a[0].re != 0);
           }));
    put(fn("gt0", 1,
           [](FArgs a, const EvalConfig& c) {
               return fbool(f_is_real(a[0], c) && a[0].real() > c.eps);
           },
           [](QArgs a, const EvalConfig&) {
               return qbool(a[0].is_real() && a[0].re > 0);
           }));
    put(fn("and", 2,
           [](FArgs a, const EvalConfig& c) { return fbool(f_truthy(a[0], c) && f_truthy(a[1], c)); },
           [](QArgs a, const EvalConfig&) { return qbool(q_truthy(a[0]) && q_truthy(a[1])); }));
    put(fn("or", 2,
           [](FArgs a, const EvalConfig& c) { return fbool(f_truthy(a[0], c) || f_truthy(a[1], c)); },
           [](QArgs a, const EvalConfig&) { return qbool(q_truthy(a[0]) || q_truthy(a[1])); }));
    put(fn("not", 1,
           [](FArgs a, const EvalConfig& c) { return fbool(!f_truthy(a[0], c)); },
           [](QArgs a, const EvalConfig&) { return qbool(!q_truthy(a[0])); }));
    put(fn("and-not", 2,
           [](FArgs a, const EvalConfig& c) { return fbool(f_truthy(a[0], c) && !f_truthy(a[1], c)); },
           [](QArgs a, const EvalConfig&) { return qbool(q_truthy(a[0]) && !q_truthy(a[1])); }));
    // x / sqrt(y): zero unless y is a positive real
    put(BuiltinFn{"divsqrt", 2, false,
                  [](FArgs a, const EvalConfig& c) {
                      if (!f_is_real(a[1], c) || a[1].real() <= c.eps) return FloatComplex(0);
                      return a[0] / std::sqrt(a[1].real());
                  },
                  nullptr});
    put(fn("conj", 1, [](FArgs a, const EvalConfig&) { return std::conj(a[0]); },
           [](QArgs a, const EvalConfig&) { return a[0].conj(); }));
    put(fn("re", 1, [](FArgs a, const EvalConfig&) { return FloatComplex(a[0].real()); },
           [](QArgs a, const EvalConfig&) { return RatComplex(a[0].re); }));
    put(fn("im", 1, [](FArgs a, const EvalConfig&) { return FloatComplex(a[0].imag()); },
           [](QArgs a, const EvalConfig&) { return RatComplex(a[0].im); }));
    return r;
}

}  // namespace

const std::map<std::string, BuiltinFn>& builtin_registry() {
    static const std::map<std::string, BuiltinFn> registry = make_registry();
    return registry;
}

std::optional<BuiltinFn> builtin_lookup(const std::string& name) {
    auto& reg = builtin_registry();
    if (auto it = reg.find(name); it != reg.end()) return it->second;
    if (name.rfind("const:", 0) == 0) {
        auto c = parse_complex(name.substr(6));
        if (!c) return std::nullopt;
        RatComplex v = *c;
        FloatComplex fv = v.to_float();
        return fn(name, 1, [fv](FArgs, const EvalConfig&) { return fv; },
                  [v](QArgs, const EvalConfig&) { return v; });
    }
    return std::nullopt;
}

std::string const_fn_name(const RatComplex& c) { return "const:" + to_string(c); }

}  // namespace matlang
