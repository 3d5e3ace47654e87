#include "matlang/eval.hpp"

#include <cstdlib>

#include "matlang/parser.hpp"

namespace matlang {

namespace {

template <typename T>
struct TowerOps;

template <>
struct TowerOps<FloatComplex> {
    static FloatComplex call(const BuiltinFn& fn, std::span<const FloatComplex> args,
                             const EvalConfig& cfg) {
        return fn.apply_float(args, cfg);
    }
    static FMat eigen(const FMat& a, const EvalConfig& cfg) { return eigen_canonical(a, cfg); }
    static bool pivot_is_zero(const FloatComplex& p, double scale, const EvalConfig& cfg) {
        return std::abs(p) < cfg.eps * (1.0 + scale);
    }
    static double scale_of(const FMat& a) { return inf_norm(a); }
};

template <>
struct TowerOps<RatComplex> {
    static RatComplex call(const BuiltinFn& fn, std::span<const RatComplex> args,
                           const EvalConfig& cfg) {
        if (!fn.apply_exact)
            throw TowerError("function " + fn.name + " is not available in the Exact tower");
        return fn.apply_exact(args, cfg);
    }
    static QMat eigen(const QMat&, const EvalConfig&) {
        throw TowerError("eigen is not available in the Exact tower");
    }
    static bool pivot_is_zero(const RatComplex& p, double, const EvalConfig&) {
        return p.is_zero();
    }
    static double scale_of(const QMat&) { return 0.0; }
};

template <typename T>
Mat<T> invert_impl(const Mat<T>& a, const EvalConfig& cfg) {
    if (a.rows != a.cols) throw StuckError("inv of a non-square matrix");
    const long n = a.rows;
    const double scale = TowerOps<T>::scale_of(a);
    Mat<T> m = a;
    Mat<T> inv = Mat<T>::identity(n);
    for (long col = 0; col < n; ++col) {
        // partial pivoting: largest magnitude in the column
        long pivot = col;
        if constexpr (std::is_same_v<T, FloatComplex>) {
            for (long i = col + 1; i < n; ++i)
                if (std::abs(m.at(i, col)) > std::abs(m.at(pivot, col))) pivot = i;
        } else {
            if (m.at(pivot, col).is_zero())
                for (long i = col + 1; i < n; ++i)
                    if (!m.at(i, col).is_zero()) {
                        pivot = i;
                        break;
                    }
        }
        if (TowerOps<T>::pivot_is_zero(m.at(pivot, col), scale, cfg))
            return Mat<T>::zeros(n, n);
        if (pivot != col)
            for (long j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        T p = m.at(col, col);
        for (long j = 0; j < n; ++j) {
            m.at(col, j) = m.at(col, j) / p;
            inv.at(col, j) = inv.at(col, j) / p;
        }
        for (long i = 0; i < n; ++i) {
            if (i == col) continue;
            T f = m.at(i, col);
            if constexpr (std::is_same_v<T, RatComplex>) {
                if (f.is_zero()) continue;
            }
            for (long j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

template <typename T>
Mat<T> eval_rec(InstanceT<T>& env, const ExprPtr& e, const EvalConfig& cfg) {
    switch (e->kind) {
        case Expr::Kind::Var: {
            auto it = env.find(e->name);
            if (it == env.end()) throw StuckError("unbound variable " + e->name);
            return it->second;
        }
        case Expr::Kind::Let: {
            Mat<T> bound = eval_rec(env, e->args[0], cfg);
            auto it = env.find(e->name);
            std::optional<Mat<T>> saved;
            if (it != env.end()) saved = it->second;
            env[e->name] = std::move(bound);
            Mat<T> result = eval_rec(env, e->args[1], cfg);
            if (saved)
                env[e->name] = std::move(*saved);
            else
                env.erase(e->name);
            return result;
        }
        case Expr::Kind::Transpose:
            return conj_transpose(eval_rec(env, e->args[0], cfg));
        case Expr::Kind::Ones:
            return ones_vector(eval_rec(env, e->args[0], cfg));
        case Expr::Kind::Diag: {
            Mat<T> v = eval_rec(env, e->args[0], cfg);
            if (v.cols != 1) throw StuckError("diag of a non-column");
            return diag_of(v);
        }
        case Expr::Kind::MatMul: {
            Mat<T> a = eval_rec(env, e->args[0], cfg);
            Mat<T> b = eval_rec(env, e->args[1], cfg);
            if (a.cols != b.rows) throw StuckError("matrix product dimension mismatch");
            return matmul(a, b);
        }
        case Expr::Kind::Apply: {
            auto fn = builtin_lookup(e->name);
            if (!fn) throw StuckError("unknown function " + e->name);
            std::vector<Mat<T>> args;
            args.reserve(e->args.size());
            for (auto& ae : e->args) args.push_back(eval_rec(env, ae, cfg));
            for (auto& m : args)
                if (m.rows != args[0].rows || m.cols != args[0].cols)
                    throw StuckError("apply arguments differ in shape");
            Mat<T> out(args[0].rows, args[0].cols);
            std::vector<T> cell(args.size());
            for (size_t k = 0; k < out.e.size(); ++k) {
                for (size_t ai = 0; ai < args.size(); ++ai) cell[ai] = args[ai].e[k];
                out.e[k] = TowerOps<T>::call(*fn, cell, cfg);
            }
            return out;
        }
        case Expr::Kind::Inv: {
            Mat<T> a = eval_rec(env, e->args[0], cfg);
            return invert_impl(a, cfg);
        }
        case Expr::Kind::Eigen: {
            Mat<T> a = eval_rec(env, e->args[0], cfg);
            if (a.rows != a.cols) throw StuckError("eigen of a non-square matrix");
            return TowerOps<T>::eigen(a, cfg);
        }
        case Expr::Kind::EigenPair:
            throw StuckError("EigenPair must be desugared before evaluation");
    }
    throw StuckError("unreachable");
}

template <typename T>
Mat<T> eval_impl(const InstanceT<T>& inst, const ExprPtr& e, const EvalConfig& cfg) {
    if (inst.empty()) throw StuckError("instance must be nonempty");
    ExprPtr core = desugar(e);
    auto checked = typecheck(canonical_schema(inst), core);
    if (auto* te = std::get_if<TypeError>(&checked)) throw EvalRefused(*te);
    InstanceT<T> env = inst;
    return eval_rec(env, core, cfg);
}

}  // namespace

QMat eval(const QInstance& inst, const ExprPtr& e, const EvalConfig& cfg) {
    return eval_impl(inst, e, cfg);
}
FMat eval(const FInstance& inst, const ExprPtr& e, const EvalConfig& cfg) {
    return eval_impl(inst, e, cfg);
}

QMat invert(const QMat& a, const EvalConfig& cfg) { return invert_impl(a, cfg); }
FMat invert(const FMat& a, const EvalConfig& cfg) { return invert_impl(a, cfg); }

double env_or(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    double d = std::strtod(v, &end);
    if (end == v || d <= 0) return fallback;
    return d;
}

EvalConfig config_from_env(Tower tower) {
    EvalConfig cfg;
    cfg.tower = tower;
    cfg.eps = env_or("MATLANG_EPS", cfg.eps);
    cfg.delta = env_or("MATLANG_DELTA", cfg.delta);
    return cfg;
}

}  // namespace matlang
