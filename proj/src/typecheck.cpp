#include "matlang/typecheck.hpp"

#include "matlang/builtins.hpp"
#include "matlang/parser.hpp"

namespace matlang {

std::string TypeError::str() const {
    const char* k = nullptr;
    switch (kind) {
        case Kind::UnboundVariable: k = "unbound variable"; break;
        case Kind::DiagOnNonVector: k = "diag needs a column vector"; break;
        case Kind::MulDimMismatch: k = "matrix product dimension mismatch"; break;
        case Kind::ApplyShapeMismatch: k = "apply arguments must share one type"; break;
        case Kind::InvNonSquare: k = "inv needs a square type"; break;
        case Kind::EigenNonSquare: k = "eigen needs a square type"; break;
        case Kind::UnknownFunction: k = "unknown function"; break;
        case Kind::ArityMismatch: k = "function arity mismatch"; break;
    }
    std::string s = k;
    if (!detail.empty()) s += " (" + detail + ")";
    if (got && expected) s += ": " + expected->str() + " vs " + got->str();
    if (where) s += " in `" + pretty_print(where) + "`";
    return s;
}

namespace {

struct Checker {
    std::optional<TypeError> err;

    MatrixType fail(TypeError e) {
        if (!err) err = std::move(e);
        return MatrixType{SizeTerm::one(), SizeTerm::one()};
    }

    MatrixType check(const Schema& schema, const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Var: {
                auto it = schema.find(e->name);
                if (it == schema.end())
                    return fail({TypeError::Kind::UnboundVariable, e, {}, {}, e->name});
                return it->second;
            }
            case Expr::Kind::Let: {
                MatrixType t1 = check(schema, e->args[0]);
                if (err) return t1;
                Schema extended = schema;
                extended[e->name] = t1;
                return check(extended, e->args[1]);
            }
            case Expr::Kind::Transpose: {
                MatrixType t = check(schema, e->args[0]);
                return MatrixType{t.cols, t.rows};
            }
            case Expr::Kind::Ones: {
                MatrixType t = check(schema, e->args[0]);
                return MatrixType{t.rows, SizeTerm::one()};
            }
            case Expr::Kind::Diag: {
                MatrixType t = check(schema, e->args[0]);
                if (err) return t;
                if (!t.cols.is_one())
                    return fail({TypeError::Kind::DiagOnNonVector, e, t.cols, SizeTerm::one(), {}});
                return MatrixType{t.rows, t.rows};
            }
            case Expr::Kind::MatMul: {
                MatrixType a = check(schema, e->args[0]);
                if (err) return a;
                MatrixType b = check(schema, e->args[1]);
                if (err) return b;
                if (!(a.cols == b.rows))
                    return fail({TypeError::Kind::MulDimMismatch, e, b.rows, a.cols, {}});
                return MatrixType{a.rows, b.cols};
            }
            case Expr::Kind::Apply: {
                MatrixType first{SizeTerm::one(), SizeTerm::one()};
                for (size_t i = 0; i < e->args.size(); ++i) {
                    MatrixType t = check(schema, e->args[i]);
                    if (err) return t;
                    if (i == 0) {
                        first = t;
                    } else if (!(t == first)) {
                        return fail({TypeError::Kind::ApplyShapeMismatch, e, t.rows, first.rows,
                                     "argument " + std::to_string(i + 1)});
                    }
                }
                auto fn = builtin_lookup(e->name);
                if (!fn) return fail({TypeError::Kind::UnknownFunction, e, {}, {}, e->name});
                if (fn->arity != static_cast<int>(e->args.size()))
                    return fail({TypeError::Kind::ArityMismatch, e, {}, {},
                                 e->name + " expects " + std::to_string(fn->arity) +
                                     " argument(s), got " + std::to_string(e->args.size())});
                return first;
            }
            case Expr::Kind::Inv: {
                MatrixType t = check(schema, e->args[0]);
                if (err) return t;
                if (!t.is_square())
                    return fail({TypeError::Kind::InvNonSquare, e, t.cols, t.rows, {}});
                return t;
            }
            case Expr::Kind::Eigen: {
                MatrixType t = check(schema, e->args[0]);
                if (err) return t;
                if (!t.is_square())
                    return fail({TypeError::Kind::EigenNonSquare, e, t.cols, t.rows, {}});
                return t;
            }
            case Expr::Kind::EigenPair: {
                // same rule as the desugared nested lets
                MatrixType t = check(schema, e->args[0]);
                if (err) return t;
                if (!t.is_square())
                    return fail({TypeError::Kind::EigenNonSquare, e, t.cols, t.rows, {}});
                Schema extended = schema;
                extended[e->name] = t;
                extended[e->name2] = t;
                return check(extended, e->args[1]);
            }
        }
        return fail({TypeError::Kind::UnknownFunction, e, {}, {}, "unreachable"});
    }
};

}  // namespace

TypecheckResult typecheck(const Schema& schema, const ExprPtr& e) {
    Checker c;
    MatrixType t = c.check(schema, e);
    if (c.err) return *c.err;
    return t;
}

ConformanceResult check_conformance(const Schema& schema,
                                    const std::map<std::string, std::pair<long, long>>& dims) {
    if (dims.size() != schema.size())
        return ConformanceError{"", "instance and schema define different variable sets"};
    SizeAssignment sigma;
    for (auto& [name, type] : schema) {
        auto it = dims.find(name);
        if (it == dims.end())
            return ConformanceError{name, "missing from instance"};
        auto [r, c] = it->second;
        auto bind = [&](const SizeTerm& t, long n) -> std::optional<std::string> {
            if (t.is_one()) {
                if (n != 1)
                    return "dimension " + std::to_string(n) + " where the type requires 1";
                return std::nullopt;
            }
            auto [pos, inserted] = sigma.emplace(t.sym, n);
            if (!inserted && pos->second != n)
                return "size symbol " + t.sym + " bound to " + std::to_string(pos->second) +
                       " but " + name + " needs " + std::to_string(n);
            return std::nullopt;
        };
        if (auto msg = bind(type.rows, r))
            return ConformanceError{name, *msg};
        if (auto msg = bind(type.cols, c))
            return ConformanceError{name, *msg};
    }
    return sigma;
}

}  // namespace matlang
