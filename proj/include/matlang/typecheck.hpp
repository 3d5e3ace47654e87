#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "matlang/ast.hpp"
#include "matlang/matrix.hpp"

namespace matlang {

/// Size symbol -> positive dimension. The literal 1 always maps to 1.
using SizeAssignment = std::map<std::string, long>;

inline long sigma_of(const SizeAssignment& sigma, const SizeTerm& t) {
    if (t.is_one()) return 1;
    return sigma.at(t.sym);
}

struct TypeError {
    enum class Kind {
        UnboundVariable,
        DiagOnNonVector,
        MulDimMismatch,
        ApplyShapeMismatch,
        InvNonSquare,
        EigenNonSquare,
        UnknownFunction,
        ArityMismatch,
    };
    Kind kind;
    ExprPtr where;
    std::optional<SizeTerm> got;
    std::optional<SizeTerm> expected;
    std::string detail;

    std::string str() const;
};

using TypecheckResult = std::variant<MatrixType, TypeError>;

/// Infers the type of e over the schema, rule by rule; Let extends the
/// schema for the body. Reports the first failure in leftmost-innermost
/// order. EigenPair binds both names to the square type of its argument.
TypecheckResult typecheck(const Schema& schema, const ExprPtr& e);

struct ConformanceError {
    std::string variable;
    std::string detail;

    std::string str() const { return "instance does not conform at " + variable + ": " + detail; }
};

using ConformanceResult = std::variant<SizeAssignment, ConformanceError>;

/// Finds a size assignment under which every matrix's dimensions match its
/// declared type, or explains why none exists. Variable sets must coincide.
ConformanceResult check_conformance(const Schema& schema,
                                    const std::map<std::string, std::pair<long, long>>& dims);

template <typename T>
ConformanceResult check_conformance(const Schema& schema, const InstanceT<T>& inst) {
    std::map<std::string, std::pair<long, long>> dims;
    for (auto& [name, m] : inst) dims.emplace(name, std::make_pair(m.rows, m.cols));
    return check_conformance(schema, dims);
}

/// Most permissive schema an instance conforms to: equal dimensions share a
/// size symbol, dimension 1 becomes the literal 1. Used by eval to validate
/// expressions against a bare instance.
template <typename T>
Schema canonical_schema(const InstanceT<T>& inst) {
    std::map<long, std::string> symbol_for;
    auto term = [&](long n) {
        if (n == 1) return SizeTerm::one();
        auto it = symbol_for.find(n);
        if (it == symbol_for.end())
            it = symbol_for.emplace(n, "d" + std::to_string(n)).first;
        return SizeTerm::symbol(it->second);
    };
    Schema s;
    for (auto& [name, m] : inst) s.emplace(name, MatrixType{term(m.rows), term(m.cols)});
    return s;
}

}  // namespace matlang
