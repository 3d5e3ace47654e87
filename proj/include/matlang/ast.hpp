#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace matlang {

/// A size term is either a named size symbol or the literal 1.
struct SizeTerm {
    std::string sym;  // empty means literal 1

    static SizeTerm one() { return {}; }
    static SizeTerm symbol(std::string s) { return {std::move(s)}; }

    bool is_one() const { return sym.empty(); }
    friend bool operator==(const SizeTerm&, const SizeTerm&) = default;
    friend auto operator<=>(const SizeTerm&, const SizeTerm&) = default;

    std::string str() const { return is_one() ? "1" : sym; }
};

enum class TypeClass { General, Vector, Scalar };

struct MatrixType {
    SizeTerm rows;
    SizeTerm cols;

    friend bool operator==(const MatrixType&, const MatrixType&) = default;

    TypeClass type_class() const {
        if (rows.is_one() && cols.is_one()) return TypeClass::Scalar;
        if (rows.is_one() || cols.is_one()) return TypeClass::Vector;
        return TypeClass::General;
    }
    bool is_square() const { return rows == cols; }
    std::string str() const { return rows.str() + " x " + cols.str(); }
};

/// Matrix variable name -> type. Sorted keys give deterministic iteration.
using Schema = std::map<std::string, MatrixType>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Var,        // name
        Let,        // name = args[0] in args[1]
        Transpose,  // args[0]^*
        Ones,       // ones(args[0])
        Diag,       // diag(args[0])
        MatMul,     // args[0] . args[1]
        Apply,      // apply[name](args...)
        Inv,        // inv(args[0])
        Eigen,      // eigen(args[0])
        EigenPair,  // let (name, name2) = eigen(args[0]) in args[1]
    };

    Kind kind;
    std::string name;
    std::string name2;
    std::vector<ExprPtr> args;
};

ExprPtr var(std::string name);
ExprPtr let_(std::string name, ExprPtr bound, ExprPtr body);
ExprPtr transpose(ExprPtr e);
ExprPtr ones(ExprPtr e);
ExprPtr diag(ExprPtr e);
ExprPtr matmul(ExprPtr a, ExprPtr b);
ExprPtr apply(std::string fn, std::vector<ExprPtr> args);
ExprPtr inv(ExprPtr e);
ExprPtr eigen(ExprPtr e);
ExprPtr eigenpair(std::string basis, std::string diag, ExprPtr e, ExprPtr body);

bool equal(const ExprPtr& a, const ExprPtr& b);
long node_count(const ExprPtr& e);

/// All variable names occurring anywhere in e (free or bound, including binders).
std::set<std::string> all_names(const ExprPtr& e);

/// Eliminates EigenPair nodes. `let (B,L) = eigen(e) in body` becomes nested
/// lets binding B to eigen(e) and L to the expression that recovers the
/// eigenvalue diagonal from the basis by entrywise division of A.B by B
/// (division by zero gives zero), counting multiplicities and dividing out.
ExprPtr desugar(const ExprPtr& e);

/// Renames every binder to a fresh name so that no shadowing remains and no
/// bound name collides with a name in `reserved`.
ExprPtr uniquify(const ExprPtr& e, const std::set<std::string>& reserved);

/// Capture-free substitution of `value` for free occurrences of `name`;
/// requires that binders in e do not capture free names of `value`
/// (guaranteed after uniquify).
ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& value);

/// Inlines every Let by substitution; input must be Let-shadow-free
/// (run uniquify first). EigenPair must already be desugared.
ExprPtr inline_lets(const ExprPtr& e);

}  // namespace matlang
