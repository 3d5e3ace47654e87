#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "matlang/ast.hpp"
#include "matlang/matrix.hpp"
#include "matlang/typecheck.hpp"

namespace matlang {

enum class ColKind { Base, Numerical };

/// Tuple of column kinds; arity >= 1.
using RelType = std::vector<ColKind>;

/// Cell of a tuple: a domain element (naturals embedded) or a scalar.
using RelValue = std::variant<std::int64_t, RatComplex>;
using RelTuple = std::vector<RelValue>;

struct Relation {
    RelType type;
    std::set<RelTuple> tuples;

    friend bool operator==(const Relation&, const Relation&) = default;
};

using RelSchema = std::map<std::string, RelType>;
using RelInstance = std::map<std::string, Relation>;

/// Relational algebra with summation. Columns are 1-based. Selections
/// compare base columns only; Apply adds one numerical column computed from
/// numerical columns (arity 0 gives a constant column); Sum aggregates one
/// numerical column grouped by base columns (no group columns collapses the
/// relation to a singleton).
struct RelExpr;
using RelExprPtr = std::shared_ptr<const RelExpr>;

struct RelExpr {
    enum class Kind { Var, Union, Difference, Product, Select, Project, Apply, Sum };

    Kind kind;
    std::string name;           // Var / Apply function name
    bool select_eq = true;      // Select: $a = $b when true, $a != $b otherwise
    int col_a = 0, col_b = 0;   // Select columns
    std::vector<int> cols;      // Project columns / Apply argument columns / Sum group columns
    int sum_col = 0;            // Sum aggregated column
    std::vector<RelExprPtr> args;
};

RelExprPtr rel_var(std::string name);
RelExprPtr rel_union(RelExprPtr a, RelExprPtr b);
RelExprPtr rel_difference(RelExprPtr a, RelExprPtr b);
RelExprPtr rel_product(RelExprPtr a, RelExprPtr b);
RelExprPtr rel_select(bool eq, int col_a, int col_b, RelExprPtr a);
RelExprPtr rel_project(std::vector<int> cols, RelExprPtr a);
RelExprPtr rel_apply(std::string fn, std::vector<int> cols, RelExprPtr a);
RelExprPtr rel_sum(int col, std::vector<int> group_cols, RelExprPtr a);

std::string rel_pretty(const RelExprPtr& e);

struct RelTypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ternary / binary / unary relation type for general / vector / scalar
/// matrix types; the numerical column comes last.
RelType rel_type_of(const MatrixType& t);

RelSchema rel_schema_of(const Schema& s);

/// Rel_2 / Rel_1 / Rel_0 encoding of every instance matrix, chosen by the
/// schema type class (not the runtime dimensions). Indices are 1-based.
RelInstance rel_encode(const QInstance& inst, const Schema& schema);

/// Encodes a single matrix by the class of t.
Relation rel_encode_matrix(const QMat& m, const MatrixType& t);

struct NotGridTotalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inverse of rel_encode_matrix; the relation must hold exactly one tuple
/// per index combination for the dimensions sigma assigns to t.
QMat rel_decode(const Relation& r, const MatrixType& t, const SizeAssignment& sigma);

/// Output type of re over the relational schema, or a RelTypeError.
RelType rel_typecheck(const RelSchema& schema, const RelExprPtr& re);

/// Set semantics evaluation; re must typecheck.
Relation eval_rel(const RelInstance& inst, const RelExprPtr& re);

struct UnsupportedConstructError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Theorem-1 translation: for e (no inv/eigen) well-typed over schema and
/// every conforming I, evaluating the result on rel_encode(I) equals the
/// encoding of eval(I, e). Uses no Difference and no numerical selections;
/// the only functions are e's pointwise functions, conjugation, binary
/// multiplication, and the constants 0 and 1.
RelExprPtr translate(const Schema& schema, const ExprPtr& e);

/// Syntactic scan for the Theorem-1 structural guarantee.
bool uses_difference(const RelExprPtr& e);
bool uses_numerical_select(const RelSchema& schema, const RelExprPtr& e);

}  // namespace matlang
