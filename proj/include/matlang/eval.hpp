#pragma once

#include <stdexcept>
#include <string>

#include "matlang/ast.hpp"
#include "matlang/builtins.hpp"
#include "matlang/matrix.hpp"
#include "matlang/typecheck.hpp"

namespace matlang {

enum class Tower { Exact, Float };

struct EvalConfig {
    Tower tower = Tower::Float;
    /// Zero / equality tolerance for Float-tower comparisons and pivots.
    double eps = 1e-9;
    /// Eigenvalue grouping tolerance.
    double delta = 1e-6;
};

/// A big-step side condition failed at runtime. Unreachable for inputs that
/// typecheck over a schema the instance conforms to.
struct StuckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// eigen or a sqrt-family function was requested in the Exact tower.
struct TowerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The expression does not typecheck against the instance (checked upfront).
struct EvalRefused : std::runtime_error {
    TypeError error;
    EvalRefused(TypeError te) : std::runtime_error("evaluation refused: " + te.str()),
                                error(std::move(te)) {}
};

/// Evaluates e on the instance. EigenPair sugar is desugared first; the
/// expression is typechecked against the instance's canonical schema and
/// evaluation is refused on failure, so evaluation itself cannot get stuck.
QMat eval(const QInstance& inst, const ExprPtr& e, const EvalConfig& cfg);
FMat eval(const FInstance& inst, const ExprPtr& e, const EvalConfig& cfg);

/// Inverse by Gaussian elimination with partial pivoting; a singular input
/// yields the zero matrix of the same shape. Float singularity means some
/// pivot falls below eps * (1 + max |entry|); the Exact tower tests pivots
/// exactly.
QMat invert(const QMat& a, const EvalConfig& cfg);
FMat invert(const FMat& a, const EvalConfig& cfg);

/// Canonical deterministic eigenbasis. If the input is diagonalizable,
/// returns a matrix whose columns are unit eigenvectors grouped by
/// eigenvalue in ascending (Re, Im) order, orthonormal within each
/// eigenspace, each column's first nonzero coordinate made real positive.
/// Otherwise returns the zero matrix.
FMat eigen_canonical(const FMat& a, const EvalConfig& cfg);

/// Membership test for the nondeterministic eigen contract: b is invertible,
/// every column is an eigenvector of a (infinity-norm residual within
/// eps * (1 + |a|)), and columns whose eigenvalues agree within delta are
/// pairwise orthogonal - or a is not diagonalizable and b is zero.
bool verify_eigen(const FMat& a, const FMat& b, const EvalConfig& cfg);

struct InvalidBasisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Recovers the eigenvalue diagonal from a basis of eigenvectors by
/// entrywise division of a*b by b (zero entries excluded), averaging over
/// each column's nonzero support.
FMat eigenvalues_from_basis(const FMat& a, const FMat& b, const EvalConfig& cfg);
QMat eigenvalues_from_basis(const QMat& a, const QMat& b, const EvalConfig& cfg);

/// Whether the matrix is diagonalizable under the configured tolerances:
/// eigenvalues are clustered within delta and each cluster's size must match
/// the nullity of (a - lambda I) at threshold eps.
bool is_diagonalizable(const FMat& a, const EvalConfig& cfg);

/// Orthonormal basis of the nullspace of a at threshold eps * (1 + |a|),
/// via complete-pivot elimination; empty when a has full column rank.
std::vector<FMat> nullspace(const FMat& a, const EvalConfig& cfg);

/// A nonzero exact solution of a*x = 0 if one exists.
std::optional<QMat> nullvector(const QMat& a);

/// For a non-diagonalizable matrix, a pair (z, p) with z*p = I and z*a*p in
/// Jordan form (built from generalized-eigenvector chains). Returns nullopt
/// when a is diagonalizable or the chains cannot be completed numerically.
std::optional<std::pair<FMat, FMat>> jordan_witness(const FMat& a, const EvalConfig& cfg);

double env_or(const char* name, double fallback);

/// EvalConfig with MATLANG_EPS / MATLANG_DELTA applied.
EvalConfig config_from_env(Tower tower = Tower::Float);

}  // namespace matlang
