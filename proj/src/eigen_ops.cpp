#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "matlang/eval.hpp"

namespace matlang {

namespace {

Eigen::MatrixXcd to_eigen(const FMat& a) {
    Eigen::MatrixXcd m(a.rows, a.cols);
    for (long i = 0; i < a.rows; ++i)
        for (long j = 0; j < a.cols; ++j) m(i, j) = a.at(i, j);
    return m;
}

/// Eigenvalues sorted ascending by (Re, Im).
std::vector<FloatComplex> sorted_eigenvalues(const FMat& a) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(to_eigen(a), false);
    std::vector<FloatComplex> ev(a.rows);
    for (long i = 0; i < a.rows; ++i) ev[i] = schur.matrixT()(i, i);
    std::sort(ev.begin(), ev.end(), [](const FloatComplex& x, const FloatComplex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return ev;
}

struct Cluster {
    FloatComplex center;
    long multiplicity;
};

/// Groups sorted eigenvalues: a value joins the current cluster when it lies
/// within delta of the running mean.
std::vector<Cluster> cluster_eigenvalues(const std::vector<FloatComplex>& ev, double delta) {
    std::vector<Cluster> out;
    FloatComplex sum = 0;
    long count = 0;
    for (auto& v : ev) {
        if (count > 0 && std::abs(v - sum / static_cast<double>(count)) <= delta) {
            sum += v;
            ++count;
        } else {
            if (count > 0) out.push_back({sum / static_cast<double>(count), count});
            sum = v;
            count = 1;
        }
    }
    if (count > 0) out.push_back({sum / static_cast<double>(count), count});
    return out;
}

/// In-place complete-pivot elimination. Returns the pivot column order;
/// rank = number of pivots above threshold.
struct Elimination {
    FMat m;
    std::vector<long> pivot_cols;
    std::vector<long> free_cols;
};

Elimination eliminate(const FMat& a, double threshold) {
    Elimination el{a, {}, {}};
    FMat& m = el.m;
    std::vector<bool> col_used(m.cols, false);
    long row = 0;
    while (row < m.rows) {
        long pi = -1, pj = -1;
        double best = threshold;
        for (long i = row; i < m.rows; ++i)
            for (long j = 0; j < m.cols; ++j) {
                if (col_used[j]) continue;
                double v = std::abs(m.at(i, j));
                if (v > best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != row)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(pi, j), m.at(row, j));
        FloatComplex p = m.at(row, pj);
        for (long j = 0; j < m.cols; ++j) m.at(row, j) /= p;
        for (long i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            FloatComplex f = m.at(i, pj);
            if (f == FloatComplex(0)) continue;
            for (long j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        col_used[pj] = true;
        el.pivot_cols.push_back(pj);
        ++row;
    }
    for (long j = 0; j < m.cols; ++j)
        if (!col_used[j]) el.free_cols.push_back(j);
    return el;
}

double norm2(const FMat& v) {
    double s = 0;
    for (auto& z : v.e) s += std::norm(z);
    return std::sqrt(s);
}

FloatComplex inner(const FMat& a, const FMat& b) {
    FloatComplex s = 0;
    for (size_t k = 0; k < a.e.size(); ++k) s += std::conj(a.e[k]) * b.e[k];
    return s;
}

/// Rotates the phase so the first coordinate with modulus above eps becomes
/// real positive, then normalizes to unit length.
void canonicalize_column(FMat& v, double eps) {
    double n = norm2(v);
    if (n == 0) return;
    for (auto& z : v.e) z /= n;
    for (auto& z : v.e)
        if (std::abs(z) > eps) {
            FloatComplex phase = std::conj(z) / std::abs(z);
            for (auto& w : v.e) w *= phase;
            break;
        }
    // clean parasitic imaginary dust so real inputs give real output
    for (auto& z : v.e) {
        if (std::abs(z.real()) < 1e-14) z = {0.0, z.imag()};
        if (std::abs(z.imag()) < 1e-14) z = {z.real(), 0.0};
    }
}

bool is_zero_matrix(const FMat& a, double eps) {
    for (auto& z : a.e)
        if (std::abs(z) > eps) return false;
    return true;
}

FMat shifted(const FMat& a, FloatComplex lambda) {
    FMat s = a;
    for (long i = 0; i < a.rows; ++i) s.at(i, i) -= lambda;
    return s;
}

}  // namespace

std::vector<FMat> nullspace(const FMat& a, const EvalConfig& cfg) {
    double threshold = cfg.eps * (1.0 + inf_norm(a));
    Elimination el = eliminate(a, threshold);
    std::vector<FMat> basis;
    for (long fc : el.free_cols) {
        FMat v(a.cols, 1);
        v.at(fc, 0) = 1;
        for (size_t r = 0; r < el.pivot_cols.size(); ++r)
            v.at(el.pivot_cols[r], 0) = -el.m.at(static_cast<long>(r), fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QMat> nullvector(const QMat& a) {
    QMat m = a;
    std::vector<bool> col_used(m.cols, false);
    std::vector<long> pivot_cols;
    long row = 0;
    while (row < m.rows) {
        long pi = -1, pj = -1;
        for (long i = row; i < m.rows && pi < 0; ++i)
            for (long j = 0; j < m.cols; ++j)
                if (!col_used[j] && !m.at(i, j).is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != row)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(pi, j), m.at(row, j));
        RatComplex p = m.at(row, pj);
        for (long j = 0; j < m.cols; ++j) m.at(row, j) = m.at(row, j) / p;
        for (long i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            RatComplex f = m.at(i, pj);
            if (f.is_zero()) continue;
            for (long j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        col_used[pj] = true;
        pivot_cols.push_back(pj);
        ++row;
    }
    long free_col = -1;
    for (long j = 0; j < m.cols; ++j)
        if (!col_used[j]) {
            free_col = j;
            break;
        }
    if (free_col < 0) return std::nullopt;
    QMat v(a.cols, 1);
    v.at(free_col, 0) = RatComplex(1);
    for (size_t r = 0; r < pivot_cols.size(); ++r)
        v.at(pivot_cols[r], 0) = -m.at(static_cast<long>(r), free_col);
    return v;
}

bool is_diagonalizable(const FMat& a, const EvalConfig& cfg) {
    auto clusters = cluster_eigenvalues(sorted_eigenvalues(a), cfg.delta);
    for (auto& c : clusters) {
        auto ns = nullspace(shifted(a, c.center), cfg);
        if (static_cast<long>(ns.size()) != c.multiplicity) return false;
    }
    return true;
}

FMat eigen_canonical(const FMat& a, const EvalConfig& cfg) {
    if (a.rows != a.cols) throw StuckError("eigen of a non-square matrix");
    const long n = a.rows;
    auto clusters = cluster_eigenvalues(sorted_eigenvalues(a), cfg.delta);

    std::vector<FMat> columns;
    for (auto& c : clusters) {
        auto basis = nullspace(shifted(a, c.center), cfg);
        if (static_cast<long>(basis.size()) != c.multiplicity) return FMat::zeros(n, n);
        // modified Gram-Schmidt within the eigenspace
        for (size_t k = 0; k < basis.size(); ++k) {
            for (size_t p = 0; p < k; ++p) {
                FloatComplex c2 = inner(basis[p], basis[k]);
                for (long i = 0; i < n; ++i) basis[k].at(i, 0) -= c2 * basis[p].at(i, 0);
            }
            double nn = norm2(basis[k]);
            if (nn <= cfg.eps) return FMat::zeros(n, n);
            for (auto& z : basis[k].e) z /= nn;
        }
        for (auto& v : basis) {
            canonicalize_column(v, cfg.eps);
            columns.push_back(v);
        }
    }
    FMat b(n, n);
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) b.at(i, j) = columns[j].at(i, 0);
    return b;
}

bool verify_eigen(const FMat& a, const FMat& b, const EvalConfig& cfg) {
    if (a.rows != a.cols || b.rows != a.rows || b.cols != a.cols)
        throw StuckError("verify_eigen shape mismatch");
    const long n = a.rows;
    if (is_zero_matrix(b, cfg.eps)) return !is_diagonalizable(a, cfg);

    FMat binv = invert(b, cfg);
    if (is_zero_matrix(binv, 0.0)) return false;  // singular candidate

    double tol = cfg.eps * (1.0 + inf_norm(a));
    FMat ab = matmul(a, b);
    std::vector<FloatComplex> lambda(n);
    for (long j = 0; j < n; ++j) {
        FloatComplex num = 0, den = 0;
        for (long i = 0; i < n; ++i) {
            num += std::conj(b.at(i, j)) * ab.at(i, j);
            den += std::conj(b.at(i, j)) * b.at(i, j);
        }
        if (std::abs(den) == 0) return false;
        lambda[j] = num / den;  // Rayleigh quotient
        double colnorm = std::sqrt(den.real());
        for (long i = 0; i < n; ++i)
            if (std::abs(ab.at(i, j) - lambda[j] * b.at(i, j)) > tol * std::max(1.0, colnorm))
                return false;
    }
    for (long j = 0; j < n; ++j)
        for (long k = j + 1; k < n; ++k) {
            if (std::abs(lambda[j] - lambda[k]) > cfg.delta) continue;
            FloatComplex dot = 0;
            double nj = 0, nk = 0;
            for (long i = 0; i < n; ++i) {
                dot += std::conj(b.at(i, j)) * b.at(i, k);
                nj += std::norm(b.at(i, j));
                nk += std::norm(b.at(i, k));
            }
            if (std::abs(dot) > cfg.eps * std::max(1.0, std::sqrt(nj * nk))) return false;
        }
    return true;
}

FMat eigenvalues_from_basis(const FMat& a, const FMat& b, const EvalConfig& cfg) {
    if (a.rows != a.cols || b.rows != a.rows || b.cols != a.cols)
        throw StuckError("eigenvalues_from_basis shape mismatch");
    const long n = a.rows;
    FMat ab = matmul(a, b);
    FMat lam = FMat::zeros(n, n);
    for (long j = 0; j < n; ++j) {
        FloatComplex sum = 0;
        long count = 0;
        for (long i = 0; i < n; ++i) {
            if (std::abs(b.at(i, j)) <= cfg.eps) continue;
            sum += ab.at(i, j) / b.at(i, j);
            ++count;
        }
        if (count == 0) throw InvalidBasisError("basis column " + std::to_string(j + 1) + " is zero");
        lam.at(j, j) = sum / static_cast<double>(count);
    }
    return lam;
}

std::optional<std::pair<FMat, FMat>> jordan_witness(const FMat& a, const EvalConfig& cfg) {
    const long n = a.rows;
    auto clusters = cluster_eigenvalues(sorted_eigenvalues(a), cfg.delta);
    if (is_diagonalizable(a, cfg)) return std::nullopt;

    double tol = cfg.eps * (1.0 + inf_norm(a));
    std::vector<FMat> columns;
    for (auto& c : clusters) {
        FMat s = shifted(a, c.center);
        // nullspace filtration of s, s^2, ... up to the algebraic multiplicity
        std::vector<std::vector<FMat>> filt;  // filt[k-1] = basis of null(s^k)
        FMat power = s;
        for (long k = 1; k <= c.multiplicity; ++k) {
            filt.push_back(nullspace(power, cfg));
            if (static_cast<long>(filt.back().size()) >= c.multiplicity) break;
            power = matmul(power, s);
        }
        if (static_cast<long>(filt.back().size()) != c.multiplicity) return std::nullopt;
        const long depth = static_cast<long>(filt.size());

        // chains[t] holds the top vector of a chain of length t+1
        std::vector<std::pair<long, FMat>> tops;  // (chain length, top)
        for (long k = depth; k >= 1; --k) {
            // directions already covered at level k: null(s^{k-1}) plus the
            // k-th vectors of longer chains
            std::vector<FMat> covered;
            if (k >= 2) covered = filt[k - 2];
            for (auto& [len, top] : tops) {
                FMat v = top;
                for (long j = 0; j < len - k; ++j) v = matmul(s, v);
                covered.push_back(v);
            }
            // orthonormalize covered
            std::vector<FMat> cov_on;
            for (auto v : covered) {
                for (auto& u : cov_on) {
                    FloatComplex ip = inner(u, v);
                    for (long i = 0; i < n; ++i) v.at(i, 0) -= ip * u.at(i, 0);
                }
                double nn = norm2(v);
                if (nn > tol) {
                    for (auto& z : v.e) z /= nn;
                    cov_on.push_back(v);
                }
            }
            for (auto cand : filt[k - 1]) {
                for (auto& u : cov_on) {
                    FloatComplex ip = inner(u, cand);
                    for (long i = 0; i < n; ++i) cand.at(i, 0) -= ip * u.at(i, 0);
                }
                double nn = norm2(cand);
                if (nn > std::max(tol, 1e-8)) {
                    for (auto& z : cand.e) z /= nn;
                    tops.emplace_back(k, cand);
                    cov_on.push_back(cand);
                }
            }
        }
        long total = 0;
        for (auto& [len, top] : tops) total += len;
        if (total != c.multiplicity) return std::nullopt;
        // emit each chain bottom-up: s^{len-1} top, ..., s top, top
        for (auto& [len, top] : tops) {
            std::vector<FMat> chain{top};
            for (long j = 1; j < len; ++j) chain.push_back(matmul(s, chain.back()));
            for (long j = len - 1; j >= 0; --j) columns.push_back(chain[j]);
        }
    }
    if (static_cast<long>(columns.size()) != n) return std::nullopt;
    FMat p(n, n);
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) p.at(i, j) = columns[j].at(i, 0);
    FMat z = invert(p, cfg);
    if (is_zero_matrix(z, 0.0)) return std::nullopt;
    return std::make_pair(z, p);
}

QMat eigenvalues_from_basis(const QMat& a, const QMat& b, const EvalConfig&) {
    if (a.rows != a.cols || b.rows != a.rows || b.cols != a.cols)
        throw StuckError("eigenvalues_from_basis shape mismatch");
    const long n = a.rows;
    QMat ab = matmul(a, b);
    QMat lam = QMat::zeros(n, n);
    for (long j = 0; j < n; ++j) {
        RatComplex sum;
        long count = 0;
        for (long i = 0; i < n; ++i) {
            if (b.at(i, j).is_zero()) continue;
            sum += ab.at(i, j) / b.at(i, j);
            ++count;
        }
        if (count == 0) throw InvalidBasisError("basis column " + std::to_string(j + 1) + " is zero");
        lam.at(j, j) = sum / RatComplex(count);
    }
    return lam;
}

}  // namespace matlang
