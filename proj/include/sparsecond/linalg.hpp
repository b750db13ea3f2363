#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sparsecond/errors.hpp"
#include "sparsecond/matrix.hpp"

namespace sparsecond {

namespace detail {

inline std::size_t at(int i, int j, int n) noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(j);
}

// In-place partial-pivoting LU on a plain row-major buffer. On a singular
// step (pivot column exactly zero) factorization stops and singular_col is
// set; callers must not use the factors past that column.
struct RawLU {
    int n = 0;
    std::vector<double> lu;      // packed L (unit diagonal implied) and U
    std::vector<int> perm;       // perm[k] = original index of row now at k
    int parity = 1;
    double min_pivot_mag = std::numeric_limits<double>::infinity();
    int singular_col = -1;

    bool singular() const noexcept { return singular_col >= 0; }
};

inline RawLU lu_raw(std::vector<double> a, int n) {
    RawLU f;
    f.n = n;
    f.perm.resize(static_cast<std::size_t>(n));
    std::iota(f.perm.begin(), f.perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[at(k, k, n)]);
        for (int i = k + 1; i < n; ++i) {
            const double cand = std::abs(a[at(i, k, n)]);
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        if (best == 0.0) {
            f.singular_col = k;
            f.min_pivot_mag = 0.0;
            break;
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a[at(k, j, n)], a[at(p, j, n)]);
            std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(p)]);
            f.parity = -f.parity;
        }
        f.min_pivot_mag = std::min(f.min_pivot_mag, best);
        const double pivot = a[at(k, k, n)];
        for (int i = k + 1; i < n; ++i) {
            const double l = a[at(i, k, n)] / pivot;
            a[at(i, k, n)] = l;
            if (l != 0.0)
                for (int j = k + 1; j < n; ++j) a[at(i, j, n)] -= l * a[at(k, j, n)];
        }
    }
    f.lu = std::move(a);
    return f;
}

inline double det_from_lu(const RawLU& f) noexcept {
    if (f.singular()) return 0.0;
    double d = static_cast<double>(f.parity);
    for (int k = 0; k < f.n; ++k) d *= f.lu[at(k, k, f.n)];
    return d;
}

// Solves using computed factors: PA = LU, so x = U^-1 L^-1 P b.
inline std::vector<double> lu_solve(const RawLU& f, const std::vector<double>& b) {
    const int n = f.n;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(f.perm[static_cast<std::size_t>(i)])];
        for (int j = 0; j < i; ++j) s -= f.lu[at(i, j, n)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= f.lu[at(i, j, n)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / f.lu[at(i, i, n)];
    }
    return x;
}

// Forward substitution for lower-triangular content, natural order, no
// pivoting. Exactly the algorithm audited by the accuracy experiment.
inline std::vector<double> forward_subst(const std::vector<double>& t, int n,
                                         const std::vector<double>& b) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) s -= t[at(i, j, n)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / t[at(i, i, n)];
    }
    return x;
}

inline std::vector<double> backward_subst(const std::vector<double>& t, int n,
                                          const std::vector<double>& b) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= t[at(i, j, n)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / t[at(i, i, n)];
    }
    return x;
}

// Column-by-column inverse of lower-triangular content. Entries strictly
// above the diagonal are never written, so they come out exactly zero; this
// keeps the condition formulas meaningful for triangular matrices, where a
// pivoted factorization would fill them with rounding noise instead.
inline std::vector<double> lower_inverse(const std::vector<double>& t, int n) {
    std::vector<double> g(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int l = 0; l < n; ++l) {
        g[at(l, l, n)] = 1.0 / t[at(l, l, n)];
        for (int i = l + 1; i < n; ++i) {
            double s = 0.0;
            for (int j = l; j < i; ++j) s += t[at(i, j, n)] * g[at(j, l, n)];
            g[at(i, l, n)] = -s / t[at(i, i, n)];
        }
    }
    return g;
}

inline std::vector<double> upper_inverse(const std::vector<double>& t, int n) {
    std::vector<double> g(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int l = n - 1; l >= 0; --l) {
        g[at(l, l, n)] = 1.0 / t[at(l, l, n)];
        for (int i = l - 1; i >= 0; --i) {
            double s = 0.0;
            for (int j = i + 1; j <= l; ++j) s += t[at(i, j, n)] * g[at(j, l, n)];
            g[at(i, l, n)] = -s / t[at(i, i, n)];
        }
    }
    return g;
}

inline double min_abs_diag(const std::vector<double>& t, int n) noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) m = std::min(m, std::abs(t[at(i, i, n)]));
    return m;
}

}  // namespace detail

/// Partial-pivoting LU factors of a square matrix. An exactly zero pivot
/// column marks the factorization Singular instead of throwing; downstream
/// determinants are then zero and solves refuse to run.
struct LUFactors {
    int n = 0;
    std::vector<double> lu;
    std::vector<int> perm;
    int parity = 1;
    double min_pivot_mag = 0.0;
    std::optional<int> singular_col;

    bool singular() const noexcept { return singular_col.has_value(); }
};

inline LUFactors lu_factor(const Matrix& a) {
    detail::RawLU f = detail::lu_raw(a.data(), a.n());
    LUFactors out;
    out.n = f.n;
    out.lu = std::move(f.lu);
    out.perm = std::move(f.perm);
    out.parity = f.parity;
    out.min_pivot_mag = f.singular() ? 0.0 : f.min_pivot_mag;
    if (f.singular()) out.singular_col = f.singular_col;
    return out;
}

/// Determinant via pivoted LU, with a structural short circuit: a pattern of
/// deficient structural rank forces det = 0 identically over its matrices,
/// so the result is an exact zero rather than elimination round-off.
inline double det(const Matrix& a) {
    if (!a.pattern().full_structural_rank()) return 0.0;
    return detail::det_from_lu(detail::lu_raw(a.data(), a.n()));
}

namespace detail {

inline double laplace_rec(const Matrix& a, int row, std::vector<int>& cols) {
    const int m = static_cast<int>(cols.size());
    if (m == 0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int pos = 0; pos < m; ++pos) {
        const double entry = a(row, cols[static_cast<std::size_t>(pos)]);
        if (entry != 0.0) {
            const int saved = cols[static_cast<std::size_t>(pos)];
            cols.erase(cols.begin() + pos);
            sum += sign * entry * laplace_rec(a, row + 1, cols);
            cols.insert(cols.begin() + pos, saved);
        }
        sign = -sign;
    }
    return sum;
}

}  // namespace detail

/// Cofactor-expansion determinant, cost O(n!); the independent oracle for
/// det(). Terms with a zero factor are skipped, so structurally singular
/// inputs return an exact 0.0.
inline double det_laplace(const Matrix& a) {
    if (a.n() > 10)
        throw std::invalid_argument("det_laplace: n > 10 is not supported (cost n!)");
    std::vector<int> cols(static_cast<std::size_t>(a.n()));
    std::iota(cols.begin(), cols.end(), 0);
    return detail::laplace_rec(a, 0, cols);
}

/// The (n-1) x (n-1) submatrix dropping row i and column j, with the
/// restricted pattern.
inline Matrix minor_matrix(const Matrix& a, int i, int j) {
    const int n = a.n();
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("minor_matrix: index out of range");
    if (n == 1) throw std::invalid_argument("minor_matrix: no minor of a 1x1 matrix");
    std::vector<IndexPair> support;
    support.reserve(a.pattern().support().size());
    for (const auto& [r, c] : a.pattern().support())
        if (r != i && c != j) support.emplace_back(r > i ? r - 1 : r, c > j ? c - 1 : c);
    Matrix m(share_pattern(Pattern(n - 1, std::move(support))));
    for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0; c < n; ++c) {
            if (c == j) continue;
            const double v = a(r, c);
            if (v != 0.0) m.set(r > i ? r - 1 : r, c > j ? c - 1 : c, v);
        }
    }
    return m;
}

/// det of the submatrix dropping row i and column j, computed from the
/// submatrix itself (not from the inverse), so it stays meaningful for
/// singular inputs. The 0 x 0 minor of a 1x1 matrix is 1 by convention.
inline double minor_det(const Matrix& a, int i, int j) {
    if (a.n() == 1) {
        if (i != 0 || j != 0) throw std::invalid_argument("minor_det: index out of range");
        return 1.0;
    }
    return det(minor_matrix(a, i, j));
}

/// Diagnostics bundle for one inversion: the inverse when it exists, the
/// smallest pivot magnitude actually divided by, and a singularity flag.
struct InverseDiagnostics {
    bool singular = false;
    double min_pivot_mag = 0.0;
    std::vector<double> gamma;  // n x n row-major, empty when singular
};

/// Computes the inverse, dispatching on content: triangular matrices are
/// inverted by substitution in natural order (their structurally zero
/// inverse entries come out exactly zero and the computed entries are
/// componentwise accurate); everything else goes through pivoted LU.
inline InverseDiagnostics inverse_with_diagnostics(const Matrix& a) {
    const int n = a.n();
    InverseDiagnostics out;
    if (!a.pattern().full_structural_rank()) {
        out.singular = true;
        return out;
    }
    if (is_lower_triangular(a)) {
        out.min_pivot_mag = detail::min_abs_diag(a.data(), n);
        if (out.min_pivot_mag == 0.0) {
            out.singular = true;
            return out;
        }
        out.gamma = detail::lower_inverse(a.data(), n);
        return out;
    }
    if (is_upper_triangular(a)) {
        out.min_pivot_mag = detail::min_abs_diag(a.data(), n);
        if (out.min_pivot_mag == 0.0) {
            out.singular = true;
            return out;
        }
        out.gamma = detail::upper_inverse(a.data(), n);
        return out;
    }
    detail::RawLU f = detail::lu_raw(a.data(), n);
    if (f.singular()) {
        out.singular = true;
        return out;
    }
    out.min_pivot_mag = f.min_pivot_mag;
    out.gamma.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    for (int l = 0; l < n; ++l) {
        e[static_cast<std::size_t>(l)] = 1.0;
        const std::vector<double> col = detail::lu_solve(f, e);
        e[static_cast<std::size_t>(l)] = 0.0;
        for (int i = 0; i < n; ++i) out.gamma[detail::at(i, l, n)] = col[static_cast<std::size_t>(i)];
    }
    return out;
}

/// Inverse as a Matrix with a dense pattern (no pattern constraint).
inline Matrix inverse(const Matrix& a) {
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("inverse: matrix is singular");
    return Matrix(make_pattern(PatternKind::dense, a.n()), std::move(d.gamma));
}

/// The matrix obtained by replacing column k with b; the pattern keeps A's
/// support off column k and allows all of column k.
inline Matrix replace_column(const Matrix& a, int k, const std::vector<double>& b) {
    const int n = a.n();
    if (k < 0 || k >= n) throw std::invalid_argument("replace_column: column out of range");
    if (b.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("replace_column: rhs length mismatch");
    std::vector<IndexPair> support;
    for (const auto& [i, j] : a.pattern().support())
        if (j != k) support.emplace_back(i, j);
    for (int i = 0; i < n; ++i) support.emplace_back(i, k);
    Matrix r(share_pattern(Pattern(n, std::move(support))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = j == k ? b[static_cast<std::size_t>(i)] : a(i, j);
            if (v != 0.0) r.set(i, j, v);
        }
    return r;
}

/// Substitution solve for triangular content. Throws singular_error on a
/// zero diagonal entry and std::invalid_argument if T is not triangular.
inline std::vector<double> triangular_solve(const Matrix& t, const std::vector<double>& b) {
    const int n = t.n();
    if (b.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("triangular_solve: rhs length mismatch");
    const bool lower = is_lower_triangular(t);
    if (!lower && !is_upper_triangular(t))
        throw std::invalid_argument("triangular_solve: matrix is not triangular");
    if (detail::min_abs_diag(t.data(), n) == 0.0)
        throw singular_error("triangular_solve: zero diagonal entry");
    return lower ? detail::forward_subst(t.data(), n, b)
                 : detail::backward_subst(t.data(), n, b);
}

/// Solves Ax = b. Triangular content is handled by substitution in natural
/// order; general content by pivoted LU.
inline std::vector<double> solve(const Matrix& a, const std::vector<double>& b) {
    const int n = a.n();
    if (b.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("solve: rhs length mismatch");
    if (!a.pattern().full_structural_rank())
        throw singular_error("solve: structurally singular matrix");
    if (is_lower_triangular(a) || is_upper_triangular(a)) return triangular_solve(a, b);
    detail::RawLU f = detail::lu_raw(a.data(), n);
    if (f.singular()) throw singular_error("solve: singular matrix", f.singular_col);
    return detail::lu_solve(f, b);
}

}  // namespace sparsecond
