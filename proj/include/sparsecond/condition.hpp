#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsecond/linalg.hpp"

namespace sparsecond {

enum class CondTag { finite, zero, infinite };

/// Extended nonnegative condition result. Zero and Infinite mirror the
/// convention used for singular inputs: Zero when no admissible perturbation
/// moves the output at first order, Infinite when the limit blows up.
class CondValue {
public:
    static CondValue finite(double v) {
        if (!(v >= 0.0)) throw std::invalid_argument("CondValue: negative or NaN value");
        return CondValue(CondTag::finite, v);
    }
    static CondValue zero() noexcept { return CondValue(CondTag::zero, 0.0); }
    static CondValue infinite() noexcept { return CondValue(CondTag::infinite, 0.0); }

    CondTag tag() const noexcept { return tag_; }
    bool is_finite() const noexcept { return tag_ == CondTag::finite; }
    bool is_zero() const noexcept { return tag_ == CondTag::zero; }
    bool is_infinite() const noexcept { return tag_ == CondTag::infinite; }

    double value() const {
        if (tag_ != CondTag::finite)
            throw std::logic_error("CondValue::value: not a finite value");
        return value_;
    }

    /// Numeric view: Zero -> 0, Infinite -> +inf. Handy for comparisons.
    double as_double() const noexcept {
        switch (tag_) {
            case CondTag::finite: return value_;
            case CondTag::zero: return 0.0;
            default: return std::numeric_limits<double>::infinity();
        }
    }

    /// Extended-real sum: Infinite absorbs, Zero contributes 0.
    friend CondValue operator+(const CondValue& a, const CondValue& b) {
        if (a.is_infinite() || b.is_infinite()) return infinite();
        return finite(a.as_double() + b.as_double());
    }

private:
    CondValue(CondTag t, double v) : tag_(t), value_(v) {}

    CondTag tag_;
    double value_;
};

/// Componentwise distance d(u, v) = || (u - v) / v ||_inf with the quotient
/// convention 0/0 -> 0 and nonzero/0 -> inf.
inline double comp_distance(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("comp_distance: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double num = std::abs(u[i] - v[i]);
        if (v[i] != 0.0) {
            d = std::max(d, num / std::abs(v[i]));
        } else if (num != 0.0) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return d;
}

namespace detail {

// N = |G| |A| |G| where G is the inverse; N[k*n+l] is the first-order
// numerator of the inversion condition at entry (k, l). Two dense products
// of absolute values, O(n^3), no cancellation.
inline std::vector<double> skeel_inv_numerators(const std::vector<double>& gamma,
                                                const Matrix& a) {
    const int n = a.n();
    const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<double> absg(nn), absa(nn);
    for (std::size_t i = 0; i < nn; ++i) absg[i] = std::abs(gamma[i]);
    const std::vector<double>& ad = a.data();
    for (std::size_t i = 0; i < nn; ++i) absa[i] = std::abs(ad[i]);
    std::vector<double> t(nn, 0.0), out(nn, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double g = absg[at(i, k, n)];
            if (g == 0.0) continue;
            for (int j = 0; j < n; ++j) t[at(i, j, n)] += g * absa[at(k, j, n)];
        }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double v = t[at(i, k, n)];
            if (v == 0.0) continue;
            for (int j = 0; j < n; ++j) out[at(i, j, n)] += v * absg[at(k, j, n)];
        }
    return out;
}

// |G|(|A||x|) + |G||b|, the per-component numerators for the linear-system
// condition values.
inline std::vector<double> skeel_solve_numerators(const std::vector<double>& gamma,
                                                  const Matrix& a,
                                                  const std::vector<double>& x,
                                                  const std::vector<double>& b) {
    const int n = a.n();
    std::vector<double> ax(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s += std::abs(a(i, j)) * std::abs(x[static_cast<std::size_t>(j)]);
        ax[static_cast<std::size_t>(i)] = s;
    }
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = std::abs(gamma[at(k, i, n)]);
            s += g * (ax[static_cast<std::size_t>(i)] + std::abs(b[static_cast<std::size_t>(i)]));
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

inline CondValue ratio_cond(double numerator, double denominator) {
    if (denominator != 0.0) return CondValue::finite(numerator / std::abs(denominator));
    return numerator == 0.0 ? CondValue::zero() : CondValue::infinite();
}

inline double sum_support_products(const Matrix& a, const std::vector<double>& gamma) {
    const int n = a.n();
    double s = 0.0;
    for (const auto& [i, j] : a.pattern().support())
        s += std::abs(a(i, j) * gamma[at(j, i, n)]);
    return s;
}

}  // namespace detail

/// Condition number of the determinant: sum over the support of
/// |a_ij gamma_ji| for nonsingular input. For singular input the tag is
/// Zero when the first-order supremum sum |a_ij det(minor_ij)| vanishes
/// exactly and Infinite otherwise; the zero matrix gives Zero.
inline CondValue cond_det(const Matrix& a) {
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (!d.singular)
        return CondValue::finite(detail::sum_support_products(a, d.gamma));
    double s = 0.0;
    for (const auto& [i, j] : a.pattern().support()) {
        const double entry = a(i, j);
        if (entry != 0.0) s += std::abs(entry * minor_det(a, i, j));
    }
    return s == 0.0 ? CondValue::zero() : CondValue::infinite();
}

/// Componentwise condition of inverse entry (k, l): the numerator is
/// sum over the support of |a_ij gamma_ki gamma_jl|, divided by |gamma_kl|;
/// the Zero/Infinite rule applies when gamma_kl is exactly zero.
inline CondValue cond_inv_entry(const Matrix& a, int k, int l) {
    const int n = a.n();
    if (k < 0 || k >= n || l < 0 || l >= n)
        throw std::invalid_argument("cond_inv_entry: index out of range");
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("cond_inv_entry: matrix is singular");
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s += std::abs(a(i, j)) * std::abs(d.gamma[detail::at(j, l, n)]);
        w[static_cast<std::size_t>(i)] = s;
    }
    double numer = 0.0;
    for (int i = 0; i < n; ++i)
        numer += std::abs(d.gamma[detail::at(k, i, n)]) * w[static_cast<std::size_t>(i)];
    return detail::ratio_cond(numer, d.gamma[detail::at(k, l, n)]);
}

/// A condition value together with the (first, row-major) attaining index.
struct CondInvResult {
    CondValue value = CondValue::zero();
    int k = 0;
    int l = 0;
};

namespace detail {

inline CondInvResult cond_inv_from(const std::vector<double>& numer,
                                   const std::vector<double>& gamma, int n) {
    CondInvResult best;
    bool any = false;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const CondValue c = ratio_cond(numer[at(k, l, n)], gamma[at(k, l, n)]);
            if (c.is_infinite()) return {c, k, l};
            if (!any || c.as_double() > best.value.as_double()) {
                best = {c, k, l};
                any = true;
            }
        }
    return best;
}

inline double mixed_inv_from(const std::vector<double>& numer,
                             const std::vector<double>& gamma) {
    double maxn = 0.0, maxg = 0.0;
    for (double v : numer) maxn = std::max(maxn, v);
    for (double v : gamma) maxg = std::max(maxg, std::abs(v));
    return maxn / maxg;
}

}  // namespace detail

/// c-dagger: the maximum inversion condition over all entries, Infinite
/// dominating, ties broken by the first row-major index.
inline CondInvResult cond_inv(const Matrix& a) {
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("cond_inv: matrix is singular");
    return detail::cond_inv_from(detail::skeel_inv_numerators(d.gamma, a), d.gamma, a.n());
}

/// Mixed condition of inversion in the entrywise max norm:
/// max_kl N_kl / max_kl |gamma_kl|.
inline CondValue mixed_inv(const Matrix& a) {
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("mixed_inv: matrix is singular");
    return CondValue::finite(
        detail::mixed_inv_from(detail::skeel_inv_numerators(d.gamma, a), d.gamma));
}

/// Upper bound on cond_inv_entry(a, k, l): cond_det(A) + cond_det of the
/// minor dropping row l and column k, the minor's condition taken from the
/// minor's own inverse. Zero contributes 0; Infinite propagates.
inline CondValue cond_inv_bound(const Matrix& a, int k, int l) {
    const int n = a.n();
    if (n > 64) throw std::invalid_argument("cond_inv_bound: n > 64 (cost guard)");
    if (k < 0 || k >= n || l < 0 || l >= n)
        throw std::invalid_argument("cond_inv_bound: index out of range");
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("cond_inv_bound: matrix is singular");
    const CondValue whole = cond_det(a);
    if (n == 1) return whole + CondValue::finite(0.0);
    return whole + cond_det(minor_matrix(a, l, k));
}

/// Componentwise condition of solution component k for Ax = b.
inline CondValue cond_solve_entry(const Matrix& a, const std::vector<double>& b, int k) {
    const int n = a.n();
    if (k < 0 || k >= n) throw std::invalid_argument("cond_solve_entry: index out of range");
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("cond_solve_entry: matrix is singular");
    const std::vector<double> x = solve(a, b);
    const std::vector<double> numer = detail::skeel_solve_numerators(d.gamma, a, x, b);
    return detail::ratio_cond(numer[static_cast<std::size_t>(k)],
                              x[static_cast<std::size_t>(k)]);
}

struct CondSolveResult {
    CondValue value = CondValue::zero();
    int k = 0;
};

namespace detail {

inline CondSolveResult cond_solve_from(const std::vector<double>& numer,
                                       const std::vector<double>& x) {
    CondSolveResult best;
    bool any = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const CondValue c = ratio_cond(numer[k], x[k]);
        if (c.is_infinite()) return {c, static_cast<int>(k)};
        if (!any || c.as_double() > best.value.as_double()) {
            best = {c, static_cast<int>(k)};
            any = true;
        }
    }
    return best;
}

}  // namespace detail

/// c(A, b): maximum componentwise solution condition over components.
inline CondSolveResult cond_solve(const Matrix& a, const std::vector<double>& b) {
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("cond_solve: matrix is singular");
    const std::vector<double> x = solve(a, b);
    return detail::cond_solve_from(detail::skeel_solve_numerators(d.gamma, a, x, b), x);
}

/// Mixed condition of solving in the infinity norm:
/// || |G||A||x| + |G||b| ||_inf / ||x||_inf.
inline CondValue mixed_solve(const Matrix& a, const std::vector<double>& b) {
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("mixed_solve: matrix is singular");
    const std::vector<double> x = solve(a, b);
    const std::vector<double> numer = detail::skeel_solve_numerators(d.gamma, a, x, b);
    return CondValue::finite(norm_inf(numer) / norm_inf(x));
}

/// Upper bound on cond_solve_entry(a, b, k): cond_det(A) + cond_det(R_k)
/// with R_k the column-replaced matrix of Cramer's rule.
inline CondValue cond_solve_bound(const Matrix& a, const std::vector<double>& b, int k) {
    if (k < 0 || k >= a.n())
        throw std::invalid_argument("cond_solve_bound: index out of range");
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("cond_solve_bound: matrix is singular");
    return cond_det(a) + cond_det(replace_column(a, k, b));
}

/// Everything the CLI serializes for one matrix (and optional right-hand
/// side): the determinant condition, the full inversion table with its max
/// and argmax, the mixed inversion condition, and the solve counterparts.
struct CondReport {
    int n = 0;
    CondValue det_cond = CondValue::zero();
    std::vector<CondValue> inv_entries;  // n*n row-major
    CondInvResult inv;
    CondValue inv_mixed = CondValue::zero();
    bool has_solve = false;
    std::vector<CondValue> solve_entries;  // n
    CondSolveResult solve;
    CondValue solve_mixed = CondValue::zero();
};

/// Builds the full report with one factorization. Throws singular_error for
/// singular input; cond_det alone is always computable via cond_det().
inline CondReport build_cond_report(const Matrix& a, const std::vector<double>* b = nullptr) {
    const int n = a.n();
    InverseDiagnostics d = inverse_with_diagnostics(a);
    if (d.singular) throw singular_error("build_cond_report: matrix is singular");
    CondReport r;
    r.n = n;
    r.det_cond = CondValue::finite(detail::sum_support_products(a, d.gamma));
    const std::vector<double> numer = detail::skeel_inv_numerators(d.gamma, a);
    r.inv_entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            r.inv_entries.push_back(detail::ratio_cond(numer[detail::at(k, l, n)],
                                                       d.gamma[detail::at(k, l, n)]));
    r.inv = detail::cond_inv_from(numer, d.gamma, n);
    r.inv_mixed = CondValue::finite(detail::mixed_inv_from(numer, d.gamma));
    if (b != nullptr) {
        r.has_solve = true;
        const std::vector<double> x = solve(a, *b);
        const std::vector<double> sn = detail::skeel_solve_numerators(d.gamma, a, x, *b);
        r.solve_entries.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            r.solve_entries.push_back(
                detail::ratio_cond(sn[static_cast<std::size_t>(k)],
                                   x[static_cast<std::size_t>(k)]));
        r.solve = detail::cond_solve_from(sn, x);
        r.solve_mixed = CondValue::finite(norm_inf(sn) / norm_inf(x));
    }
    return r;
}

}  // namespace sparsecond
