#pragma once

#include <cmath>
#include <vector>

#include "sparsecond/linalg.hpp"

namespace sparsecond {
namespace detail {

// Double-double value: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Gives roughly 106 significand bits, enough to serve as the reference
// against which working-precision substitution is audited.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) noexcept {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) noexcept {
    DD s = two_sum(a.hi, b.hi);
    const DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) noexcept { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) noexcept { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) noexcept {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) noexcept {
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul({q1, 0.0}, b));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul({q2, 0.0}, b));
    const double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return dd_add(q, {q3, 0.0});
}

inline std::vector<double> dd_round(const std::vector<DD>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].hi;
    return out;
}

inline std::vector<double> dd_forward_subst(const std::vector<double>& t, int n,
                                            const std::vector<double>& b) {
    std::vector<DD> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        DD s{b[static_cast<std::size_t>(i)], 0.0};
        for (int j = 0; j < i; ++j)
            s = dd_sub(s, dd_mul({t[at(i, j, n)], 0.0}, x[static_cast<std::size_t>(j)]));
        x[static_cast<std::size_t>(i)] = dd_div(s, {t[at(i, i, n)], 0.0});
    }
    return dd_round(x);
}

inline std::vector<double> dd_backward_subst(const std::vector<double>& t, int n,
                                             const std::vector<double>& b) {
    std::vector<DD> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        DD s{b[static_cast<std::size_t>(i)], 0.0};
        for (int j = i + 1; j < n; ++j)
            s = dd_sub(s, dd_mul({t[at(i, j, n)], 0.0}, x[static_cast<std::size_t>(j)]));
        x[static_cast<std::size_t>(i)] = dd_div(s, {t[at(i, i, n)], 0.0});
    }
    return dd_round(x);
}

// Full double-double LU with partial pivoting on |hi|, for the general case.
inline std::vector<double> dd_lu_solve(const std::vector<double>& a_in, int n,
                                       const std::vector<double>& b) {
    std::vector<DD> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = {a_in[i], 0.0};
    std::vector<DD> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = {b[static_cast<std::size_t>(i)], 0.0};
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[at(k, k, n)].hi);
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[at(i, k, n)].hi) > best) {
                best = std::abs(a[at(i, k, n)].hi);
                p = i;
            }
        if (best == 0.0) throw singular_error("refined_solve: singular matrix", k);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a[at(k, j, n)], a[at(p, j, n)]);
            std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(p)]);
        }
        for (int i = k + 1; i < n; ++i) {
            const DD l = dd_div(a[at(i, k, n)], a[at(k, k, n)]);
            a[at(i, k, n)] = {0.0, 0.0};
            for (int j = k + 1; j < n; ++j)
                a[at(i, j, n)] = dd_sub(a[at(i, j, n)], dd_mul(l, a[at(k, j, n)]));
            x[static_cast<std::size_t>(i)] =
                dd_sub(x[static_cast<std::size_t>(i)], dd_mul(l, x[static_cast<std::size_t>(k)]));
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        DD s = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            s = dd_sub(s, dd_mul(a[at(i, j, n)], x[static_cast<std::size_t>(j)]));
        x[static_cast<std::size_t>(i)] = dd_div(s, a[at(i, i, n)]);
    }
    return dd_round(x);
}

}  // namespace detail

/// High-precision reference solve, carried out entirely in compensated
/// pair-of-doubles (double-double) arithmetic and rounded to double at the
/// end. Triangular content uses substitution in natural order, preserving
/// the componentwise accuracy that makes it a valid reference even when the
/// normwise condition number is astronomically large; general content uses
/// a double-double LU with partial pivoting. The method is frozen.
inline std::vector<double> refined_solve(const Matrix& a, const std::vector<double>& b) {
    const int n = a.n();
    if (b.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("refined_solve: rhs length mismatch");
    if (!a.pattern().full_structural_rank())
        throw singular_error("refined_solve: structurally singular matrix");
    if (is_lower_triangular(a)) {
        if (detail::min_abs_diag(a.data(), n) == 0.0)
            throw singular_error("refined_solve: zero diagonal entry");
        return detail::dd_forward_subst(a.data(), n, b);
    }
    if (is_upper_triangular(a)) {
        if (detail::min_abs_diag(a.data(), n) == 0.0)
            throw singular_error("refined_solve: zero diagonal entry");
        return detail::dd_backward_subst(a.data(), n, b);
    }
    return detail::dd_lu_solve(a.data(), n, b);
}

}  // namespace sparsecond
