#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sparsecond/condition.hpp"

namespace sparsecond {

/// Which quantity the brute-force perturbation oracle differentiates.
struct BruteTarget {
    enum class Kind { det, inv_entry, solve_entry } kind = Kind::det;
    int k = 0;
    int l = 0;

    static BruteTarget det() { return {Kind::det, 0, 0}; }
    static BruteTarget inv_entry(int k, int l) { return {Kind::inv_entry, k, l}; }
    static BruteTarget solve_entry(int k) { return {Kind::solve_entry, k, 0}; }
};

struct BruteforceResult {
    double value = 0.0;   // estimate at the smallest step of the schedule
    double spread = 0.0;  // (max - min) / value across the schedule
};

namespace detail {

inline double brute_eval(const BruteTarget& t, const std::vector<double>& a, int n,
                         const std::vector<double>& b) {
    switch (t.kind) {
        case BruteTarget::Kind::det:
            return det_from_lu(lu_raw(a, n));
        case BruteTarget::Kind::inv_entry: {
            RawLU f = lu_raw(a, n);
            if (f.singular()) throw singular_error("bruteforce_cond: perturbed matrix singular");
            std::vector<double> e(static_cast<std::size_t>(n), 0.0);
            e[static_cast<std::size_t>(t.l)] = 1.0;
            return lu_solve(f, e)[static_cast<std::size_t>(t.k)];
        }
        default: {
            RawLU f = lu_raw(a, n);
            if (f.singular()) throw singular_error("bruteforce_cond: perturbed matrix singular");
            return lu_solve(f, b)[static_cast<std::size_t>(t.k)];
        }
    }
}

// Max over all sign vertices a'_ij = a_ij (1 +- delta) (and b'_k likewise for
// solve targets) of |F(A') - F(A)| / (delta |F(A)|).
inline double brute_at_delta(const BruteTarget& t, const Matrix& a,
                             const std::vector<double>* b, double delta) {
    const int n = a.n();
    const auto& support = a.pattern().support();
    const int sbits = static_cast<int>(support.size());
    const int bbits = t.kind == BruteTarget::Kind::solve_entry ? n : 0;
    const std::vector<double> base_b = b != nullptr ? *b : std::vector<double>();
    const double f0 = brute_eval(t, a.data(), n, base_b);
    if (f0 == 0.0)
        throw std::invalid_argument("bruteforce_cond: target value is zero at the base point");
    double worst = 0.0;
    std::vector<double> pa(a.data());
    std::vector<double> pb(base_b);
    const std::uint64_t vertices = std::uint64_t{1} << (sbits + bbits);
    for (std::uint64_t mask = 0; mask < vertices; ++mask) {
        for (int s = 0; s < sbits; ++s) {
            const auto& [i, j] = support[static_cast<std::size_t>(s)];
            const double f = (mask >> s) & 1u ? 1.0 + delta : 1.0 - delta;
            pa[at(i, j, n)] = a(i, j) * f;
        }
        for (int s = 0; s < bbits; ++s) {
            const double f = (mask >> (sbits + s)) & 1u ? 1.0 + delta : 1.0 - delta;
            pb[static_cast<std::size_t>(s)] = base_b[static_cast<std::size_t>(s)] * f;
        }
        const double fv = brute_eval(t, pa, n, pb);
        worst = std::max(worst, std::abs(fv - f0));
    }
    return worst / (delta * std::abs(f0));
}

}  // namespace detail

/// Finite-difference perturbation oracle for the closed-form condition
/// numbers: enumerates every sign vertex of the componentwise perturbation
/// box at each step of the schedule and reports the estimate at the smallest
/// step, with the relative spread across steps as a convergence diagnostic.
/// Size guard: |S| (plus n for solve targets) must not exceed 14.
inline BruteforceResult bruteforce_cond(
    const BruteTarget& target, const Matrix& a, const std::vector<double>* b = nullptr,
    const std::array<double, 3>& schedule = {1e-4, 1e-5, 1e-6}) {
    const int n = a.n();
    const int bbits = target.kind == BruteTarget::Kind::solve_entry ? n : 0;
    if (target.kind == BruteTarget::Kind::solve_entry && b == nullptr)
        throw std::invalid_argument("bruteforce_cond: solve target needs a right-hand side");
    if (a.pattern().size() + bbits > 14)
        throw std::invalid_argument("bruteforce_cond: |S| (+ n for solve) exceeds 14");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double smallest_delta = std::numeric_limits<double>::infinity();
    double value = 0.0;
    for (double delta : schedule) {
        if (!(delta > 0.0)) throw std::invalid_argument("bruteforce_cond: step must be > 0");
        const double v = detail::brute_at_delta(target, a, b, delta);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (delta < smallest_delta) {
            smallest_delta = delta;
            value = v;
        }
    }
    return {value, value > 0.0 ? (hi - lo) / value : 0.0};
}

}  // namespace sparsecond
