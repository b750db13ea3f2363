#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sparsecond/condition.hpp"
#include "sparsecond/refined.hpp"

namespace sparsecond {

/// Trials whose smallest pivot falls under this multiple of max|A| are
/// flagged near-singular: tail curves count them as exceeding every t and
/// expected-log means exclude but report them.
inline constexpr double kNearSingularFactor = 0x1.0p-50;

/// Working-precision unit roundoff (binary64).
inline constexpr double kUnitRoundoff = 0x1.0p-53;

namespace detail {

// Runs `per_trial(i)` for i in [0, trials) and returns the results indexed
// by trial. Workers pull indices from a shared counter; because every write
// lands at its own index and each trial is a pure function of its index,
// the output is identical for any worker count.
template <typename T, typename Fn>
std::vector<T> run_trials(std::uint64_t trials, int threads, Fn&& per_trial) {
    std::vector<T> out(static_cast<std::size_t>(trials));
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < trials; ++i)
            out[static_cast<std::size_t>(i)] = per_trial(i);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= trials) return;
            out[static_cast<std::size_t>(i)] = per_trial(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace detail

/// Which condition number a random-ensemble experiment samples.
enum class ExpTarget { det, inv, solve };

/// One Monte Carlo trial's outputs.
struct TrialRecord {
    std::uint64_t trial_index = 0;
    double value = 0.0;        // condition value when tag_finite
    bool tag_finite = true;    // false: singular sample (Zero or Infinite cond)
    bool tag_infinite = false;
    bool near_singular = false;
    double min_pivot_mag = 0.0;
};

/// Empirical tail frequencies against a theorem's bound over a t grid.
struct TailCurve {
    std::vector<double> t_grid;
    std::vector<double> empirical;
    std::vector<double> bound;
    std::uint64_t trials = 0;
    std::uint64_t near_singular = 0;
};

/// Sample mean of log_plus of one condition number against its bound.
struct ExpLogRow {
    int n = 0;
    double mean_logplus = 0.0;
    double bound = 0.0;
    std::uint64_t trials = 0;
    double base = 2.0;
    std::uint64_t near_singular = 0;
    std::uint64_t nonfinite = 0;
};

/// Ordinary least squares fit of y against x.
struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::vector<std::pair<double, double>> points;
};

/// Per-size slope-experiment summary (x axis is log2 n).
struct SlopePoint {
    int n = 0;
    double mean_log2 = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t excluded = 0;
};

/// Both inversion targets measured on the same samples.
struct SlopeData {
    std::vector<SlopePoint> comp;
    std::vector<SlopePoint> mixed;
};

enum class SlopeTarget { inv_comp, inv_mixed };

struct KappaRow {
    int n = 0;
    double mean_kappa_root = 0.0;  // mean of kappa^(1/n)
    double mean_log2_kappa = 0.0;
    std::uint64_t trials = 0;
};

struct AccuracyRecord {
    std::uint64_t trial = 0;
    double observed = 0.0;   // componentwise distance of substitution vs reference
    double predictor = 0.0;  // c(T,b) * (n+1) * u
    double ratio = 0.0;
    double log2_kappa = 0.0;
    bool flagged = false;
};

/// E(log Z) <= log_base(t0) + 1/ln(base) for a variable with tail
/// Prob{Z >= t} <= t0/t.
inline double expected_log_bound(double t0, double base) {
    if (!(t0 > 0.0)) throw std::invalid_argument("expected_log_bound: t0 must be > 0");
    if (!(base > 1.0)) throw std::invalid_argument("expected_log_bound: base must be > 1");
    return std::log(t0) / std::log(base) + 1.0 / std::log(base);
}

namespace detail {

inline double tail_t0(ExpTarget which, int n, int s) {
    const double ds = static_cast<double>(s);
    const double dn = static_cast<double>(n);
    switch (which) {
        case ExpTarget::det: return ds * ds;
        case ExpTarget::inv: return 4.0 * ds * ds * dn * dn;
        default: return 10.0 * ds * ds * dn;
    }
}

inline double tail_threshold(ExpTarget which, int n, int s) {
    return which == ExpTarget::solve ? 2.0 * static_cast<double>(s + n)
                                     : 2.0 * static_cast<double>(s);
}

// Samples one trial and evaluates the requested condition number, sharing a
// single inversion per trial. The right-hand side, when needed, continues
// the same per-trial stream after the matrix entries.
inline TrialRecord sample_cond_trial(ExpTarget which, const PatternPtr& pattern,
                                     std::uint64_t master_seed, std::uint64_t trial) {
    CounterRng rng(SeedSpec{master_seed, trial});
    const Matrix a = sample_matrix(pattern, rng);
    std::vector<double> b;
    if (which == ExpTarget::solve) b = sample_vector(a.n(), rng);

    TrialRecord rec;
    rec.trial_index = trial;
    const InverseDiagnostics d = inverse_with_diagnostics(a);
    rec.min_pivot_mag = d.min_pivot_mag;
    rec.near_singular = d.min_pivot_mag < kNearSingularFactor * a.max_abs();
    if (d.singular) {
        // Probability-zero event on full-structural-rank patterns; fold the
        // three-way determinant tag in, anything else counts as infinite.
        rec.tag_finite = false;
        rec.tag_infinite = which != ExpTarget::det || cond_det(a).is_infinite();
        return rec;
    }
    switch (which) {
        case ExpTarget::det:
            rec.value = sum_support_products(a, d.gamma);
            break;
        case ExpTarget::inv: {
            const CondInvResult r =
                cond_inv_from(skeel_inv_numerators(d.gamma, a), d.gamma, a.n());
            if (r.value.is_infinite()) {
                rec.tag_finite = false;
                rec.tag_infinite = true;
            } else {
                rec.value = r.value.as_double();
            }
            break;
        }
        default: {
            const std::vector<double> x = solve(a, b);
            const CondSolveResult r =
                cond_solve_from(skeel_solve_numerators(d.gamma, a, x, b), x);
            if (r.value.is_infinite()) {
                rec.tag_finite = false;
                rec.tag_infinite = true;
            } else {
                rec.value = r.value.as_double();
            }
            break;
        }
    }
    return rec;
}

inline void require_full_rank(const Pattern& p) {
    if (!p.full_structural_rank())
        throw vacuous_pattern_error(
            "pattern is structurally singular (structural rank " +
            std::to_string(p.structural_rank()) + " < n = " + std::to_string(p.n()) +
            "): every sample is singular and the experiment is vacuous");
}

}  // namespace detail

/// Monte Carlo tail verification: empirical frequency of {cond >= t} against
/// the matching theorem bound (|S|^2/t, 4|S|^2 n^2/t or 10|S|^2 n/t, clamped
/// to 1). Infinite and near-singular trials count as exceeding every t.
inline TailCurve tail_experiment(ExpTarget which, const PatternPtr& pattern,
                                 std::uint64_t trials, std::vector<double> t_grid,
                                 std::uint64_t master_seed, int threads = 1) {
    detail::require_full_rank(*pattern);
    if (trials == 0) throw std::invalid_argument("tail_experiment: trials must be > 0");
    if (t_grid.empty()) throw std::invalid_argument("tail_experiment: empty t grid");
    std::sort(t_grid.begin(), t_grid.end());
    const double threshold =
        detail::tail_threshold(which, pattern->n(), pattern->size());
    if (t_grid.front() < threshold)
        throw std::invalid_argument("tail_experiment: t = " + std::to_string(t_grid.front()) +
                                    " is below the theorem threshold " +
                                    std::to_string(threshold));
    const std::vector<TrialRecord> recs = detail::run_trials<TrialRecord>(
        trials, threads, [&](std::uint64_t i) {
            return detail::sample_cond_trial(which, pattern, master_seed, i);
        });

    TailCurve curve;
    curve.t_grid = std::move(t_grid);
    curve.trials = trials;
    curve.empirical.resize(curve.t_grid.size());
    curve.bound.resize(curve.t_grid.size());
    for (std::size_t ti = 0; ti < curve.t_grid.size(); ++ti) {
        const double t = curve.t_grid[ti];
        std::uint64_t count = 0;
        for (const TrialRecord& r : recs)
            if (r.near_singular || r.tag_infinite || (r.tag_finite && r.value >= t)) ++count;
        curve.empirical[ti] = static_cast<double>(count) / static_cast<double>(trials);
        curve.bound[ti] =
            std::min(1.0, detail::tail_t0(which, pattern->n(), pattern->size()) / t);
    }
    for (const TrialRecord& r : recs)
        if (r.near_singular) ++curve.near_singular;
    return curve;
}

/// Sample mean of log_plus(cond) in the given base, with the matching
/// expected-log corollary bound. Near-singular and singular trials are
/// excluded from the mean and reported in the row.
inline ExpLogRow expected_log_experiment(ExpTarget which, const PatternPtr& pattern,
                                         std::uint64_t trials, double base,
                                         std::uint64_t master_seed, int threads = 1) {
    detail::require_full_rank(*pattern);
    if (trials == 0) throw std::invalid_argument("expected_log_experiment: trials must be > 0");
    if (!(base > 1.0)) throw std::invalid_argument("expected_log_experiment: base must be > 1");
    const std::vector<TrialRecord> recs = detail::run_trials<TrialRecord>(
        trials, threads, [&](std::uint64_t i) {
            return detail::sample_cond_trial(which, pattern, master_seed, i);
        });
    ExpLogRow row;
    row.n = pattern->n();
    row.trials = trials;
    row.base = base;
    row.bound = expected_log_bound(
        detail::tail_t0(which, pattern->n(), pattern->size()), base);
    const double logb = std::log(base);
    double sum = 0.0;
    std::uint64_t included = 0;
    for (const TrialRecord& r : recs) {
        if (!r.tag_finite) {
            ++row.nonfinite;
        } else if (r.near_singular) {
            ++row.near_singular;
        } else {
            if (r.value >= 1.0) sum += std::log(r.value) / logb;
            ++included;
        }
    }
    row.mean_logplus = included > 0 ? sum / static_cast<double>(included) : 0.0;
    return row;
}

/// Tail of |x^T p / x^T q| for Gaussian x against the 1/t bound, valid when
/// ||p||_2 <= ||q||_2 and t >= 2.
inline TailCurve stail_experiment(const std::vector<double>& p, const std::vector<double>& q,
                                  std::uint64_t trials, std::vector<double> t_grid,
                                  std::uint64_t master_seed, int threads = 1) {
    if (p.empty() || p.size() != q.size())
        throw std::invalid_argument("stail_experiment: p and q must be nonempty, equal length");
    if (norm2(p) > norm2(q))
        throw std::invalid_argument("stail_experiment: requires ||p||_2 <= ||q||_2");
    if (trials == 0) throw std::invalid_argument("stail_experiment: trials must be > 0");
    if (t_grid.empty()) throw std::invalid_argument("stail_experiment: empty t grid");
    std::sort(t_grid.begin(), t_grid.end());
    if (t_grid.front() < 2.0)
        throw std::invalid_argument("stail_experiment: t grid must start at >= 2");
    const int n = static_cast<int>(p.size());
    const std::vector<double> ratios = detail::run_trials<double>(
        trials, threads, [&](std::uint64_t i) {
            const std::vector<double> x = sample_vector(n, SeedSpec{master_seed, i});
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < p.size(); ++j) {
                num += x[j] * p[j];
                den += x[j] * q[j];
            }
            if (den != 0.0) return std::abs(num / den);
            return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        });
    TailCurve curve;
    curve.t_grid = std::move(t_grid);
    curve.trials = trials;
    curve.empirical.resize(curve.t_grid.size());
    curve.bound.resize(curve.t_grid.size());
    for (std::size_t ti = 0; ti < curve.t_grid.size(); ++ti) {
        std::uint64_t count = 0;
        for (double r : ratios)
            if (r >= curve.t_grid[ti]) ++count;
        curve.empirical[ti] = static_cast<double>(count) / static_cast<double>(trials);
        curve.bound[ti] = std::min(1.0, 1.0 / curve.t_grid[ti]);
    }
    return curve;
}

/// Least-squares line through (x, y) points.
inline RegressionFit ols_fit(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2)
        throw std::invalid_argument("ols_fit: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols_fit: x values are all identical");
    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(points.size()));
    fit.points = std::move(points);
    return fit;
}

/// Per-size means of log2 c-dagger and log2 m-dagger over lower-triangular
/// samples; both targets come from the same matrices. Trial streams are
/// blocked per size: trial t of size index s uses trial_index s*trials + t.
inline SlopeData slope_data(std::vector<int> sizes, std::uint64_t trials,
                            std::uint64_t master_seed, int threads = 1) {
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (sizes.size() < 2)
        throw std::invalid_argument("slope_data: fewer than 2 distinct sizes");
    if (trials == 0) throw std::invalid_argument("slope_data: trials must be > 0");

    struct PairOutcome {
        double log2_comp = 0.0;
        double log2_mixed = 0.0;
        bool excluded = false;
    };

    SlopeData data;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const int n = sizes[si];
        if (n < 1) throw std::invalid_argument("slope_data: sizes must be >= 1");
        const PatternPtr pattern = make_pattern(PatternKind::lower_triangular, n);
        const std::uint64_t offset = static_cast<std::uint64_t>(si) * trials;
        const std::vector<PairOutcome> recs = detail::run_trials<PairOutcome>(
            trials, threads, [&](std::uint64_t i) {
                const Matrix a = sample_matrix(pattern, SeedSpec{master_seed, offset + i});
                PairOutcome out;
                const InverseDiagnostics d = inverse_with_diagnostics(a);
                if (d.singular ||
                    d.min_pivot_mag < kNearSingularFactor * a.max_abs()) {
                    out.excluded = true;
                    return out;
                }
                const std::vector<double> numer =
                    detail::skeel_inv_numerators(d.gamma, a);
                const CondInvResult comp = detail::cond_inv_from(numer, d.gamma, n);
                if (!comp.value.is_finite()) {
                    out.excluded = true;
                    return out;
                }
                out.log2_comp = std::log2(comp.value.value());
                out.log2_mixed = std::log2(detail::mixed_inv_from(numer, d.gamma));
                return out;
            });
        SlopePoint comp{n, 0.0, trials, 0}, mixed{n, 0.0, trials, 0};
        double sc = 0.0, sm = 0.0;
        std::uint64_t included = 0;
        for (const PairOutcome& r : recs) {
            if (r.excluded) {
                ++comp.excluded;
                ++mixed.excluded;
            } else {
                sc += r.log2_comp;
                sm += r.log2_mixed;
                ++included;
            }
        }
        comp.mean_log2 = included > 0 ? sc / static_cast<double>(included) : 0.0;
        mixed.mean_log2 = included > 0 ? sm / static_cast<double>(included) : 0.0;
        data.comp.push_back(comp);
        data.mixed.push_back(mixed);
    }
    return data;
}

inline RegressionFit fit_slope(const std::vector<SlopePoint>& points) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(points.size());
    for (const SlopePoint& p : points)
        xy.emplace_back(std::log2(static_cast<double>(p.n)), p.mean_log2);
    return ols_fit(std::move(xy));
}

/// OLS fit of mean log2 cond against log2 n for one inversion target.
inline RegressionFit slope_experiment(SlopeTarget which, const std::vector<int>& sizes,
                                      std::uint64_t trials, std::uint64_t master_seed,
                                      int threads = 1) {
    const SlopeData data = slope_data(sizes, trials, master_seed, threads);
    return fit_slope(which == SlopeTarget::inv_comp ? data.comp : data.mixed);
}

/// Normwise growth: per-size means of kappa_inf^(1/n) and log2 kappa_inf
/// over lower-triangular samples.
inline std::vector<KappaRow> kappa_experiment(std::vector<int> sizes, std::uint64_t trials,
                                              std::uint64_t master_seed, int threads = 1) {
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (sizes.empty()) throw std::invalid_argument("kappa_experiment: no sizes");
    if (trials == 0) throw std::invalid_argument("kappa_experiment: trials must be > 0");

    struct KOut {
        double root = 0.0;
        double log2k = 0.0;
        bool excluded = false;
    };

    std::vector<KappaRow> rows;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const int n = sizes[si];
        if (n < 1) throw std::invalid_argument("kappa_experiment: sizes must be >= 1");
        const PatternPtr pattern = make_pattern(PatternKind::lower_triangular, n);
        const std::uint64_t offset = static_cast<std::uint64_t>(si) * trials;
        const std::vector<KOut> recs = detail::run_trials<KOut>(
            trials, threads, [&](std::uint64_t i) {
                const Matrix a = sample_matrix(pattern, SeedSpec{master_seed, offset + i});
                KOut out;
                const InverseDiagnostics d = inverse_with_diagnostics(a);
                if (d.singular) {
                    out.excluded = true;
                    return out;
                }
                double gnorm = 0.0;
                for (int r = 0; r < n; ++r) {
                    double s = 0.0;
                    for (int c = 0; c < n; ++c) s += std::abs(d.gamma[detail::at(r, c, n)]);
                    gnorm = std::max(gnorm, s);
                }
                out.log2k = std::log2(a.norm_inf()) + std::log2(gnorm);
                out.root = std::exp2(out.log2k / static_cast<double>(n));
                return out;
            });
        KappaRow row{n, 0.0, 0.0, trials};
        double sr = 0.0, sl = 0.0;
        std::uint64_t included = 0;
        for (const KOut& r : recs)
            if (!r.excluded) {
                sr += r.root;
                sl += r.log2k;
                ++included;
            }
        if (included > 0) {
            row.mean_kappa_root = sr / static_cast<double>(included);
            row.mean_log2_kappa = sl / static_cast<double>(included);
        }
        rows.push_back(row);
    }
    return rows;
}

/// Forward-error audit of plain substitution on random lower-triangular
/// systems: observed componentwise error against the reference solve,
/// side by side with the predictor c(T,b) * (n+1) * u.
inline std::vector<AccuracyRecord> accuracy_experiment(int n, std::uint64_t trials,
                                                       std::uint64_t master_seed,
                                                       int threads = 1) {
    if (n < 1) throw std::invalid_argument("accuracy_experiment: n must be >= 1");
    if (trials == 0) throw std::invalid_argument("accuracy_experiment: trials must be > 0");
    const PatternPtr pattern = make_pattern(PatternKind::lower_triangular, n);
    return detail::run_trials<AccuracyRecord>(trials, threads, [&](std::uint64_t i) {
        CounterRng rng(SeedSpec{master_seed, i});
        const Matrix t = sample_matrix(pattern, rng);
        const std::vector<double> b = sample_vector(n, rng);
        AccuracyRecord rec;
        rec.trial = i;
        const InverseDiagnostics d = inverse_with_diagnostics(t);
        if (d.singular) {
            rec.flagged = true;
            return rec;
        }
        if (d.min_pivot_mag < kNearSingularFactor * t.max_abs()) rec.flagged = true;
        const std::vector<double> xhat = detail::forward_subst(t.data(), n, b);
        const std::vector<double> xref = detail::dd_forward_subst(t.data(), n, b);
        rec.observed = comp_distance(xhat, xref);
        const CondSolveResult c = detail::cond_solve_from(
            detail::skeel_solve_numerators(d.gamma, t, xhat, b), xhat);
        if (!c.value.is_finite()) {
            rec.flagged = true;
            return rec;
        }
        rec.predictor = c.value.value() * static_cast<double>(n + 1) * kUnitRoundoff;
        rec.ratio = rec.predictor > 0.0
                        ? rec.observed / rec.predictor
                        : std::numeric_limits<double>::infinity();
        double gnorm = 0.0;
        for (int r = 0; r < n; ++r) {
            double s = 0.0;
            for (int col = 0; col < n; ++col) s += std::abs(d.gamma[detail::at(r, col, n)]);
            gnorm = std::max(gnorm, s);
        }
        rec.log2_kappa = std::log2(t.norm_inf()) + std::log2(gnorm);
        if (!std::isfinite(rec.observed)) rec.flagged = true;
        return rec;
    });
}

}  // namespace sparsecond
