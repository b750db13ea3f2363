#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "sparsecond/experiments.hpp"

namespace sparsecond {

/// Shortest lossless decimal for a double (17 significant digits).
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// CSV schemas are stable: exact headers, one row per grid point / size /
// trial, LF endings, values printed losslessly. Identical inputs produce
// byte-identical files regardless of worker count.

inline void write_tail_csv(std::ostream& os, const TailCurve& c) {
    os << "t,empirical,bound,trials,near_singular\n";
    for (std::size_t i = 0; i < c.t_grid.size(); ++i)
        os << fmt_g17(c.t_grid[i]) << ',' << fmt_g17(c.empirical[i]) << ','
           << fmt_g17(c.bound[i]) << ',' << c.trials << ',' << c.near_singular << '\n';
}

inline void write_explog_csv(std::ostream& os, const std::vector<ExpLogRow>& rows) {
    os << "n,mean_logplus,bound,trials,base\n";
    for (const ExpLogRow& r : rows)
        os << r.n << ',' << fmt_g17(r.mean_logplus) << ',' << fmt_g17(r.bound) << ','
           << r.trials << ',' << fmt_g17(r.base) << '\n';
}

inline void write_stail_csv(std::ostream& os, const TailCurve& c) {
    os << "t,empirical,bound,trials\n";
    for (std::size_t i = 0; i < c.t_grid.size(); ++i)
        os << fmt_g17(c.t_grid[i]) << ',' << fmt_g17(c.empirical[i]) << ','
           << fmt_g17(c.bound[i]) << ',' << c.trials << '\n';
}

inline void write_slope_csv(std::ostream& os, const std::vector<SlopePoint>& points,
                            const RegressionFit& fit) {
    os << "n,mean_log2,trials\n";
    for (const SlopePoint& p : points)
        os << p.n << ',' << fmt_g17(p.mean_log2) << ',' << p.trials << '\n';
    os << "# slope=" << fmt_g17(fit.slope) << " intercept=" << fmt_g17(fit.intercept)
       << " rms=" << fmt_g17(fit.residual_rms) << '\n';
}

inline void write_kappa_csv(std::ostream& os, const std::vector<KappaRow>& rows) {
    os << "n,mean_kappa_root,mean_log2_kappa,trials\n";
    for (const KappaRow& r : rows)
        os << r.n << ',' << fmt_g17(r.mean_kappa_root) << ','
           << fmt_g17(r.mean_log2_kappa) << ',' << r.trials << '\n';
}

inline void write_accuracy_csv(std::ostream& os, const std::vector<AccuracyRecord>& recs) {
    os << "trial,observed,predictor,ratio\n";
    for (const AccuracyRecord& r : recs)
        os << r.trial << ',' << fmt_g17(r.observed) << ',' << fmt_g17(r.predictor) << ','
           << fmt_g17(r.ratio) << '\n';
}

}  // namespace sparsecond
