#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

#include "sparsecond/csv.hpp"
#include "sparsecond/experiments.hpp"

using namespace sparsecond;

TEST_CASE("expected_log_bound closed form") {
    REQUIRE(expected_log_bound(55.0 * 55.0, 2.0) == Approx(13.0054).margin(5e-4));
    REQUIRE(expected_log_bound(1.0, std::exp(1.0)) == Approx(1.0));
    REQUIRE(expected_log_bound(100.0, 10.0) == Approx(2.4343).margin(5e-4));
    REQUIRE_THROWS_AS(expected_log_bound(0.0, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(expected_log_bound(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("ols fit of an exact line") {
    const RegressionFit f = ols_fit({{0, 1}, {1, 2}});
    REQUIRE(f.slope == Approx(1.0));
    REQUIRE(f.intercept == Approx(1.0));
    REQUIRE(f.residual_rms == Approx(0.0).margin(1e-15));
}

TEST_CASE("ols normal equations hold") {
    const RegressionFit f = ols_fit({{1, 2.3}, {2, 3.1}, {3, 5.2}, {4, 6.0}, {5, 8.5}});
    double sr = 0.0, srx = 0.0, scale = 0.0;
    for (const auto& [x, y] : f.points) {
        const double r = y - (f.slope * x + f.intercept);
        sr += r;
        srx += r * x;
        scale += std::abs(y);
    }
    REQUIRE(std::abs(sr) <= 1e-10 * scale);
    REQUIRE(std::abs(srx) <= 1e-10 * scale * 5);
}

TEST_CASE("tail experiment validates inputs") {
    const PatternPtr deficient = share_pattern(Pattern(2, {{0, 0}, {0, 1}}));
    REQUIRE_THROWS_AS(tail_experiment(ExpTarget::det, deficient, 10, {1e5}, 0),
                      vacuous_pattern_error);
    const PatternPtr lower = make_pattern(PatternKind::lower_triangular, 4);
    REQUIRE_THROWS_AS(tail_experiment(ExpTarget::det, lower, 10, {1.0}, 0),
                      std::invalid_argument);  // below 2|S| = 20
    REQUIRE_THROWS_AS(tail_experiment(ExpTarget::solve, lower, 10, {20.0}, 0),
                      std::invalid_argument);  // below 2(|S|+n) = 28
}

TEST_CASE("tail curve bounds clamp at one and frequencies decrease") {
    const PatternPtr lower = make_pattern(PatternKind::lower_triangular, 4);
    const TailCurve c =
        tail_experiment(ExpTarget::det, lower, 500, {20.0, 100.0, 1000.0, 1e6}, 21);
    REQUIRE(c.bound[0] == 1.0);  // 100/20 clamped
    for (std::size_t i = 0; i + 1 < c.empirical.size(); ++i)
        REQUIRE(c.empirical[i] >= c.empirical[i + 1]);
    for (std::size_t i = 0; i < c.empirical.size(); ++i) {
        REQUIRE(c.empirical[i] >= 0.0);
        REQUIRE(c.empirical[i] <= 1.0);
    }
}

TEST_CASE("expected log experiment stays under its bound at small size") {
    const PatternPtr lower = make_pattern(PatternKind::lower_triangular, 6);
    const ExpLogRow row = expected_log_experiment(ExpTarget::det, lower, 2000, 2.0, 7);
    REQUIRE(row.mean_logplus <= row.bound);
    REQUIRE(row.n == 6);
    REQUIRE(row.trials == 2000);
}

TEST_CASE("stail ratio is degenerate when p equals q") {
    const TailCurve c = stail_experiment({1, 0, 0}, {1, 0, 0}, 2000, {2, 4}, 5);
    REQUIRE(c.empirical[0] == 0.0);
    REQUIRE(c.empirical[1] == 0.0);
}

TEST_CASE("stail validates the norm ordering and grid") {
    REQUIRE_THROWS_AS(stail_experiment({2, 0}, {1, 0}, 100, {2}, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(stail_experiment({0, 1}, {1, 0}, 100, {1.5}, 0), std::invalid_argument);
}

TEST_CASE("slope data validates sizes") {
    REQUIRE_THROWS_AS(slope_data({10}, 10, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(slope_data({10, 10}, 10, 0), std::invalid_argument);
}

TEST_CASE("kappa of a scalar is one") {
    const std::vector<KappaRow> rows = kappa_experiment({1}, 20, 3);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].mean_kappa_root == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("accuracy experiment on the identity-free trivial path") {
    // Small run sanity: fields populated, no flags expected at n = 20.
    const std::vector<AccuracyRecord> recs = accuracy_experiment(20, 50, 17);
    REQUIRE(recs.size() == 50);
    for (const AccuracyRecord& r : recs) {
        REQUIRE_FALSE(r.flagged);
        REQUIRE(r.predictor > 0.0);
        REQUIRE(std::isfinite(r.observed));
    }
}

TEST_CASE("experiments are byte-identical across worker counts") {
    const PatternPtr lower = make_pattern(PatternKind::lower_triangular, 8);

    std::ostringstream a1, a8;
    write_tail_csv(a1, tail_experiment(ExpTarget::det, lower, 400, {100, 1000}, 99, 1));
    write_tail_csv(a8, tail_experiment(ExpTarget::det, lower, 400, {100, 1000}, 99, 8));
    REQUIRE(a1.str() == a8.str());

    std::ostringstream b1, b8;
    write_explog_csv(b1, {expected_log_experiment(ExpTarget::inv, lower, 300, 2.0, 5, 1)});
    write_explog_csv(b8, {expected_log_experiment(ExpTarget::inv, lower, 300, 2.0, 5, 8)});
    REQUIRE(b1.str() == b8.str());

    const SlopeData s1 = slope_data({6, 12}, 40, 3, 1);
    const SlopeData s8 = slope_data({6, 12}, 40, 3, 8);
    std::ostringstream c1, c8;
    write_slope_csv(c1, s1.comp, fit_slope(s1.comp));
    write_slope_csv(c8, s8.comp, fit_slope(s8.comp));
    REQUIRE(c1.str() == c8.str());
}

TEST_CASE("csv writers emit the exact headers") {
    const PatternPtr lower = make_pattern(PatternKind::lower_triangular, 4);
    std::ostringstream os;
    write_tail_csv(os, tail_experiment(ExpTarget::det, lower, 50, {100}, 1));
    REQUIRE(os.str().rfind("t,empirical,bound,trials,near_singular\n", 0) == 0);

    std::ostringstream os2;
    write_explog_csv(os2, {expected_log_experiment(ExpTarget::det, lower, 50, 2.0, 1)});
    REQUIRE(os2.str().rfind("n,mean_logplus,bound,trials,base\n", 0) == 0);

    std::ostringstream os3;
    write_stail_csv(os3, stail_experiment({0, 1}, {1, 0}, 50, {2}, 1));
    REQUIRE(os3.str().rfind("t,empirical,bound,trials\n", 0) == 0);

    const SlopeData sd = slope_data({4, 8}, 20, 1);
    std::ostringstream os4;
    write_slope_csv(os4, sd.comp, fit_slope(sd.comp));
    REQUIRE(os4.str().rfind("n,mean_log2,trials\n", 0) == 0);
    REQUIRE(os4.str().find("# slope=") != std::string::npos);

    std::ostringstream os5;
    write_kappa_csv(os5, kappa_experiment({4}, 10, 1));
    REQUIRE(os5.str().rfind("n,mean_kappa_root,mean_log2_kappa,trials\n", 0) == 0);

    std::ostringstream os6;
    write_accuracy_csv(os6, accuracy_experiment(5, 5, 1));
    REQUIRE(os6.str().rfind("trial,observed,predictor,ratio\n", 0) == 0);
}
