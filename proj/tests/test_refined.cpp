#include <catch2/catch.hpp>

#include <cmath>

#include "sparsecond/condition.hpp"
#include "sparsecond/refined.hpp"

using namespace sparsecond;

TEST_CASE("refined solve is exact on an integer system") {
    const Matrix a(make_pattern(PatternKind::dense, 2), {2, 1, 1, 1});
    const std::vector<double> x = refined_solve(a, {3, 2});
    REQUIRE(x[0] == 1.0);
    REQUIRE(x[1] == 1.0);
}

TEST_CASE("refined solve on the identity returns the rhs") {
    Matrix eye(make_pattern(PatternKind::band, 4, 0));
    for (int i = 0; i < 4; ++i) eye.set(i, i, 1.0);
    const std::vector<double> b{0.25, -3.5, 7.0, 11.5};
    REQUIRE(refined_solve(eye, b) == b);
}

TEST_CASE("refined and plain substitution differ by at most the predicted error") {
    const int n = 50;
    const PatternPtr p = make_pattern(PatternKind::lower_triangular, n);
    for (std::uint64_t t = 0; t < 20; ++t) {
        CounterRng rng(SeedSpec{8080, t});
        const Matrix l = sample_matrix(p, rng);
        const std::vector<double> b = sample_vector(n, rng);
        const std::vector<double> xr = refined_solve(l, b);
        const std::vector<double> xs = triangular_solve(l, b);
        const CondSolveResult c = cond_solve(l, b);
        REQUIRE(c.value.is_finite());
        REQUIRE(comp_distance(xs, xr) <= 1e3 * 0x1.0p-53 * c.value.value());
    }
}

TEST_CASE("refined solve handles general dense systems") {
    const PatternPtr p = make_pattern(PatternKind::dense, 8);
    for (std::uint64_t t = 0; t < 10; ++t) {
        CounterRng rng(SeedSpec{777, t});
        const Matrix a = sample_matrix(p, rng);
        const std::vector<double> b = sample_vector(8, rng);
        const std::vector<double> x = refined_solve(a, b);
        // Residual at working precision must be tiny relative to the data.
        double resid = 0.0;
        for (int i = 0; i < 8; ++i) {
            double s = -b[static_cast<std::size_t>(i)];
            for (int j = 0; j < 8; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
            resid = std::max(resid, std::abs(s));
        }
        REQUIRE(resid <= 1e-12 * (a.norm_inf() * norm_inf(x) + norm_inf(b)));
    }
}
