#include <catch2/catch.hpp>

#include <cmath>

#include "sparsecond/matrix.hpp"
#include "sparsecond/rng.hpp"

using namespace sparsecond;

TEST_CASE("identical seed specs reproduce the stream exactly") {
    CounterRng a(SeedSpec{42, 7});
    CounterRng b(SeedSpec{42, 7});
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_normal() == b.next_normal());
}

TEST_CASE("distinct trial indices give distinct draws") {
    const std::vector<double> u = sample_vector(3, SeedSpec{5, 0});
    const std::vector<double> v = sample_vector(3, SeedSpec{5, 1});
    REQUIRE(u != v);
}

TEST_CASE("single-element vector sampling works") {
    const std::vector<double> v = sample_vector(1, SeedSpec{0, 0});
    REQUIRE(v.size() == 1);
    REQUIRE(std::isfinite(v[0]));
}

TEST_CASE("sample_matrix is deterministic and respects the pattern") {
    const PatternPtr p = make_pattern(PatternKind::lower_triangular, 6);
    const Matrix a = sample_matrix(p, SeedSpec{11, 3});
    const Matrix b = sample_matrix(p, SeedSpec{11, 3});
    REQUIRE(a.data() == b.data());
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) REQUIRE(a(i, j) == 0.0);
}

TEST_CASE("empty support samples to the zero matrix") {
    const PatternPtr p = share_pattern(Pattern(3, {}));
    const Matrix a = sample_matrix(p, SeedSpec{9, 0});
    for (double v : a.data()) REQUIRE(v == 0.0);
}

TEST_CASE("normal draws have standard moments") {
    // Dense 2x2 over 1e5 trials: mean within 0.02, variance within 0.03.
    const PatternPtr p = make_pattern(PatternKind::dense, 2);
    const int trials = 100000;
    double sum[4] = {0, 0, 0, 0};
    double sumsq[4] = {0, 0, 0, 0};
    for (int t = 0; t < trials; ++t) {
        const Matrix a = sample_matrix(p, SeedSpec{2024, static_cast<std::uint64_t>(t)});
        for (int e = 0; e < 4; ++e) {
            const double v = a.data()[static_cast<std::size_t>(e)];
            sum[e] += v;
            sumsq[e] += v * v;
        }
    }
    for (int e = 0; e < 4; ++e) {
        const double mean = sum[e] / trials;
        const double var = sumsq[e] / trials - mean * mean;
        REQUIRE(std::abs(mean) < 0.02);
        REQUIRE(std::abs(var - 1.0) < 0.03);
    }
}
