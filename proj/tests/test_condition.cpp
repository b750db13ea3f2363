#include <catch2/catch.hpp>

#include <cmath>
#include <limits>

#include "sparsecond/condition.hpp"

using namespace sparsecond;

namespace {

Matrix golden() { return Matrix(make_pattern(PatternKind::dense, 2), {2, 1, 1, 1}); }

Matrix identity(int n) {
    Matrix m(make_pattern(PatternKind::band, n, 0));
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("componentwise distance cases") {
    REQUIRE(comp_distance({3, -1}, {3, -1}) == 0.0);
    REQUIRE(comp_distance({1, 0}, {2, 0}) == 0.5);
    REQUIRE(comp_distance({1, 1}, {1, 0}) == kInf);
    REQUIRE_THROWS_AS(comp_distance({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("cond_det golden values") {
    REQUIRE(cond_det(identity(5)).value() == 5.0);
    REQUIRE(cond_det(golden()).value() == Approx(6.0).epsilon(1e-12));
}

TEST_CASE("cond_det tags singular inputs") {
    // Structurally singular sample: Zero.
    const PatternPtr p = share_pattern(Pattern(2, {{0, 0}, {0, 1}}));
    REQUIRE(cond_det(sample_matrix(p, SeedSpec{1, 0})).is_zero());
    // Zero matrix: Zero.
    REQUIRE(cond_det(Matrix(make_pattern(PatternKind::dense, 2))).is_zero());
    // Numerically singular but movable determinant: Infinite.
    REQUIRE(cond_det(Matrix(make_pattern(PatternKind::dense, 2), {1, 1, 1, 1})).is_infinite());
}

TEST_CASE("cond_inv_entry table of the golden example") {
    const Matrix a = golden();
    const double expect[2][2] = {{5, 7}, {7, 5}};
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            REQUIRE(cond_inv_entry(a, k, l).value() ==
                    Approx(expect[k][l]).epsilon(1e-12));
}

TEST_CASE("cond_inv_entry on identity and diagonals") {
    const Matrix eye = identity(4);
    for (int k = 0; k < 4; ++k) REQUIRE(cond_inv_entry(eye, k, k).value() == Approx(1.0));
    REQUIRE(cond_inv_entry(eye, 0, 2).is_zero());
    Matrix d(make_pattern(PatternKind::band, 2, 0));
    d.set(0, 0, 2.0);
    d.set(1, 1, 5.0);
    REQUIRE(cond_inv_entry(d, 0, 0).value() == Approx(1.0));
}

TEST_CASE("cond_inv maximum and argmax") {
    const CondInvResult r = cond_inv(golden());
    REQUIRE(r.value.value() == Approx(7.0).epsilon(1e-12));
    REQUIRE(r.k == 0);
    REQUIRE(r.l == 1);
    REQUIRE(cond_inv(identity(3)).value.value() == Approx(1.0));
    Matrix d(make_pattern(PatternKind::band, 3, 0));
    d.set(0, 0, 3.0);
    d.set(1, 1, -0.5);
    d.set(2, 2, 7.0);
    REQUIRE(cond_inv(d).value.value() == Approx(1.0));
}

TEST_CASE("mixed_inv golden values and domination") {
    REQUIRE(mixed_inv(golden()).value() == Approx(5.0).epsilon(1e-12));
    REQUIRE(mixed_inv(identity(6)).value() == Approx(1.0));
    const PatternPtr p = make_pattern(PatternKind::dense, 4);
    for (std::uint64_t t = 0; t < 50; ++t) {
        const Matrix a = sample_matrix(p, SeedSpec{31, t});
        const CondInvResult c = cond_inv(a);
        const CondValue m = mixed_inv(a);
        if (c.value.is_finite() && m.is_finite())
            REQUIRE(m.value() <= c.value.value() * (1 + 1e-12));
    }
}

TEST_CASE("cond_inv_bound on the golden example") {
    const Matrix a = golden();
    REQUIRE(cond_inv_bound(a, 0, 1).value() == Approx(7.0).epsilon(1e-12));
    REQUIRE(cond_inv_entry(a, 0, 1).value() ==
            Approx(cond_inv_bound(a, 0, 1).value()).epsilon(1e-12));  // tight here
    REQUIRE(cond_inv_bound(a, 0, 0).value() == Approx(7.0).epsilon(1e-12));
    REQUIRE(cond_inv_bound(identity(3), 0, 0).value() == Approx(5.0));
}

TEST_CASE("cond_solve_entry golden values") {
    const Matrix a = golden();
    const std::vector<double> b{3, 2};
    REQUIRE(cond_solve_entry(a, b, 0).value() == Approx(10.0).epsilon(1e-12));
    REQUIRE(cond_solve_entry(a, b, 1).value() == Approx(14.0).epsilon(1e-12));
    const Matrix eye = identity(4);
    const std::vector<double> ones{1, 1, 1, 1};
    for (int k = 0; k < 4; ++k)
        REQUIRE(cond_solve_entry(eye, ones, k).value() == Approx(2.0));
}

TEST_CASE("cond_solve, mixed_solve and scaling invariance of the rhs") {
    const Matrix a = golden();
    const std::vector<double> b{3, 2};
    const CondSolveResult r = cond_solve(a, b);
    REQUIRE(r.value.value() == Approx(14.0).epsilon(1e-12));
    REQUIRE(r.k == 1);
    REQUIRE(mixed_solve(a, b).value() == Approx(14.0).epsilon(1e-12));
    const std::vector<double> b2{6, 4};
    REQUIRE(cond_solve(a, b2).value.value() == Approx(14.0).epsilon(1e-12));
    REQUIRE(mixed_solve(a, b2).value() == Approx(14.0).epsilon(1e-12));
}

TEST_CASE("cond_solve_bound via column replacement") {
    const Matrix a = golden();
    const std::vector<double> b{3, 2};
    REQUIRE(cond_solve_bound(a, b, 0).value() == Approx(16.0).epsilon(1e-12));
    REQUIRE(cond_solve_bound(a, b, 1).value() == Approx(20.0).epsilon(1e-12));
    REQUIRE(cond_solve_entry(a, b, 0).value() <= cond_solve_bound(a, b, 0).value());
    REQUIRE(cond_solve_entry(a, b, 1).value() <= cond_solve_bound(a, b, 1).value());
}

TEST_CASE("diagonal scaling leaves componentwise conditions unchanged") {
    const PatternPtr p = make_pattern(PatternKind::dense, 3);
    for (std::uint64_t t = 0; t < 20; ++t) {
        CounterRng rng(SeedSpec{909, t});
        const Matrix a = sample_matrix(p, rng);
        const std::vector<double> b = sample_vector(3, rng);
        std::vector<double> dl(3), dr(3);
        for (int i = 0; i < 3; ++i) {
            dl[static_cast<std::size_t>(i)] = 0.1 + 9.9 * rng.next_uniform();
            dr[static_cast<std::size_t>(i)] = 0.1 + 9.9 * rng.next_uniform();
        }
        std::vector<double> scaled(9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                scaled[static_cast<std::size_t>(i * 3 + j)] =
                    dl[static_cast<std::size_t>(i)] * a(i, j) * dr[static_cast<std::size_t>(j)];
        const Matrix dae(p, std::move(scaled));
        std::vector<double> db(3);
        for (int i = 0; i < 3; ++i)
            db[static_cast<std::size_t>(i)] =
                dl[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];

        REQUIRE(cond_det(dae).value() ==
                Approx(cond_det(a).value()).epsilon(1e-9));
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                REQUIRE(cond_inv_entry(dae, k, l).value() ==
                        Approx(cond_inv_entry(a, k, l).value()).epsilon(1e-9));
        for (int k = 0; k < 3; ++k)
            REQUIRE(cond_solve_entry(dae, db, k).value() ==
                    Approx(cond_solve_entry(a, b, k).value()).epsilon(1e-9));
    }
}

TEST_CASE("global scaling leaves cond_det unchanged") {
    const PatternPtr p = make_pattern(PatternKind::dense, 4);
    for (std::uint64_t t = 0; t < 20; ++t) {
        const Matrix a = sample_matrix(p, SeedSpec{911, t});
        std::vector<double> scaled(a.data());
        for (double& v : scaled) v *= -3.75;
        const Matrix ca(p, std::move(scaled));
        REQUIRE(cond_det(ca).value() == Approx(cond_det(a).value()).epsilon(1e-12));
    }
}

TEST_CASE("cond_inv_bound refuses oversized inputs") {
    const Matrix big(make_pattern(PatternKind::band, 65, 0));
    REQUIRE_THROWS_AS(cond_inv_bound(big, 0, 0), std::invalid_argument);
}

TEST_CASE("singular input throws where the inverse is required") {
    const Matrix s(make_pattern(PatternKind::dense, 2), {1, 1, 1, 1});
    REQUIRE_THROWS_AS(cond_inv(s), singular_error);
    REQUIRE_THROWS_AS(mixed_inv(s), singular_error);
    REQUIRE_THROWS_AS(cond_solve(s, std::vector<double>{1, 1}), singular_error);
    REQUIRE_THROWS_AS(build_cond_report(s), singular_error);
}

TEST_CASE("report builder matches the individual operations") {
    const Matrix a = golden();
    const std::vector<double> b{3, 2};
    const CondReport r = build_cond_report(a, &b);
    REQUIRE(r.det_cond.value() == Approx(6.0).epsilon(1e-12));
    REQUIRE(r.inv.value.value() == Approx(7.0).epsilon(1e-12));
    REQUIRE(r.inv_mixed.value() == Approx(5.0).epsilon(1e-12));
    REQUIRE(r.solve.value.value() == Approx(14.0).epsilon(1e-12));
    REQUIRE(r.solve_mixed.value() == Approx(14.0).epsilon(1e-12));
    REQUIRE(r.inv_entries[1].value() == Approx(7.0).epsilon(1e-12));
    REQUIRE(r.solve_entries[0].value() == Approx(10.0).epsilon(1e-12));
}

TEST_CASE("triangular matrices keep exact zero tags above the diagonal") {
    const PatternPtr p = make_pattern(PatternKind::lower_triangular, 6);
    const Matrix l = sample_matrix(p, SeedSpec{42, 1});
    for (int k = 0; k < 6; ++k)
        for (int j = k + 1; j < 6; ++j) REQUIRE(cond_inv_entry(l, k, j).is_zero());
    REQUIRE(cond_inv(l).value.is_finite());
}
