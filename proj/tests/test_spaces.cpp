#include <doctest.h>

#include "helpers.hpp"
#include "interp/kfunc.hpp"

using namespace interp;
using namespace testing_support;

TEST_SUITE("spaces") {

TEST_CASE("norm examples")
{
    SpaceSpec a(Exponent::One, {1, 1});
    CHECK(norm(a, real_vec({0, 0})) == 0.0);
    SpaceSpec b(Exponent::One, {2, 3});
    CHECK(norm(b, real_vec({1, -1})) == doctest::Approx(5.0).epsilon(1e-15));
    SpaceSpec c(Exponent::Two, {1, 4});
    const CVector x{{3, 0}, {0, 2}};
    CHECK(norm(c, x) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(rel_close(norm(c, x), naive_norm(Exponent::Two, {1, 4}, x), 1e-15));
    SpaceSpec d(Exponent::Infinity, {1, 4});
    CHECK(norm(d, x) == doctest::Approx(8.0));
}

TEST_CASE("norm matches the definition on random data")
{
    RandomStream rng(1, 1);
    for (int i = 0; i < 60; ++i) {
        const Exponent p = pick_exponent(static_cast<std::uint64_t>(i));
        const std::size_t n = 1 + rng.next_u64() % 40;
        std::vector<double> w(n);
        for (auto& v : w) v = std::exp(2.0 * rng.normal());
        const CVector x = complex_gaussian(rng, n);
        CHECK(rel_close(norm(SpaceSpec(p, w), x), naive_norm(p, w, x), 1e-13));
    }
}

TEST_CASE("invalid spaces and dimension errors")
{
    CHECK_THROWS_AS(SpaceSpec(Exponent::One, {}), DomainError);
    CHECK_THROWS_AS(SpaceSpec(Exponent::One, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(SpaceSpec(Exponent::Two, {1.0, -2.0}), DomainError);
    CHECK_THROWS_AS(exponent_from_value(3.0), DomainError);
    SpaceSpec s(Exponent::One, {1, 1});
    CHECK_THROWS_AS(norm(s, real_vec({1, 2, 3})), DimensionError);
    CHECK_THROWS_AS(CoupleSpec(SpaceSpec(Exponent::One, {1}), SpaceSpec(Exponent::Two, {1})), DomainError);
    CHECK_THROWS_AS(CoupleSpec(SpaceSpec(Exponent::One, {1}), SpaceSpec(Exponent::One, {1, 1})), DimensionError);
}

TEST_CASE("j functional")
{
    const CoupleSpec eq = identity_couple(Exponent::Two, {1, 1});
    CHECK(j_functional(eq, real_vec({0, 0}), 3.0) == 0.0);
    const CoupleSpec cp(SpaceSpec(Exponent::One, {1, 2}), SpaceSpec(Exponent::One, {3, 1}));
    const CVector x = real_vec({1, 2});
    CHECK(j_functional(cp, x, 0.0) == doctest::Approx(norm(cp.x0(), x)));
    const CVector u = real_vec({1, 0});
    CHECK(j_functional(eq, u, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(j_functional(eq, u, -1.0), DomainError);
}

TEST_CASE("intersection and sum norms")
{
    const CoupleSpec cp(SpaceSpec(Exponent::One, {1}), SpaceSpec(Exponent::One, {2}));
    const CVector x = real_vec({1});
    CHECK(intersection_norm(cp, x) == doctest::Approx(2.0));
    CHECK(sum_norm(cp, x) == doctest::Approx(1.0));
    // scalar split oracle: min over s of |1-s| + 2|s|
    double best = 1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double s = i / 1000.0;
        best = std::min(best, (1 - s) + 2 * s);
    }
    CHECK(sum_norm(cp, x) == doctest::Approx(best).epsilon(1e-12));

    const CoupleSpec eq = identity_couple(Exponent::Two, {1, 3, 5});
    const CVector y{{1, 2}, {0, -1}, {3, 0}};
    CHECK(intersection_norm(eq, y) == doctest::Approx(norm(eq.x0(), y)));
    CHECK(sum_norm(eq, y) == doctest::Approx(norm(eq.x0(), y)).epsilon(1e-10));
    CHECK(intersection_norm(eq, CVector(3)) == 0.0);
    CHECK(sum_norm(eq, CVector(3)) == 0.0);
}

TEST_CASE("embedding constant examples and sampling oracle")
{
    CHECK(embedding_constant(SpaceSpec(Exponent::Two, {3, 4}), SpaceSpec(Exponent::Two, {3, 4})) == 1.0);
    const SpaceSpec a1(Exponent::One, {4, 1}), b1(Exponent::One, {1, 1});
    const SpaceSpec a2(Exponent::Two, {4, 1}), b2(Exponent::Two, {1, 1});
    CHECK(embedding_constant(a1, b1) == doctest::Approx(4.0));
    CHECK(embedding_constant(a2, b2) == doctest::Approx(2.0));
    CHECK(embedding_constant(SpaceSpec(Exponent::Infinity, {4, 1}), SpaceSpec(Exponent::Infinity, {1, 1})) ==
          doctest::Approx(4.0));

    // oracle: largest observed ratio over random and basis vectors
    for (const auto* pair : {&a1, &a2}) {
        const SpaceSpec& x0 = *pair;
        const SpaceSpec& x1 = pair == &a1 ? b1 : b2;
        RandomStream rng(2, 2);
        double best = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const CVector x = complex_gaussian(rng, 2);
            best = std::max(best, norm(x0, x) / norm(x1, x));
        }
        for (std::size_t k = 0; k < 2; ++k) {
            CVector e(2);
            e[k] = 1.0;
            best = std::max(best, norm(x0, e) / norm(x1, e));
        }
        CHECK(best == doctest::Approx(embedding_constant(x0, x1)).epsilon(1e-12));
    }
}

TEST_CASE("embedding inequality with equality at the extremal basis vector")
{
    RandomStream rng(3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const Exponent p = pick_exponent(static_cast<std::uint64_t>(trial));
        const CoupleSpec cp = random_couple(rng, 1 + rng.next_u64() % 20, p);
        const double c = cp.c();
        for (int i = 0; i < 50; ++i) {
            const CVector x = complex_gaussian(rng, cp.dim());
            CHECK(norm(cp.x0(), x) <= c * norm(cp.x1(), x) * (1 + 1e-12));
        }
        double best = 0.0;
        for (std::size_t k = 0; k < cp.dim(); ++k) {
            CVector e(cp.dim());
            e[k] = 1.0;
            best = std::max(best, norm(cp.x0(), e) / norm(cp.x1(), e));
        }
        CHECK(best == doctest::Approx(c).epsilon(1e-13));
    }
}

TEST_CASE("explicit embedding constant")
{
    const SpaceSpec a(Exponent::One, {4, 1}), b(Exponent::One, {1, 1});
    CHECK(CoupleSpec(a, b, 5.0).c() == 5.0);
    CHECK_THROWS_AS(CoupleSpec(a, b, 3.0), DomainError);
}

TEST_CASE("steep weights use log-domain ratios")
{
    const std::size_t n = 64;
    const SpaceSpec lo(Exponent::Two, poly_weights(Exponent::Two, 0.0, n));
    const SpaceSpec hi(Exponent::Two, poly_weights(Exponent::Two, 6.0, n));
    CHECK(hi.weight_spread() > 1e8);
    CHECK(embedding_constant(lo, hi) == doctest::Approx(1.0));
    CHECK(embedding_norm(lo, hi) == doctest::Approx(std::pow(64.0, 6.0)).epsilon(1e-12));
}

TEST_CASE("weight families")
{
    const auto w = poly_weights(Exponent::Two, 1.5, 4);
    CHECK(w[3] == doctest::Approx(std::pow(4.0, 3.0)));
    const auto wi = poly_weights(Exponent::Infinity, 1.5, 4);
    CHECK(wi[3] == doctest::Approx(std::pow(4.0, 1.5)));
    const auto e = exp_weights(Exponent::One, 0.5, 3);
    CHECK(e[2] == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("interpolated space")
{
    const CoupleSpec eq = identity_couple(Exponent::Two, {2, 5});
    CHECK(interpolated_space(eq, 0.3).weights()[1] == doctest::Approx(5.0));
    const CoupleSpec cp(SpaceSpec(Exponent::Two, {4}), SpaceSpec(Exponent::Two, {1}));
    CHECK(interpolated_space(cp, 0.5).weights()[0] == doctest::Approx(2.0));
    CHECK(interpolated_space(cp, 1e-9).weights()[0] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(interpolated_space(cp, 1 - 1e-9).weights()[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(interpolated_space(cp, 0.0), DomainError);
    CHECK_THROWS_AS(interpolated_space(cp, 1.0), DomainError);
}

TEST_CASE("reiteration at the weight level")
{
    RandomStream rng(4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const CoupleSpec cp = random_couple(rng, 8, pick_exponent(static_cast<std::uint64_t>(trial)));
        const double th = 0.05 + 0.9 * rng.uniform();
        const double th2 = 0.05 + 0.9 * rng.uniform();
        const CoupleSpec inner(cp.x0(), interpolated_space(cp, th));
        const SpaceSpec twice = interpolated_space(inner, th2);
        const SpaceSpec direct = interpolated_space(cp, th * th2);
        for (std::size_t k = 0; k < 8; ++k) CHECK(rel_close(twice.weights()[k], direct.weights()[k], 1e-12));
    }
}

TEST_CASE("norm ordering and log-convexity")
{
    RandomStream rng(5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        const CoupleSpec cp = random_couple(rng, 1 + rng.next_u64() % 10, pick_exponent(static_cast<std::uint64_t>(trial)));
        for (int i = 0; i < 10; ++i) {
            const CVector x = complex_gaussian(rng, cp.dim());
            const double n0 = norm(cp.x0(), x), n1 = norm(cp.x1(), x);
            const double s = sum_norm(cp, x), in = intersection_norm(cp, x);
            CHECK(s <= std::min(n0, n1) * (1 + 1e-12));
            CHECK(std::max(n0, n1) <= in * (1 + 1e-12));
            const double th = rng.uniform();
            const double nt = norm(interpolated_space(cp, th), x);
            CHECK(nt <= std::pow(n0, 1 - th) * std::pow(n1, th) * (1 + 1e-12));
        }
    }
}

}
