#include <doctest.h>

#include "helpers.hpp"
#include "interp/complex_interp.hpp"

using namespace interp;
using namespace testing_support;

TEST_SUITE("complex_interp") {

TEST_CASE("theta norm examples")
{
    const CoupleSpec eq = identity_couple(Exponent::Two, {2, 3});
    const CVector x{{1, 2}, {3, -1}};
    CHECK(rel_close(theta_norm(eq, x, 0.4), norm(eq.x0(), x), 1e-15));
    const CoupleSpec cp(SpaceSpec(Exponent::Two, {4}), SpaceSpec(Exponent::Two, {1}));
    CHECK(rel_close(theta_norm(cp, real_vec({1}), 0.5), std::sqrt(2.0), 1e-15));
    CHECK(rel_close(certificate_norm(cp, real_vec({1}), 0.5), std::sqrt(2.0), 1e-14));
    CHECK(rel_close(certificate_norm(eq, x, 0.4), norm(eq.x0(), x), 1e-14));
    CHECK_THROWS_AS(theta_norm(cp, real_vec({1}), 1.0), DomainError);
}

TEST_CASE("certificate equals the closed form")
{
    RandomStream rng(30, 30);
    for (int trial = 0; trial < 100; ++trial) {
        const CoupleSpec cp = random_couple(rng, 1 + rng.next_u64() % 32, pick_exponent(static_cast<std::uint64_t>(trial)));
        const CVector x = complex_gaussian(rng, cp.dim());
        const double th = rng.uniform();
        CHECK(rel_close(certificate_norm(cp, x, th), theta_norm(cp, x, th), 1e-12));
    }
}

TEST_CASE("scalar exponential certificate bounds the closed form")
{
    // f(z) = c^(z - theta) x for x in X1
    RandomStream rng(31, 31);
    for (int trial = 0; trial < 30; ++trial) {
        const CoupleSpec cp = random_couple(rng, 6, pick_exponent(static_cast<std::uint64_t>(trial)));
        const CVector x = complex_gaussian(rng, 6);
        const double th = rng.uniform();
        const double c = cp.c();
        const double cert = std::max(std::pow(c, -th) * norm(cp.x0(), x), std::pow(c, 1 - th) * norm(cp.x1(), x));
        CHECK(cert >= theta_norm(cp, x, th) * (1 - 1e-12));
    }
}

TEST_CASE("log-convex in theta with endpoint limits")
{
    RandomStream rng(32, 32);
    for (int trial = 0; trial < 20; ++trial) {
        const CoupleSpec cp = random_couple(rng, 10, pick_exponent(static_cast<std::uint64_t>(trial)));
        const CVector x = complex_gaussian(rng, 10);
        std::vector<double> lg;
        for (int i = 1; i < 40; ++i) lg.push_back(std::log(theta_norm(cp, x, i / 40.0)));
        for (std::size_t i = 1; i + 1 < lg.size(); ++i) CHECK(lg[i - 1] - 2 * lg[i] + lg[i + 1] >= -1e-9);
        CHECK(rel_close(theta_norm(cp, x, 1e-6), norm(cp.x0(), x), 1e-4));
        CHECK(rel_close(theta_norm(cp, x, 1 - 1e-6), norm(cp.x1(), x), 1e-4));
        CHECK(std::abs(theta_norm(cp, x, 1e-6) - norm(cp.x0(), x)) <
              std::abs(theta_norm(cp, x, 1e-3) - norm(cp.x0(), x)) + 1e-15);
    }
}

TEST_CASE("three line check")
{
    const SpaceSpec sp(Exponent::Two, {1, 2});
    const CVector x{{1, 0}, {0, 1}};
    auto constant = sample_strip([&](Complex) { return x; }, StripGrid{});
    auto rep = three_line_check(constant, sp);
    CHECK(rep.passed);
    CHECK(rep.interior_sup == doctest::Approx(rep.boundary_sup));
    for (double a : {0.1, 0.5, 3.0, 40.0}) {
        const double th = 0.3;
        auto s = sample_strip(
            [&](Complex z) {
                CVector v = x;
                const Complex f = std::exp((th - z) * std::log(a));
                for (auto& e : v) e *= f;
                return v;
            },
            StripGrid{});
        const auto r = three_line_check(s, sp);
        CHECK(r.passed);
        CHECK(r.worst_margin >= 0.0);
    }
    StripFunctionSamples empty;
    CHECK_THROWS_AS(three_line_check(empty, sp), DomainError);
}

TEST_CASE("three line check catches an interior bump")
{
    const SpaceSpec sp(Exponent::One, {1});
    StripFunctionSamples s;
    s.boundary0.push_back({Complex{0, 0}, real_vec({1})});
    s.boundary1.push_back({Complex{1, 0}, real_vec({1})});
    s.interior.push_back({Complex{0.5, 0}, real_vec({2})});
    CHECK_FALSE(three_line_check(s, sp).passed);
}

TEST_CASE("embedding inequalities")
{
    const CoupleSpec eq = identity_couple(Exponent::One, {1, 2});
    const auto r0 = lemma1_check(eq, real_vec({1, 3}), 0.5, 10.0);
    CHECK(r0.passed());
    CHECK(r0.norm0 == doctest::Approx(r0.norm_theta));
    CHECK(r0.norm1 == doctest::Approx(r0.norm_theta));

    const CoupleSpec cp(SpaceSpec(Exponent::One, {4, 1}), SpaceSpec(Exponent::One, {1, 1}));
    CHECK(cp.c() == doctest::Approx(4.0));
    RandomStream rng(33, 33);
    for (int i = 0; i < 1000; ++i) {
        const CVector x = complex_gaussian(rng, 2);
        const auto r = lemma1_check(cp, x, 0.5, 1.0);
        CHECK(r.passed());
        CHECK(r.norm0 <= 2 * r.norm_theta * (1 + 1e-12));
        CHECK(r.norm_theta <= 2 * r.norm1 * (1 + 1e-12));
    }
    // basis vector attaining c makes the first inequality tight
    const auto tight = lemma1_check(cp, real_vec({1, 0}), 0.5);
    CHECK(std::abs(tight.margin_lower) <= 1e-12);
}

}
