#include <doctest.h>

#include "helpers.hpp"
#include "interp/maps.hpp"

using namespace interp;
using namespace testing_support;

namespace {

// naive double loop over all index pairs, dropping indices >= N
CVector naive_conv(const CVector& u, const CVector& v)
{
    CVector w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (i + j < u.size()) w[i + j] += u[i] * v[j];
        }
    }
    return w;
}

CVector basis(std::size_t n, std::size_t k, double scale = 1.0)
{
    CVector e(n);
    e[k] = scale;
    return e;
}

} // namespace

TEST_SUITE("maps") {

TEST_CASE("parse simple expressions")
{
    CHECK(std::holds_alternative<MapExpr::Var>(parse_map("x").node()));
    const MapExpr sq = parse_map("conv(x,x)");
    CHECK(std::holds_alternative<MapExpr::Conv>(sq.node()));
    CHECK(sq.degree() == 2);
    const MapExpr m = parse_map("sum(x, scale(0.5, conv(x,x)))");
    CHECK(m.degree() == 2);
    CHECK(parse_map(print_map(m)) == m);
    CHECK(print_map(m) == "sum(x,scale(0.5,conv(x,x)))");
    CHECK(parse_map("  diag [1, 2i, 3-4i] ( x ) ").dim() == 3u);
    CHECK(parse_map("const[1,2]").degree() == 0);
}

TEST_CASE("complex number forms")
{
    const auto c = parse_map("const[1.5, -2i, 3+4i, -1 - 0.5i, 2e-3, .5]");
    const auto& v = std::get<MapExpr::Const>(c.node()).value;
    CHECK(v[0] == Complex{1.5, 0});
    CHECK(v[1] == Complex{0, -2});
    CHECK(v[2] == Complex{3, 4});
    CHECK(v[3] == Complex{-1, -0.5});
    CHECK(v[4] == Complex{2e-3, 0});
    CHECK(v[5] == Complex{0.5, 0});
    CHECK(parse_map(print_map(c)) == c);
}

TEST_CASE("parse errors carry byte offsets")
{
    auto offset_of = [](const char* text) -> std::size_t {
        try {
            parse_map(text);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("") == 0u);
    CHECK(offset_of("y") == 0u);
    CHECK(offset_of("conv(x x)") == 7u);
    CHECK(offset_of("sum(x,x))") == 8u);
    CHECK(offset_of("scale(, x)") == 6u);
    CHECK(offset_of("const[1,2") == 9u);
    CHECK(offset_of("scale(2, q)") == 9u);
    CHECK(offset_of("const[inf]") == 6u);
    CHECK(offset_of("const[1+2]") == 9u);
    CHECK(offset_of("sum(const[1,2], const[1,2,3])") == 0u);
    CHECK_THROWS_AS(parse_map("diag[1,2](const[1,2,3])"), ParseError);
}

TEST_CASE("print is canonical")
{
    const char* texts[] = {"x", "conv(x,x)", "diag[1,2](sum(x,const[0,1i]))", "scale(2-3i,conv(x,sum(x,x)))"};
    for (const char* t : texts) {
        const std::string once = print_map(parse_map(t));
        CHECK(once == t);
        CHECK(print_map(parse_map(once)) == once);
    }
    CHECK(print_map(parse_map(" sum ( x ,\n x ) ")) == "sum(x,x)");
}

TEST_CASE("evaluation examples")
{
    CHECK(eval_map(parse_map("conv(x,x)"), real_vec({1, 1, 0, 0})) == real_vec({1, 2, 1, 0}));
    const CVector x{{1, 2}, {3, -1}};
    CHECK(eval_map(parse_map("x"), x) == x);
    const CVector e0 = basis(4, 0);
    CHECK(eval_map(parse_map("sum(x,conv(x,x))"), e0) == real_vec({2, 0, 0, 0}));
    RandomStream rng(40, 40);
    for (int i = 0; i < 20; ++i) {
        const CVector u = complex_gaussian(rng, 7), v = complex_gaussian(rng, 7);
        const CVector a = convolve(u, v), b = naive_conv(u, v);
        for (std::size_t k = 0; k < 7; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-13 * (1 + std::abs(b[k])));
    }
    CHECK_THROWS_AS(eval_map(parse_map("const[1,2]"), real_vec({1, 2, 3})), DimensionError);
}

TEST_CASE("algebra constant")
{
    CHECK(algebra_constant(SpaceSpec(Exponent::One, std::vector<double>(8, 1.0))) == doctest::Approx(1.0));
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
        const auto w = poly_weights(Exponent::One, s, 16);
        // direct check of the submultiplicative inequality
        for (std::size_t i = 0; i < 16; ++i) {
            for (std::size_t j = 0; i + j < 16; ++j) CHECK(w[i + j] <= w[i] * w[j] * (1 + 1e-14));
        }
        CHECK(algebra_constant(SpaceSpec(Exponent::One, w)) == doctest::Approx(1.0));
    }
    // sampling oracle for every exponent and some non-submultiplicative weights
    RandomStream rng(41, 41);
    for (int trial = 0; trial < 30; ++trial) {
        const Exponent p = pick_exponent(static_cast<std::uint64_t>(trial));
        std::vector<double> w(6);
        for (auto& v : w) v = std::exp(rng.normal());
        const SpaceSpec sp(p, w);
        const double C = algebra_constant(sp);
        for (int i = 0; i < 200; ++i) {
            const CVector u = complex_gaussian(rng, 6), v = complex_gaussian(rng, 6);
            CHECK(norm(sp, convolve(u, v)) <= C * norm(sp, u) * norm(sp, v) * (1 + 1e-12));
        }
        if (p == Exponent::One) {
            // the constant is attained at a pair of basis vectors
            double best = 0.0;
            for (std::size_t i = 0; i < 6; ++i) {
                for (std::size_t j = 0; i + j < 6; ++j) {
                    const CVector a = basis(6, i), b = basis(6, j);
                    best = std::max(best, norm(sp, convolve(a, b)) / (norm(sp, a) * norm(sp, b)));
                }
            }
            CHECK(best == doctest::Approx(C).epsilon(1e-12));
        }
    }
}

TEST_CASE("certified bound examples")
{
    const SpaceSpec l1(Exponent::One, std::vector<double>(6, 1.0));
    CHECK(certified_bound(parse_map("x"), l1, 0.5) == doctest::Approx(0.5));
    CHECK(certified_bound(parse_map("conv(x,x)"), l1, 0.5) == doctest::Approx(0.25));
    CHECK(certified_bound(parse_map("sum(x,conv(x,x))"), l1, 0.5) == doctest::Approx(0.75));
    CHECK(certified_bound(parse_map("scale(2i,x)"), l1, 0.5) == doctest::Approx(1.0));
    CHECK(certified_bound(parse_map("const[3,4,0,0,0,0]"), l1, 0.5) == doctest::Approx(7.0));
    CHECK_THROWS_AS(certified_bound(parse_map("x"), l1, 0.0), DomainError);
}

TEST_CASE("certified bound is sound and sandwiches the sampled sup")
{
    const char* maps[] = {"x", "conv(x,x)", "sum(x,scale(0.5,conv(x,x)))", "diag[1,-2,0.5,3i,1,1](x)",
                          "sum(const[1,0,0,0,0,1i],conv(x,diag[1,2,3,4,5,6](x)))", "conv(x,conv(x,x))"};
    RandomStream rng(42, 42);
    for (int trial = 0; trial < 6; ++trial) {
        const Exponent p = pick_exponent(static_cast<std::uint64_t>(trial));
        std::vector<double> w0(6), w1(6);
        for (std::size_t k = 0; k < 6; ++k) {
            w0[k] = std::exp(0.7 * rng.normal());
            w1[k] = std::exp(0.7 * rng.normal());
        }
        const SpaceSpec in(p, w0), out(p, w1);
        for (const char* src : maps) {
            const MapExpr m = parse_map(src);
            const double r = 0.3 + rng.uniform();
            const double B = certified_bound(m, in, out, r);
            for (int i = 0; i < 1000; ++i) {
                CVector x = complex_gaussian(rng, 6);
                const double s = r * rng.uniform() / norm(in, x);
                for (auto& z : x) z *= s;
                CHECK(norm(out, eval_map(m, x)) <= B * (1 + 1e-12));
            }
            const double lo = sample_sup(m, in, out, r, 200, 7);
            CHECK(lo <= B * (1 + 1e-12));
        }
    }
}

TEST_CASE("sampled sup")
{
    const SpaceSpec l1(Exponent::One, std::vector<double>(5, 1.0));
    CHECK(sample_sup(parse_map("x"), l1, 0.5, 10, 1) == doctest::Approx(0.5 * (1 - 1e-9)).epsilon(1e-14));
    const double s = sample_sup(parse_map("conv(x,x)"), l1, 0.5, 100, 1);
    CHECK(s <= 0.25);
    CHECK(s >= 0.24);
    CHECK(s == doctest::Approx(0.25 * (1 - 1e-9) * (1 - 1e-9)).epsilon(1e-14));
    double prev = 0.0;
    for (std::size_t n : {1u, 10u, 100u, 400u}) {
        const double v = sample_sup(parse_map("sum(x,conv(x,x))"), l1, 0.5, n, 3);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(sample_sup(parse_map("conv(x,x)"), l1, 0.5, 300, 9, 1) ==
          sample_sup(parse_map("conv(x,x)"), l1, 0.5, 300, 9, 4));
}

TEST_CASE("homogeneity and diagonal structure")
{
    CHECK(homogeneous_degree(parse_map("conv(x,x)")) == 2);
    CHECK(homogeneous_degree(parse_map("scale(3,x)")) == 1);
    CHECK(homogeneous_degree(parse_map("const[1]")) == 0);
    CHECK_FALSE(homogeneous_degree(parse_map("sum(x,conv(x,x))")).has_value());
    CHECK(homogeneous_degree(parse_map("conv(x,conv(x,x))")) == 3);
    const auto d = diagonal_of(parse_map("sum(scale(2,x),diag[1,3](x))"), 2);
    REQUIRE(d.has_value());
    CHECK((*d)[0] == Complex{3, 0});
    CHECK((*d)[1] == Complex{5, 0});
    CHECK_FALSE(diagonal_of(parse_map("conv(x,x)"), 2).has_value());
    CHECK_FALSE(diagonal_of(parse_map("sum(x,const[1,1])"), 2).has_value());
    CHECK_THROWS_AS(homogeneous_constant(parse_map("sum(x,conv(x,x))"), SpaceSpec(Exponent::One, {1}),
                                         SpaceSpec(Exponent::One, {1})),
                    DomainError);
}

}
