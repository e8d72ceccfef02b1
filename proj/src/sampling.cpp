#include "interp/sampling.hpp"

#include <cmath>

#include "interp/rng.hpp"

namespace interp {

namespace {

void rescale(const SpaceSpec& space, CVector& x, double radius)
{
    const double n = norm(space, x);
    if (n == 0.0) return;
    const double f = radius / n;
    for (auto& z : x) z *= f;
}

} // namespace

CVector sample_on_sphere(const SpaceSpec& space, double radius, std::uint64_t seed, std::uint64_t stream,
                         std::size_t index)
{
    RandomStream rng(seed, stream, index);
    CVector x = complex_gaussian(rng, space.dim());
    rescale(space, x, radius);
    return x;
}

CVector sample_in_ball(const SpaceSpec& space, double radius, std::uint64_t seed, std::uint64_t stream,
                       std::size_t index)
{
    const std::size_t n = space.dim();
    const auto& m = space.multipliers();
    if (index < n) {
        CVector x(n);
        x[index] = radius / m[index];
        return x;
    }
    RandomStream rng(seed, stream, index);
    if (index < 2 * n) {
        static constexpr Complex units[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
        CVector x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = units[rng.next_u64() >> 62] / m[k];
        rescale(space, x, radius);
        return x;
    }
    const double u = rng.uniform();
    CVector x = complex_gaussian(rng, n);
    rescale(space, x, radius * std::pow(u, 1.0 / (2.0 * static_cast<double>(n))));
    return x;
}

} // namespace interp
