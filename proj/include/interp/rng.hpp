#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "interp/types.hpp"

namespace interp {

/// Counter-based random stream: every (seed, stream, index) triple yields an
/// independent, reproducible sequence, so parallel sample loops produce the
/// same values no matter how work is partitioned.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
        : state_(mix(mix(mix(seed) ^ (stream + 0x632be59bd9b4e019ULL)) ^ (index + 0x9e3779b97f4a7c15ULL)))
    {
    }

    std::uint64_t next_u64()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in the open interval (0,1).
    double uniform()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal()
    {
        // Box-Muller; the spare deviate is discarded to keep the stream stateless
        // beyond the counter.
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex complex_normal() { return {normal(), normal()}; }

    bool coin() { return (next_u64() >> 63) != 0; }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

inline CVector complex_gaussian(RandomStream& rng, std::size_t n)
{
    CVector v(n);
    for (auto& z : v) z = rng.complex_normal();
    return v;
}

} // namespace interp
