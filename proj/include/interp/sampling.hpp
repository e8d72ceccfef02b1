#pragma once

#include <cstddef>
#include <cstdint>

#include "interp/spaces.hpp"

namespace interp {

/// Deterministic point of the ball B(radius, space), indexed by sample number:
///   index <  N   scaled basis vector e_index on the sphere,
///   index < 2N   sign corner (x_k = s_k / m_k, s_k in {1,-1,i,-i}) on the sphere,
///   otherwise    normalized complex Gaussian direction times radius * u^(1/(2N)).
/// The random parts draw from RandomStream(seed, stream, index) only.
CVector sample_in_ball(const SpaceSpec& space, double radius, std::uint64_t seed, std::uint64_t stream,
                       std::size_t index);

/// Normalized complex Gaussian direction with ||x|| = radius.
CVector sample_on_sphere(const SpaceSpec& space, double radius, std::uint64_t seed, std::uint64_t stream,
                         std::size_t index);

} // namespace interp
