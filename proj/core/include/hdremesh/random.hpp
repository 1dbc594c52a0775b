#ifndef HDREMESH_RANDOM_HPP
#define HDREMESH_RANDOM_HPP

#include <cstdint>
#include <random>

namespace hdremesh {

using Rng = std::mt19937_64;

// Uniform in [0, 1) from the top 53 bits; portable across standard libraries.
inline double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

} // namespace hdremesh

#endif
