#pragma once

#include <random>

namespace hclab {

using Rng = std::mt19937_64;

// 53-bit uniform in [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace hclab
