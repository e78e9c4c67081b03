#pragma once

#include <cstdint>

#include "optproj/geometry.hpp"

namespace optproj {

// xoshiro256++ with splitmix64 seeding.  A (seed, stream) pair selects an
// independent substream, so trials / vector batches can be drawn in any order
// while staying bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double next_double();  // uniform in [0, 1), 53-bit resolution
    double normal();       // standard normal via Box-Muller

    Vector gaussian_vector(int p);
    Vector unit_vector(int p);  // uniform on the unit sphere

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace optproj
