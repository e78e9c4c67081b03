#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optproj/direction_set.hpp"

namespace optproj {

// One row of an MSE experiment: the mean squared error of the scaled
// absolute-projection approximation to the Euclidean norm, averaged over
// `test_vectors` uniform unit test points (and over `trials` direction
// draws for randomized schemes).
struct MSEReport {
    std::string scheme;  // "optimal-2d" | "orthonormal" | "ascent" | "monte-carlo"
    int p = 0;
    int n = 0;
    int trials = 0;
    int test_vectors = 0;
    double mse = 0.0;
    std::uint64_t seed = 0;
};

// scale * sum_i |u_i . x|  for a direction set with rows u_i.
double approx_norm(const DirectionSet& ds, const Vector& x);

// C'_p = sqrt(pi) * Gamma((p+1)/2) / Gamma(p/2), computed by the
// half-integer Gamma-ratio recursion R_1 = 1/sqrt(pi), R_{k+1} = k / (2 R_k),
// C'_p = sqrt(pi) * R_p.  E[|u.x|] = ||x|| / C'_p for u uniform on S^{p-1}.
double mc_constant(int p);

// n directions drawn i.i.d. uniformly on the unit sphere, with the unbiased
// scale C'_p / n.
DirectionSet mc_directions(int p, int n, std::uint64_t seed);

// Mean of (approx_norm(ds, x) - 1)^2 over `test_vectors` i.i.d. uniform
// unit vectors drawn from the test-vector stream of `seed`.
double mse_of_direction_set(const DirectionSet& ds, int test_vectors,
                            std::uint64_t seed);

// Runs the full experiment for one scheme.  Deterministic schemes
// ("optimal-2d", "orthonormal", "ascent") use a single trial; "monte-carlo"
// averages the per-trial MSE over `trials` independent direction draws.
// Test vectors are shared across trials.
MSEReport mse_experiment(const std::string& scheme, int p, int n,
                         int test_vectors, int trials, std::uint64_t seed);

}  // namespace optproj
