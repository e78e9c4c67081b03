#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "optproj/direction_set.hpp"

namespace optproj {

// A multivariate sample: one observation per row.
struct Sample {
    Matrix data;  // m x p
    int m() const { return static_cast<int>(data.rows()); }
    int p() const { return static_cast<int>(data.cols()); }
    void validate() const;  // m >= 1, p >= 1, all entries finite
};

struct EnergyResult {
    double value = 0.0;
    std::string method;  // "exact" | "projected" | "univariate-fast"
    std::optional<std::string> directions_used;
    std::chrono::duration<double, std::milli> elapsed{0.0};
};

// Sum over all ordered pairs Σ_i Σ_k |x_i − x_k|, O(m log m):
// sort ascending, then 2 · Σ_j (2j − 1 − m) · x_(j)  (j = 1..m).
double pairwise_abs_sum_within(const std::vector<double>& x);

// Σ_i Σ_j |x_i − y_j|, O((a+b) log(a+b)): sort y, take prefix sums, and for
// each x_i split y at its rank with a binary search.
double pairwise_abs_sum_cross(const std::vector<double>& x,
                              const std::vector<double>& y);

// Two-sample energy statistic with Euclidean distances, direct O(m^2 · p)
// evaluation:
//   (2/(n1 n2)) ΣΣ ||X_i − Y_j||  −  (1/n1^2) ΣΣ ||X_i − X_k||
//                                 −  (1/n2^2) ΣΣ ||Y_j − Y_l||.
EnergyResult energy_statistic_exact(const Sample& X, const Sample& Y);

// Projected approximation: every pairwise Euclidean distance is replaced by
// scale · Σ_w |u_w·a − u_w·b|, which regroups into per-direction univariate
// pairwise sums handled by the fast primitives.  Total cost
// O(n · m · (p + log m)).
EnergyResult energy_statistic_projected(const Sample& X, const Sample& Y,
                                        const DirectionSet& ds);

}  // namespace optproj
