#pragma once

#include <utility>
#include <vector>

#include "optproj/direction_set.hpp"

namespace optproj {

constexpr int kMaxSignDirections = 24;       // sign-enumeration cap
constexpr long long kMaxSubsets = 200000;    // (p-1)-subset enumeration cap

// +/-1 coefficients attaining V_max; the first sign is always +1 (a global
// flip leaves the signed-sum norm unchanged).
struct SignPattern {
    std::vector<int> signs;
};

// Minimizing unit vector with its maximal orthogonal index set (0-based).
struct MinimizerCertificate {
    Vector v_min;
    std::vector<int> omega;
    double value = 0.0;
};

struct ObjectiveReport {
    double v_min_value = 0.0;
    double v_max_value = 0.0;
    double ratio = 0.0;             // v_min_value / v_max_value
    double c_n = 0.0;               // 2 / (v_min_value + v_max_value)
    double worst_case_error = 0.0;  // (v_max - v_min) / (v_max + v_min)
    SignPattern sign_pattern;
    MinimizerCertificate certificate;
};

// f(v) = sum_i |u_i^T v|.
double evaluate_f(const DirectionSet& ds, const Vector& v);

// Max of f over the unit sphere: enumerates the 2^(n-1) canonical sign
// patterns of || sum_i s_i u_i || in Gray-code order.
std::pair<double, SignPattern> v_max(const DirectionSet& ds);

// Min of f over the unit sphere: enumerates (p-1)-subsets, repairs
// rank-deficient ones by appending unused directions in ascending index
// order, and evaluates f at each orthogonal complement direction.
MinimizerCertificate v_min(const DirectionSet& ds);

ObjectiveReport report(const DirectionSet& ds);

} // namespace optproj
