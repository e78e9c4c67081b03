#pragma once

#include <string>

#include "optproj/geometry.hpp"

namespace optproj {

enum class Kind { Optimal2D, Orthonormal, Ascent, MonteCarlo, Custom };

std::string kind_to_string(Kind kind);
Kind kind_from_string(const std::string& tag);

// n unit direction vectors (rows) in dimension p, plus the scale constant
// multiplying the sum of absolute projections.
struct DirectionSet {
    Matrix directions;  // n x p, unit rows
    double scale = 1.0;
    Kind kind = Kind::Custom;

    int n() const { return static_cast<int>(directions.rows()); }
    int p() const { return static_cast<int>(directions.cols()); }

    // Enforces the type invariants: n >= 1, p >= 1, scale > 0, unit rows.
    void validate(double unit_tol = 1e-12) const;
};

// Normalizes each row and validates.
DirectionSet make_direction_set(Matrix rows, double scale, Kind kind);

} // namespace optproj
