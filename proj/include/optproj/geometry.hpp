#pragma once

#include <Eigen/Dense>
#include <vector>

#include "optproj/errors.hpp"

namespace optproj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

constexpr double kRankTol = 1e-10;

// x / ||x||.  Throws ZeroVector when ||x|| <= 1e-300.
Vector normalize(const Vector& x);

// Numerical rank of the stacked vectors (rows), treating singular values
// below tol * (largest singular value) as zero.
int rank_of(const std::vector<Vector>& vectors, double tol = kRankTol);
int rank_of(const Matrix& rows, double tol = kRankTol);

// Unit vector orthogonal to every row of a rank-(p-1) set, sign fixed so the
// first entry with magnitude > 1e-10 is positive.  Throws RankDeficient when
// the span does not have dimension p-1.
Vector orthogonal_complement_direction(const std::vector<Vector>& vectors,
                                       double tol = kRankTol);
Vector orthogonal_complement_direction(const Matrix& rows, double tol = kRankTol);

// Unit null-space direction of an arbitrary row set (smallest singular value),
// canonical sign; used when the whole set spans less than p dimensions.
Vector null_space_direction(const Matrix& rows);

// arccos of the clamped inner product of two unit vectors, in [0, pi].
double angle_between(const Vector& x, const Vector& y);

} // namespace optproj
