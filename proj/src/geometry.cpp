#include "optproj/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace optproj {

Vector normalize(const Vector& x) {
    const double norm = x.norm();
    if (norm <= 1e-300) {
        throw ZeroVector("normalize: vector norm is zero");
    }
    return x / norm;
}

namespace {

Matrix stack(const std::vector<Vector>& vectors) {
    if (vectors.empty()) {
        throw EmptyInput("rank_of: empty vector list");
    }
    const Eigen::Index p = vectors.front().size();
    Matrix rows(static_cast<Eigen::Index>(vectors.size()), p);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != p) {
            throw DimensionMismatch("rank_of: vectors of mixed dimension");
        }
        rows.row(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return rows;
}

Vector canonical_sign(Vector w) {
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        if (std::abs(w[k]) > 1e-10) {
            if (w[k] < 0.0) w = -w;
            break;
        }
    }
    return w;
}

} // namespace

int rank_of(const Matrix& rows, double tol) {
    if (rows.rows() == 0) {
        throw EmptyInput("rank_of: empty matrix");
    }
    Eigen::JacobiSVD<Matrix> svd(rows);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv[k] > tol * sv[0]) ++r;
    }
    return r;
}

int rank_of(const std::vector<Vector>& vectors, double tol) {
    return rank_of(stack(vectors), tol);
}

Vector orthogonal_complement_direction(const Matrix& rows, double tol) {
    const Eigen::Index p = rows.cols();
    Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int r = 0;
    if (sv.size() > 0 && sv[0] > 0.0) {
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
            if (sv[k] > tol * sv[0]) ++r;
        }
    }
    if (r != p - 1) {
        throw RankDeficient("orthogonal_complement_direction: rank is " +
                            std::to_string(r) + ", expected " + std::to_string(p - 1));
    }
    return canonical_sign(svd.matrixV().col(p - 1));
}

Vector orthogonal_complement_direction(const std::vector<Vector>& vectors, double tol) {
    return orthogonal_complement_direction(stack(vectors), tol);
}

Vector null_space_direction(const Matrix& rows) {
    Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
    return canonical_sign(svd.matrixV().col(rows.cols() - 1));
}

double angle_between(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("angle_between: dimension mismatch");
    }
    const double c = std::clamp(x.dot(y), -1.0, 1.0);
    return std::acos(c);
}

} // namespace optproj
