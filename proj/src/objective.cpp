#include "optproj/objective.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace optproj {

std::string kind_to_string(Kind kind) {
    switch (kind) {
        case Kind::Optimal2D: return "optimal-2d";
        case Kind::Orthonormal: return "orthonormal";
        case Kind::Ascent: return "ascent";
        case Kind::MonteCarlo: return "monte-carlo";
        case Kind::Custom: return "custom";
    }
    throw InvalidShape("kind_to_string: unknown kind");
}

Kind kind_from_string(const std::string& tag) {
    if (tag == "optimal-2d") return Kind::Optimal2D;
    if (tag == "orthonormal") return Kind::Orthonormal;
    if (tag == "ascent") return Kind::Ascent;
    if (tag == "monte-carlo") return Kind::MonteCarlo;
    if (tag == "custom") return Kind::Custom;
    throw ParseError("unknown direction-set kind: \"" + tag + "\"");
}

void DirectionSet::validate(double unit_tol) const {
    if (directions.rows() < 1 || directions.cols() < 1) {
        throw InvalidShape("DirectionSet: need n >= 1, p >= 1");
    }
    if (!(scale > 0.0)) {
        throw InvalidShape("DirectionSet: scale must be positive");
    }
    if (!directions.allFinite()) {
        throw InvalidShape("DirectionSet: non-finite entry");
    }
    for (Eigen::Index i = 0; i < directions.rows(); ++i) {
        if (std::abs(directions.row(i).norm() - 1.0) > unit_tol) {
            throw InvalidShape("DirectionSet: direction " + std::to_string(i) +
                               " is not unit norm");
        }
    }
}

DirectionSet make_direction_set(Matrix rows, double scale, Kind kind) {
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const double norm = rows.row(i).norm();
        if (norm <= 1e-300) {
            throw ZeroVector("make_direction_set: zero direction " + std::to_string(i));
        }
        rows.row(i) /= norm;
    }
    DirectionSet ds{std::move(rows), scale, kind};
    ds.validate();
    return ds;
}

double evaluate_f(const DirectionSet& ds, const Vector& v) {
    if (v.size() != ds.directions.cols()) {
        throw DimensionMismatch("evaluate_f: vector dimension " +
                                std::to_string(v.size()) + " != p = " +
                                std::to_string(ds.directions.cols()));
    }
    return (ds.directions * v).cwiseAbs().sum();
}

std::pair<double, SignPattern> v_max(const DirectionSet& ds) {
    const int n = ds.n();
    if (n > kMaxSignDirections) {
        throw TooManyDirections("v_max: n = " + std::to_string(n) +
                                " exceeds the sign-enumeration cap " +
                                std::to_string(kMaxSignDirections));
    }
    // Gray-code walk over the 2^(n-1) patterns with s_0 fixed to +1; each
    // step flips one sign and adjusts the running sum by +/- 2 u_j.
    std::vector<int> signs(n, 1);
    Vector sum = ds.directions.colwise().sum().transpose();
    double best_sq = sum.squaredNorm();
    std::vector<int> best_signs = signs;
    const std::uint64_t count = 1ULL << (n - 1);
    for (std::uint64_t k = 1; k < count; ++k) {
        const int j = std::countr_zero(k) + 1;
        signs[j] = -signs[j];
        sum += (2.0 * signs[j]) * ds.directions.row(j).transpose();
        const double sq = sum.squaredNorm();
        if (sq > best_sq) {
            best_sq = sq;
            best_signs = signs;
        }
    }
    // Recompute the winner from scratch to shed the walk's rounding drift.
    Vector fresh = Vector::Zero(ds.p());
    for (int i = 0; i < n; ++i) {
        fresh += static_cast<double>(best_signs[i]) * ds.directions.row(i).transpose();
    }
    return {fresh.norm(), SignPattern{std::move(best_signs)}};
}

namespace {

long long subset_count(int n, int k) {
    long long c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > 100 * kMaxSubsets) return c;  // early out, already over the cap
    }
    return c;
}

std::vector<int> maximal_omega(const DirectionSet& ds, const Vector& v) {
    std::vector<int> omega;
    const Vector proj = ds.directions * v;
    for (int j = 0; j < ds.n(); ++j) {
        if (std::abs(proj[j]) <= 1e-10) omega.push_back(j);
    }
    return omega;
}

} // namespace

MinimizerCertificate v_min(const DirectionSet& ds) {
    const int n = ds.n();
    const int p = ds.p();
    if (n < p - 1) {
        throw DimensionTooSmall("v_min: need n >= p-1, got n = " + std::to_string(n) +
                                ", p = " + std::to_string(p));
    }
    if (p == 1) {
        // f(v) = sum |u_i| with u_i = +/-1; the empty subset has rank 0 = p-1.
        Vector v(1);
        v[0] = 1.0;
        return MinimizerCertificate{v, {}, evaluate_f(ds, v)};
    }
    if (rank_of(ds.directions) < p) {
        // Degenerate span: any null direction gives f = 0.
        Vector v = null_space_direction(ds.directions);
        return MinimizerCertificate{v, maximal_omega(ds, v), evaluate_f(ds, v)};
    }
    const long long subsets = subset_count(n, p - 1);
    if (subsets > kMaxSubsets) {
        throw TooManySubsets("v_min: C(" + std::to_string(n) + ", " +
                             std::to_string(p - 1) + ") = " + std::to_string(subsets) +
                             " exceeds the cap " + std::to_string(kMaxSubsets));
    }

    MinimizerCertificate best;
    bool have_best = false;
    std::vector<int> comb(p - 1);
    for (int i = 0; i < p - 1; ++i) comb[i] = i;
    std::vector<char> used(n, 0);
    for (;;) {
        // Assemble the subset, repairing rank deficiency by appending unused
        // directions in ascending index order until the span has rank p-1.
        std::fill(used.begin(), used.end(), 0);
        Matrix rows(p - 1, p);
        int count = 0;
        for (int idx : comb) {
            rows.row(count++) = ds.directions.row(idx);
            used[idx] = 1;
        }
        int rank = rank_of(rows);
        for (int j = 0; j < n && rank < p - 1; ++j) {
            if (used[j]) continue;
            Matrix grown(count + 1, p);
            grown.topRows(count) = rows.topRows(count);
            grown.row(count) = ds.directions.row(j);
            const int grown_rank = rank_of(grown);
            if (grown_rank > rank) {
                rows = grown;
                ++count;
                used[j] = 1;
                rank = grown_rank;
            }
        }
        if (rank == p - 1) {
            const Vector v = orthogonal_complement_direction(rows.topRows(count));
            const double value = evaluate_f(ds, v);
            if (!have_best || value < best.value) {
                best = MinimizerCertificate{v, maximal_omega(ds, v), value};
                have_best = true;
            }
        }
        // Next lexicographic combination.
        int i = p - 2;
        while (i >= 0 && comb[i] == n - (p - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int k = i + 1; k < p - 1; ++k) comb[k] = comb[k - 1] + 1;
    }
    if (!have_best) {
        throw RankDeficient("v_min: no subset spans a (p-1)-dimensional subspace");
    }
    return best;
}

ObjectiveReport report(const DirectionSet& ds) {
    ObjectiveReport rep;
    auto [vmax, signs] = v_max(ds);
    rep.v_max_value = vmax;
    rep.sign_pattern = std::move(signs);
    rep.certificate = v_min(ds);
    rep.v_min_value = rep.certificate.value;
    rep.ratio = rep.v_min_value / rep.v_max_value;
    rep.c_n = 2.0 / (rep.v_min_value + rep.v_max_value);
    rep.worst_case_error = (rep.v_max_value - rep.v_min_value) /
                           (rep.v_max_value + rep.v_min_value);
    return rep;
}

} // namespace optproj
