#include "optproj/approximator.hpp"

#include <cmath>

#include "optproj/errors.hpp"
#include "optproj/optimizer.hpp"
#include "optproj/rng.hpp"

namespace optproj {

double approx_norm(const DirectionSet& ds, const Vector& x) {
    if (x.size() != ds.p()) {
        throw DimensionMismatch("approx_norm: vector has dimension " +
                                std::to_string(x.size()) + ", directions have " +
                                std::to_string(ds.p()));
    }
    return ds.scale * (ds.directions * x).cwiseAbs().sum();
}

double mc_constant(int p) {
    if (p < 1) throw InvalidShape("mc_constant: p must be >= 1");
    // R_k = Gamma((k+1)/2) / Gamma(k/2); C'_p = sqrt(pi) * R_p.
    double r = 1.0 / std::sqrt(M_PI);  // R_1 = Gamma(1)/Gamma(1/2)
    for (int k = 1; k < p; ++k) r = static_cast<double>(k) / (2.0 * r);
    return std::sqrt(M_PI) * r;
}

DirectionSet mc_directions(int p, int n, std::uint64_t seed) {
    if (p < 1) throw InvalidShape("mc_directions: p must be >= 1");
    if (n < 1) throw InvalidShape("mc_directions: n must be >= 1");
    Rng rng(seed, 1);  // stream 1 == first Monte Carlo trial
    Matrix rows(n, p);
    for (int i = 0; i < n; ++i) rows.row(i) = rng.unit_vector(p).transpose();
    DirectionSet ds{rows, mc_constant(p) / static_cast<double>(n),
                    Kind::MonteCarlo};
    ds.validate();
    return ds;
}

namespace {

// Test points are uniform unit vectors, so the target norm is exactly 1.
Matrix draw_test_vectors(int p, int test_vectors, std::uint64_t seed) {
    Rng rng(seed, 0);  // stream 0 is reserved for test vectors
    Matrix pts(test_vectors, p);
    for (int t = 0; t < test_vectors; ++t)
        pts.row(t) = rng.unit_vector(p).transpose();
    return pts;
}

double mse_against(const DirectionSet& ds, const Matrix& pts) {
    double acc = 0.0;
    for (int t = 0; t < pts.rows(); ++t) {
        const double err =
            ds.scale * (ds.directions * pts.row(t).transpose()).cwiseAbs().sum() -
            1.0;
        acc += err * err;
    }
    return acc / static_cast<double>(pts.rows());
}

}  // namespace

double mse_of_direction_set(const DirectionSet& ds, int test_vectors,
                            std::uint64_t seed) {
    if (test_vectors < 1)
        throw InvalidShape("mse_of_direction_set: test_vectors must be >= 1");
    return mse_against(ds, draw_test_vectors(ds.p(), test_vectors, seed));
}

MSEReport mse_experiment(const std::string& scheme, int p, int n,
                         int test_vectors, int trials, std::uint64_t seed) {
    if (p < 1) throw InvalidShape("mse_experiment: p must be >= 1");
    if (n < 1) throw InvalidShape("mse_experiment: n must be >= 1");
    if (test_vectors < 1)
        throw InvalidShape("mse_experiment: test_vectors must be >= 1");
    if (trials < 1) throw InvalidShape("mse_experiment: trials must be >= 1");

    MSEReport rep;
    rep.scheme = scheme;
    rep.p = p;
    rep.n = n;
    rep.test_vectors = test_vectors;
    rep.seed = seed;

    const Matrix pts = draw_test_vectors(p, test_vectors, seed);

    if (scheme == "optimal-2d") {
        if (p != 2)
            throw InvalidShape("mse_experiment: optimal-2d requires p = 2");
        rep.trials = 1;  // deterministic construction
        rep.mse = mse_against(exact_directions_2d(n), pts);
    } else if (scheme == "orthonormal") {
        if (n != p)
            throw InvalidShape("mse_experiment: orthonormal requires n = p");
        rep.trials = 1;
        rep.mse = mse_against(exact_directions_np(p), pts);
    } else if (scheme == "ascent") {
        if (n < p || p < 2)
            throw InvalidShape("mse_experiment: ascent requires n >= p >= 2");
        rep.trials = 1;
        OptimizerConfig cfg;
        cfg.seed = seed;
        auto [ds, trace] = coordinate_ascent(p, n, cfg);
        (void)trace;
        rep.mse = mse_against(ds, pts);
    } else if (scheme == "monte-carlo") {
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) {
            Rng rng(seed, static_cast<std::uint64_t>(t) + 1);
            Matrix rows(n, p);
            for (int i = 0; i < n; ++i)
                rows.row(i) = rng.unit_vector(p).transpose();
            DirectionSet ds{rows, mc_constant(p) / static_cast<double>(n),
                            Kind::MonteCarlo};
            acc += mse_against(ds, pts);
        }
        rep.trials = trials;
        rep.mse = acc / static_cast<double>(trials);
    } else {
        throw ParseError("mse_experiment: unknown scheme '" + scheme + "'");
    }
    return rep;
}

}  // namespace optproj
