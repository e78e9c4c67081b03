#include "optproj/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "optproj/rng.hpp"

namespace optproj {

namespace {
constexpr double kPi = std::numbers::pi;
}

RootProblem make_root_problem(double a_const, Vector b_vec, Vector v_ref) {
    const double bb = b_vec.squaredNorm();
    if (bb <= 0.0 || std::sqrt(bb) <= 1e-300) {
        throw DegenerateB("make_root_problem: ||B|| is zero");
    }
    const double vb = v_ref.dot(b_vec);
    const double sin_a = std::clamp(vb / std::sqrt(bb), -1.0, 1.0);
    RootProblem rp;
    rp.a_const = a_const;
    rp.b_vec = std::move(b_vec);
    rp.v_ref = std::move(v_ref);
    rp.alpha = std::asin(sin_a);  // cos(alpha) >= 0 by construction
    return rp;
}

DirectionSet exact_directions_2d(int n) {
    if (n < 1) throw InvalidShape("exact_directions_2d: n must be >= 1");
    Matrix rows(n, 2);
    for (int i = 0; i < n; ++i) {
        const double theta = static_cast<double>(i) * kPi / n;
        rows(i, 0) = std::cos(theta);
        rows(i, 1) = std::sin(theta);
    }
    return make_direction_set(std::move(rows), closed_form_cn_2d(n), Kind::Optimal2D);
}

DirectionSet exact_directions_np(int p) {
    if (p < 1) throw InvalidShape("exact_directions_np: p must be >= 1");
    return make_direction_set(Matrix::Identity(p, p), 2.0 / (1.0 + std::sqrt(p)),
                              Kind::Orthonormal);
}

double closed_form_vmin_2d(int n) {
    if (n < 2) throw InvalidShape("closed_form_vmin_2d: n must be >= 2");
    double s = 0.0;
    if (n % 2 == 0) {
        const int a = n / 2;
        for (int r = 1; r <= a - 1; ++r) s += std::sin(r * kPi / (2 * a));
        return 2.0 * s + 1.0;
    }
    const int a = (n - 1) / 2;
    for (int r = 1; r <= a; ++r) s += std::sin(r * kPi / (2 * a + 1));
    return 2.0 * s;
}

double closed_form_vmax_2d(int n) {
    if (n < 2) throw InvalidShape("closed_form_vmax_2d: n must be >= 2");
    double s = 0.0;
    if (n % 2 == 0) {
        const int a = n / 2;
        for (int r = 1; r <= a; ++r) s += std::sin((2 * r - 1) * kPi / (4 * a));
        return 2.0 * s;
    }
    const int a = (n - 1) / 2;
    for (int r = 1; r <= a; ++r) s += std::sin((2 * r - 1) * kPi / (2 * (2 * a + 1)));
    return 2.0 * s + 1.0;
}

double closed_form_ratio_2d(int n) {
    return closed_form_vmin_2d(n) / closed_form_vmax_2d(n);
}

double closed_form_cn_2d(int n) {
    if (n < 1) throw InvalidShape("closed_form_cn_2d: n must be >= 1");
    return 2.0 * std::tan(kPi / (4.0 * n));
}

double g_theta(double theta, const RootProblem& rp) {
    const double bb = rp.b_vec.squaredNorm();
    const double nb = std::sqrt(bb);
    const double a = rp.alpha;
    const double A = rp.a_const;
    if (theta < kPi / 2.0) {
        return nb * (std::cos(a) + A * std::cos(a - theta) -
                     std::sin(theta) * std::sin(a - theta)) -
               (1.0 + bb) * std::sin(theta);
    }
    return nb * (-std::cos(a) + A * std::cos(a - theta) +
                 std::sin(theta) * std::sin(a - theta)) +
           (1.0 + bb) * std::sin(theta);
}

std::vector<double> find_candidate_thetas(const RootProblem& rp,
                                          const OptimizerConfig& cfg) {
    std::vector<double> candidates{0.0, kPi / 2.0, kPi - 1e-9};
    const int grid = std::max(cfg.theta_grid, 4);
    const double h = kPi / grid;
    double prev_theta = 0.0;
    double prev_g = g_theta(0.0, rp);
    for (int k = 1; k <= grid; ++k) {
        const double theta = std::min(k * h, kPi - 1e-12);
        const double g = g_theta(theta, rp);
        if (prev_g == 0.0) {
            candidates.push_back(prev_theta);
        } else if (prev_g * g < 0.0 &&
                   // both branches are continuous; do not bisect across pi/2
                   !(prev_theta < kPi / 2.0 && theta >= kPi / 2.0)) {
            double lo = prev_theta, hi = theta, glo = prev_g;
            while (hi - lo > cfg.bisection_tol) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g_theta(mid, rp);
                if (glo * gm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            candidates.push_back(0.5 * (lo + hi));
        }
        prev_theta = theta;
        prev_g = g;
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<double> out;
    for (double c : candidates) {
        if (out.empty() || c - out.back() > 1e-10) out.push_back(c);
    }
    return out;
}

Vector lemma4_point(const Vector& v, const Vector& B, double theta, double denom_guard) {
    const double bb = B.squaredNorm();
    const double vb = v.dot(B);
    const double d = bb - vb * vb;
    if (d <= denom_guard * denom_guard) {
        throw DegenerateB("lemma4_point: B is numerically parallel to v");
    }
    return std::cos(theta) * v +
           (std::abs(std::sin(theta)) / std::sqrt(d)) * (vb * v - B);
}

namespace {

// Deterministic tangent used when B is parallel to v: Gram-Schmidt of the
// first standard basis vector not parallel to v (all points of the
// constraint circle then give the same ||x + B||).
Vector fallback_tangent(const Vector& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        Vector e = Vector::Zero(v.size());
        e[k] = 1.0;
        Vector t = e - e.dot(v) * v;
        const double norm = t.norm();
        if (norm > 1e-6) return t / norm;
    }
    throw DegenerateB("fallback_tangent: no basis vector independent of v");
}

struct Candidate {
    double ratio = -1.0;
    int j = -1;
    double theta = 0.0;
    Matrix rows;
    ObjectiveReport rep;
    bool valid = false;
};

class AscentRun {
public:
    AscentRun(Matrix rows, const OptimizerConfig& cfg)
        : rows_(std::move(rows)), cfg_(cfg) {}

    void run(OptimizerTrace& trace) {
        rep_ = report(current_set());
        trace.ratios.push_back(rep_.ratio);
        trace.chosen_index.push_back(-1);
        for (int iter = 0; iter < cfg_.max_outer_iters; ++iter) {
            Candidate best = best_candidate();
            if (!best.valid || best.ratio <= rep_.ratio) break;  // revert rule
            const double improvement = best.ratio - rep_.ratio;
            rows_ = std::move(best.rows);
            rep_ = std::move(best.rep);
            trace.ratios.push_back(rep_.ratio);
            trace.chosen_index.push_back(best.j);
            if (improvement < cfg_.delta) break;
        }
    }

    DirectionSet current_set() const {
        return DirectionSet{rows_, 1.0, Kind::Ascent};
    }
    const ObjectiveReport& rep() const { return rep_; }
    const Matrix& rows() const { return rows_; }

private:
    Matrix rows_;
    const OptimizerConfig& cfg_;
    ObjectiveReport rep_;

    // Evaluates the replacement of row j by the point at angle theta on the
    // constraint circle; returns the full-set report ratio.
    std::optional<std::pair<double, ObjectiveReport>> try_theta(
        int j, const Vector& v, const Vector& B, const Vector& tangent,
        double theta, Matrix& scratch) {
        Vector x;
        if (tangent.size() > 0) {
            x = std::cos(theta) * v + std::abs(std::sin(theta)) * tangent;
        } else {
            x = lemma4_point(v, B, theta, cfg_.denom_guard);
        }
        if ((x + B).norm() < cfg_.denom_guard) {
            return std::nullopt;  // candidate u_j ~ -B: discarded
        }
        const double norm = x.norm();
        if (norm <= 1e-300) return std::nullopt;
        scratch = rows_;
        scratch.row(j) = x.transpose() / norm;
        ObjectiveReport rep = report(DirectionSet{scratch, 1.0, Kind::Ascent});
        return std::make_pair(rep.ratio, std::move(rep));
    }

    Candidate best_candidate() {
        Candidate best;
        const int n = static_cast<int>(rows_.rows());
        const Vector& v = rep_.certificate.v_min;
        std::vector<char> in_omega(n, 0);
        for (int idx : rep_.certificate.omega) in_omega[idx] = 1;
        Matrix scratch;
        for (int j = 0; j < n; ++j) {
            if (in_omega[j]) continue;
            const double sj = static_cast<double>(rep_.sign_pattern.signs[j]);
            Vector B = Vector::Zero(rows_.cols());
            double A = 0.0;
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                B += sj * rep_.sign_pattern.signs[i] * rows_.row(i).transpose();
                if (!in_omega[i]) A += std::abs(rows_.row(i).dot(v));
            }
            // Candidate angles: zeros of g plus boundaries; when B is
            // degenerate every angle gives the same denominator and the
            // boundaries suffice.
            std::vector<double> thetas;
            Vector tangent;  // empty unless B is parallel to v (or zero)
            if (B.norm() < cfg_.denom_guard) {
                thetas = {0.0, kPi / 2.0, kPi - 1e-9};
                tangent = fallback_tangent(v);
            } else {
                const double d = B.squaredNorm() - std::pow(v.dot(B), 2);
                if (d <= cfg_.denom_guard * cfg_.denom_guard) {
                    thetas = {0.0, kPi / 2.0, kPi - 1e-9};
                    tangent = fallback_tangent(v);
                } else {
                    thetas = find_candidate_thetas(
                        make_root_problem(A, B, v), cfg_);
                }
            }
            // Line-search extension: a coarse angle grid scored by the true
            // ratio, refined below around the best candidate.
            for (int k = 1; k < cfg_.line_grid; ++k) {
                thetas.push_back(kPi * k / cfg_.line_grid);
            }
            std::sort(thetas.begin(), thetas.end());

            double bj_ratio = -1.0, bj_theta = 0.0;
            ObjectiveReport bj_rep;
            Matrix bj_rows;
            for (double theta : thetas) {
                auto r = try_theta(j, v, B, tangent, theta, scratch);
                if (r && r->first > bj_ratio) {
                    bj_ratio = r->first;
                    bj_theta = theta;
                    bj_rep = std::move(r->second);
                    bj_rows = scratch;
                }
            }
            if (bj_ratio < 0.0) continue;
            if (cfg_.line_grid > 0 && cfg_.refine_iters > 0) {
                // Golden-section polish of the true ratio around the best
                // angle (the maximum usually sits at a kink that is not a
                // stationary point of the surrogate).
                const double h = kPi / std::max(cfg_.line_grid, 8);
                double lo = std::max(0.0, bj_theta - h);
                double hi = std::min(kPi - 1e-9, bj_theta + h);
                const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
                double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
                auto value_at = [&](double t) {
                    auto r = try_theta(j, v, B, tangent, t, scratch);
                    return r ? r->first : -1.0;
                };
                double f1 = value_at(c1), f2 = value_at(c2);
                for (int it = 0; it < cfg_.refine_iters; ++it) {
                    if (f1 < f2) {
                        lo = c1;
                        c1 = c2;
                        f1 = f2;
                        c2 = lo + gr * (hi - lo);
                        f2 = value_at(c2);
                    } else {
                        hi = c2;
                        c2 = c1;
                        f2 = f1;
                        c1 = hi - gr * (hi - lo);
                        f1 = value_at(c1);
                    }
                }
                const double mid = 0.5 * (lo + hi);
                auto r = try_theta(j, v, B, tangent, mid, scratch);
                if (r && r->first > bj_ratio) {
                    bj_ratio = r->first;
                    bj_theta = mid;
                    bj_rep = std::move(r->second);
                    bj_rows = scratch;
                }
            }
            if (bj_ratio > best.ratio) {
                best.ratio = bj_ratio;
                best.j = j;
                best.theta = bj_theta;
                best.rows = std::move(bj_rows);
                best.rep = std::move(bj_rep);
                best.valid = true;
            }
        }
        return best;
    }
};

Matrix initial_rows(int p, int n, int restart, Rng& rng) {
    Matrix rows(n, p);
    if (restart == 0) {
        // Cycled identity with a small seeded perturbation.
        for (int i = 0; i < n; ++i) {
            Vector u = Vector::Zero(p);
            u[i % p] = 1.0;
            for (int k = 0; k < p; ++k) u[k] += 0.05 * rng.normal();
            rows.row(i) = u.transpose() / u.norm();
        }
    } else {
        for (int i = 0; i < n; ++i) {
            rows.row(i) = rng.unit_vector(p).transpose();
        }
    }
    return rows;
}

} // namespace

std::pair<DirectionSet, OptimizerTrace> coordinate_ascent_from(
    const DirectionSet& initial, const OptimizerConfig& cfg) {
    initial.validate(1e-9);
    if (initial.n() < initial.p() || initial.p() < 2) {
        throw InvalidShape("coordinate_ascent: need n >= p >= 2");
    }
    AscentRun run(initial.directions, cfg);
    OptimizerTrace trace;
    run.run(trace);
    DirectionSet out{run.rows(), run.rep().c_n, Kind::Ascent};
    out.validate(1e-9);
    return {std::move(out), std::move(trace)};
}

std::pair<DirectionSet, OptimizerTrace> coordinate_ascent(int p, int n,
                                                          const OptimizerConfig& cfg) {
    if (n < p || p < 2) {
        throw InvalidShape("coordinate_ascent: need n >= p >= 2, got n = " +
                           std::to_string(n) + ", p = " + std::to_string(p));
    }
    std::optional<AscentRun> best;
    OptimizerTrace best_trace;
    int best_restart = 0;
    for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(r));
        AscentRun run(initial_rows(p, n, r, rng), cfg);
        OptimizerTrace trace;
        run.run(trace);
        if (!best || run.rep().ratio > best->rep().ratio) {
            best.emplace(std::move(run));
            best_trace = std::move(trace);
            best_restart = r;
        }
    }
    best_trace.restarts_best = best_restart;
    DirectionSet out{best->rows(), best->rep().c_n, Kind::Ascent};
    out.validate(1e-9);
    return {std::move(out), std::move(best_trace)};
}

} // namespace optproj
