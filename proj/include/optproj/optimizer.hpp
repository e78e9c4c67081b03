#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "optproj/objective.hpp"

namespace optproj {

// One coordinate update subproblem: maximize (|cos theta| + A) / ||x(theta) + B||
// over the angle theta between the new direction and the current minimizer v.
struct RootProblem {
    double a_const = 0.0;  // A: sum of |u_i^T v| over directions outside omega
    Vector b_vec;          // B: signed sum of the other directions
    Vector v_ref;          // v: current minimizer
    double alpha = 0.0;    // sin(alpha) = v.B/||B||, cos(alpha) = +sqrt(1-sin^2)
};

RootProblem make_root_problem(double a_const, Vector b_vec, Vector v_ref);

struct OptimizerConfig {
    double delta = 1e-6;          // stopping increment for the accepted ratio
    int max_outer_iters = 500;
    int restarts = 8;
    std::uint64_t seed = 0;
    int theta_grid = 2048;        // bracketing grid for the zeros of g
    double bisection_tol = 1e-12;
    double denom_guard = 1e-9;    // minimum allowed ||x + B||
    // Line-search extension: each coordinate's candidate list additionally
    // scores line_grid equally spaced angles by the true ratio and refines
    // around the best with refine_iters golden-section steps.  Zeros of g are
    // stationary points of a surrogate only; without the line search the
    // ascent stalls early.  Set line_grid = 0 to disable.
    int line_grid = 32;
    int refine_iters = 48;
};

struct OptimizerTrace {
    std::vector<double> ratios;      // accepted ratio per outer iteration
    std::vector<int> chosen_index;   // updated coordinate (-1 for the start entry)
    int restarts_best = 0;
};

// Equal-angle directions (cos theta_i, sin theta_i), theta_i = (i-1) pi / n.
DirectionSet exact_directions_2d(int n);

// The standard basis of R^p with the optimal scale 2 / (1 + sqrt(p)).
DirectionSet exact_directions_np(int p);

// Closed forms for the equal-angle family.
double closed_form_ratio_2d(int n);   // V_min / V_max, n >= 2
double closed_form_vmin_2d(int n);
double closed_form_vmax_2d(int n);
double closed_form_cn_2d(int n);      // 2 tan(pi / 4n), n >= 1

// The two-branch stationarity function whose zeros locate the candidate
// angles (branch split at theta = pi/2).
double g_theta(double theta, const RootProblem& rp);

// Bracketed bisection zeros of g on a theta_grid scan of [0, pi), plus the
// branch boundary pi/2 and the endpoints {0, pi - 1e-9}, deduplicated and
// sorted.  Candidates are stationary points only; callers rank them by the
// objective they care about.
std::vector<double> find_candidate_thetas(const RootProblem& rp,
                                          const OptimizerConfig& cfg);

// Minimizer of ||x + B|| over unit x at angle theta from v:
//   x = v cos(theta) + |sin(theta)| / sqrt(B.B - (v.B)^2) * ((v.B) v - B).
// Throws DegenerateB when B is numerically parallel to v.
Vector lemma4_point(const Vector& v, const Vector& B, double theta,
                    double denom_guard = 1e-9);

// Coordinate ascent on V_min/V_max with multistart; returns the best set
// (scale = the optimal C_n of its final report) and the winning restart's trace.
std::pair<DirectionSet, OptimizerTrace> coordinate_ascent(int p, int n,
                                                          const OptimizerConfig& cfg);

// Single ascent run from a given initial set (no restarts).
std::pair<DirectionSet, OptimizerTrace> coordinate_ascent_from(const DirectionSet& initial,
                                                               const OptimizerConfig& cfg);

} // namespace optproj
