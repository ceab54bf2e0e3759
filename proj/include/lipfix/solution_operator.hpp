#pragma once

#include "lipfix/expr.hpp"
#include "lipfix/gridfn.hpp"
#include "lipfix/hypotheses.hpp"
#include "lipfix/series.hpp"
#include "lipfix/system.hpp"
#include "lipfix/verify.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lipfix {

// The solution operator F -> phi^F and its inverse psi -> psi - T0 psi.

struct ConstantC {
    double c0 = 0.0;
    double c = 1.0;
};

struct ConstantD {
    double d0 = 0.0;
    double d = 1.0;
};

/// c0 = (sum_i w_i|g_i||f_i(x0) - x0| + 1 + |gamma|) / (1 - lambda), c = max(1, c0),
/// with x0 the system's base point.
ConstantC constant_c(const EquationSystem& sys, double lambda, double gamma);

/// d0 from the grid sweep of the displacement, d = max(1, (d0 + 1 + |gamma|) / (1 - lambda)).
ConstantD constant_d(const EquationSystem& sys, double lambda, double gamma, std::size_t G);

/// psi - apply_T0(psi), nodewise. Throws DomainNotClosed.
GridFunction inverse_apply(const EquationSystem& sys, const GridFunction& psi);

struct OperatorBoundsReport {
    double c0 = 0.0;
    double c = 1.0;
    double d0 = 0.0;
    double d = 1.0;
    double base_point = 0.0;
    double phi_lip_norm = 0.0;
    double F_lip_norm = 0.0;
    double lip_bound = 0.0;  ///< c / |1 - gamma| * ||F||_Lip
    double phi_bl_norm = 0.0;
    double F_bl_norm = 0.0;
    double bl_bound = 0.0;   ///< d / |1 - gamma| * ||F||_BL
    bool lip_ratio_ok = false;
    bool bl_ratio_ok = false;
    double worst_lip_ratio = 0.0;  ///< ||phi||_Lip / ||F||_Lip (0 when F = 0)
    double worst_bl_ratio = 0.0;   ///< ||phi||_BL / ||F||_BL
    /// ||F|| / ||phi|| in each norm; empirical, no a-priori bound is claimed.
    double inverse_lip_ratio = 0.0;
    double inverse_bl_ratio = 0.0;
};

/// Forward norm bounds for one solved instance. Uses the report's declared
/// lambda and the solution's gamma.
OperatorBoundsReport check_operator_bounds(const EquationSystem& sys, const GridFunction& F, const Solution& sol,
                                           const HypothesisReport& report, Slack slack = {});

struct RandomPiecewiseLinear {
    Expr expr;
    GridFunction grid;
    std::size_t kinks = 0;
};

/// Random continuous piecewise-linear function on [lo, hi] with kinks in
/// [min_kinks, max_kinks], segment slopes uniform in [-max_slope, max_slope]
/// and value at lo uniform in [-1, 1]. Deterministic in `seed`.
RandomPiecewiseLinear random_piecewise_linear(double lo, double hi, std::size_t G, std::uint64_t seed,
                                              std::size_t min_kinks = 8, std::size_t max_kinks = 64,
                                              double max_slope = 1.0);

struct RoundTripInstance {
    std::uint64_t seed = 0;
    double forward_error = 0.0;   ///< ||inverse_apply(solve(F)) - F||_sup
    double forward_tolerance = 0.0;
    double reverse_error = 0.0;   ///< ||solve(inverse_apply(psi)) - psi||_sup
    double reverse_tolerance = 0.0;
    OperatorBoundsReport bounds;
    bool ok = false;
};

struct RoundTripReport {
    std::uint64_t seed = 0;
    std::size_t grid = 0;
    double epsilon = 0.0;
    std::vector<RoundTripInstance> instances;
    double max_forward_error = 0.0;
    double max_reverse_error = 0.0;
    double worst_lip_ratio = 0.0;
    double worst_bl_ratio = 0.0;
    double worst_inverse_lip_ratio = 0.0;
    double worst_inverse_bl_ratio = 0.0;
    bool ok = false;
};

/// F -> phi -> F and psi -> F -> phi on `count` random piecewise-linear
/// instances. Tolerance per direction is (1 + sum w|g|) * tail_bound + 4 * slack.
RoundTripReport round_trip(const EquationSystem& sys, const HypothesisReport& report, double epsilon,
                           std::size_t G, std::uint64_t seed, std::size_t count = 20, Slack slack = {});

}  // namespace lipfix
