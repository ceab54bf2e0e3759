#pragma once

#include "lipfix/system.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>

namespace lipfix {

struct AuditConfig {
    double tol_gamma = 1e-9;
    double tol_lambda = 1e-6;
    std::size_t grid_count = 2049;
    std::size_t pair_count = 4096;
    std::uint64_t seed = 0;
};

struct LambdaEstimate {
    double ratio = 0.0;
    std::pair<double, double> worst_pair{0.0, 0.0};
};

/// Default node count of the grid whose adjacent pairs are always sampled by
/// estimate_lambda.
inline constexpr std::size_t kLambdaGridNodes = 4096;

/// Max over sampled pairs x != z of sum_i w_i|g_i||f_i(x) - f_i(z)| / |x - z|.
///
/// Pairs are every adjacent pair of a `grid_nodes`-node grid followed by
/// `pair_count` pairs drawn uniformly from [lo, hi]^2 with a mt19937_64
/// seeded by `seed`. Draws closer than the grid spacing are redrawn; the
/// adjacent pairs already cover the local limit. The random sequence for n
/// pairs is a prefix of the one for n+1, so the estimate is monotone in
/// pair_count. Ties resolve to the earliest pair.
LambdaEstimate estimate_lambda(const EquationSystem& sys, std::size_t pair_count, std::uint64_t seed,
                               std::size_t grid_nodes = kLambdaGridNodes);

/// Max adjacent-node slope of F on a uniform grid; a lower estimate of the
/// Lipschitz constant of F, and exactly the Lipschitz constant of its
/// piecewise-linear interpolant on that grid.
double estimate_L(const EquationSystem& sys, std::size_t grid_count);

struct HypothesisReport {
    double gamma = 0.0;
    double lambda_declared = 0.0;
    double lambda_observed = 0.0;
    double L_observed = 0.0;
    bool closure_ok = false;
    bool gamma_ok = false;
    bool lambda_ok = false;  ///< lambda_observed <= lambda_declared + tol_lambda
    std::pair<double, double> worst_pair{0.0, 0.0};
    ClosureReport closure;
    AuditConfig config;
};

/// Fills the report; never throws on failed hypotheses (only on evaluation
/// errors or invalid config).
HypothesisReport audit(const EquationSystem& sys, const AuditConfig& config = {});

/// Gate before solving. Throws, in this order of precedence:
///   NotAContraction      declared lambda >= 1
///   GammaIsOne           |gamma - 1| <= tol_gamma
///   ContractionViolated  lambda_observed > declared + tol_lambda
void require_solvable(const HypothesisReport& report);

}  // namespace lipfix
