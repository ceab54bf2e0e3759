#pragma once

#include "lipfix/gridfn.hpp"
#include "lipfix/hypotheses.hpp"
#include "lipfix/series.hpp"
#include "lipfix/system.hpp"

#include <cmath>
#include <cstddef>

namespace lipfix {

/// Absolute plus relative allowance for floating-point rounding in bound
/// checks.
struct Slack {
    double abs = 1e-6;
    double rel = 1e-9;
    double at(double scale) const noexcept { return abs + rel * std::fabs(scale); }
};

struct ResidualReport {
    double max_abs_residual = 0.0;
    double argmax_x = 0.0;
    std::size_t probes = 0;
    std::size_t out_of_range = 0;
    bool bound7_ok = true;
    bool bound8_ok = true;
    double bound7_lhs = 0.0;
    double bound7_rhs = 0.0;
    double bound8_worst_margin = 0.0;
    double bound8_worst_x = 0.0;
};

/// Max over probes of |phi(x) - sum_i w_i g_i phi(f_i(x)) - F(x)|. Probes are
/// all grid nodes plus `probe_count` cell midpoints spread evenly over the
/// grid (all midpoints when probe_count >= G - 1). Bound fields are left at
/// their defaults.
ResidualReport residual(const EquationSystem& sys, const GridFunction& phi, std::size_t probe_count);

/// Same with F given as a grid function (its interpolant is the F checked).
ResidualReport residual(const EquationSystem& sys, const GridFunction& F, const GridFunction& phi,
                        std::size_t probe_count);

struct Bound7Check {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

/// lip_seminorm(phi) against L (1 + |gamma|) / ((1 - lambda) |1 - gamma|).
Bound7Check check_bound7(const Solution& sol, double L, Slack slack = {});

struct Bound8Check {
    double worst_margin = 0.0;
    double worst_x = 0.0;
    bool ok = false;
};

/// min over nodes of rhs(x) - |phi(x)| with
///   rhs(x) = (L / (1 - lambda) * displacement(x) + |F(x)|) / |1 - gamma|.
/// ok iff the margin is >= -(tail_bound + slack).
Bound8Check check_bound8(const Solution& sol, const EquationSystem& sys, double L, Slack slack = {});
Bound8Check check_bound8(const Solution& sol, const EquationSystem& sys, const GridFunction& F, double L,
                         Slack slack = {});

/// Residual plus both bounds in one report.
ResidualReport verify_solution(const EquationSystem& sys, const Solution& sol, double L, std::size_t probe_count,
                               Slack slack = {});

struct PicardResult {
    GridFunction phi;
    double q = 0.0;             ///< sum_i w_i |g_i|
    double certificate = 0.0;   ///< q^k / (1 - q) * ||phi_1 - phi_0||_sup
    std::size_t iterations = 0;
};

/// phi_{k+1} = apply_T0(phi_k) + F from phi_0 = F. Independent of the series
/// construction; applicable only when q < 1 (throws NotSupNormContraction
/// otherwise) and the domain is closed (DomainNotClosed).
PicardResult picard_oracle(const EquationSystem& sys, std::size_t iterations, std::size_t G);
PicardResult picard_oracle(const EquationSystem& sys, const GridFunction& F, std::size_t iterations);

struct RefinementCheck {
    std::size_t G = 0;
    double difference = 0.0;  ///< sup distance between the G and 2G-1 solutions
};

/// Solves at G and 2G - 1 nodes with the same epsilon and compares them on
/// the finer grid. This is the empirical interpolation-error measure.
RefinementCheck refinement_difference(const EquationSystem& sys, const HypothesisReport& report, double epsilon,
                                      std::size_t G);

}  // namespace lipfix
