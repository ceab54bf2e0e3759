#include "lipfix/solution_operator.hpp"

#include "lipfix/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lipfix {

ConstantC constant_c(const EquationSystem& sys, double lambda, double gamma) {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw Error(ErrorKind::InvalidArgument, "constant_c: lambda not in [0, 1)", lambda);
    ConstantC out;
    const double x0 = sys.base_point();
    out.c0 = (displacement(sys, x0) + 1.0 + std::fabs(gamma)) / (1.0 - lambda);
    out.c = std::max(1.0, out.c0);
    return out;
}

ConstantD constant_d(const EquationSystem& sys, double lambda, double gamma, std::size_t G) {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw Error(ErrorKind::InvalidArgument, "constant_d: lambda not in [0, 1)", lambda);
    ConstantD out;
    out.d0 = d0(sys, G);
    out.d = std::max(1.0, (out.d0 + 1.0 + std::fabs(gamma)) / (1.0 - lambda));
    return out;
}

GridFunction inverse_apply(const EquationSystem& sys, const GridFunction& psi) {
    const ClosureReport cr = check_domain_closure(sys, psi.size());
    if (!cr.closed) throw Error(ErrorKind::DomainNotClosed, "inverse_apply: a map leaves the domain on the grid");
    return lin_comb(1.0, psi, -1.0, apply_T0(sys, psi));
}

OperatorBoundsReport check_operator_bounds(const EquationSystem& sys, const GridFunction& F, const Solution& sol,
                                           const HypothesisReport& report, Slack slack) {
    OperatorBoundsReport r;
    const double lambda = report.lambda_declared;
    const double inv = 1.0 / std::fabs(1.0 - sol.gamma);
    const ConstantC cc = constant_c(sys, lambda, sol.gamma);
    const ConstantD cd = constant_d(sys, lambda, sol.gamma, sol.phi.size());
    r.c0 = cc.c0;
    r.c = cc.c;
    r.d0 = cd.d0;
    r.d = cd.d;
    r.base_point = sys.base_point();

    r.phi_lip_norm = sol.phi.lip_norm(r.base_point);
    r.F_lip_norm = F.lip_norm(r.base_point);
    r.lip_bound = r.c * inv * r.F_lip_norm;
    r.phi_bl_norm = sol.phi.bl_norm();
    r.F_bl_norm = F.bl_norm();
    r.bl_bound = r.d * inv * r.F_bl_norm;

    r.lip_ratio_ok = r.phi_lip_norm <= r.lip_bound + sol.tail_bound + slack.at(r.lip_bound);
    r.bl_ratio_ok = r.phi_bl_norm <= r.bl_bound + sol.tail_bound + slack.at(r.bl_bound);
    r.worst_lip_ratio = r.F_lip_norm > 0.0 ? r.phi_lip_norm / r.F_lip_norm : 0.0;
    r.worst_bl_ratio = r.F_bl_norm > 0.0 ? r.phi_bl_norm / r.F_bl_norm : 0.0;
    r.inverse_lip_ratio = r.phi_lip_norm > 0.0 ? r.F_lip_norm / r.phi_lip_norm : 0.0;
    r.inverse_bl_ratio = r.phi_bl_norm > 0.0 ? r.F_bl_norm / r.phi_bl_norm : 0.0;
    return r;
}

RandomPiecewiseLinear random_piecewise_linear(double lo, double hi, std::size_t G, std::uint64_t seed,
                                              std::size_t min_kinks, std::size_t max_kinks, double max_slope) {
    if (min_kinks > max_kinks) throw Error(ErrorKind::InvalidArgument, "random_piecewise_linear: min_kinks > max_kinks");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> kink_count(min_kinks, max_kinks);
    std::uniform_real_distribution<double> position(lo, hi);
    std::uniform_real_distribution<double> slope(-max_slope, max_slope);
    std::uniform_real_distribution<double> offset(-1.0, 1.0);

    const std::size_t k = kink_count(rng);
    std::vector<double> kinks(k);
    for (double& t : kinks) t = position(rng);
    std::sort(kinks.begin(), kinks.end());
    std::vector<double> slopes(k + 1);
    for (double& s : slopes) s = slope(rng);
    const double v0 = offset(rng);

    // v0 + s_0 (x - lo) + sum_k (s_k - s_{k-1}) / 2 * (|x - t_k| + x - t_k)
    using Op = Expr::BinaryOp;
    const Expr x = Expr::variable();
    Expr e = Expr::binary(Op::Add, Expr::number(v0),
                          Expr::binary(Op::Mul, Expr::number(slopes[0]),
                                       Expr::binary(Op::Sub, x, Expr::number(lo))));
    for (std::size_t i = 0; i < k; ++i) {
        const double half_jump = 0.5 * (slopes[i + 1] - slopes[i]);
        const Expr shifted = Expr::binary(Op::Sub, x, Expr::number(kinks[i]));
        const Expr hinge = Expr::binary(Op::Add, Expr::call(Expr::Function::Abs, {shifted}), shifted);
        e = Expr::binary(Op::Add, e, Expr::binary(Op::Mul, Expr::number(half_jump), hinge));
    }
    GridFunction grid = from_expr(e, lo, hi, G);
    return {std::move(e), std::move(grid), k};
}

RoundTripReport round_trip(const EquationSystem& sys, const HypothesisReport& report, double epsilon,
                           std::size_t G, std::uint64_t seed, std::size_t count, Slack slack) {
    RoundTripReport out;
    out.seed = seed;
    out.grid = G;
    out.epsilon = epsilon;
    out.ok = true;
    const double q = abs_kernel_mass(sys);
    std::mt19937_64 seeds(seed);
    for (std::size_t i = 0; i < count; ++i) {
        RoundTripInstance inst;
        inst.seed = seeds();
        const RandomPiecewiseLinear F = random_piecewise_linear(sys.lo(), sys.hi(), G, inst.seed);
        const Solution sol = solve_grid(sys, F.grid, epsilon, report);
        const GridFunction F_back = inverse_apply(sys, sol.phi);
        inst.forward_error = lin_comb(1.0, F_back, -1.0, F.grid).sup_norm();
        inst.forward_tolerance = (1.0 + q) * sol.tail_bound + 4.0 * slack.at(F.grid.sup_norm());
        inst.bounds = check_operator_bounds(sys, F.grid, sol, report, slack);

        const RandomPiecewiseLinear psi = random_piecewise_linear(sys.lo(), sys.hi(), G, seeds());
        const GridFunction F_psi = inverse_apply(sys, psi.grid);
        const Solution sol_psi = solve_grid(sys, F_psi, epsilon, report);
        inst.reverse_error = lin_comb(1.0, sol_psi.phi, -1.0, psi.grid).sup_norm();
        inst.reverse_tolerance = (1.0 + q) * sol_psi.tail_bound + 4.0 * slack.at(psi.grid.sup_norm());

        inst.ok = inst.forward_error <= inst.forward_tolerance && inst.reverse_error <= inst.reverse_tolerance &&
                  inst.bounds.lip_ratio_ok && inst.bounds.bl_ratio_ok;
        out.ok = out.ok && inst.ok;
        out.max_forward_error = std::max(out.max_forward_error, inst.forward_error);
        out.max_reverse_error = std::max(out.max_reverse_error, inst.reverse_error);
        out.worst_lip_ratio = std::max(out.worst_lip_ratio, inst.bounds.worst_lip_ratio);
        out.worst_bl_ratio = std::max(out.worst_bl_ratio, inst.bounds.worst_bl_ratio);
        out.worst_inverse_lip_ratio = std::max(out.worst_inverse_lip_ratio, inst.bounds.inverse_lip_ratio);
        out.worst_inverse_bl_ratio = std::max(out.worst_inverse_bl_ratio, inst.bounds.inverse_bl_ratio);
        out.instances.push_back(std::move(inst));
    }
    return out;
}

}  // namespace lipfix
