#include "lipfix/verify.hpp"

#include "lipfix/error.hpp"
#include "lipfix/summation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace lipfix {

namespace {

ResidualReport residual_impl(const EquationSystem& sys, const std::function<double(double)>& F,
                             const GridFunction& phi, std::size_t probe_count) {
    if (probe_count < 1) throw Error(ErrorKind::InvalidArgument, "residual: probe_count must be >= 1");
    const std::size_t G = phi.size();
    std::vector<double> probes;
    probes.reserve(G + probe_count);
    for (std::size_t j = 0; j < G; ++j) probes.push_back(phi.node(j));
    const std::size_t cells = G - 1;
    const std::size_t mids = std::min(probe_count, cells);
    for (std::size_t k = 0; k < mids; ++k) {
        const std::size_t cell = k * cells / mids;
        probes.push_back(0.5 * (phi.node(cell) + phi.node(cell + 1)));
    }

    ResidualReport r;
    r.probes = probes.size();
    for (double x : probes) {
        CompensatedSum s;
        s.add(phi.eval(x));
        for (const Atom& a : sys.atoms()) s.add(-a.weight * a.g * phi.eval(a.map.eval(x), &r.out_of_range));
        s.add(-F(x));
        const double res = std::fabs(s.value());
        if (res > r.max_abs_residual) {
            r.max_abs_residual = res;
            r.argmax_x = x;
        }
    }
    return r;
}

Bound8Check bound8_impl(const Solution& sol, const EquationSystem& sys, const std::function<double(double)>& F,
                        double L, Slack slack) {
    const double lambda = sol.lambda_used;
    const double denom = std::fabs(1.0 - sol.gamma);
    Bound8Check out;
    bool first = true;
    double scale = 0.0;
    for (std::size_t j = 0; j < sol.phi.size(); ++j) {
        const double x = sol.phi.node(j);
        const double rhs = (L / (1.0 - lambda) * displacement(sys, x) + std::fabs(F(x))) / denom;
        const double margin = rhs - std::fabs(sol.phi.values()[j]);
        scale = std::max(scale, rhs);
        if (first || margin < out.worst_margin) {
            out.worst_margin = margin;
            out.worst_x = x;
            first = false;
        }
    }
    out.ok = out.worst_margin >= -(sol.tail_bound + slack.at(scale));
    return out;
}

}  // namespace

ResidualReport residual(const EquationSystem& sys, const GridFunction& phi, std::size_t probe_count) {
    const Expr& F = sys.inhomogeneity();
    return residual_impl(sys, [&F](double x) { return F.eval(x); }, phi, probe_count);
}

ResidualReport residual(const EquationSystem& sys, const GridFunction& F, const GridFunction& phi,
                        std::size_t probe_count) {
    return residual_impl(sys, [&F](double x) { return F.eval(x); }, phi, probe_count);
}

Bound7Check check_bound7(const Solution& sol, double L, Slack slack) {
    Bound7Check out;
    out.lhs = sol.phi.lip_seminorm();
    out.rhs = L * (1.0 + std::fabs(sol.gamma)) / ((1.0 - sol.lambda_used) * std::fabs(1.0 - sol.gamma));
    out.ok = out.lhs <= out.rhs + slack.at(out.rhs);
    return out;
}

Bound8Check check_bound8(const Solution& sol, const EquationSystem& sys, double L, Slack slack) {
    const Expr& F = sys.inhomogeneity();
    return bound8_impl(sol, sys, [&F](double x) { return F.eval(x); }, L, slack);
}

Bound8Check check_bound8(const Solution& sol, const EquationSystem& sys, const GridFunction& F, double L,
                         Slack slack) {
    return bound8_impl(sol, sys, [&F](double x) { return F.eval(x); }, L, slack);
}

ResidualReport verify_solution(const EquationSystem& sys, const Solution& sol, double L, std::size_t probe_count,
                               Slack slack) {
    ResidualReport r = residual(sys, sol.phi, probe_count);
    const Bound7Check b7 = check_bound7(sol, L, slack);
    const Bound8Check b8 = check_bound8(sol, sys, L, slack);
    r.bound7_lhs = b7.lhs;
    r.bound7_rhs = b7.rhs;
    r.bound7_ok = b7.ok;
    r.bound8_worst_margin = b8.worst_margin;
    r.bound8_worst_x = b8.worst_x;
    r.bound8_ok = b8.ok;
    return r;
}

PicardResult picard_oracle(const EquationSystem& sys, const GridFunction& F, std::size_t iterations) {
    if (iterations < 1) throw Error(ErrorKind::InvalidArgument, "picard_oracle: iterations must be >= 1");
    const double q = abs_kernel_mass(sys);
    if (!(q < 1.0)) {
        throw Error(ErrorKind::NotSupNormContraction,
                    "picard_oracle: sum w|g| = " + std::to_string(q) + " is not < 1", q);
    }
    const ClosureReport cr = check_domain_closure(sys, F.size());
    if (!cr.closed) throw Error(ErrorKind::DomainNotClosed, "picard_oracle: a map leaves the domain on the grid");

    GridFunction phi = F;
    double first_step = 0.0;
    for (std::size_t k = 0; k < iterations; ++k) {
        GridFunction next = lin_comb(1.0, apply_T0(sys, phi), 1.0, F);
        if (k == 0) first_step = lin_comb(1.0, next, -1.0, phi).sup_norm();
        phi = std::move(next);
    }
    PicardResult out{std::move(phi)};
    out.q = q;
    out.iterations = iterations;
    out.certificate = std::pow(q, static_cast<double>(iterations)) / (1.0 - q) * first_step;
    return out;
}

PicardResult picard_oracle(const EquationSystem& sys, std::size_t iterations, std::size_t G) {
    const double q = abs_kernel_mass(sys);
    if (!(q < 1.0)) {
        throw Error(ErrorKind::NotSupNormContraction,
                    "picard_oracle: sum w|g| = " + std::to_string(q) + " is not < 1", q);
    }
    return picard_oracle(sys, from_expr(sys.inhomogeneity(), sys.lo(), sys.hi(), G), iterations);
}

RefinementCheck refinement_difference(const EquationSystem& sys, const HypothesisReport& report, double epsilon,
                                      std::size_t G) {
    // The fine solve reuses the coarse truncation order so that the difference
    // isolates interpolation error.
    const Solution coarse = solve(sys, epsilon, G, report);
    const std::size_t fine_G = 2 * G - 1;
    const auto fine_its =
        iterate_F(sys, coarse.N, fine_G);
    return {G, sup_distance(coarse.phi, partial_sum(fine_its, coarse.gamma))};
}

}  // namespace lipfix
