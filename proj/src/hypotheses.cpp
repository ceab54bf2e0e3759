#include "lipfix/hypotheses.hpp"

#include "lipfix/error.hpp"
#include "lipfix/gridfn.hpp"
#include "lipfix/parallel.hpp"
#include "lipfix/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace lipfix {

namespace {

double contraction_ratio(const EquationSystem& sys, double x, double z) {
    CompensatedSum s;
    for (const Atom& a : sys.atoms()) s.add(a.weight * std::fabs(a.g) * std::fabs(a.map.eval(x) - a.map.eval(z)));
    return s.value() / std::fabs(x - z);
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

LambdaEstimate estimate_lambda(const EquationSystem& sys, std::size_t pair_count, std::uint64_t seed,
                               std::size_t grid_nodes) {
    if (pair_count < 1) throw Error(ErrorKind::InvalidArgument, "estimate_lambda: pair_count must be >= 1");
    if (grid_nodes < 2) throw Error(ErrorKind::InvalidArgument, "estimate_lambda: grid_nodes must be >= 2");
    const GridFunction grid = GridFunction::zeros(sys.lo(), sys.hi(), grid_nodes);
    const double spacing = (sys.hi() - sys.lo()) / static_cast<double>(grid_nodes - 1);

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(grid_nodes - 1 + pair_count);
    for (std::size_t j = 0; j + 1 < grid_nodes; ++j) pairs.emplace_back(grid.node(j), grid.node(j + 1));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(sys.lo(), sys.hi());
    while (pairs.size() < grid_nodes - 1 + pair_count) {
        const double x = dist(rng);
        const double z = dist(rng);
        if (std::fabs(x - z) < spacing) continue;
        pairs.emplace_back(x, z);
    }

    const std::size_t chunks = chunk_count(pairs.size());
    std::vector<LambdaEstimate> best(chunks);
    std::vector<bool> found(chunks, false);
    parallel_chunks(pairs.size(), chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double r = contraction_ratio(sys, pairs[k].first, pairs[k].second);
            if (!found[c] || r > best[c].ratio) {
                best[c] = {r, pairs[k]};
                found[c] = true;
            }
        }
    });
    LambdaEstimate out = best[0];
    for (std::size_t c = 1; c < chunks; ++c) {
        if (found[c] && best[c].ratio > out.ratio) out = best[c];
    }
    return out;
}

double estimate_L(const EquationSystem& sys, std::size_t grid_count) {
    if (grid_count < 2) throw Error(ErrorKind::InvalidArgument, "estimate_L: grid_count must be >= 2");
    return from_expr(sys.inhomogeneity(), sys.lo(), sys.hi(), grid_count).lip_seminorm();
}

HypothesisReport audit(const EquationSystem& sys, const AuditConfig& config) {
    if (!(config.tol_gamma > 0.0) || !(config.tol_lambda > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "audit tolerances must be > 0");
    }
    HypothesisReport r;
    r.config = config;
    r.gamma = gamma(sys);
    r.gamma_ok = std::fabs(r.gamma - 1.0) > config.tol_gamma;
    r.lambda_declared = sys.declared_lambda();
    const LambdaEstimate le =
        estimate_lambda(sys, config.pair_count, config.seed, std::max(kLambdaGridNodes, config.grid_count));
    r.lambda_observed = le.ratio;
    r.worst_pair = le.worst_pair;
    r.lambda_ok = r.lambda_observed <= r.lambda_declared + config.tol_lambda;
    r.L_observed = estimate_L(sys, config.grid_count);
    r.closure = check_domain_closure(sys, config.grid_count);
    r.closure_ok = r.closure.closed;
    return r;
}

void require_solvable(const HypothesisReport& report) {
    if (!(report.lambda_declared < 1.0)) {
        throw Error(ErrorKind::NotAContraction,
                    "audit: declared lambda " + g17(report.lambda_declared) + " is not in [0, 1)",
                    report.lambda_declared);
    }
    if (!report.gamma_ok) {
        throw Error(ErrorKind::GammaIsOne,
                    "audit: gamma = " + g17(report.gamma) + " is within " + g17(report.config.tol_gamma) +
                        " of 1; no unique Lipschitz solution is guaranteed",
                    report.gamma);
    }
    if (!report.lambda_ok) {
        throw Error(ErrorKind::ContractionViolated,
                    "audit: observed contraction ratio " + g17(report.lambda_observed) + " at pair (" +
                        g17(report.worst_pair.first) + ", " + g17(report.worst_pair.second) +
                        ") exceeds declared lambda " + g17(report.lambda_declared),
                    report.lambda_observed);
    }
}

}  // namespace lipfix
