#include "lipfix/series.hpp"

#include "lipfix/error.hpp"
#include "lipfix/parallel.hpp"
#include "lipfix/summation.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>

namespace lipfix {

std::string_view to_string(Backend b) noexcept {
    return b == Backend::GridCollocation ? "GridCollocation" : "RecursivePointwise";
}

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_tail_inputs(double L, double lambda, double gamma) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "tail bound needs lambda in [0, 1), got " + g17(lambda), lambda);
    }
    if (!(std::fabs(1.0 - gamma) > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "tail bound needs gamma != 1", gamma);
    }
    if (!(L >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tail bound needs L >= 0, got " + g17(L), L);
}

double geometric_tail(double M, double lambda, double gamma, std::size_t N) {
    if (M == 0.0) return 0.0;
    return std::pow(lambda, static_cast<double>(N)) * M / ((1.0 - lambda) * std::fabs(1.0 - gamma));
}

std::size_t smallest_N(double M, double lambda, double gamma, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be > 0", epsilon);
    if (geometric_tail(M, lambda, gamma, 0) <= epsilon) return 0;
    if (lambda == 0.0) return 1;
    // Closed-form guess, then settle on the exact smallest N under the formula.
    const double guess = std::log(epsilon / geometric_tail(M, lambda, gamma, 0)) / std::log(lambda);
    std::size_t N = guess > 1.0 ? static_cast<std::size_t>(guess) : 1;
    while (N > 1 && geometric_tail(M, lambda, gamma, N - 1) <= epsilon) --N;
    while (geometric_tail(M, lambda, gamma, N) > epsilon) ++N;
    return N;
}

void require_closed(const EquationSystem& sys, std::size_t G) {
    const ClosureReport cr = check_domain_closure(sys, G);
    if (cr.closed) return;
    for (std::size_t i = 0; i < cr.atoms.size(); ++i) {
        if (!cr.atoms[i].closed) {
            throw Error(ErrorKind::DomainNotClosed,
                        "atom " + std::to_string(i) + " maps x=" + g17(cr.atoms[i].worst_x) + " outside [" +
                            g17(sys.lo()) + ", " + g17(sys.hi()) + "] by " + g17(cr.atoms[i].overshoot),
                        cr.atoms[i].worst_x);
        }
    }
}

void gate(const HypothesisReport& report) {
    try {
        require_solvable(report);
    } catch (const Error& e) {
        throw Error(ErrorKind::NotSolvable, std::string("solve: ") + e.what(), e.at());
    }
}

Solution solve_grid_impl(const EquationSystem& sys, const GridFunction& F0, double L_used, double epsilon,
                         const HypothesisReport& report) {
    const std::size_t G = F0.size();
    const double gam = gamma(sys);
    const double lambda = sys.declared_lambda();
    const std::size_t N = choose_N(sys, L_used, lambda, gam, epsilon, G);

    std::size_t oor = 0;
    const auto iterates = iterate_from(sys, F0, N, &oor);

    Solution sol{partial_sum(iterates, gam)};
    sol.N = N;
    sol.tail_bound = tail_bound(sys, L_used, lambda, gam, N, G);
    sol.gamma = gam;
    sol.lambda_used = lambda;
    sol.L_used = L_used;
    sol.backend = Backend::GridCollocation;
    sol.diagnostics.out_of_range_count = oor;
    sol.diagnostics.grid_G = G;
    sol.diagnostics.epsilon_requested = epsilon;
    (void)report;
    return sol;
}

struct PointKey {
    std::size_t n;
    std::uint64_t bits;
    bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
    std::size_t operator()(const PointKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.bits ^ (0x9E3779B97F4A7C15ULL * (k.n + 1)));
    }
};

/// F_n(x) by recursion over the atoms, memoised on (n, exact bits of x).
class PointwiseIterates {
public:
    explicit PointwiseIterates(const EquationSystem& sys) : sys_(sys) {}

    double at(std::size_t n, double x) {
        if (x < sys_.lo() || x > sys_.hi()) left_domain_ = true;
        if (n == 0) {
            ++base_evaluations_;
            return sys_.inhomogeneity().eval(x);
        }
        const PointKey key{n, std::bit_cast<std::uint64_t>(x)};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        CompensatedSum s;
        for (const Atom& a : sys_.atoms()) {
            if (a.weight == 0.0 || a.g == 0.0) continue;
            s.add(a.weight * a.g * at(n - 1, a.map.eval(x)));
        }
        memo_.emplace(key, s.value());
        return s.value();
    }

    bool left_domain() const noexcept { return left_domain_; }
    std::size_t points_visited() const noexcept { return memo_.size() + base_evaluations_; }

private:
    const EquationSystem& sys_;
    std::unordered_map<PointKey, double, PointKeyHash> memo_;
    bool left_domain_ = false;
    std::size_t base_evaluations_ = 0;
};

void check_budget(std::size_t m, std::size_t N, std::size_t budget) {
    // m^N with saturation.
    std::size_t points = 1;
    for (std::size_t k = 0; k < N; ++k) {
        if (m != 0 && points > budget / m + 1) {
            points = budget + 1;
            break;
        }
        points *= m;
        if (points > budget) break;
    }
    if (points > budget) {
        throw Error(ErrorKind::BudgetExceeded, "solve_at: " + std::to_string(m) + " atoms at N=" + std::to_string(N) +
                                                   " exceed the point budget " + std::to_string(budget));
    }
}

double pointwise_value(PointwiseIterates& it, std::size_t N, double x, double gam) {
    CompensatedSum s;
    for (std::size_t n = 0; n < N; ++n) s.add(it.at(n, x));
    s.add(it.at(N, x) / (1.0 - gam));
    return s.value();
}

}  // namespace

GridFunction apply_T0(const EquationSystem& sys, const GridFunction& u, std::size_t* out_of_range) {
    const std::size_t G = u.size();
    std::vector<double> out(G);
    const std::size_t chunks = chunk_count(G);
    std::vector<std::size_t> oor(chunks, 0);
    parallel_chunks(G, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const double x = u.node(j);
            CompensatedSum s;
            for (const Atom& a : sys.atoms()) s.add(a.weight * a.g * u.eval(a.map.eval(x), &oor[c]));
            out[j] = s.value();
        }
    });
    if (out_of_range) {
        for (std::size_t v : oor) *out_of_range += v;
    }
    return GridFunction(u.lo(), u.hi(), std::move(out));
}

std::vector<GridFunction> iterate_from(const EquationSystem& sys, const GridFunction& F0, std::size_t N,
                                       std::size_t* out_of_range) {
    std::vector<GridFunction> its;
    its.reserve(N + 1);
    its.push_back(F0);
    for (std::size_t n = 1; n <= N; ++n) its.push_back(apply_T0(sys, its.back(), out_of_range));
    return its;
}

std::vector<GridFunction> iterate_F(const EquationSystem& sys, std::size_t N, std::size_t G) {
    require_closed(sys, G);
    return iterate_from(sys, from_expr(sys.inhomogeneity(), sys.lo(), sys.hi(), G), N);
}

double tail_bound(const EquationSystem& sys, double L, double lambda, double gamma, std::size_t N, std::size_t G) {
    check_tail_inputs(L, lambda, gamma);
    return geometric_tail(L * d0(sys, G), lambda, gamma, N);
}

std::size_t choose_N(const EquationSystem& sys, double L, double lambda, double gamma, double epsilon,
                     std::size_t G) {
    check_tail_inputs(L, lambda, gamma);
    return smallest_N(L * d0(sys, G), lambda, gamma, epsilon);
}

GridFunction partial_sum(const std::vector<GridFunction>& iterates, double gamma) {
    if (iterates.empty()) throw Error(ErrorKind::InvalidArgument, "partial_sum needs at least F_0");
    const std::size_t N = iterates.size() - 1;
    const std::size_t G = iterates.front().size();
    std::vector<double> out(G);
    for (std::size_t j = 0; j < G; ++j) {
        CompensatedSum s;
        for (std::size_t n = 0; n < N; ++n) s.add(iterates[n].values()[j]);
        s.add(iterates[N].values()[j] / (1.0 - gamma));
        out[j] = s.value();
    }
    return GridFunction(iterates.front().lo(), iterates.front().hi(), std::move(out));
}

GridFunction literal_partial_sum(const std::vector<GridFunction>& iterates, double gamma) {
    if (iterates.empty()) throw Error(ErrorKind::InvalidArgument, "literal_partial_sum needs at least F_0");
    const std::size_t G = iterates.front().size();
    std::vector<double> out(G);
    for (std::size_t j = 0; j < G; ++j) {
        CompensatedSum s;
        for (std::size_t n = 1; n < iterates.size(); ++n) {
            s.add(iterates[n].values()[j] - gamma * iterates[n - 1].values()[j]);
        }
        s.add(iterates.front().values()[j]);
        out[j] = s.value() / (1.0 - gamma);
    }
    return GridFunction(iterates.front().lo(), iterates.front().hi(), std::move(out));
}

Solution solve(const EquationSystem& sys, double epsilon, std::size_t G, const HypothesisReport& report) {
    gate(report);
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "solve: epsilon must be > 0", epsilon);
    require_closed(sys, G);
    const GridFunction F0 = from_expr(sys.inhomogeneity(), sys.lo(), sys.hi(), G);
    const double L_used = std::max(report.L_observed, F0.lip_seminorm());
    return solve_grid_impl(sys, F0, L_used, epsilon, report);
}

Solution solve_grid(const EquationSystem& sys, const GridFunction& F, double epsilon,
                    const HypothesisReport& report) {
    gate(report);
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "solve: epsilon must be > 0", epsilon);
    if (F.lo() != sys.lo() || F.hi() != sys.hi()) {
        throw Error(ErrorKind::GridMismatch, "solve_grid: F is not defined on the system's domain");
    }
    require_closed(sys, F.size());
    return solve_grid_impl(sys, F, F.lip_seminorm(), epsilon, report);
}

Solution solve(const EquationSystem& sys, const HypothesisReport& report, const SolveOptions& options) {
    Backend backend = Backend::GridCollocation;
    if (options.backend) {
        backend = *options.backend;
    } else if (!check_domain_closure(sys, options.grid).closed) {
        backend = Backend::RecursivePointwise;
    }
    if (backend == Backend::GridCollocation) return solve(sys, options.epsilon, options.grid, report);

    gate(report);
    if (!(options.epsilon > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "solve: epsilon must be > 0", options.epsilon);
    }
    const double gam = gamma(sys);
    const double lambda = sys.declared_lambda();
    const double L = report.L_observed;
    const GridFunction probe = GridFunction::zeros(sys.lo(), sys.hi(), options.grid);
    const bool zero_F = sys.inhomogeneity().is_constant_zero();
    const std::size_t N = zero_F ? 0 : choose_N(sys, L, lambda, gam, options.epsilon, options.grid);
    if (!zero_F) check_budget(sys.atoms().size(), N, options.point_budget);

    PointwiseIterates it(sys);
    std::vector<double> values(options.grid, 0.0);
    if (!zero_F) {
        for (std::size_t j = 0; j < options.grid; ++j) values[j] = pointwise_value(it, N, probe.node(j), gam);
    }
    Solution sol{GridFunction(sys.lo(), sys.hi(), std::move(values))};
    sol.N = N;
    sol.tail_bound = zero_F ? 0.0 : tail_bound(sys, L, lambda, gam, N, options.grid);
    sol.gamma = gam;
    sol.lambda_used = lambda;
    sol.L_used = L;
    sol.backend = Backend::RecursivePointwise;
    sol.diagnostics.grid_G = options.grid;
    sol.diagnostics.epsilon_requested = options.epsilon;
    sol.diagnostics.weak_certificate = it.left_domain();
    sol.diagnostics.points_visited = it.points_visited();
    return sol;
}

PointSolution solve_at(const EquationSystem& sys, double x, double epsilon, const HypothesisReport& report,
                       std::size_t budget) {
    gate(report);
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "solve_at: epsilon must be > 0", epsilon);
    PointSolution out;
    if (sys.inhomogeneity().is_constant_zero()) return out;

    const double gam = gamma(sys);
    const double lambda = sys.declared_lambda();
    const double L = report.L_observed;
    check_tail_inputs(L, lambda, gam);
    const double M = L * displacement(sys, x);
    out.N = smallest_N(M, lambda, gam, epsilon);
    check_budget(sys.atoms().size(), out.N, budget);

    PointwiseIterates it(sys);
    out.value = pointwise_value(it, out.N, x, gam);
    out.tail_bound = geometric_tail(M, lambda, gam, out.N);
    out.weak_certificate = it.left_domain();
    out.points_visited = it.points_visited();
    return out;
}

}  // namespace lipfix
