#pragma once

#include "lipfix/gridfn.hpp"
#include "lipfix/hypotheses.hpp"
#include "lipfix/system.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace lipfix {

enum class Backend { GridCollocation, RecursivePointwise };

std::string_view to_string(Backend b) noexcept;

struct SolveDiagnostics {
    std::size_t out_of_range_count = 0;
    std::size_t grid_G = 0;
    double epsilon_requested = 0.0;
    /// Set by the recursive backend when an orbit left [lo, hi]. L and lambda
    /// are audited on the domain only, so the tail certificate then relies on
    /// them holding along the visited points.
    bool weak_certificate = false;
    std::size_t points_visited = 0;
};

/// Truncated series solution. `tail_bound` certifies the series truncation
/// only; interpolation error of the grid is measured separately by
/// refinement (see verify.hpp).
struct Solution {
    explicit Solution(GridFunction values) : phi(std::move(values)) {}

    GridFunction phi;
    std::size_t N = 0;
    double tail_bound = 0.0;
    double gamma = 0.0;
    double lambda_used = 0.0;
    double L_used = 0.0;
    Backend backend = Backend::GridCollocation;
    SolveDiagnostics diagnostics;
};

/// One step of the weighted composition operator on u's grid:
///   x_j -> sum_i w_i g_i u(f_i(x_j)).
/// Images outside [lo, hi] are clamped and counted in `*out_of_range`.
GridFunction apply_T0(const EquationSystem& sys, const GridFunction& u, std::size_t* out_of_range = nullptr);

/// F_0 = F sampled on G nodes, F_n = apply_T0(F_{n-1}); returns F_0..F_N.
/// Throws DomainNotClosed when some map leaves [lo, hi] on the grid.
std::vector<GridFunction> iterate_F(const EquationSystem& sys, std::size_t N, std::size_t G);

/// Same recursion from an arbitrary starting grid function.
std::vector<GridFunction> iterate_from(const EquationSystem& sys, const GridFunction& F0, std::size_t N,
                                       std::size_t* out_of_range = nullptr);

/// lambda^N * M_max / ((1 - lambda) |1 - gamma|) with M_max = L * d0(sys, G).
/// Bounds the sup-norm distance between the series and its N-term partial sum.
double tail_bound(const EquationSystem& sys, double L, double lambda, double gamma, std::size_t N, std::size_t G);

/// Smallest N with tail_bound(..., N, ...) <= epsilon (0 when M_max = 0).
std::size_t choose_N(const EquationSystem& sys, double L, double lambda, double gamma, double epsilon,
                     std::size_t G);

/// Production form: sum_{n<N} F_n + F_N / (1 - gamma).
GridFunction partial_sum(const std::vector<GridFunction>& iterates, double gamma);

/// Literal form: (sum_{n=1..N} (F_n - gamma F_{n-1}) + F_0) / (1 - gamma).
/// Algebraically equal to partial_sum; kept as a cross-check.
GridFunction literal_partial_sum(const std::vector<GridFunction>& iterates, double gamma);

struct SolveOptions {
    double epsilon = 1e-8;
    std::size_t grid = 2049;
    /// Unset: GridCollocation when the domain is closed at `grid`, else
    /// RecursivePointwise at the grid nodes.
    std::optional<Backend> backend;
    std::size_t point_budget = 1'000'000;
};

/// Grid-collocation solve. Throws NotSolvable when the report fails the
/// gate and DomainNotClosed when a map leaves the domain on the grid.
Solution solve(const EquationSystem& sys, double epsilon, std::size_t G, const HypothesisReport& report);

/// Backend-selecting solve.
Solution solve(const EquationSystem& sys, const HypothesisReport& report, const SolveOptions& options);

/// Grid-collocation solve with the inhomogeneity given on a grid (its
/// piecewise-linear interpolant is the F that is solved for). The system's
/// own F expression is ignored.
Solution solve_grid(const EquationSystem& sys, const GridFunction& F, double epsilon,
                    const HypothesisReport& report);

struct PointSolution {
    double value = 0.0;
    std::size_t N = 0;
    double tail_bound = 0.0;
    bool weak_certificate = false;
    std::size_t points_visited = 0;
};

/// phi(x) by exact recursion over the atom tree, memoised on (n, bits of x).
/// The tail uses M at x itself. Throws BudgetExceeded when m^N > budget
/// (m = atom count).
PointSolution solve_at(const EquationSystem& sys, double x, double epsilon, const HypothesisReport& report,
                       std::size_t budget = 1'000'000);

}  // namespace lipfix
