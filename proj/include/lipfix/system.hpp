#pragma once

#include "lipfix/expr.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lipfix {

/// One point of the discrete measure: mass `weight` at an omega where the
/// kernel takes the value `g` and the map is x -> map(x).
struct Atom {
    double weight;
    double g;
    Expr map;
};

/// phi(x) = sum_i weight_i * g_i * phi(map_i(x)) + F(x) on [lo, hi].
///
/// Weights are non-negative; signed kernels go through `g`. The declared
/// contraction factor is the user's claim that
///   sum_i w_i |g_i| |f_i(x) - f_i(z)| <= lambda |x - z|
/// for all x, z. It is audited (see hypotheses.hpp) but never inferred. A
/// value >= 1 is representable so that the audit can reject it.
class EquationSystem {
public:
    /// Throws InvalidArgument when lo >= hi, atoms is empty, a weight is
    /// negative or non-finite, lambda is negative, or base_point lies outside
    /// [lo, hi]. base_point defaults to lo.
    EquationSystem(double lo, double hi, std::vector<Atom> atoms, Expr inhomogeneity, double declared_lambda,
                   std::optional<double> base_point = std::nullopt);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const Expr& inhomogeneity() const noexcept { return F_; }
    double declared_lambda() const noexcept { return lambda_; }
    double base_point() const noexcept { return base_point_; }
    bool base_point_is_default() const noexcept { return base_point_default_; }

    EquationSystem with_inhomogeneity(Expr F) const;
    EquationSystem with_declared_lambda(double lambda) const;

private:
    double lo_;
    double hi_;
    std::vector<Atom> atoms_;
    Expr F_;
    double lambda_;
    double base_point_;
    bool base_point_default_;
};

/// gamma = sum_i w_i g_i, compensated, in atom order.
double gamma(const EquationSystem& sys);

/// q = sum_i w_i |g_i|, the sup-norm Lipschitz constant of the homogeneous operator.
double abs_kernel_mass(const EquationSystem& sys);

/// sum_i w_i |g_i| |f_i(x) - x|.
double displacement(const EquationSystem& sys, double x);

/// M(x) = L * displacement(sys, x). Throws InvalidArgument when L < 0 or x
/// is outside the domain.
double m_of_x(const EquationSystem& sys, double L, double x);

/// Max of displacement over a uniform grid of `grid_count` nodes. This is a
/// lower estimate of the supremum over the interval (exact when the maximum
/// sits on a node, e.g. at an endpoint for monotone integrands).
double d0(const EquationSystem& sys, std::size_t grid_count);

struct AtomClosure {
    bool closed = true;
    double worst_x = 0.0;
    double overshoot = 0.0;  ///< distance of map(worst_x) outside [lo, hi]
};

struct ClosureReport {
    bool closed = true;
    std::vector<AtomClosure> atoms;
    std::size_t grid_count = 0;
};

/// Checks map_i(node) in [lo, hi] for every atom and every grid node.
ClosureReport check_domain_closure(const EquationSystem& sys, std::size_t grid_count);

}  // namespace lipfix
