#pragma once

#include "lipfix/expr.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace lipfix {

/// Piecewise-linear interpolant on a uniform grid over [lo, hi].
///
/// Node j sits at lo + j*(hi-lo)/(G-1); the last node is exactly hi. The
/// Lipschitz seminorm of such a function is its largest segment slope, which
/// is what the solver's bounds control.
class GridFunction {
public:
    /// Throws InvalidArgument unless lo < hi, values.size() >= 2 and every
    /// value is finite.
    GridFunction(double lo, double hi, std::vector<double> values);

    static GridFunction zeros(double lo, double hi, std::size_t count);
    static GridFunction constant(double lo, double hi, std::size_t count, double value);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double node(std::size_t j) const noexcept;

    /// Linear interpolation. Outside [lo, hi] the nearest endpoint value is
    /// returned and `*out_of_range` (when given) is incremented.
    double eval(double x, std::size_t* out_of_range = nullptr) const noexcept;

    bool same_grid(const GridFunction& other) const noexcept;

    double sup_norm() const noexcept;
    double lip_seminorm() const noexcept;
    /// |u(x0)| + lip_seminorm(u). Throws InvalidArgument when x0 is outside [lo, hi].
    double lip_norm(double x0) const;
    double bl_norm() const noexcept;

private:
    double lo_;
    double hi_;
    double step_;
    std::vector<double> values_;
};

/// Samples `e` at the G nodes of [lo, hi]. Evaluation errors propagate with
/// the offending node in `Error::at()`.
GridFunction from_expr(const Expr& e, double lo, double hi, std::size_t count);

/// Nodewise a*u + b*v. Throws GridMismatch when u and v do not share a grid.
GridFunction lin_comb(double a, const GridFunction& u, double b, const GridFunction& v);

/// Max |u(x) - v(x)| over the nodes of the finer of the two grids, with the
/// coarser one interpolated.
double sup_distance(const GridFunction& u, const GridFunction& v);

/// CSV with header `x,value` and one row per node at 17 significant digits.
/// When `expected` is non-null a third `expected` column is appended.
void write_csv(std::ostream& out, const GridFunction& u, const Expr* expected = nullptr);

/// Reads the CSV written by `write_csv` (extra columns are ignored). The x
/// column must describe a uniform grid; throws IoError otherwise.
GridFunction read_csv(std::istream& in);

}  // namespace lipfix
