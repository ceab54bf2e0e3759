#include "lipfix/system.hpp"

#include "lipfix/error.hpp"
#include "lipfix/gridfn.hpp"
#include "lipfix/summation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lipfix {

EquationSystem::EquationSystem(double lo, double hi, std::vector<Atom> atoms, Expr inhomogeneity,
                               double declared_lambda, std::optional<double> base_point)
    : lo_(lo),
      hi_(hi),
      atoms_(std::move(atoms)),
      F_(std::move(inhomogeneity)),
      lambda_(declared_lambda),
      base_point_(base_point.value_or(lo)),
      base_point_default_(!base_point.has_value()) {
    if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
        throw Error(ErrorKind::InvalidArgument, "domain must satisfy lo < hi (finite)");
    }
    if (atoms_.empty()) throw Error(ErrorKind::InvalidArgument, "at least one atom is required");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (!std::isfinite(a.weight) || a.weight < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "atom " + std::to_string(i) + " weight must be finite and >= 0",
                        a.weight);
        }
        if (!std::isfinite(a.g)) {
            throw Error(ErrorKind::InvalidArgument, "atom " + std::to_string(i) + " g must be finite", a.g);
        }
    }
    if (!std::isfinite(lambda_) || lambda_ < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "declared lambda must be finite and >= 0", lambda_);
    }
    if (!(base_point_ >= lo_ && base_point_ <= hi_)) {
        throw Error(ErrorKind::InvalidArgument, "base_point outside domain", base_point_);
    }
}

EquationSystem EquationSystem::with_inhomogeneity(Expr F) const {
    EquationSystem copy = *this;
    copy.F_ = std::move(F);
    return copy;
}

EquationSystem EquationSystem::with_declared_lambda(double lambda) const {
    return EquationSystem(lo_, hi_, atoms_, F_, lambda,
                          base_point_default_ ? std::nullopt : std::optional<double>(base_point_));
}

double gamma(const EquationSystem& sys) {
    CompensatedSum s;
    for (const Atom& a : sys.atoms()) s.add(a.weight * a.g);
    return s.value();
}

double abs_kernel_mass(const EquationSystem& sys) {
    CompensatedSum s;
    for (const Atom& a : sys.atoms()) s.add(a.weight * std::fabs(a.g));
    return s.value();
}

double displacement(const EquationSystem& sys, double x) {
    CompensatedSum s;
    for (const Atom& a : sys.atoms()) s.add(a.weight * std::fabs(a.g) * std::fabs(a.map.eval(x) - x));
    return s.value();
}

double m_of_x(const EquationSystem& sys, double L, double x) {
    if (!(L >= 0.0)) throw Error(ErrorKind::InvalidArgument, "m_of_x: L must be >= 0", L);
    if (!(x >= sys.lo() && x <= sys.hi())) throw Error(ErrorKind::InvalidArgument, "m_of_x: x outside domain", x);
    return L * displacement(sys, x);
}

double d0(const EquationSystem& sys, std::size_t grid_count) {
    if (grid_count < 2) throw Error(ErrorKind::InvalidArgument, "d0: grid_count must be >= 2");
    const GridFunction probe = GridFunction::zeros(sys.lo(), sys.hi(), grid_count);
    double m = 0.0;
    for (std::size_t j = 0; j < grid_count; ++j) m = std::max(m, displacement(sys, probe.node(j)));
    return m;
}

ClosureReport check_domain_closure(const EquationSystem& sys, std::size_t grid_count) {
    if (grid_count < 2) throw Error(ErrorKind::InvalidArgument, "check_domain_closure: grid_count must be >= 2");
    const GridFunction probe = GridFunction::zeros(sys.lo(), sys.hi(), grid_count);
    ClosureReport report;
    report.grid_count = grid_count;
    for (const Atom& a : sys.atoms()) {
        AtomClosure ac;
        for (std::size_t j = 0; j < grid_count; ++j) {
            const double x = probe.node(j);
            const double y = a.map.eval(x);
            const double over = y < sys.lo() ? sys.lo() - y : (y > sys.hi() ? y - sys.hi() : 0.0);
            if (over > ac.overshoot) {
                ac.closed = false;
                ac.overshoot = over;
                ac.worst_x = x;
            }
        }
        report.closed = report.closed && ac.closed;
        report.atoms.push_back(ac);
    }
    return report;
}

}  // namespace lipfix
