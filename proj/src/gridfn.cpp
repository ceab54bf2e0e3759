#include "lipfix/gridfn.hpp"

#include "lipfix/error.hpp"
#include "lipfix/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace lipfix {

GridFunction::GridFunction(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), step_(0.0), values_(std::move(values)) {
    if (!(lo_ < hi_) || !std::isfinite(lo_) || !std::isfinite(hi_)) {
        throw Error(ErrorKind::InvalidArgument, "grid interval must satisfy lo < hi");
    }
    if (values_.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 nodes, got " + std::to_string(values_.size()));
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j])) {
            throw Error(ErrorKind::InvalidArgument, "non-finite grid value at node " + std::to_string(j), node(j));
        }
    }
    step_ = (hi_ - lo_) / static_cast<double>(values_.size() - 1);
}

GridFunction GridFunction::zeros(double lo, double hi, std::size_t count) {
    return constant(lo, hi, count, 0.0);
}

GridFunction GridFunction::constant(double lo, double hi, std::size_t count, double value) {
    return GridFunction(lo, hi, std::vector<double>(count, value));
}

double GridFunction::node(std::size_t j) const noexcept {
    if (j + 1 == values_.size()) return hi_;
    return lo_ + static_cast<double>(j) * (hi_ - lo_) / static_cast<double>(values_.size() - 1);
}

double GridFunction::eval(double x, std::size_t* out_of_range) const noexcept {
    if (x < lo_ || x > hi_ || std::isnan(x)) {
        if (out_of_range) ++*out_of_range;
        return x > hi_ ? values_.back() : values_.front();
    }
    const std::size_t last = values_.size() - 1;
    std::size_t j = static_cast<std::size_t>(std::floor((x - lo_) / step_));
    if (j >= last) j = last - 1;
    const double x0 = node(j);
    const double x1 = node(j + 1);
    if (x == x0) return values_[j];
    if (x == x1) return values_[j + 1];
    const double t = (x - x0) / (x1 - x0);
    return values_[j] + t * (values_[j + 1] - values_[j]);
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
    return lo_ == other.lo_ && hi_ == other.hi_ && values_.size() == other.values_.size();
}

double GridFunction::sup_norm() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

double GridFunction::lip_seminorm() const noexcept {
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < values_.size(); ++j) {
        m = std::max(m, std::fabs(values_[j + 1] - values_[j]) / (node(j + 1) - node(j)));
    }
    return m;
}

double GridFunction::lip_norm(double x0) const {
    if (!(x0 >= lo_ && x0 <= hi_)) {
        throw Error(ErrorKind::InvalidArgument, "base point outside grid interval", x0);
    }
    return std::fabs(eval(x0)) + lip_seminorm();
}

double GridFunction::bl_norm() const noexcept { return sup_norm() + lip_seminorm(); }

GridFunction from_expr(const Expr& e, double lo, double hi, std::size_t count) {
    if (count < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 nodes");
    if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "grid interval must satisfy lo < hi");
    // Node coordinates come from a probe grid so they match GridFunction::node exactly.
    const GridFunction probe = GridFunction::zeros(lo, hi, count);
    std::vector<double> values(count);
    parallel_chunks(count, chunk_count(count), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) values[j] = e.eval(probe.node(j));
    });
    return GridFunction(lo, hi, std::move(values));
}

GridFunction lin_comb(double a, const GridFunction& u, double b, const GridFunction& v) {
    if (!u.same_grid(v)) {
        throw Error(ErrorKind::GridMismatch, "lin_comb operands have different grids (" +
                                                 std::to_string(u.size()) + " vs " + std::to_string(v.size()) +
                                                 " nodes)");
    }
    std::vector<double> out(u.size());
    const auto uv = u.values();
    const auto vv = v.values();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a * uv[j] + b * vv[j];
    return GridFunction(u.lo(), u.hi(), std::move(out));
}

double sup_distance(const GridFunction& u, const GridFunction& v) {
    const GridFunction& fine = u.size() >= v.size() ? u : v;
    const GridFunction& coarse = u.size() >= v.size() ? v : u;
    double m = 0.0;
    const auto fv = fine.values();
    for (std::size_t j = 0; j < fine.size(); ++j) {
        m = std::max(m, std::fabs(fv[j] - coarse.eval(fine.node(j))));
    }
    return m;
}

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const GridFunction& u, const Expr* expected) {
    out << (expected ? "x,value,expected\n" : "x,value\n");
    const auto vals = u.values();
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = u.node(j);
        out << g17(x) << ',' << g17(vals[j]);
        if (expected) out << ',' << g17(expected->eval(x));
        out << '\n';
    }
}

GridFunction read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::IoError, "empty CSV");
    if (line.rfind("x,value", 0) != 0) throw Error(ErrorKind::IoError, "CSV header must start with 'x,value'");
    std::vector<double> xs;
    std::vector<double> vs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string xs_s;
        std::string vs_s;
        if (!std::getline(ls, xs_s, ',') || !std::getline(ls, vs_s, ',')) {
            throw Error(ErrorKind::IoError, "malformed CSV row " + std::to_string(row));
        }
        try {
            std::size_t px = 0;
            std::size_t pv = 0;
            xs.push_back(std::stod(xs_s, &px));
            vs.push_back(std::stod(vs_s, &pv));
        } catch (const std::exception&) {
            throw Error(ErrorKind::IoError, "non-numeric CSV row " + std::to_string(row));
        }
    }
    if (xs.size() < 2) throw Error(ErrorKind::IoError, "CSV needs at least 2 rows");
    GridFunction u(xs.front(), xs.back(), std::move(vs));
    const double tol = 1e-9 * (u.hi() - u.lo());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (std::fabs(xs[j] - u.node(j)) > tol) {
            throw Error(ErrorKind::IoError, "CSV x column is not a uniform grid at row " + std::to_string(j + 2),
                        xs[j]);
        }
    }
    return u;
}

}  // namespace lipfix
