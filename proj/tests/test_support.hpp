#pragma once

// Seeded generators and brute-force oracles shared by the unit and
// acceptance suites. Nothing here calls into the series/verify code paths
// it is used to check.

#include "lipfix/expr.hpp"
#include "lipfix/system.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace lipfix::testing {

struct AffineAtom {
    double weight;
    double g;
    double a;
    double b;
};

inline Expr affine_expr(double a, double b) {
    return Expr::binary(Expr::BinaryOp::Add, Expr::binary(Expr::BinaryOp::Mul, Expr::number(a), Expr::variable()),
                        Expr::number(b));
}

struct RandomAffineSystem {
    std::vector<AffineAtom> atoms;
    double lambda_exact;  ///< sum w|g||a|
    double q;             ///< sum w|g|
    double gamma;
};

/// Affine atoms mapping [0, 1] into itself with sum w|g||a| <= max_lambda,
/// optionally sum w|g| <= max_q, and |gamma - 1| >= 0.05.
inline RandomAffineSystem random_affine_atoms(std::uint64_t seed, double max_lambda, double max_q = INFINITY) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        RandomAffineSystem s;
        const int m = count(rng);
        for (int i = 0; i < m; ++i) {
            AffineAtom at{};
            at.a = 2.0 * unit(rng) - 1.0;
            at.b = at.a >= 0.0 ? unit(rng) * (1.0 - at.a) : -at.a + unit(rng) * (1.0 + at.a);
            at.weight = 0.1 + 0.9 * unit(rng);
            at.g = 4.0 * unit(rng) - 2.0;
            s.atoms.push_back(at);
        }
        double lam = 0.0;
        double q = 0.0;
        for (const auto& at : s.atoms) {
            lam += at.weight * std::fabs(at.g) * std::fabs(at.a);
            q += at.weight * std::fabs(at.g);
        }
        const double target_lambda = max_lambda * (0.2 + 0.8 * unit(rng));
        double scale = lam > target_lambda ? target_lambda / lam : 1.0;
        if (q * scale > max_q) scale = max_q * (0.5 + 0.5 * unit(rng)) / q;
        s.lambda_exact = 0.0;
        s.q = 0.0;
        s.gamma = 0.0;
        for (auto& at : s.atoms) {
            at.g *= scale;
            s.lambda_exact += at.weight * std::fabs(at.g) * std::fabs(at.a);
            s.q += at.weight * std::fabs(at.g);
            s.gamma += at.weight * at.g;
        }
        if (std::fabs(s.gamma - 1.0) >= 0.05) return s;
    }
}

inline EquationSystem make_affine_system(const RandomAffineSystem& r, const Expr& F) {
    std::vector<Atom> atoms;
    for (const auto& at : r.atoms) atoms.push_back({at.weight, at.g, affine_expr(at.a, at.b)});
    // Declared lambda is the exact affine ratio, nudged up by rounding slack.
    return EquationSystem(0.0, 1.0, std::move(atoms), F, r.lambda_exact * (1.0 + 1e-12));
}

/// Max of `fn` over `count` uniform samples of [lo, hi] (endpoints included).
inline double dense_max(const std::function<double(double)>& fn, double lo, double hi, std::size_t count) {
    double m = -INFINITY;
    for (std::size_t k = 0; k < count; ++k) {
        const double x = k + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
        m = std::max(m, fn(x));
    }
    return m;
}

/// Smallest N with base * lambda^N <= eps by plain repeated multiplication.
inline std::size_t geometric_first_below(double base, double lambda, double eps) {
    std::size_t N = 0;
    double t = base;
    while (t > eps) {
        t *= lambda;
        ++N;
    }
    return N;
}

}  // namespace lipfix::testing
