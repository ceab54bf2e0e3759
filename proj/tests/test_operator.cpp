#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipfix/corpus.hpp"
#include "lipfix/error.hpp"
#include "lipfix/solution_operator.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace lipfix;
namespace lt = lipfix::testing;

TEST_CASE("ex32 constants") {
    const auto sys = load("ex32_log").system;
    const auto c = constant_c(sys, 0.5, 2.0);
    CHECK(c.c0 == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(c.c == doctest::Approx(6.0).epsilon(1e-15));
    const auto d = constant_d(sys, 0.5, 2.0, 2049);
    CHECK(d.d0 == doctest::Approx(27.0).epsilon(1e-14));
    CHECK(d.d == doctest::Approx(60.0).epsilon(1e-14));
    CHECK_THROWS_AS(constant_c(sys, 1.0, 2.0), Error);
    CHECK_THROWS_AS(constant_d(sys, -0.5, 2.0, 33), Error);
}

TEST_CASE("constants are at least one") {
    const EquationSystem tiny(0.0, 1.0, {{1.0, 0.0, parse("x")}}, parse("x"), 0.0);
    CHECK(constant_c(tiny, 0.0, 0.0).c0 == 1.0);
    CHECK(constant_c(tiny, 0.0, 0.0).c == 1.0);
    CHECK(constant_d(tiny, 0.0, 0.0, 33).d == 1.0);
}

TEST_CASE("c depends on the base point") {
    const auto base = load("ex32_log").system;
    const EquationSystem moved(base.lo(), base.hi(), base.atoms(), base.inhomogeneity(), 0.5, 16.0);
    // displacement(16) = 27.
    CHECK(constant_c(moved, 0.5, 2.0).c == doctest::Approx(60.0).epsilon(1e-14));
}

TEST_CASE("inverse_apply undoes solve on the perpetuity") {
    const auto sys = load("perpetuity_two_atom").system;
    const auto phi = from_expr(parse("1.25*x+0.9375"), 0.0, 4.0, 65);
    const auto F = inverse_apply(sys, phi);
    CHECK(sup_distance(F, from_expr(parse("x"), 0.0, 4.0, 65)) <= 1e-14);
    const EquationSystem open(0.0, 1.0, {{1.0, 0.5, parse("x+0.5")}}, parse("x"), 0.5);
    CHECK_THROWS_AS(inverse_apply(open, GridFunction::zeros(0.0, 1.0, 9)), Error);
}

TEST_CASE("inverse_apply is linear and bounded") {
    const auto sys = load("ex32_log").system;
    const double q = abs_kernel_mass(sys);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto u = random_piecewise_linear(1.0, 16.0, 257, seed);
        const auto v = random_piecewise_linear(1.0, 16.0, 257, seed + 1000);
        const auto lhs = inverse_apply(sys, lin_comb(2.0, u.grid, -1.0, v.grid));
        const auto rhs = lin_comb(2.0, inverse_apply(sys, u.grid), -1.0, inverse_apply(sys, v.grid));
        CHECK(sup_distance(lhs, rhs) <= 1e-12);
        CHECK(inverse_apply(sys, u.grid).sup_norm() <= (1.0 + q) * u.grid.sup_norm() * (1 + 1e-12));
    }
}

TEST_CASE("random piecewise linear functions") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = random_piecewise_linear(-2.0, 3.0, 129, seed);
        CHECK(f.kinks >= 8);
        CHECK(f.kinks <= 64);
        CHECK(f.grid.size() == 129);
        // Slopes are drawn from [-1, 1], so the interpolant is 1-Lipschitz.
        CHECK(f.grid.lip_seminorm() <= 1.0 + 1e-12);
        for (std::size_t j = 0; j < f.grid.size(); ++j) CHECK(f.grid.values()[j] == f.expr.eval(f.grid.node(j)));
        // Same seed, same function.
        const auto g = random_piecewise_linear(-2.0, 3.0, 129, seed);
        CHECK(g.expr.serialize() == f.expr.serialize());
    }
    CHECK_THROWS_AS(random_piecewise_linear(0.0, 1.0, 9, 0, 5, 4), Error);
}

TEST_CASE("operator bounds on ex32") {
    const auto sys = load("ex32_log").system;
    const auto report = audit(sys);
    const auto F = from_expr(sys.inhomogeneity(), 1.0, 16.0, 1025);
    const auto sol = solve_grid(sys, F, 1e-8, report);
    const auto b = check_operator_bounds(sys, F, sol, report);
    CHECK(b.c == doctest::Approx(6.0));
    CHECK(b.d == doctest::Approx(60.0));
    CHECK(b.base_point == 1.0);
    CHECK(b.lip_ratio_ok);
    CHECK(b.bl_ratio_ok);
    CHECK(b.worst_lip_ratio <= 6.0);
    CHECK(b.worst_bl_ratio <= 60.0);
    CHECK(b.inverse_lip_ratio > 0.0);
}

TEST_CASE("round trip on the corpus") {
    for (const char* name : {"ex32_log", "perpetuity_two_atom"}) {
        const auto sys = load(name).system;
        const auto rt = round_trip(sys, audit(sys), 1e-8, 513, 42, 5);
        CHECK(rt.instances.size() == 5);
        CHECK(rt.ok);
        for (const auto& inst : rt.instances) {
            CHECK(inst.forward_error <= inst.forward_tolerance);
            CHECK(inst.reverse_error <= inst.reverse_tolerance);
        }
    }
}

TEST_CASE("round trip on random affine systems") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = lt::random_affine_atoms(seed + 77, 0.8);
        const auto sys = lt::make_affine_system(r, parse("x"));
        const auto rt = round_trip(sys, audit(sys), 1e-9, 129, seed, 3);
        CHECK(rt.ok);
    }
}
