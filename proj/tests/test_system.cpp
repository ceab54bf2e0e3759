#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipfix/corpus.hpp"
#include "lipfix/error.hpp"
#include "lipfix/system.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace lipfix;
using lipfix::testing::dense_max;

namespace {

// Independent displacement: direct double loop over atoms.
double brute_displacement(const EquationSystem& sys, double x) {
    double s = 0.0;
    for (const auto& a : sys.atoms()) s += a.weight * std::fabs(a.g) * std::fabs(a.map.eval(x) - x);
    return s;
}

}  // namespace

TEST_CASE("constructor validation") {
    const std::vector<Atom> ok{{1.0, 0.5, parse("x/2")}};
    CHECK_THROWS_AS(EquationSystem(1.0, 0.0, ok, parse("0"), 0.5), Error);
    CHECK_THROWS_AS(EquationSystem(0.0, 1.0, {}, parse("0"), 0.5), Error);
    CHECK_THROWS_AS(EquationSystem(0.0, 1.0, {{-1.0, 0.5, parse("x")}}, parse("0"), 0.5), Error);
    CHECK_THROWS_AS(EquationSystem(0.0, 1.0, {{NAN, 0.5, parse("x")}}, parse("0"), 0.5), Error);
    CHECK_THROWS_AS(EquationSystem(0.0, 1.0, ok, parse("0"), -0.1), Error);
    CHECK_THROWS_AS(EquationSystem(0.0, 1.0, ok, parse("0"), 0.5, 2.0), Error);
    // lambda >= 1 is representable so the audit can report it.
    CHECK_NOTHROW(EquationSystem(0.0, 1.0, ok, parse("0"), 1.5));
    const EquationSystem s(0.0, 1.0, ok, parse("0"), 0.5);
    CHECK(s.base_point() == 0.0);
    CHECK(s.base_point_is_default());
    const EquationSystem t(0.0, 1.0, ok, parse("0"), 0.5, 0.25);
    CHECK(t.base_point() == 0.25);
    CHECK_FALSE(t.base_point_is_default());
    CHECK(t.with_declared_lambda(0.7).base_point() == 0.25);
    CHECK(t.with_inhomogeneity(parse("x")).inhomogeneity().eval(0.3) == 0.3);
}

TEST_CASE("gamma and q") {
    const auto ex32 = load("ex32_log").system;
    CHECK(gamma(ex32) == 2.0);
    CHECK(abs_kernel_mass(ex32) == 2.0);
    const auto ex33 = load("ex33_gamma_one").system;
    CHECK(gamma(ex33) == 1.0);
    const auto perp = load("perpetuity_two_atom").system;
    CHECK(gamma(perp) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(abs_kernel_mass(perp) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("m_of_x on ex32") {
    const auto sys = load("ex32_log").system;
    CHECK(m_of_x(sys, 0.5, 4.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(m_of_x(sys, 0.5, 16.0) == doctest::Approx(13.5).epsilon(1e-15));
    CHECK(m_of_x(sys, 0.0, 9.0) == 0.0);
    CHECK_THROWS_AS(m_of_x(sys, -1.0, 4.0), Error);
    CHECK_THROWS_AS(m_of_x(sys, 0.5, 20.0), Error);
}

TEST_CASE("d0 matches a dense sweep and the hand values") {
    for (const char* name : {"ex32_log", "perpetuity_two_atom", "ex31_zero", "ex33_gamma_one"}) {
        const auto sys = load(name).system;
        const double brute = dense_max([&](double x) { return brute_displacement(sys, x); }, sys.lo(), sys.hi(),
                                       100001);
        CHECK(d0(sys, 2049) == doctest::Approx(brute).epsilon(1e-9));
    }
    CHECK(d0(load("ex32_log").system, 2049) == doctest::Approx(27.0).epsilon(1e-14));
    CHECK(d0(load("perpetuity_two_atom").system, 2049) == doctest::Approx(1.8).epsilon(1e-14));
    CHECK_THROWS_AS(d0(load("ex32_log").system, 1), Error);
}

TEST_CASE("domain closure") {
    const auto ex32 = check_domain_closure(load("ex32_log").system, 2049);
    CHECK(ex32.closed);
    CHECK(ex32.atoms.size() == 1);
    CHECK(ex32.grid_count == 2049);

    const auto ex31 = check_domain_closure(load("ex31_zero").system, 2049);
    CHECK_FALSE(ex31.closed);
    CHECK(ex31.atoms[0].worst_x == 1.0);
    CHECK(ex31.atoms[0].overshoot == doctest::Approx(1.0));

    // 0.5x +- 1 keeps [-4, 4] inside itself.
    const auto ex33 = check_domain_closure(load("ex33_gamma_one").system, 2049);
    CHECK(ex33.closed);

    const EquationSystem mixed(0.0, 1.0, {{1.0, 0.5, parse("x/2")}, {1.0, 0.1, parse("x+0.25")}}, parse("0"), 0.5);
    const auto r = check_domain_closure(mixed, 5);
    CHECK_FALSE(r.closed);
    CHECK(r.atoms[0].closed);
    CHECK_FALSE(r.atoms[1].closed);
    CHECK(r.atoms[1].worst_x == 1.0);
    CHECK(r.atoms[1].overshoot == doctest::Approx(0.25));
}

TEST_CASE("random affine systems are closed") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto r = lipfix::testing::random_affine_atoms(seed, 0.9);
        const auto sys = lipfix::testing::make_affine_system(r, parse("x"));
        CHECK(check_domain_closure(sys, 513).closed);
        CHECK(std::fabs(gamma(sys) - r.gamma) <= 1e-14);
    }
}
