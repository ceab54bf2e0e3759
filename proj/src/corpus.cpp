#include "lipfix/corpus.hpp"

#include "lipfix/error.hpp"

namespace lipfix {

std::string_view to_string(ExpectedOutcome o) noexcept {
    switch (o) {
        case ExpectedOutcome::Solves: return "Solves";
        case ExpectedOutcome::GammaIsOneRejected: return "GammaIsOneRejected";
        case ExpectedOutcome::ZeroSolution: return "ZeroSolution";
    }
    return "?";
}

std::vector<std::string> corpus_names() {
    return {"ex31_zero", "ex32_log", "ex33_gamma_one", "perpetuity_two_atom"};
}

CorpusEntry load(std::string_view name) {
    if (name == "ex31_zero") {
        EquationSystem sys(0.0, 1.0, {{1.0, 0.25, parse("2*x")}}, parse("0"), 0.5);
        return {"ex31_zero", std::move(sys), parse("0"), ExpectedOutcome::ZeroSolution,
                Backend::RecursivePointwise,
                "phi(x) = 1/4 phi(2x): only the zero function is Lipschitz"};
    }
    if (name == "ex32_log") {
        EquationSystem sys(1.0, 16.0, {{1.0, 2.0, parse("0.5*sqrt(x)+0.5")}}, parse("log(x/(0.5*sqrt(x)+0.5)^2)"),
                           0.5);
        return {"ex32_log", std::move(sys), parse("log(x)"), ExpectedOutcome::Solves, Backend::GridCollocation,
                "logarithmic solution with bounded inhomogeneity"};
    }
    if (name == "ex33_gamma_one") {
        EquationSystem sys(-4.0, 4.0, {{0.5, 1.0, parse("0.5*x+1")}, {0.5, 1.0, parse("0.5*x-1")}}, parse("abs(x)"),
                           0.5);
        return {"ex33_gamma_one", std::move(sys), std::nullopt, ExpectedOutcome::GammaIsOneRejected,
                Backend::GridCollocation, "gamma = 1: no continuous solution exists"};
    }
    if (name == "perpetuity_two_atom") {
        EquationSystem sys(0.0, 4.0, {{0.6, 1.0, parse("0.5*x+1")}, {0.4, -1.0, parse("0.25*x")}}, parse("x"), 0.4);
        return {"perpetuity_two_atom", std::move(sys), parse("1.25*x+0.9375"), ExpectedOutcome::Solves,
                Backend::GridCollocation, "kernel +1 on one atom and -1 on the other"};
    }
    throw Error(ErrorKind::UnknownCorpusEntry, "no corpus entry named '" + std::string(name) + "'");
}

}  // namespace lipfix
