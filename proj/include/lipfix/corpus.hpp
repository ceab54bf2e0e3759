#pragma once

#include "lipfix/expr.hpp"
#include "lipfix/series.hpp"
#include "lipfix/system.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lipfix {

enum class ExpectedOutcome { Solves, GammaIsOneRejected, ZeroSolution };

std::string_view to_string(ExpectedOutcome o) noexcept;

struct CorpusEntry {
    std::string name;
    EquationSystem system;
    std::optional<Expr> expected;  ///< closed-form phi when known
    ExpectedOutcome expected_outcome;
    Backend backend;
    std::string description;
};

/// Built-in systems:
///   ex31_zero            phi(x) = 1/4 phi(2x) on [0, 1]; the zero function is
///                        the only Lipschitz solution. (x^2 + const also solves
///                        the unrestricted equation but is not Lipschitz on R.)
///                        The map leaves [0, 1], so it runs on the recursive backend.
///   ex32_log             phi(x) = 2 phi(sqrt(x)/2 + 1/2) + log(x / (sqrt(x)/2 + 1/2)^2)
///                        on [1, 16], solved by log.
///   ex33_gamma_one       two probability atoms with g = 1; gamma = 1 is rejected.
///   perpetuity_two_atom  kernel +1 / -1 on two atoms, F(x) = x on [0, 4].
/// Throws UnknownCorpusEntry.
CorpusEntry load(std::string_view name);

std::vector<std::string> corpus_names();

}  // namespace lipfix
