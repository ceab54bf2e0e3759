#pragma once

#include "lipfix/corpus.hpp"
#include "lipfix/hypotheses.hpp"
#include "lipfix/series.hpp"
#include "lipfix/solution_operator.hpp"
#include "lipfix/system.hpp"
#include "lipfix/verify.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace lipfix {

inline constexpr std::string_view kSchema = "lipfix/1";

using Json = nlohmann::ordered_json;

/// Input format:
///   {"schema": "lipfix/1", "domain": {"lo": a, "hi": b},
///    "atoms": [{"weight": w, "g": g, "map": "<expr>"}, ...],
///    "F": "<expr>", "lambda": l, "base_point": x0}
/// `schema` and `base_point` are optional; `name` and `expected` are
/// accepted and ignored here. Throws IoError on schema violations and the
/// parser's errors on bad expressions.
EquationSystem system_from_json(const Json& doc);
EquationSystem system_from_json_text(std::string_view text);

/// Canonical input-format text for a corpus entry, numbers in shortest
/// round-trip form, expressions as written.
std::string export_entry(const CorpusEntry& entry);

/// Deterministic report serialisation: two-space indent, key order as
/// inserted, floating values at 17 significant digits, non-finite as null.
std::string dump_report(const Json& doc);

Json to_json(const ClosureReport& r);
Json to_json(const HypothesisReport& r);
Json solution_metadata(const Solution& s);
Json to_json(const ResidualReport& r);
Json to_json(const OperatorBoundsReport& r);
Json to_json(const RoundTripReport& r);

}  // namespace lipfix
