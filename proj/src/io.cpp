#include "lipfix/io.hpp"

#include "lipfix/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lipfix {

namespace {

double require_number(const Json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
        throw Error(ErrorKind::IoError, std::string(where) + ": missing numeric key '" + key + "'");
    }
    return obj.at(key).get<double>();
}

std::string require_string(const Json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string()) {
        throw Error(ErrorKind::IoError, std::string(where) + ": missing string key '" + key + "'");
    }
    return obj.at(key).get<std::string>();
}

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void dump(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(it.key()).dump() + ": ";
                dump(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += inner;
                dump(v, out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? g17(v) : "null";
            return;
        }
        default: out += j.dump(); return;
    }
}

Json pair_json(std::pair<double, double> p) { return Json::array({p.first, p.second}); }

}  // namespace

EquationSystem system_from_json(const Json& doc) {
    if (!doc.is_object()) throw Error(ErrorKind::IoError, "system: top level must be a JSON object");
    if (doc.contains("schema")) {
        if (!doc.at("schema").is_string() || doc.at("schema").get<std::string>() != kSchema) {
            throw Error(ErrorKind::IoError, "system: unsupported schema, expected \"" + std::string(kSchema) + "\"");
        }
    }
    if (!doc.contains("domain")) throw Error(ErrorKind::IoError, "system: missing 'domain'");
    const Json& domain = doc.at("domain");
    const double lo = require_number(domain, "lo", "domain");
    const double hi = require_number(domain, "hi", "domain");
    if (!doc.contains("atoms") || !doc.at("atoms").is_array()) {
        throw Error(ErrorKind::IoError, "system: 'atoms' must be an array");
    }
    std::vector<Atom> atoms;
    for (const Json& a : doc.at("atoms")) {
        atoms.push_back({require_number(a, "weight", "atom"), require_number(a, "g", "atom"),
                         parse(require_string(a, "map", "atom"))});
    }
    const Expr F = parse(require_string(doc, "F", "system"));
    const double lambda = require_number(doc, "lambda", "system");
    std::optional<double> base;
    if (doc.contains("base_point")) base = require_number(doc, "base_point", "system");
    return EquationSystem(lo, hi, std::move(atoms), F, lambda, base);
}

EquationSystem system_from_json_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::IoError, std::string("system: malformed JSON: ") + e.what());
    }
    return system_from_json(doc);
}

std::string export_entry(const CorpusEntry& entry) {
    const EquationSystem& s = entry.system;
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema\": \"" << kSchema << "\",\n";
    out << "  \"name\": " << Json(entry.name).dump() << ",\n";
    out << "  \"domain\": {\"lo\": " << shortest(s.lo()) << ", \"hi\": " << shortest(s.hi()) << "},\n";
    out << "  \"atoms\": [\n";
    for (std::size_t i = 0; i < s.atoms().size(); ++i) {
        const Atom& a = s.atoms()[i];
        out << "    {\"weight\": " << shortest(a.weight) << ", \"g\": " << shortest(a.g)
            << ", \"map\": " << Json(a.map.source()).dump() << "}" << (i + 1 < s.atoms().size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"F\": " << Json(s.inhomogeneity().source()).dump() << ",\n";
    out << "  \"lambda\": " << shortest(s.declared_lambda());
    if (!s.base_point_is_default()) out << ",\n  \"base_point\": " << shortest(s.base_point());
    if (entry.expected) out << ",\n  \"expected\": " << Json(entry.expected->source()).dump();
    out << "\n}\n";
    return out.str();
}

std::string dump_report(const Json& doc) {
    std::string out;
    dump(doc, out, 0);
    out += '\n';
    return out;
}

Json to_json(const ClosureReport& r) {
    Json atoms = Json::array();
    for (const AtomClosure& a : r.atoms) {
        atoms.push_back({{"closed", a.closed}, {"worst_x", a.worst_x}, {"overshoot", a.overshoot}});
    }
    return {{"closed", r.closed}, {"grid_count", r.grid_count}, {"atoms", atoms}};
}

Json to_json(const HypothesisReport& r) {
    return {{"gamma", r.gamma},
            {"gamma_ok", r.gamma_ok},
            {"lambda_declared", r.lambda_declared},
            {"lambda_observed", r.lambda_observed},
            {"lambda_ok", r.lambda_ok},
            {"worst_pair", pair_json(r.worst_pair)},
            {"L_observed", r.L_observed},
            {"closure_ok", r.closure_ok},
            {"closure", to_json(r.closure)},
            {"config",
             {{"tol_gamma", r.config.tol_gamma},
              {"tol_lambda", r.config.tol_lambda},
              {"grid_count", r.config.grid_count},
              {"pair_count", r.config.pair_count},
              {"seed", r.config.seed}}}};
}

Json solution_metadata(const Solution& s) {
    return {{"N", s.N},
            {"tail_bound", s.tail_bound},
            {"gamma", s.gamma},
            {"lambda_used", s.lambda_used},
            {"L_used", s.L_used},
            {"backend", std::string(to_string(s.backend))},
            {"diagnostics",
             {{"out_of_range_count", s.diagnostics.out_of_range_count},
              {"grid_G", s.diagnostics.grid_G},
              {"epsilon_requested", s.diagnostics.epsilon_requested},
              {"weak_certificate", s.diagnostics.weak_certificate},
              {"points_visited", s.diagnostics.points_visited}}}};
}

Json to_json(const ResidualReport& r) {
    return {{"max_abs_residual", r.max_abs_residual},
            {"argmax_x", r.argmax_x},
            {"probes", r.probes},
            {"bound7", {{"ok", r.bound7_ok}, {"lhs", r.bound7_lhs}, {"rhs", r.bound7_rhs}}},
            {"bound8", {{"ok", r.bound8_ok}, {"worst_margin", r.bound8_worst_margin}, {"worst_x", r.bound8_worst_x}}},
            {"margins", {{"bound7", r.bound7_rhs - r.bound7_lhs}, {"bound8", r.bound8_worst_margin}}}};
}

Json to_json(const OperatorBoundsReport& r) {
    return {{"c0", r.c0},
            {"c", r.c},
            {"d0", r.d0},
            {"d", r.d},
            {"base_point", r.base_point},
            {"phi_lip_norm", r.phi_lip_norm},
            {"F_lip_norm", r.F_lip_norm},
            {"lip_bound", r.lip_bound},
            {"phi_bl_norm", r.phi_bl_norm},
            {"F_bl_norm", r.F_bl_norm},
            {"bl_bound", r.bl_bound},
            {"lip_ratio_ok", r.lip_ratio_ok},
            {"bl_ratio_ok", r.bl_ratio_ok},
            {"worst_lip_ratio", r.worst_lip_ratio},
            {"worst_bl_ratio", r.worst_bl_ratio},
            {"inverse_lip_ratio", r.inverse_lip_ratio},
            {"inverse_bl_ratio", r.inverse_bl_ratio}};
}

Json to_json(const RoundTripReport& r) {
    Json instances = Json::array();
    for (const RoundTripInstance& i : r.instances) {
        instances.push_back({{"seed", i.seed},
                             {"forward_error", i.forward_error},
                             {"forward_tolerance", i.forward_tolerance},
                             {"reverse_error", i.reverse_error},
                             {"reverse_tolerance", i.reverse_tolerance},
                             {"lip_ratio_ok", i.bounds.lip_ratio_ok},
                             {"bl_ratio_ok", i.bounds.bl_ratio_ok},
                             {"ok", i.ok}});
    }
    return {{"seed", r.seed},
            {"grid", r.grid},
            {"epsilon", r.epsilon},
            {"ok", r.ok},
            {"max_forward_error", r.max_forward_error},
            {"max_reverse_error", r.max_reverse_error},
            {"worst_lip_ratio", r.worst_lip_ratio},
            {"worst_bl_ratio", r.worst_bl_ratio},
            {"worst_inverse_lip_ratio", r.worst_inverse_lip_ratio},
            {"worst_inverse_bl_ratio", r.worst_inverse_bl_ratio},
            {"instances", instances}};
}

}  // namespace lipfix
