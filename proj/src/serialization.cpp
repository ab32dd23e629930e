#include "dabounds/serialization.hpp"

#include <algorithm>
#include <cmath>

#include "dabounds/errors.hpp"

namespace dabounds {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(context + ": missing field \"" + key + "\"");
    }
    return *it;
}

std::vector<double> doubles(const Json& j, const std::string& context) {
    if (!j.is_array()) throw ConfigError(context + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(context + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string kind_of(const Json& j, const std::string& context) {
    const Json& k = field(j, "kind", context);
    if (!k.is_string()) throw ConfigError(context + ": \"kind\" must be a string");
    return k.get<std::string>();
}

std::vector<BreakpointSide> parse_sides(const Json& j, const std::string& context) {
    std::vector<BreakpointSide> sides;
    for (const auto& v : j) {
        if (!v.is_string()) throw ConfigError(context + ": sides must be strings");
        const std::string s = v.get<std::string>();
        if (s == "left") {
            sides.push_back(BreakpointSide::left);
        } else if (s == "right") {
            sides.push_back(BreakpointSide::right);
        } else {
            throw ConfigError(context + ": side must be \"left\" or \"right\"");
        }
    }
    return sides;
}

Json sides_json(const std::vector<BreakpointSide>& sides) {
    Json out = Json::array();
    for (BreakpointSide s : sides) out.push_back(s == BreakpointSide::left ? "left" : "right");
    return out;
}

}  // namespace

void require_keys(const Json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional, const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected an object");
    for (const auto& key : required) {
        if (!j.contains(key)) {
            throw ConfigError(context + ": missing field \"" + key + "\"");
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const bool known =
            std::find(required.begin(), required.end(), key) != required.end() ||
            std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) {
            throw ConfigError(context + ": unknown field \"" + key + "\"");
        }
    }
}

Json to_json(const DiscreteDistribution& d) {
    Json atoms = Json::array();
    for (const auto& a : d.atoms()) atoms.push_back(Json::array({a.id, a.mass}));
    return Json{{"kind", "discrete"}, {"atoms", std::move(atoms)}};
}

Json to_json(const PiecewiseUniform& d) {
    return Json{{"kind", "piecewise_uniform"},
                {"breakpoints", d.breakpoints()},
                {"segment_masses", d.segment_masses()}};
}

Json to_json(const Distribution& d) {
    return std::visit([](const auto& x) { return to_json(x); }, d);
}

Json to_json(const PiecewiseFunction& f) {
    return Json{{"kind", "piecewise_function"},
                {"breakpoints", f.breakpoints()},
                {"values", f.values()},
                {"breakpoint_sides", sides_json(f.sides())}};
}

Json to_json(const PiecewiseLinearMap& m) {
    return Json{{"kind", "piecewise_linear_map"},
                {"breakpoints", m.breakpoints()},
                {"slopes", m.slopes()},
                {"intercepts", m.intercepts()}};
}

Json to_json(const AtomMap& m) {
    Json entries = Json::array();
    for (const auto& [id, v] : m) entries.push_back(Json::array({id, v}));
    return Json{{"kind", "atom_map"}, {"entries", std::move(entries)}};
}

Json to_json(const LabelFunction& f) {
    return std::visit([](const auto& x) { return to_json(x); }, f);
}

Json to_json(const Domain& d) {
    return Json{{"distribution", to_json(d.distribution)}, {"labeling", to_json(d.labeling)}};
}

Json to_json(const Channel& c) {
    Json rows = Json::array();
    for (const auto& [id, dist] : c.rows()) {
        rows.push_back(Json::array({id, to_json(dist)}));
    }
    return Json{{"kind", "channel"}, {"rows", std::move(rows)}};
}

Json to_json(const BoundReport& r) {
    Json terms = Json::array();
    for (const auto& [name, value] : r.terms) {
        terms.push_back(Json{{"term", name}, {"value", value}});
    }
    Json j{{"bound_name", r.bound_name}};
    if (std::isnan(r.left_side)) {
        j["left_side"] = nullptr;
    } else {
        j["left_side"] = r.left_side;
    }
    j["terms"] = std::move(terms);
    j["right_side"] = r.right_side;
    j["verdict"] = to_string(r.verdict);
    return j;
}

Json to_json(const RademacherEstimate& e) {
    return Json{{"value", e.value},
                {"mode", e.mode == RademacherMode::exact_enumeration ? "exact_enumeration"
                                                                     : "monte_carlo"},
                {"trials", e.trials},
                {"std_error", e.std_error}};
}

DiscreteDistribution parse_discrete(const Json& j) {
    require_keys(j, {"kind", "atoms"}, {}, "discrete distribution");
    std::vector<DiscreteDistribution::Atom> atoms;
    for (const auto& a : field(j, "atoms", "discrete distribution")) {
        if (!a.is_array() || a.size() != 2) {
            throw ConfigError("discrete distribution: atoms are [id, mass] pairs");
        }
        atoms.push_back({a[0].get<std::int64_t>(), a[1].get<double>()});
    }
    try {
        return DiscreteDistribution(std::move(atoms));
    } catch (const Error& e) {
        throw ConfigError(std::string("discrete distribution: ") + e.what());
    }
}

PiecewiseUniform parse_piecewise_uniform(const Json& j) {
    require_keys(j, {"kind", "breakpoints", "segment_masses"}, {}, "piecewise_uniform");
    try {
        return PiecewiseUniform(doubles(field(j, "breakpoints", "piecewise_uniform"),
                                        "piecewise_uniform.breakpoints"),
                                doubles(field(j, "segment_masses", "piecewise_uniform"),
                                        "piecewise_uniform.segment_masses"));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("piecewise_uniform: ") + e.what());
    }
}

Distribution parse_distribution(const Json& j) {
    const std::string kind = kind_of(j, "distribution");
    if (kind == "discrete") return parse_discrete(j);
    if (kind == "piecewise_uniform") return parse_piecewise_uniform(j);
    throw ConfigError("distribution: unknown kind \"" + kind + "\"");
}

PiecewiseFunction parse_piecewise_function(const Json& j) {
    require_keys(j, {"kind", "breakpoints", "values"}, {"breakpoint_sides"},
                 "piecewise_function");
    std::vector<BreakpointSide> sides;
    if (j.contains("breakpoint_sides")) {
        sides = parse_sides(j["breakpoint_sides"], "piecewise_function");
    }
    try {
        return PiecewiseFunction(
            doubles(field(j, "breakpoints", "piecewise_function"),
                    "piecewise_function.breakpoints"),
            doubles(field(j, "values", "piecewise_function"), "piecewise_function.values"),
            std::move(sides));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("piecewise_function: ") + e.what());
    }
}

PiecewiseLinearMap parse_linear_map(const Json& j) {
    require_keys(j, {"kind", "breakpoints", "slopes", "intercepts"}, {},
                 "piecewise_linear_map");
    try {
        return PiecewiseLinearMap(
            doubles(field(j, "breakpoints", "map"), "map.breakpoints"),
            doubles(field(j, "slopes", "map"), "map.slopes"),
            doubles(field(j, "intercepts", "map"), "map.intercepts"));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("piecewise_linear_map: ") + e.what());
    }
}

AtomMap parse_atom_map(const Json& j) {
    require_keys(j, {"kind", "entries"}, {}, "atom_map");
    AtomMap m;
    for (const auto& e : field(j, "entries", "atom_map")) {
        if (!e.is_array() || e.size() != 2) {
            throw ConfigError("atom_map: entries are [id, value] pairs");
        }
        m[e[0].get<std::int64_t>()] = e[1].get<double>();
    }
    return m;
}

LabelFunction parse_label_function(const Json& j) {
    const std::string kind = kind_of(j, "labeling");
    if (kind == "piecewise_function") return parse_piecewise_function(j);
    if (kind == "atom_map") return parse_atom_map(j);
    throw ConfigError("labeling: unknown kind \"" + kind + "\"");
}

Domain parse_domain(const Json& j) {
    require_keys(j, {"distribution", "labeling"}, {}, "domain");
    try {
        return Domain(parse_distribution(j["distribution"]),
                      parse_label_function(j["labeling"]));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("domain: ") + e.what());
    }
}

Channel parse_channel(const Json& j) {
    require_keys(j, {"kind", "rows"}, {}, "channel");
    std::map<std::int64_t, DiscreteDistribution> rows;
    for (const auto& r : field(j, "rows", "channel")) {
        if (!r.is_array() || r.size() != 2) {
            throw ConfigError("channel: rows are [atom, distribution] pairs");
        }
        rows.emplace(r[0].get<std::int64_t>(), parse_discrete(r[1]));
    }
    try {
        return Channel(std::move(rows));
    } catch (const Error& e) {
        throw ConfigError(std::string("channel: ") + e.what());
    }
}

HypothesisClass parse_hypothesis_class(const Json& j) {
    const std::string kind = kind_of(j, "class");
    try {
        if (kind == "constants") {
            require_keys(j, {"kind"}, {}, "class");
            return HypothesisClass::constants();
        }
        if (kind == "threshold_grid") {
            require_keys(j, {"kind", "breakpoints"}, {}, "class");
            return HypothesisClass::threshold_grid(
                doubles(j["breakpoints"], "class.breakpoints"));
        }
        if (kind == "interval_grid") {
            require_keys(j, {"kind", "breakpoints"}, {}, "class");
            return HypothesisClass::interval_grid(
                doubles(j["breakpoints"], "class.breakpoints"));
        }
        if (kind == "interval_complement_grid") {
            require_keys(j, {"kind", "breakpoints"}, {}, "class");
            return HypothesisClass::interval_complement_grid(
                doubles(j["breakpoints"], "class.breakpoints"));
        }
        if (kind == "all_binary_on_finite") {
            require_keys(j, {"kind", "support"}, {}, "class");
            return HypothesisClass::all_binary_on_finite(
                doubles(j["support"], "class.support"));
        }
        if (kind == "explicit_list") {
            require_keys(j, {"kind", "members"}, {}, "class");
            std::vector<PiecewiseFunction> members;
            for (const auto& m : j["members"]) {
                members.push_back(parse_piecewise_function(m));
            }
            return HypothesisClass::explicit_list(std::move(members));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("class: ") + e.what());
    }
    throw ConfigError("class: unknown kind \"" + kind + "\"");
}

}  // namespace dabounds
