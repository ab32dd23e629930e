#pragma once

#include <string>

#include <json.hpp>

#include "dabounds/bounds.hpp"
#include "dabounds/domain.hpp"
#include "dabounds/hypotheses.hpp"
#include "dabounds/report.hpp"

namespace dabounds {

// Versioned wire schema for every JSON document this library reads or writes.
inline constexpr const char* kSchemaVersion = "da-bounds/v1";

using Json = nlohmann::ordered_json;

// Strict field validation: unknown keys are rejected, required keys must be
// present. `context` names the object in error messages.
void require_keys(const Json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional, const std::string& context);

Json to_json(const DiscreteDistribution& d);
Json to_json(const PiecewiseUniform& d);
Json to_json(const Distribution& d);
Json to_json(const PiecewiseFunction& f);
Json to_json(const PiecewiseLinearMap& m);
Json to_json(const AtomMap& m);
Json to_json(const LabelFunction& f);
Json to_json(const Domain& d);
Json to_json(const Channel& c);
Json to_json(const BoundReport& r);
Json to_json(const RademacherEstimate& e);

DiscreteDistribution parse_discrete(const Json& j);
PiecewiseUniform parse_piecewise_uniform(const Json& j);
Distribution parse_distribution(const Json& j);
PiecewiseFunction parse_piecewise_function(const Json& j);
PiecewiseLinearMap parse_linear_map(const Json& j);
AtomMap parse_atom_map(const Json& j);
LabelFunction parse_label_function(const Json& j);
Domain parse_domain(const Json& j);
Channel parse_channel(const Json& j);
HypothesisClass parse_hypothesis_class(const Json& j);

}  // namespace dabounds
