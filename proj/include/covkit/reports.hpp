#pragma once

#include <json.hpp>

#include "covkit/array.hpp"
#include "covkit/bounds.hpp"
#include "covkit/reference.hpp"
#include "covkit/search.hpp"

namespace covkit {

inline nlohmann::json to_json(const PatternClass& cls) {
  if (const PartitionRgs* p = std::get_if<PartitionRgs>(&cls))
    return {{"kind", "partition"}, {"rgs", p->labels}};
  return {{"kind", "weight"}, {"w", std::get<WeightValue>(cls).w}};
}

inline nlohmann::json to_json(const DeficiencyReport& report) {
  nlohmann::json deficiencies = nlohmann::json::array();
  for (const Deficiency& d : report.deficiencies) {
    nlohmann::json missing = nlohmann::json::array();
    for (const PatternClass& cls : d.missing) missing.push_back(to_json(cls));
    deficiencies.push_back({{"columns", d.columns}, {"missing", missing}});
  }
  return {{"covering", report.covering},
          {"truncated", report.truncated},
          {"deficiencies", deficiencies}};
}

inline nlohmann::json to_json(const BoundReport& report) {
  return {{"name", report.name},
          {"coefficient", report.coefficient},
          {"base", report.base},
          {"t", report.t},
          {"d", report.d},
          {"scheme", to_string(report.scheme)},
          {"model", to_string(report.model)},
          {"estimated", report.estimated}};
}

inline nlohmann::json to_json(const SearchResult& result, const Scheme& scheme) {
  nlohmann::json out;
  out["k0"] = result.k0 ? nlohmann::json(*result.k0) : nlohmann::json(nullptr);
  out["proved_min"] = result.proved_min;
  out["nodes"] = result.nodes;
  out["witness"] = result.witness ? serialize_array(*result.witness, scheme) : "";
  return out;
}

inline nlohmann::json to_json(const ReferenceReport& report) {
  nlohmann::json checks = nlohmann::json::object();
  for (const ReferenceCheck& c : report) checks[c.name] = c.pass;
  return {{"checks", checks}, {"pass", all_pass(report)}};
}

}  // namespace covkit
