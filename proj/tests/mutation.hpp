#pragma once
// Single sign-flip mutations of serialized workspace objects.

#include <optional>
#include <string>
#include <vector>

#include "dgw/errors.hpp"
#include "dgw/workspace.hpp"

namespace mutation {

using dgw::json;

struct Outcome {
  std::string category, name;
  std::size_t sites = 0;             // nonzero coefficients available to flip
  std::optional<std::string> path;   // first flip that loading rejects
  std::string message;
};

// Paths (as JSON pointers) of every nonzero rational string inside `j`,
// skipping names and labels.
inline void coefficient_sites(const json& j, const std::string& at, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "labels" && k != "name" && k != "names") coefficient_sites(v, at + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) coefficient_sites(j[i], at + "/" + std::to_string(i), out);
  } else if (j.is_string()) {
    try {
      if (sgn(dgw::parse_rational(j.get<std::string>())) != 0) out.push_back(at);
    } catch (const dgw::StructuralError&) {
    }
  }
}

// Smallest workspace holding one object and what it refers to.
inline json isolate(const json& ws, const std::string& category, const std::string& name) {
  json out = {{"dgw_version", ws.at("dgw_version")}};
  const json& block = ws.at(category).at(name);
  out[category][name] = block;
  if (category == "dg_modules") {
    const std::string a = block.at("algebra");
    out["dg_algebras"][a] = ws.at("dg_algebras").at(a);
  }
  if (category == "equivariant_complexes") {
    const std::string g = block.at("group");
    out["groups"][g] = ws.at("groups").at(g);
  }
  return out;
}

inline Outcome first_rejected_flip(const json& ws, const std::string& category, const std::string& name) {
  Outcome o{category, name, 0, std::nullopt, {}};
  const json base = isolate(ws, category, name);
  const std::string root = "/" + category + "/" + name;
  std::vector<std::string> sites;
  coefficient_sites(base.at(category).at(name), root, sites);
  o.sites = sites.size();
  for (const auto& p : sites) {
    json mutated = base;
    const json::json_pointer ptr(p);
    mutated[ptr] = dgw::format_rational(-dgw::parse_rational(mutated[ptr].get<std::string>()));
    try {
      dgw::load_workspace(mutated);
    } catch (const std::exception& e) {
      o.path = p;
      o.message = e.what();
      return o;
    }
  }
  return o;
}

inline std::vector<Outcome> mutate_all(const json& ws, const std::vector<std::string>& categories) {
  std::vector<Outcome> out;
  for (const auto& c : categories)
    if (ws.contains(c))
      for (const auto& [name, block] : ws.at(c).items()) out.push_back(first_rejected_flip(ws, c, name));
  return out;
}

}  // namespace mutation
