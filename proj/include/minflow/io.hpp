#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minflow/catalog.hpp"
#include "minflow/extension.hpp"
#include "minflow/flow.hpp"
#include "minflow/flow_iso.hpp"
#include "minflow/report.hpp"
#include "minflow/tower.hpp"

// File formats. Every document carries "schema_version"; keys are written in
// a fixed order so equal inputs serialize byte-identically.

namespace minflow {

using Json = nlohmann::ordered_json;
inline constexpr int schema_version = 1;

namespace detail {

inline std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_unsigned())
    throw Error(ErrorKind::ParseError, std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
Json rows_json(const std::vector<T>& flat, std::size_t width) {
  Json out = Json::array();
  for (std::size_t r = 0; width && r < flat.size() / width; ++r)
    out.push_back(std::vector<T>(flat.begin() + static_cast<long>(r * width),
                                 flat.begin() + static_cast<long>((r + 1) * width)));
  return out;
}

inline std::vector<std::vector<Element>> parse_rows(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, std::string(what) + " must be an array of rows");
  std::vector<std::vector<Element>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorKind::ParseError, std::string(what) + " rows must be arrays");
    std::vector<Element> r;
    for (const auto& v : row) r.push_back(static_cast<Element>(as_index(v, what)));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << text;
}

/// Pretty JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- groups and subgroups ----

inline Json group_to_json(const Group& g) {
  Json j;
  j["schema_version"] = schema_version;
  j["name"] = g.name();
  j["order"] = g.order();
  j["table"] = detail::rows_json(g.table(), g.order());
  if (!g.labels().empty()) {
    Json labels = Json::object();
    for (const auto& [k, v] : g.labels()) labels[std::to_string(k)] = v;
    j["labels"] = std::move(labels);
  }
  return j;
}

inline GroupPtr group_from_json(const Json& j, std::vector<std::string>* warnings = nullptr) {
  const Json& name = detail::member(j, "name");
  if (!name.is_string()) throw Error(ErrorKind::ParseError, "group name must be a string");
  auto rows = detail::parse_rows(detail::member(j, "table"), "table");
  if (j.contains("order") && detail::as_index(j.at("order"), "order") != rows.size())
    throw Error(ErrorKind::MalformedTable, "order field disagrees with the table");
  std::map<Element, std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_object()) throw Error(ErrorKind::ParseError, "labels must be an object");
    for (const auto& [k, v] : j.at("labels").items()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(k);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "label key '" + k + "' is not an index");
      }
      if (!v.is_string()) throw Error(ErrorKind::ParseError, "labels must be strings");
      labels[static_cast<Element>(idx)] = v.get<std::string>();
    }
  }
  return make_group(rows, name.get<std::string>(), std::move(labels), warnings);
}

inline Json subgroup_to_json(const Subgroup& k) {
  Json j;
  j["schema_version"] = schema_version;
  j["group"] = k.parent()->name();
  j["elements"] = k.elements();
  return j;
}

inline Subgroup subgroup_from_json(const Json& j, const GroupPtr& g) {
  const Json& elems = detail::member(j, "elements");
  if (!elems.is_array()) throw Error(ErrorKind::ParseError, "elements must be an array");
  std::vector<Element> e;
  for (const auto& v : elems) e.push_back(static_cast<Element>(detail::as_index(v, "element")));
  return Subgroup(g, std::move(e));
}

/// Groups listed in the file named by MINFLOW_CATALOG (a JSON array of group
/// documents), or none.
inline std::vector<GroupPtr> environment_catalog() {
  const char* path = std::getenv("MINFLOW_CATALOG");
  if (!path || !*path) return {};
  const Json j = parse_json(read_text_file(path));
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "MINFLOW_CATALOG must hold an array of groups");
  std::vector<GroupPtr> out;
  for (const auto& g : j) out.push_back(group_from_json(g));
  return out;
}

/// "builtin:NAME", a bare builtin name, a group JSON file, or a name from
/// the MINFLOW_CATALOG file, tried in that order.
inline GroupPtr resolve_group_ref(const std::string& ref, std::vector<std::string>* warnings = nullptr) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) {
    if (GroupPtr g = find_builtin(ref.substr(prefix.size()))) return g;
    throw Error(ErrorKind::ParseError, "unknown builtin group '" + ref.substr(prefix.size()) + "'");
  }
  if (GroupPtr g = find_builtin(ref)) return g;
  if (std::filesystem::is_regular_file(ref)) return group_from_json(parse_json(read_text_file(ref)), warnings);
  for (const auto& g : environment_catalog())
    if (g->name() == ref) return g;
  throw Error(ErrorKind::ParseError, "cannot resolve group '" + ref + "'");
}

// ---- flows and morphisms ----

inline Json flow_to_json(const Flow& f, bool inline_group = false) {
  Json j;
  j["schema_version"] = schema_version;
  j["group"] = inline_group ? group_to_json(*f.group()) : Json(f.group()->name());
  j["size"] = f.size();
  j["action"] = detail::rows_json(f.table(), f.size());
  if (f.base_point()) j["base_point"] = *f.base_point();
  return j;
}

inline Flow flow_from_json(const Json& j) {
  const Json& gj = detail::member(j, "group");
  GroupPtr g = gj.is_string() ? resolve_group_ref(gj.get<std::string>())
               : gj.is_object() ? group_from_json(gj)
                                : throw Error(ErrorKind::ParseError, "flow group must be a name or a group");
  const std::size_t size = detail::as_index(detail::member(j, "size"), "size");
  auto rows = detail::parse_rows(detail::member(j, "action"), "action");
  if (rows.size() != g->order())
    throw Error(ErrorKind::MalformedTable, "action has " + std::to_string(rows.size()) +
                                               " rows for a group of order " + std::to_string(g->order()));
  std::vector<Point> flat;
  for (const auto& r : rows) {
    if (r.size() != size) throw Error(ErrorKind::MalformedTable, "action row length differs from size");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  std::optional<Point> base;
  if (j.contains("base_point") && !j.at("base_point").is_null())
    base = static_cast<Point>(detail::as_index(j.at("base_point"), "base_point"));
  return make_flow(std::move(g), size, std::move(flat), base);
}

inline Json morphism_to_json(const FlowMorphism& m) {
  Json j;
  j["schema_version"] = schema_version;
  j["map"] = m.map;
  j["checked"] = m.checked;
  return j;
}

// ---- reports ----

inline Json report_to_json(const VerificationReport& r) {
  Json j = Json::object();
  for (const auto& c : r.checks()) {
    Json e;
    e["pass"] = c.pass;
    e["cases"] = c.cases;
    e["witness"] = c.witness.empty() ? Json(nullptr) : Json(c.witness);
    j[c.name] = std::move(e);
  }
  return j;
}

inline Json witness_to_json(const ExtensionWitness& w) {
  Json j;
  j["schema_version"] = schema_version;
  j["kind"] = w.kind;
  j["group"] = w.group->name();
  j["group_order"] = w.group->order();
  j["subgroup"] = w.subgroup.elements();
  j["policy"] = w.policy;
  j["passed"] = w.passed();
  j["section"] = w.section ? Json(w.section->table()) : Json(nullptr);
  j["cocycle"] = w.cocycle ? detail::rows_json(w.cocycle->table(), w.cocycle->cosets().count()) : Json(nullptr);
  j["twisted_flow"] = w.twisted_flow ? flow_to_json(*w.twisted_flow) : Json(nullptr);
  j["phi"] = w.phi ? Json(w.phi->map) : Json(nullptr);
  j["oracle"] = w.oracle_confirmation ? Json(w.oracle_confirmation->map) : Json(nullptr);
  j["checks"] = report_to_json(w.checks);
  Json notes = Json::object();
  for (const auto& [k, v] : w.notes) notes[k] = v;
  j["notes"] = std::move(notes);
  return j;
}

inline Json tower_to_json(const WreathTower& t, const DecompositionChain& chain, const VerificationReport& consistency,
                          const VerificationReport& composed) {
  Json j;
  j["schema_version"] = schema_version;
  j["kind"] = "tower";
  j["header"] = tower_report_header;
  j["n"] = t.n;
  j["d"] = t.d;
  const bool ok = t.invariants.passed() && consistency.passed() && composed.passed() &&
                  std::all_of(chain.witnesses.begin(), chain.witnesses.end(),
                              [](const ExtensionWitness& w) { return w.passed(); });
  j["passed"] = ok;
  Json levels = Json::array();
  for (const auto& w : t.levels) {
    Json l;
    l["name"] = "W" + std::to_string(t.n) + "_" + std::to_string(w.depth);
    l["order"] = w.order;
    l["has_table"] = w.has_table();
    l["base"] = w.perm.base();
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["kernels"] = t.kernels();
  j["checks"] = report_to_json(t.invariants);
  Json c = Json::array();
  for (const auto& w : chain.witnesses) c.push_back(witness_to_json(w));
  j["chain"] = std::move(c);
  j["chain_levels"] = chain.levels;
  j["skipped_levels"] = chain.skipped;
  j["level_consistency"] = Json{{"checks", report_to_json(consistency)}};
  j["composability"] = Json{{"checks", report_to_json(composed)}};
  return j;
}

// ---- text rendering ----

namespace detail {

inline std::string scalar_text(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

inline bool numeric_array(const Json& v) {
  if (!v.is_array()) return false;
  return std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number() || e.is_array(); });
}

inline void render(const Json& j, const std::string& path, std::ostringstream& os) {
  for (const auto& [key, v] : j.items()) {
    if (key == "schema_version") continue;
    if (key == "checks" && v.is_object()) {
      for (const auto& [name, c] : v.items()) {
        os << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << path << name
           << " cases=" << c.at("cases").dump();
        if (!c.at("witness").is_null()) os << " witness: " << c.at("witness").get<std::string>();
        os << "\n";
      }
    } else if (v.is_object() && key != "twisted_flow" && key != "notes") {
      render(v, path + key + ".", os);
    } else if (v.is_object() && key == "notes") {
      for (const auto& [n, b] : v.items()) os << path << "note " << n << " = " << b.dump() << "\n";
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string label = key + "[" + std::to_string(i) + "]";
        os << "== " << path << label << "\n";
        render(v[i], path + label + ".", os);
      }
    } else if (!v.is_object() && !numeric_array(v)) {
      os << path << key << ": " << scalar_text(v) << "\n";
    } else if (numeric_array(v) && v.size() <= 32 && std::all_of(v.begin(), v.end(), [](const Json& e) {
                 return e.is_number();
               })) {
      os << path << key << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace detail

/// Line-oriented rendering of any report document: one PASS/FAIL line per
/// check (same facts as the JSON), plus short scalar fields.
inline std::string render_text(const Json& j) {
  std::ostringstream os;
  detail::render(j, "", os);
  return os.str();
}

}  // namespace minflow
