// minflow: command-line driver for the verification pipelines.
//
// Exit status: 0 all checks pass, 1 a check failed (or `iso` found no
// isomorphism), 2 invalid input.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minflow/catalog.hpp"
#include "minflow/extension.hpp"
#include "minflow/io.hpp"
#include "minflow/sweep.hpp"
#include "minflow/tower.hpp"

using namespace minflow;

namespace {

struct Options {
  std::string group;
  std::string normal = "auto";
  std::string section = "min-index";
  std::uint64_t seed = 1;
  std::vector<std::string> caps;
  std::string output;
  std::string format = "json";
  std::string a, b;
  std::string h, k, action = "inversion";
  std::string show;
  std::size_t n = 2, d = 2, threads = 0;
};

Caps parse_caps(const std::vector<std::string>& items) {
  Caps caps;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "cap '" + item + "' is not key=value");
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "cap '" + item + "' needs an integer value");
    }
    caps.set(item.substr(0, eq), value);
  }
  return caps;
}

SectionPolicy parse_policy(const Options& o) {
  if (o.section == "min-index") return MinIndexPolicy{};
  if (o.section == "seeded-random") return SeededRandomPolicy{o.seed};
  throw Error(ErrorKind::ParseError, "unknown section policy '" + o.section + "'");
}

GroupPtr load_group(const std::string& ref) {
  if (ref.empty()) throw Error(ErrorKind::ParseError, "--group is required");
  std::vector<std::string> warnings;
  GroupPtr g = resolve_group_ref(ref, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return g;
}

// "auto" / "all-normal", a comma list of elements, or a subgroup JSON file.
std::vector<Subgroup> parse_normal(const GroupPtr& g, const std::string& spec, const Caps& caps) {
  if (spec == "auto" || spec == "all-normal") return normal_subgroups(g, caps);
  if (std::filesystem::is_regular_file(spec)) return {subgroup_from_json(parse_json(read_text_file(spec)), g)};
  std::vector<Element> elems;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
      elems.push_back(static_cast<Element>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "subgroup element '" + item + "' is not an index");
    }
  }
  return {Subgroup(g, std::move(elems))};
}

int emit(const Options& o, const Json& doc, bool pass) {
  if (o.format != "json" && o.format != "text")
    throw Error(ErrorKind::ParseError, "unknown format '" + o.format + "'");
  const std::string text = o.format == "json" ? dump(doc) : render_text(doc);
  if (o.output.empty()) std::cout << text;
  else write_text_file(o.output, text);
  return pass ? 0 : 1;
}

Json header(const std::string& kind) {
  Json j;
  j["schema_version"] = schema_version;
  j["kind"] = kind;
  return j;
}

int cmd_catalog(const Options& o) {
  if (!o.show.empty()) return emit(o, group_to_json(*load_group(o.show)), true);
  Json j = header("catalog");
  Json list = Json::array();
  for (const auto& e : builtin_catalog()) list.push_back(Json{{"name", e.name}, {"order", e.order}});
  for (const auto& g : environment_catalog()) list.push_back(Json{{"name", g->name()}, {"order", g->order()}});
  j["groups"] = std::move(list);
  return emit(o, j, true);
}

int cmd_verify_extension(const Options& o) {
  const Caps caps = parse_caps(o.caps);
  const GroupPtr g = load_group(o.group);
  const auto ks = parse_normal(g, o.normal, caps);
  const SectionPolicy policy = parse_policy(o);
  std::vector<ExtensionWitness> ws;
  for (const auto& k : ks) ws.push_back(verify_extension_theorem(k, policy, std::nullopt, caps));
  Json j = header("verify-extension");
  j["group"] = g->name();
  j["section_policy"] = policy_label(policy);
  bool pass = true;
  Json arr = Json::array();
  for (const auto& w : ws) pass = pass && w.passed(), arr.push_back(witness_to_json(w));
  j["passed"] = pass;
  j["witnesses"] = std::move(arr);
  return emit(o, j, pass);
}

int cmd_verify_semidirect(const Options& o) {
  const Caps caps = parse_caps(o.caps);
  std::optional<SemidirectProduct> sp;
  if (!o.group.empty()) {
    std::string name = o.group;
    if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
    sp = builtin_semidirect(name);
    if (!sp) throw Error(ErrorKind::ParseError, "'" + o.group + "' is not a builtin semidirect product");
  } else {
    if (o.h.empty() || o.k.empty()) throw Error(ErrorKind::ParseError, "need --group or both --complement and --factor");
    const GroupPtr h = load_group(o.h), k = load_group(o.k);
    std::vector<Automorphism> theta;
    if (o.action == "trivial") theta = trivial_action(*h, *k);
    else if (o.action == "inversion") theta = cyclic_action(h->order(), inversion(*k));  // H read as cyclic
    else throw Error(ErrorKind::ParseError, "unknown action '" + o.action + "'");
    sp = semidirect_product(h, k, std::move(theta));
  }
  const ExtensionWitness w = semidirect_flow(*sp, caps);
  Json j = header("verify-semidirect");
  j["passed"] = w.passed();
  j["witness"] = witness_to_json(w);
  return emit(o, j, w.passed());
}

int cmd_verify_lemma(const Options& o) {
  const Caps caps = parse_caps(o.caps);
  const GroupPtr g = load_group(o.group);
  Json j = header("verify-lemma-orbits");
  j["group"] = g->name();
  bool pass = true;
  Json arr = Json::array();
  for (const auto& k : parse_normal(g, o.normal, caps)) {
    if (!is_normal(*g, k)) throw Error(ErrorKind::NotNormal, "subgroup is not normal");
    const VerificationReport r = check_orbit_lemma(k, caps);
    pass = pass && r.passed();
    arr.push_back(Json{{"subgroup", k.elements()}, {"checks", report_to_json(r)}});
  }
  j["passed"] = pass;
  j["instances"] = std::move(arr);
  return emit(o, j, pass);
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg;
  cfg.caps = parse_caps(o.caps);
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.extra_groups = environment_catalog();
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.format == "text") std::cerr << "sweep: " << r.instances.size() << " instances in " << secs << " s\n";
  return emit(o, sweep_to_json(r), r.passed());
}

int cmd_tower(const Options& o) {
  const Caps caps = parse_caps(o.caps);
  const WreathTower t = build_tower(o.n, o.d, caps);
  const DecompositionChain chain = decomposition_chain(t, parse_policy(o), caps);
  const VerificationReport lc = level_consistency(t, caps);
  const VerificationReport co = composability(t, chain, caps);
  const Json j = tower_to_json(t, chain, lc, co);
  return emit(o, j, j.at("passed").get<bool>());
}

int cmd_iso(const Options& o) {
  if (o.a.empty() || o.b.empty()) throw Error(ErrorKind::ParseError, "iso needs --a and --b");
  const Caps caps = parse_caps(o.caps);
  const Flow fa = flow_from_json(parse_json(read_text_file(o.a)));
  const Flow fb = flow_from_json(parse_json(read_text_file(o.b)));
  const IsoResult r = find_isomorphism(fa, fb, caps);
  Json j = header("iso");
  j["isomorphic"] = r.morphism.has_value();
  j["witness"] = r.witness.empty() ? Json(nullptr) : Json(r.witness);
  j["morphism"] = r.morphism ? morphism_to_json(*r.morphism) : Json(nullptr);
  return emit(o, j, r.morphism.has_value());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minflow: finite-scale verification of flow decompositions"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--caps", o.caps, "size cap override key=value (repeatable)");
    c->add_option("--output,-o", o.output, "write the report here instead of stdout");
    c->add_option("--format", o.format, "json or text");
  };
  auto sections = [&](CLI::App* c) {
    c->add_option("--section", o.section, "min-index or seeded-random");
    c->add_option("--seed", o.seed, "seed for seeded-random sections");
  };

  auto* catalog = app.add_subcommand("catalog", "list builtin groups, or print one with --show");
  catalog->add_option("--show", o.show, "group to print as JSON");
  common(catalog);

  auto* ext = app.add_subcommand("verify-extension", "extension theorem on (G, K) pairs");
  ext->add_option("--group", o.group, "builtin:NAME or group file")->required();
  ext->add_option("--normal", o.normal, "auto, a comma list of elements, or a subgroup file");
  sections(ext);
  common(ext);

  auto* semi = app.add_subcommand("verify-semidirect", "split-extension flow");
  semi->add_option("--group", o.group, "builtin semidirect product, e.g. builtin:C2|xC3");
  semi->add_option("--complement", o.h, "acting group H");
  semi->add_option("--factor", o.k, "normal factor K");
  semi->add_option("--action", o.action, "inversion or trivial");
  common(semi);

  auto* lemma = app.add_subcommand("verify-lemma-orbits", "orbit space of translation by K");
  lemma->add_option("--group", o.group, "builtin:NAME or group file")->required();
  lemma->add_option("--normal", o.normal, "auto, a comma list of elements, or a subgroup file");
  common(lemma);

  auto* sweep = app.add_subcommand("sweep", "every catalog group x normal subgroup x section policy");
  sweep->add_option("--seed", o.seed, "seed for the seeded-random policy");
  sweep->add_option("--threads", o.threads, "worker threads (0: all cores)");
  common(sweep);

  auto* tower = app.add_subcommand("tower", "iterated wreath tower exploration");
  tower->add_option("--n", o.n, "branching");
  tower->add_option("--d", o.d, "depth");
  sections(tower);
  common(tower);

  auto* iso = app.add_subcommand("iso", "search for a flow isomorphism");
  iso->add_option("--a", o.a, "first flow file")->required();
  iso->add_option("--b", o.b, "second flow file")->required();
  common(iso);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*catalog) return cmd_catalog(o);
    if (*ext) return cmd_verify_extension(o);
    if (*semi) return cmd_verify_semidirect(o);
    if (*lemma) return cmd_verify_lemma(o);
    if (*sweep) return cmd_sweep(o);
    if (*tower) return cmd_tower(o);
    if (*iso) return cmd_iso(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
