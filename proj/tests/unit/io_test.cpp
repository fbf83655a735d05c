#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <set>

#include "minflow/io.hpp"
#include "minflow/sweep.hpp"

using namespace minflow;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("minflow_io_" + name)).string();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::MalformedTable;
}

// name -> pass for every "checks" entry anywhere in the document.
void collect_checks(const Json& j, const std::string& path, std::set<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "checks" && v.is_object()) {
        for (const auto& [n, c] : v.items())
          out.insert((c.at("pass").get<bool>() ? "PASS " : "FAIL ") + path + n);
      } else if (k != "twisted_flow") {
        collect_checks(v, path + k + ".", out);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      if (j[i].is_object()) {
        std::string p = path;
        p.pop_back();
        collect_checks(j[i], p + "[" + std::to_string(i) + "].", out);
      }
  }
}

std::set<std::string> text_facts(const std::string& text) {
  std::set<std::string> out;
  std::regex line("^(PASS|FAIL) (\\S+) cases=.*$");
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    std::smatch m;
    if (std::regex_match(l, m, line)) out.insert(m[1].str() + " " + m[2].str());
  }
  return out;
}

}  // namespace

TEST(GroupJson, RoundTripCatalog) {
  for (const auto& e : builtin_catalog()) {
    auto g = e.make();
    auto back = group_from_json(parse_json(dump(group_to_json(*g))));
    EXPECT_TRUE(back->same_table(*g)) << e.name;
    EXPECT_EQ(back->name(), g->name());
    EXPECT_EQ(back->labels(), g->labels());
  }
}

TEST(GroupJson, Malformed) {
  EXPECT_EQ(kind_of([] { parse_json("{not json"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { group_from_json(parse_json(R"({"name":"x"})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { group_from_json(parse_json(R"({"name":"x","table":[[0,-1],[1,0]]})")); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { group_from_json(parse_json(R"({"name":"x","order":3,"table":[[0,1],[1,0]]})")); }),
            ErrorKind::MalformedTable);
  EXPECT_EQ(kind_of([] { group_from_json(parse_json(R"({"name":"x","table":[[0,1],[1,1]]})")); }),
            ErrorKind::NotInvertible);
}

TEST(GroupJson, IdentityRelabelWarns) {
  std::vector<std::string> warnings;
  auto g = group_from_json(parse_json(R"({"name":"Z2","table":[[1,0],[0,1]]})"), &warnings);
  EXPECT_EQ(g->op(0, 0), 0u);
  EXPECT_FALSE(warnings.empty());
}

TEST(SubgroupJson, RoundTrip) {
  auto g = symmetric(3);
  Subgroup k(g, {0, 3, 4});
  auto back = subgroup_from_json(parse_json(dump(subgroup_to_json(k))), g);
  EXPECT_EQ(back, k);
  EXPECT_THROW(subgroup_from_json(parse_json(R"({"group":"S3","elements":[0,1,3]})"), g), Error);
}

TEST(FlowJson, RoundTripNamedAndInline) {
  auto g = find_builtin("D4");
  auto f = coset_flow(Subgroup(g, {0, 4}));
  EXPECT_EQ(flow_from_json(parse_json(dump(flow_to_json(f)))), f);
  EXPECT_EQ(flow_from_json(parse_json(dump(flow_to_json(f, true)))), f);
  auto j = flow_to_json(f);
  j["action"][1][0] = 0;
  EXPECT_THROW(flow_from_json(j), Error);
  j = flow_to_json(f);
  j["group"] = "no-such-group";
  EXPECT_EQ(kind_of([&] { flow_from_json(j); }), ErrorKind::ParseError);
}

TEST(ResolveGroupRef, BuiltinFileAndEnvironment) {
  EXPECT_EQ(resolve_group_ref("builtin:Q8")->order(), 8u);
  EXPECT_EQ(resolve_group_ref("S4")->order(), 24u);
  EXPECT_EQ(kind_of([] { resolve_group_ref("builtin:Nope"); }), ErrorKind::ParseError);

  const auto file = temp_path("group.json");
  write_text_file(file, dump(group_to_json(*cyclic(7))));
  EXPECT_EQ(resolve_group_ref(file)->order(), 7u);

  const auto cat = temp_path("catalog.json");
  Json arr = Json::array();
  auto custom = group_to_json(*direct_product(*cyclic(3), *cyclic(3), "C3xC3"));
  arr.push_back(custom);
  write_text_file(cat, dump(arr));
  setenv("MINFLOW_CATALOG", cat.c_str(), 1);
  EXPECT_EQ(resolve_group_ref("C3xC3")->order(), 9u);
  EXPECT_EQ(environment_catalog().size(), 1u);
  unsetenv("MINFLOW_CATALOG");
  EXPECT_THROW(resolve_group_ref("C3xC3"), Error);
}

TEST(TextRender, SameFactsAsJson) {
  auto w = verify_extension_theorem(Subgroup(symmetric(3), {0, 3, 4}), MinIndexPolicy{});
  Json doc;
  doc["schema_version"] = schema_version;
  doc["witnesses"] = Json::array({witness_to_json(w)});
  std::set<std::string> from_json;
  collect_checks(doc, "", from_json);
  EXPECT_EQ(text_facts(render_text(doc)), from_json);
  EXPECT_GT(from_json.size(), 10u);

  SweepConfig cfg;
  cfg.caps.sweep_order = 6;
  auto sj = sweep_to_json(run_sweep(cfg));
  std::set<std::string> sweep_json;
  collect_checks(sj, "", sweep_json);
  EXPECT_EQ(text_facts(render_text(sj)), sweep_json);
}

TEST(TextRender, FailuresCarryWitness) {
  VerificationReport r;
  r.add("law", false, 3, "g=1 x=2");
  Json doc;
  doc["checks"] = report_to_json(r);
  EXPECT_EQ(render_text(doc), "FAIL law cases=3 witness: g=1 x=2\n");
}

TEST(WitnessJson, Fields) {
  auto w = verify_extension_theorem(Subgroup(cyclic(4), {0, 2}), MinIndexPolicy{});
  auto j = witness_to_json(w);
  EXPECT_EQ(j["group"], "C4");
  EXPECT_EQ(j["section"], Json::array({0, 1}));
  EXPECT_EQ(j["cocycle"].size(), 4u);
  EXPECT_EQ(j["phi"].size(), 4u);
  EXPECT_EQ(j["twisted_flow"]["size"], 4);
  EXPECT_TRUE(j["checks"]["cocycle_identity"]["pass"].get<bool>());
}
