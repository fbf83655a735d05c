#pragma once

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "minflow/catalog.hpp"
#include "minflow/extension.hpp"
#include "minflow/io.hpp"

namespace minflow {

struct SweepConfig {
  Caps caps;
  std::uint64_t seed = 1;    // seed of the seeded-random section policy
  std::size_t threads = 0;   // 0: hardware concurrency
  std::vector<GroupPtr> extra_groups;  // appended to the builtin catalog
};

// One (G, K, policy) instance. `checks` merges the twisted-product pipeline
// ("extension."), the second form ("compact."), the composed witness, the
// orbit lemma and the relation to the min-index cocycle.
struct SweepInstance {
  std::string group;
  std::size_t order = 0;
  std::vector<Element> subgroup;
  std::string policy;
  VerificationReport checks;

  bool passed() const noexcept { return checks.passed(); }
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepInstance> instances;  // sorted by (group, subgroup, policy)
  std::size_t groups = 0;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(instances.begin(), instances.end(),
                                                  [](const SweepInstance& i) { return !i.passed(); }));
  }
  bool passed() const { return failures() == 0; }
};

namespace detail {

struct SweepJob {
  GroupPtr group;
  Subgroup k;
  SectionPolicy policy;
};

inline VerificationReport guarded(const std::string& name, const std::function<VerificationReport()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    VerificationReport r;
    r.add(name, false, 0, e.what());
    return r;
  }
}

inline SweepInstance run_job(const SweepJob& job, const Caps& caps) {
  SweepInstance out{job.group->name(), job.group->order(), job.k.elements(), policy_label(job.policy), {}};
  const CosetSpace cs = quotient(job.k);
  out.checks.append(guarded("pipeline", [&] {
    const ExtensionWitness s3 = run_extension_pipeline(cs, job.policy, caps);
    VerificationReport r;
    r.append(s3.checks, "extension.");
    if (!s3.section) return r;
    const ExtensionWitness s4 = extension_by_compact_flow(*s3.section, caps);
    r.append(s4.checks, "compact.");
    r.append(check_composed_witnesses(s3, s4));
    if (s3.twisted_flow && s4.twisted_flow) {
      const IsoResult iso = find_isomorphism(*s4.twisted_flow, *s3.twisted_flow, caps);
      r.add("compact_oracle_vs_extension", iso.morphism.has_value(), s3.twisted_flow->size(), iso.witness);
    }
    const CrossSection base = cross_section(cs, MinIndexPolicy{});
    const Cocycle r1 = Cocycle::unchecked(base, cocycle_values(base));
    r.append(check_section_relation(r1, *s3.cocycle));
    return r;
  }));
  out.checks.append(guarded("orbit_lemma", [&] { return check_orbit_lemma(job.k, caps); }));
  return out;
}

}  // namespace detail

/// Catalog groups of order <= caps.sweep_order x normal subgroups x
/// {min-index, seeded-random}. Instances run on a thread pool; each result
/// lands in a fixed slot, so the output does not depend on scheduling.
inline SweepResult run_sweep(const SweepConfig& config) {
  SweepResult result{config, {}, 0};
  std::vector<GroupPtr> groups;
  for (const auto& e : builtin_catalog())
    if (e.order <= config.caps.sweep_order) groups.push_back(e.make());
  for (const auto& g : config.extra_groups)
    if (g->order() <= config.caps.sweep_order) groups.push_back(g);
  std::stable_sort(groups.begin(), groups.end(),
                   [](const GroupPtr& a, const GroupPtr& b) { return a->name() < b->name(); });
  result.groups = groups.size();

  std::vector<detail::SweepJob> jobs;
  for (const auto& g : groups)
    for (const auto& k : normal_subgroups(g, config.caps)) {
      jobs.push_back({g, k, MinIndexPolicy{}});
      jobs.push_back({g, k, SeededRandomPolicy{config.seed}});
    }
  std::sort(jobs.begin(), jobs.end(), [](const detail::SweepJob& a, const detail::SweepJob& b) {
    if (a.group->name() != b.group->name()) return a.group->name() < b.group->name();
    if (a.k.elements() != b.k.elements()) return a.k.elements() < b.k.elements();
    return a.policy.index() < b.policy.index();
  });

  result.instances.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
      result.instances[i] = detail::run_job(jobs[i], config.caps);
  };
  std::size_t n = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

inline Json sweep_to_json(const SweepResult& r) {
  Json j;
  j["schema_version"] = schema_version;
  j["kind"] = "sweep";
  j["sweep_order"] = r.config.caps.sweep_order;
  j["seed"] = r.config.seed;
  j["passed"] = r.passed();
  Json summary;
  summary["groups"] = r.groups;
  summary["instances"] = r.instances.size();
  summary["failures"] = r.failures();
  j["summary"] = std::move(summary);
  Json inst = Json::array();
  for (const auto& i : r.instances) {
    Json e;
    e["group"] = i.group;
    e["order"] = i.order;
    e["subgroup"] = i.subgroup;
    e["policy"] = i.policy;
    e["passed"] = i.passed();
    e["checks"] = report_to_json(i.checks);
    inst.push_back(std::move(e));
  }
  j["instances"] = std::move(inst);
  return j;
}

}  // namespace minflow
