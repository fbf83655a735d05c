#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "minflow/caps.hpp"
#include "minflow/cocycle.hpp"
#include "minflow/coset.hpp"
#include "minflow/flow.hpp"
#include "minflow/flow_iso.hpp"
#include "minflow/report.hpp"
#include "minflow/semidirect.hpp"

// Twisted product flows and their identification with left translation.
//
// Phase-point encodings (stable, used by the file formats):
//   (G/K) x K   point c * |K| + rank(k)       twisted_product_flow
//   N x (G/N)   point rank(n) * [G:N] + c     extension_by_compact_flow
//   H x K       point u * |K| + k             semidirect_flow
// rank(k) is the position of k in the sorted subgroup element list.

namespace minflow {

struct ExtensionWitness {
  std::string kind;  // "extension", "extension-by-compact" or "semidirect"
  GroupPtr group;
  Subgroup subgroup;
  std::string policy;
  std::optional<CrossSection> section;
  std::optional<Cocycle> cocycle;
  std::optional<Flow> twisted_flow;
  std::optional<FlowMorphism> phi;
  std::optional<FlowMorphism> oracle_confirmation;
  VerificationReport checks;
  std::map<std::string, bool> notes;  // informational facts, not pass/fail

  bool passed() const noexcept { return checks.passed(); }
};

/// g(c, k) = (g.c, rho(g, c) k) on (G/K) x K, based at (K, e).
inline Flow twisted_product_flow(const Cocycle& rho) {
  const Group& g = *rho.group();
  const CosetSpace& cs = rho.cosets();
  const Subgroup& k = rho.subgroup();
  const std::size_t m = cs.count(), q = k.size(), n = m * q;
  std::vector<Point> a(g.order() * n);
  for (Element x = 0; x < g.order(); ++x)
    for (Coset c = 0; c < m; ++c) {
      const Element r = rho(x, c);
      const Coset gc = cs.act(x, c);
      for (std::size_t i = 0; i < q; ++i) {
        const Element v = g.op(r, k.elements()[i]);
        if (!k.contains(v))
          throw Error(ErrorKind::ValueOutsideSubgroup,
                      "rho(" + std::to_string(x) + "," + std::to_string(c) + ") not in K");
        a[x * n + c * q + i] = static_cast<Point>(gc * q + k.rank(v));
      }
    }
  return make_flow(rho.group(), n, std::move(a), Point{0});
}

/// phi(c, k) = s(c) k as a point map (|K|-coordinates as in twisted_product_flow).
inline std::vector<Point> phi_points(const Cocycle& rho) {
  const Group& g = *rho.group();
  const Subgroup& k = rho.subgroup();
  const std::size_t m = rho.cosets().count(), q = k.size();
  std::vector<Point> map(m * q);
  for (Coset c = 0; c < m; ++c)
    for (std::size_t i = 0; i < q; ++i) map[c * q + i] = g.op(rho.section()(c), k.elements()[i]);
  return map;
}

/// The other product order, k s(c). Always a bijection onto G for normal K;
/// equivariant for the twisted action only on some instances.
inline std::vector<Point> swapped_form_points(const Cocycle& rho) {
  const Group& g = *rho.group();
  const Subgroup& k = rho.subgroup();
  const std::size_t m = rho.cosets().count(), q = k.size();
  std::vector<Point> map(m * q);
  for (Coset c = 0; c < m; ++c)
    for (std::size_t i = 0; i < q; ++i) map[c * q + i] = g.op(k.elements()[i], rho.section()(c));
  return map;
}

/// phi as a validated isomorphism onto left translation; throws
/// NotEquivariant or NotBijective (either means an implementation fault).
inline FlowMorphism phi_map(const Cocycle& rho, const Flow& twisted) {
  return make_morphism(twisted, left_translation_flow(rho.group()), phi_points(rho), true);
}

struct EvaluationImage {
  bool onto = false;
  std::vector<Element> image;  // sorted {rho(g, c) : g in G}
};

/// {rho(g, c) : g in G} compared with the whole subgroup.
inline EvaluationImage evaluation_surjectivity(const Cocycle& rho, Coset c) {
  std::vector<bool> hit(rho.group()->order(), false);
  EvaluationImage out;
  for (Element g = 0; g < rho.group()->order(); ++g) {
    const Element v = rho(g, c);
    if (!hit[v]) hit[v] = true, out.image.push_back(v);
  }
  std::sort(out.image.begin(), out.image.end());
  out.onto = out.image == rho.subgroup().elements();
  return out;
}

/// rho2(g, c) = k(g.c)^-1 rho1(g, c) k(c) with k(c) = s1(c)^-1 s2(c), for
/// two cocycles of the same (G, K).
inline VerificationReport check_section_relation(const Cocycle& r1, const Cocycle& r2) {
  const Group& g = *r1.group();
  const CosetSpace& cs = r1.cosets();
  VerificationReport r;
  std::vector<Element> k(cs.count());
  std::string witness;
  for (Coset c = 0; c < cs.count(); ++c) {
    k[c] = g.op(g.inverse(r1.section()(c)), r2.section()(c));
    if (!r1.subgroup().contains(k[c]) && witness.empty())
      witness = "s1(c)^-1 s2(c) outside K at c=" + std::to_string(c);
  }
  r.add("section_difference_in_subgroup", witness.empty(), cs.count(), witness);
  witness.clear();
  for (Element x = 0; x < g.order() && witness.empty(); ++x)
    for (Coset c = 0; c < cs.count(); ++c) {
      const Element want = g.op(g.op(g.inverse(k[cs.act(x, c)]), r1(x, c)), k[c]);
      if (r2(x, c) != want) {
        witness = "g=" + std::to_string(x) + " c=" + std::to_string(c);
        break;
      }
    }
  r.add("cocycle_section_relation", witness.empty(), g.order() * cs.count(), witness);
  return r;
}

namespace detail {

inline std::string first_witness(const VerificationReport& r) {
  const Check* c = r.first_failure();
  return c ? c->name + ": " + c->witness : std::string{};
}

inline void check_quotient(const CosetSpace& cs, VerificationReport& r) {
  const Group& g = *cs.parent();
  std::string witness;
  for (Element x = 0; x < g.order() && witness.empty(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      const bool same = cs.coset_of(x) == cs.coset_of(y);
      if (same != cs.subgroup().contains(g.op(g.inverse(x), y))) {
        witness = "g=" + std::to_string(x) + " h=" + std::to_string(y);
        break;
      }
    }
  for (Coset c = 0; c < cs.count() && witness.empty(); ++c)
    if (cs.coset_of(cs.representative(c)) != c) witness = "representative of coset " + std::to_string(c);
  r.add("quotient_partition", witness.empty(), g.order() * g.order(), witness);
}

// Minimality, freeness, ambit and the independent oracle, for a flow that
// should be isomorphic to left translation on G.
inline void check_dynamics(const Flow& f, const std::string& prefix, ExtensionWitness& w,
                           const Caps& caps) {
  const std::size_t cases = f.size();
  w.checks.add(prefix + "minimal", is_minimal(f), cases);
  w.checks.add(prefix + "free", is_free(f), f.group()->order() * f.size());
  w.checks.add(prefix + "ambit", is_ambit(f), cases);
  IsoResult iso = find_isomorphism(f, left_translation_flow(f.group()), caps);
  w.checks.add("oracle_isomorphism", iso.morphism.has_value(), f.size(), iso.witness);
  w.oracle_confirmation = std::move(iso.morphism);
}

inline void check_phi(const Flow& f, std::vector<Point> map, ExtensionWitness& w) {
  const Flow target = left_translation_flow(f.group());
  w.checks.add("phi_base_point", map[0] == Group::identity, 1,
               map[0] == Group::identity ? "" : "phi(base) = " + std::to_string(map[0]));
  auto v = equivariance_violation(f, target, map);
  w.checks.add("phi_equivariant", !v, f.group()->order() * f.size(), v.value_or(""));
  const bool bij = is_bijection(map, target.size());
  w.checks.add("phi_bijective", bij, f.size(), bij ? "" : "phi is not a bijection");
  if (!v && bij) w.phi = FlowMorphism{f, target, std::move(map), true};
}

}  // namespace detail

/// Quotient -> section -> cocycle -> identity check -> twisted flow -> phi
/// -> minimality/freeness -> oracle. Never throws for a failing stage; the
/// failure lands in the report with its witness.
inline ExtensionWitness run_extension_pipeline(const CosetSpace& cs, const SectionPolicy& policy,
                                               const Caps& caps = default_caps()) {
  ExtensionWitness w{"extension", cs.parent(), cs.subgroup(), policy_label(policy),
                     std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}, {}};
  detail::check_quotient(cs, w.checks);
  try {
    w.section = cross_section(cs, policy);
  } catch (const Error& e) {
    w.checks.add("section_property", false, cs.count(), e.what());
    return w;
  }
  w.checks.add("section_property", w.section->is_section(), cs.count());

  w.cocycle = Cocycle::unchecked(*w.section, cocycle_values(*w.section));
  w.checks.append(check_cocycle_identity(*w.cocycle));
  try {
    w.twisted_flow = twisted_product_flow(*w.cocycle);
    w.checks.add("twisted_flow_axioms", true, w.group->order() * w.group->order() * cs.count());
  } catch (const Error& e) {
    w.checks.add("twisted_flow_axioms", false, 0, e.what());
    return w;
  }
  detail::check_phi(*w.twisted_flow, phi_points(*w.cocycle), w);
  detail::check_dynamics(*w.twisted_flow, "twisted_", w, caps);

  const auto alt = swapped_form_points(*w.cocycle);
  w.notes["swapped_form_bijective"] = is_bijection(alt, w.group->order());
  w.notes["swapped_form_equivariant"] =
      !equivariance_violation(*w.twisted_flow, left_translation_flow(w.group), alt);
  w.notes["section_homomorphic"] = w.section->is_homomorphic();
  return w;
}

inline SectionPolicy second_policy_for(const SectionPolicy& p) {
  if (std::holds_alternative<MinIndexPolicy>(p)) return SeededRandomPolicy{0x5eedULL};
  return MinIndexPolicy{};
}

/// The full pipeline on (G, K) with `policy`, re-run with `second` (the
/// theorem holds for every section). Throws NotNormal before starting.
inline ExtensionWitness verify_extension_theorem(const Subgroup& k, const SectionPolicy& policy,
                                                 const std::optional<SectionPolicy>& second = std::nullopt,
                                                 const Caps& caps = default_caps()) {
  if (!is_normal(*k.parent(), k))
    throw Error(ErrorKind::NotNormal, "subgroup of order " + std::to_string(k.size()) +
                                          " is not normal in " + k.parent()->name());
  const CosetSpace cs = quotient(k);
  ExtensionWitness w = run_extension_pipeline(cs, policy, caps);
  const SectionPolicy other = second.value_or(second_policy_for(policy));
  ExtensionWitness w2 = run_extension_pipeline(cs, other, caps);
  w.checks.add("second_section_pipeline", w2.passed(), w2.checks.checks().size(),
               w2.passed() ? "" : policy_label(other) + " " + detail::first_witness(w2.checks));
  return w;
}

/// Second form: flow on N x G/N by g(u, c) = (rho(g, c) u, g.c), with
/// phi(u, c) = s(c) u (the N-ambit map N -> G is the inclusion).
inline ExtensionWitness extension_by_compact_flow(const CrossSection& s,
                                                  const Caps& caps = default_caps()) {
  const CosetSpace& cs = s.cosets();
  const Group& g = *cs.parent();
  const Subgroup& n = cs.subgroup();
  ExtensionWitness w{"extension-by-compact", cs.parent(), n, "", s, std::nullopt, std::nullopt,
                     std::nullopt, std::nullopt, {}, {}};
  if (!cs.is_normal()) throw Error(ErrorKind::NotNormal, "extension by compact needs N normal");
  detail::check_quotient(cs, w.checks);
  w.checks.add("section_property", s.is_section(), cs.count());
  w.cocycle = Cocycle::unchecked(s, cocycle_values(s));
  w.checks.append(check_cocycle_identity(*w.cocycle));

  const std::size_t m = cs.count(), q = n.size(), size = m * q;
  std::vector<Point> a(g.order() * size);
  for (Element x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < q; ++i)
      for (Coset c = 0; c < m; ++c) {
        const Element u = g.op((*w.cocycle)(x, c), n.elements()[i]);
        const Point rank = n.contains(u) ? static_cast<Point>(n.rank(u)) : 0;
        a[x * size + i * m + c] = static_cast<Point>(rank * m + cs.act(x, c));
      }
  try {
    w.twisted_flow = make_flow(cs.parent(), size, std::move(a), Point{0});
    w.checks.add("twisted_flow_axioms", true, g.order() * g.order() * size);
  } catch (const Error& e) {
    w.checks.add("twisted_flow_axioms", false, 0, e.what());
    return w;
  }

  std::vector<Point> map(size);
  for (std::size_t i = 0; i < q; ++i)
    for (Coset c = 0; c < m; ++c) map[i * m + c] = g.op(s(c), n.elements()[i]);
  detail::check_phi(*w.twisted_flow, std::move(map), w);

  std::string witness;
  for (Coset c = 0; c < m && witness.empty(); ++c)
    if (!evaluation_surjectivity(*w.cocycle, c).onto)
      witness = "coset " + std::to_string(c) + " image smaller than N";
  w.checks.add("evaluation_surjective", witness.empty(), m, witness);
  detail::check_dynamics(*w.twisted_flow, "twisted_", w, caps);
  return w;
}

/// Split case G = H |x K: flow on H x K by g(u, k) = (pi(g) u, g k s(pi(g))^-1)
/// with phi(u, k) = k s(u). Also runs the cocycle pipeline on the homomorphic
/// section and compares the two identifications.
inline ExtensionWitness semidirect_flow(const SemidirectProduct& sp, const Caps& caps = default_caps()) {
  const Group& g = *sp.group;
  const Group& h = *sp.complement_group;
  const std::size_t nk = sp.normal_group->order(), nh = h.order(), size = nh * nk;
  ExtensionWitness w{"semidirect", sp.group, sp.normal_factor, "homomorphic", std::nullopt,
                     std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}, {}};

  bool section_hom = is_homomorphism(h, g, sp.section);
  bool proj_hom = is_homomorphism(g, h, sp.projection);
  w.checks.add("section_homomorphism", section_hom, nh * nh);
  w.checks.add("projection_homomorphism", proj_hom, g.order() * g.order());

  std::vector<Point> a(g.order() * size);
  std::string witness;
  for (Element x = 0; x < g.order(); ++x) {
    const Element px = sp.projection[x];
    const Element sinv = g.inverse(sp.section[px]);
    for (Element u = 0; u < nh; ++u)
      for (Element kk = 0; kk < nk; ++kk) {
        const Element v = g.op(g.op(x, sp.embed[kk]), sinv);
        if (!sp.normal_factor.contains(v) && witness.empty())
          witness = "g k s(pi(g))^-1 outside K at g=" + std::to_string(x);
        a[x * size + u * nk + kk] =
            static_cast<Point>(h.op(px, u) * nk + (sp.normal_factor.contains(v) ? sp.normal_factor.rank(v) : 0));
      }
  }
  w.checks.add("fibre_values_in_subgroup", witness.empty(), g.order() * size, witness);
  try {
    w.twisted_flow = make_flow(sp.group, size, std::move(a), Point{0});
    w.checks.add("twisted_flow_axioms", true, g.order() * g.order() * size);
  } catch (const Error& e) {
    w.checks.add("twisted_flow_axioms", false, 0, e.what());
    return w;
  }

  std::vector<Point> map(size);
  for (Element u = 0; u < nh; ++u)
    for (Element kk = 0; kk < nk; ++kk) map[u * nk + kk] = g.op(sp.embed[kk], sp.section[u]);
  detail::check_phi(*w.twisted_flow, map, w);
  detail::check_dynamics(*w.twisted_flow, "twisted_", w, caps);

  // Cocycle pipeline on the homomorphic section.
  const CosetSpace cs = quotient(sp.normal_factor);
  std::vector<Element> explicit_section(cs.count());
  for (Element u = 0; u < nh; ++u) explicit_section[cs.coset_of(sp.section[u])] = sp.section[u];
  ExtensionWitness w3 = run_extension_pipeline(cs, ExplicitPolicy{explicit_section}, caps);
  w.checks.add("extension_pipeline_on_homomorphic_section", w3.passed(), w3.checks.checks().size(),
               detail::first_witness(w3.checks));
  if (!w3.passed()) return w;
  w.section = w3.section;
  w.cocycle = w3.cocycle;
  w.notes["section_homomorphic"] = w3.section->is_homomorphic();

  // rho(g, s(u)K) = theta(u^-1)(k_g) where g = s(pi(g)) k_g.
  witness.clear();
  for (Element x = 0; x < g.order() && witness.empty(); ++x) {
    const Element kg = g.op(g.inverse(sp.section[sp.projection[x]]), x);
    for (Element u = 0; u < nh; ++u) {
      const Element want = sp.embed[sp.theta[h.inverse(u)][kg]];
      if ((*w3.cocycle)(x, cs.coset_of(sp.section[u])) != want) {
        witness = "g=" + std::to_string(x) + " u=" + std::to_string(u);
        break;
      }
    }
  }
  w.checks.add("cocycle_induced_by_theta", witness.empty(), g.order() * nh, witness);

  // Transport (u, k) -> (s(u)K, s(u)^-1 k s(u)) carries this phi onto the
  // pipeline's phi and is itself a flow isomorphism.
  const Subgroup& kk = sp.normal_factor;
  std::vector<Point> transport(size);
  for (Element u = 0; u < nh; ++u)
    for (Element k = 0; k < nk; ++k) {
      const Element su = sp.section[u];
      const Element conj = g.op(g.op(g.inverse(su), sp.embed[k]), su);
      transport[u * nk + k] = static_cast<Point>(cs.coset_of(su) * kk.size() + kk.rank(conj));
    }
  witness.clear();
  for (Point p = 0; p < size && witness.empty(); ++p)
    if (w3.phi->map[transport[p]] != map[p]) witness = "point " + std::to_string(p);
  w.checks.add("phi_agrees_with_extension_phi", witness.empty(), size, witness);
  auto tv = equivariance_violation(*w.twisted_flow, *w3.twisted_flow, transport);
  w.checks.add("transport_equivariant", !tv && is_bijection(transport, size), g.order() * size,
               tv.value_or(""));
  return w;
}

/// S(G/K) = S(G)/K at finite scale: the K-orbit space of left translation
/// is isomorphic, as a G/K-flow, to left translation on G/K.
inline VerificationReport check_orbit_lemma(const Subgroup& k, const Caps& caps = default_caps()) {
  VerificationReport r;
  const OrbitSpaceFlow osf = orbit_space_flow(left_translation_flow(k.parent()), k);
  const IsoResult iso =
      find_isomorphism(osf.flow, left_translation_flow(osf.cosets.quotient_group()), caps);
  r.add("orbit_lemma", iso.morphism.has_value(), osf.flow.size(), iso.witness);
  return r;
}

/// phi3^-1 o phi4 must be a flow isomorphism from the second-form flow to
/// the twisted product flow.
inline VerificationReport check_composed_witnesses(const ExtensionWitness& s3,
                                                   const ExtensionWitness& s4) {
  VerificationReport r;
  if (!s3.phi || !s4.phi || !s3.twisted_flow || !s4.twisted_flow) {
    r.add("composed_witness_isomorphism", false, 0, "a witness has no phi");
    return r;
  }
  std::vector<Point> inv(s3.phi->map.size());
  for (Point p = 0; p < inv.size(); ++p) inv[s3.phi->map[p]] = p;
  std::vector<Point> composed(s4.phi->map.size());
  for (Point p = 0; p < composed.size(); ++p) composed[p] = inv[s4.phi->map[p]];
  auto v = equivariance_violation(*s4.twisted_flow, *s3.twisted_flow, composed);
  const bool bij = is_bijection(composed, s3.twisted_flow->size());
  r.add("composed_witness_isomorphism", !v && bij, composed.size() * s3.group->order(),
        v.value_or(bij ? "" : "not a bijection"));
  return r;
}

}  // namespace minflow
