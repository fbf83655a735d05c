#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "minflow/coset.hpp"
#include "minflow/report.hpp"

namespace minflow {

// rho : G x G/K -> K, stored row-major by group element. Built from a
// normalized cross section as rho(g, c) = s(g.c)^-1 g s(c), the unique K
// element with s(g.c) rho(g, c) = g s(c).
class Cocycle {
 public:
  const CrossSection& section() const noexcept { return section_; }
  const CosetSpace& cosets() const noexcept { return section_.cosets(); }
  const Subgroup& subgroup() const noexcept { return section_.cosets().subgroup(); }
  const GroupPtr& group() const noexcept { return section_.cosets().parent(); }

  Element operator()(Element g, Coset c) const noexcept { return table_[g * cosets().count() + c]; }
  const std::vector<Element>& table() const noexcept { return table_; }

  /// Wraps an arbitrary table without checking any law. Used for loading
  /// and for fault injection; check_cocycle_identity() judges the result.
  static Cocycle unchecked(CrossSection s, std::vector<Element> table) {
    const std::size_t want = s.cosets().parent()->order() * s.cosets().count();
    if (table.size() != want)
      throw Error(ErrorKind::MalformedTable, "cocycle table has " + std::to_string(table.size()) +
                                                 " entries, expected " + std::to_string(want));
    return Cocycle(std::move(s), std::move(table));
  }

 private:
  Cocycle(CrossSection s, std::vector<Element> t) : section_(std::move(s)), table_(std::move(t)) {}

  CrossSection section_;
  std::vector<Element> table_;
};

/// The defining formula, without any verification.
inline std::vector<Element> cocycle_values(const CrossSection& s) {
  const CosetSpace& cs = s.cosets();
  const Group& g = *cs.parent();
  std::vector<Element> t(g.order() * cs.count());
  for (Element x = 0; x < g.order(); ++x)
    for (Coset c = 0; c < cs.count(); ++c)
      t[x * cs.count() + c] = g.op(g.inverse(s(cs.act(x, c))), g.op(x, s(c)));
  return t;
}

/// Exhaustive check of rho(gh, c) = rho(g, h.c) rho(h, c) over all
/// |G|^2 [G:K] triples, plus rho(e, c) = e and rho(g, c) in K.
inline VerificationReport check_cocycle_identity(const Cocycle& rho) {
  const Group& g = *rho.group();
  const CosetSpace& cs = rho.cosets();
  const std::size_t m = cs.count();
  VerificationReport r;

  std::string witness;
  for (Element x = 0; x < g.order() && witness.empty(); ++x)
    for (Coset c = 0; c < m && witness.empty(); ++c)
      if (!rho.subgroup().contains(rho(x, c)))
        witness = "g=" + std::to_string(x) + " c=" + std::to_string(c) + " value " +
                  std::to_string(rho(x, c));
  r.add("cocycle_values_in_subgroup", witness.empty(), g.order() * m, witness);

  witness.clear();
  for (Coset c = 0; c < m && witness.empty(); ++c)
    if (rho(Group::identity, c) != Group::identity)
      witness = "rho(e," + std::to_string(c) + ") = " + std::to_string(rho(Group::identity, c));
  r.add("cocycle_unit", witness.empty(), m, witness);

  witness.clear();
  for (Element x = 0; x < g.order() && witness.empty(); ++x)
    for (Element h = 0; h < g.order() && witness.empty(); ++h) {
      const Element xh = g.op(x, h);
      for (Coset c = 0; c < m; ++c) {
        const Element lhs = rho(xh, c);
        const Element rhs = g.op(rho(x, cs.act(h, c)), rho(h, c));
        if (lhs != rhs) {
          std::ostringstream os;
          os << "g=" << x << " h=" << h << " c=" << c << ": rho(gh,c) = " << lhs
             << ", rho(g,h.c) rho(h,c) = " << rhs;
          witness = os.str();
          break;
        }
      }
    }
  r.add("cocycle_identity", witness.empty(), g.order() * g.order() * m, witness);
  return r;
}

/// rho from a cross section of a normal subgroup; throws NotNormal,
/// ValueOutsideSubgroup or CocycleIdentityFailed with the first witness.
inline Cocycle cocycle_from_section(const CrossSection& s) {
  if (!s.cosets().is_normal()) throw Error(ErrorKind::NotNormal, "cocycle needs a normal subgroup");
  if (!s.is_section()) throw Error(ErrorKind::NotASection, "section is not normalized");
  Cocycle rho = Cocycle::unchecked(s, cocycle_values(s));
  const auto report = check_cocycle_identity(rho);
  if (auto* f = report.find("cocycle_values_in_subgroup"); !f->pass)
    throw Error(ErrorKind::ValueOutsideSubgroup, f->witness);
  if (const auto* f = report.first_failure()) throw Error(ErrorKind::CocycleIdentityFailed, f->witness);
  return rho;
}

/// Overload naming G and K explicitly; they must match the section.
inline Cocycle cocycle_from_section(const Group& g, const Subgroup& k, const CrossSection& s) {
  if (!g.same_table(*s.cosets().parent()) || !(k == s.cosets().subgroup()))
    throw Error(ErrorKind::GroupMismatch, "section belongs to a different (G, K)");
  return cocycle_from_section(s);
}

}  // namespace minflow
