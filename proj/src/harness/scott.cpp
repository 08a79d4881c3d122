#include "nilcoset/harness.hpp"

#include "common.hpp"

namespace nilcoset::harness {

namespace {

std::string eps_name(const std::vector<int> &e) {
  std::string s = "L_(";
  for (std::size_t k = 0; k < e.size(); ++k)
    s += (k ? "," : "") + std::to_string(e[k]);
  return s + ")";
}

// Random generating pair of g from the seeded state.
std::vector<permgrp::Permutation> generating_pair(const PermGroup &g, std::uint64_t &state) {
  while (true) {
    std::vector<permgrp::Permutation> p{g.random_element(state), g.random_element(state)};
    if (PermGroup(g.degree(), p).order() == g.order())
      return p;
  }
}

} // namespace

VerificationReport scott_demo(std::size_t copies, std::uint64_t seed) {
  if (copies < 1 || copies > 2)
    throw std::invalid_argument("scott_demo: copies must be 1 or 2");
  VerificationReport rep;
  rep.scenario = "scott-demo";
  rep.inputs["copies"] = copies;
  rep.inputs["seed"] = seed;

  const auto sp = permgrp::scott_pair();
  const PermGroup &psl = sp.omega;
  PermGroup g = psl;
  for (std::size_t k = 1; k < copies; ++k)
    g = permgrp::direct_product(g, psl);
  Integer expected_order = 1, expected_index = 1;
  for (std::size_t k = 0; k < copies; ++k) {
    expected_order *= 12180;
    expected_index *= 203;
  }

  // Factor data: characters of L_0 and L_1, and their conjugacy in PSL(2,29).
  const auto classes = permgrp::conjugacy_classes(psl);
  const auto c0 = permgrp::coset_action(psl, sp.l0, classes).character;
  const auto c1 = permgrp::coset_action(psl, sp.l1, classes).character;
  const auto conj = permgrp::is_conjugate_subgroups(psl, sp.l0, sp.l1);
  rep.hypothesis_checks["factor"] = {{"psl_order", psl.order().get_str()},
                                     {"subgroup_orders", {sp.l0.order().get_str(), sp.l1.order().get_str()}},
                                     {"index", Integer(psl.order() / sp.l0.order()).get_str()},
                                     {"classes", classes.size()},
                                     {"characters_equal", c0 == c1},
                                     {"conjugate", conj.conjugate},
                                     {"separated_by", conj.reason}};

  std::vector<std::vector<int>> eps;
  for (std::size_t m = 0; m < (std::size_t{1} << copies); ++m) {
    std::vector<int> e;
    for (std::size_t k = 0; k < copies; ++k)
      e.push_back(static_cast<int>((m >> (copies - 1 - k)) & 1));
    eps.push_back(e);
  }
  std::vector<PermGroup> subs;
  bool contained = true, index_ok = true;
  for (const auto &e : eps) {
    PermGroup l = e[0] ? sp.l1 : sp.l0;
    for (std::size_t k = 1; k < copies; ++k)
      l = permgrp::direct_product(l, e[k] ? sp.l1 : sp.l0);
    contained &= l.is_subgroup_of(g);
    index_ok &= Integer(g.order() / l.order()) == expected_index;
    subs.push_back(std::move(l));
  }
  rep.hypothesis_checks["product"] = {{"order", g.order().get_str()},
                                      {"expected_order", expected_order.get_str()},
                                      {"index", Integer(g.order() / subs[0].order()).get_str()},
                                      {"expected_index", expected_index.get_str()},
                                      {"subgroups", subs.size()},
                                      {"contained", contained}};

  // L_e = prod L_{e_k}: the permutation character at a class (C_1, ..., C_s)
  // is the product of factor characters, and conjugation acts factorwise.
  bool all_ok = c0 == c1 && !conj.conjugate && contained && index_ok && g.order() == expected_order;
  for (std::size_t a = 0; a < eps.size(); ++a)
    for (std::size_t b = a + 1; b < eps.size(); ++b) {
      Json c;
      c["pair"] = {eps_name(eps[a]), eps_name(eps[b])};
      if (copies == 1) {
        c["gassmann"] = cosetequiv::gassmann_equivalent(g, subs[a], subs[b]);
        c["method"] = "permutation characters of PSL(2,29)";
      } else {
        c["gassmann"] = c0 == c1;
        c["method"] = "factorwise characters";
      }
      c["conjugate"] = conj.conjugate;
      all_ok &= c["gassmann"].get<bool>();
      rep.comparisons.push_back(std::move(c));
    }

  // Product maps F_2 -> PSL(2,29)^s.
  std::uint64_t state = seed;
  const auto free2 = fpgrp::FinitePresentation::free_group(2);
  std::vector<fpgrp::PermHom> homs;
  for (std::size_t k = 0; k < std::max<std::size_t>(copies, 2); ++k)
    homs.emplace_back(free2, psl, generating_pair(psl, state));
  const bool distinct = cosetequiv::hall_product_surjective({homs[0], homs[1]});
  const bool diagonal = cosetequiv::hall_product_surjective({homs[0], homs[0]});
  std::vector<fpgrp::PermHom> first(homs.begin(), homs.begin() + static_cast<std::ptrdiff_t>(copies));
  const bool s_fold = cosetequiv::hall_product_surjective(first);
  rep.hypothesis_checks["hall"] = {{"distinct_pair_surjective", distinct},
                                   {"repeated_pair_surjective", diagonal},
                                   {"s_fold_surjective", s_fold}};
  all_ok &= !diagonal;

  rep.hypothesis = all_ok ? Hypothesis::holds : Hypothesis::unverified;
  rep.verdict = all_ok ? Verdict::consistent : Verdict::inconclusive;
  return rep;
}

} // namespace nilcoset::harness
