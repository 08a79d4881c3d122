#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcoset/permgrp.hpp"

#include <set>
#include <sstream>

using namespace nilcoset::permgrp;
using nilcoset::exactla::Integer;

namespace {

std::set<Permutation> closure(const PermGroup &g) {
  std::set<Permutation> seen{g.identity()};
  std::vector<Permutation> frontier{g.identity()};
  while (!frontier.empty()) {
    auto x = frontier.back();
    frontier.pop_back();
    for (const auto &s : g.generators()) {
      auto y = x * s;
      if (seen.insert(y).second)
        frontier.push_back(y);
    }
  }
  return seen;
}

std::vector<PermGroup> small_groups() {
  return {symmetric(3), symmetric(4), alternating(4), alternating(5), cyclic(12), dihedral(4), dihedral(7),
          metacyclic(4, 2, 3, 2), metacyclic(3, 4, 2, 0), direct_product(cyclic(2), cyclic(3)),
          direct_product(symmetric(3), cyclic(4)), psl2(7), symmetric(5)};
}

Integer psl2_order(long q) { return Integer(q) * (q * q - 1) / (q % 2 ? 2 : 1); }

} // namespace

TEST_CASE("group orders") {
  CHECK(psl2(29).order() == 12180);
  CHECK(PermGroup(5, {Permutation(5)}).order() == 1);
  CHECK(psl2(7).order() == 168);
  CHECK(symmetric(6).order() == 720);
}

TEST_CASE("psl2 degrees and orders") {
  CHECK(psl2(5).degree() == 6);
  CHECK(psl2(5).order() == 60);
  CHECK(psl2(29).degree() == 30);
  CHECK(psl2(3).degree() == 4);
  CHECK(psl2(3).order() == 12);
  for (long q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61})
    CHECK(psl2(static_cast<std::uint32_t>(q)).order() == psl2_order(q));
}

TEST_CASE("chain order equals product of orbit lengths") {
  for (const auto &g : small_groups()) {
    Integer prod = 1;
    for (const auto &level : g.chain().levels)
      prod *= static_cast<unsigned long>(level.orbit.size());
    CHECK(prod == g.order());
  }
}

TEST_CASE("stabilizer chain agrees with brute-force closure") {
  for (const auto &g : small_groups()) {
    auto all = closure(g);
    CHECK(g.order() == static_cast<unsigned long>(all.size()));
    // Membership by sifting against the enumeration of Sym(n) restricted to a sample.
    PermGroup sym = symmetric(g.degree());
    std::uint64_t state = 7;
    for (int k = 0; k < 200; ++k) {
      auto x = sym.random_element(state);
      CHECK(g.contains(x) == (all.count(x) == 1));
    }
    for (const auto &x : all)
      CHECK(g.contains(x));
  }
}

TEST_CASE("scott pair") {
  auto sp = scott_pair();
  CHECK(sp.l0.order() == 60);
  CHECK(sp.l1.order() == 60);
  CHECK(sp.omega.order() / sp.l0.order() == 203);
  CHECK_FALSE(is_conjugate_subgroups(sp.omega, sp.l0, sp.l1).conjugate);
  auto again = scott_pair();
  CHECK(again.l0.generators() == sp.l0.generators());
  CHECK(again.l1.generators() == sp.l1.generators());
  CHECK(again.omega.generators() == sp.omega.generators());
}

TEST_CASE("conjugacy classes") {
  auto s3 = conjugacy_classes(symmetric(3));
  REQUIRE(s3.size() == 3);
  std::multiset<std::uint64_t> sizes(s3.class_sizes.begin(), s3.class_sizes.end());
  CHECK(sizes == std::multiset<std::uint64_t>{1, 2, 3});
  CHECK(conjugacy_classes(PermGroup::trivial(3)).size() == 1);
  auto psl = conjugacy_classes(psl2(29));
  std::uint64_t total = 0;
  for (auto s : psl.class_sizes)
    total += s;
  CHECK(total == 12180);
}

TEST_CASE("coset action examples") {
  auto s3 = symmetric(3);
  auto whole = coset_action(s3, s3);
  CHECK(whole.action.degree() == 1);
  for (auto v : whole.character.values)
    CHECK(v == 1);
  auto classes = conjugacy_classes(s3);
  auto reg = coset_action(s3, PermGroup::trivial(3), classes);
  CHECK(reg.action.degree() == 6);
  for (std::size_t k = 0; k < classes.size(); ++k)
    CHECK(reg.character.values[k] == (classes.representatives[k].is_identity() ? 6u : 0u));
  auto sp = scott_pair();
  auto pc = conjugacy_classes(sp.omega);
  auto act = coset_action(sp.omega, sp.l0, pc);
  CHECK(act.action.degree() == 203);
  for (std::size_t k = 0; k < pc.size(); ++k)
    if (pc.representatives[k].is_identity())
      CHECK(act.character.values[k] == 203);
}

TEST_CASE("coset action is transitive with kernel the normal core") {
  for (const auto &g : small_groups()) {
    if (g.order() > 360)
      continue;
    auto subs = subgroups_up_to_conjugacy(g);
    auto elems = g.elements();
    auto classes = conjugacy_classes(g);
    for (const auto &h : subs.representatives) {
      auto ca = coset_action(g, h, classes);
      CHECK(ca.action.orbits().size() == 1);
      CHECK(Integer(g.order() / h.order()) == static_cast<unsigned long>(ca.action.degree()));
      // Kernel of the action.
      CosetSpace space(g, h);
      std::size_t kernel = 0, core = 0;
      for (const auto &x : elems) {
        if (space.action_of(x).is_identity())
          ++kernel;
        bool in_all = true;
        for (const auto &y : elems)
          if (!h.contains(x.conjugate_by(y))) {
            in_all = false;
            break;
          }
        core += in_all;
      }
      CHECK(kernel == core);
      // Burnside: one orbit.
      Integer sum = 0;
      for (std::size_t k = 0; k < classes.size(); ++k)
        sum += Integer(static_cast<unsigned long>(classes.class_sizes[k])) *
               static_cast<unsigned long>(ca.character.values[k]);
      CHECK(sum == g.order());
      for (std::size_t k = 0; k < classes.size(); ++k)
        if (classes.representatives[k].is_identity())
          CHECK(Integer(static_cast<unsigned long>(ca.character.values[k])) == g.order() / h.order());
    }
  }
}

TEST_CASE("conjugate subgroups") {
  auto s6 = symmetric(6);
  auto a = subgroup(s6, {Permutation::parse("(1 2)(3 4)", 6), Permutation::parse("(1 3)(2 4)", 6)});
  auto b = subgroup(s6, {Permutation::parse("(1 2)(3 4)", 6), Permutation::parse("(1 2)(5 6)", 6)});
  auto same = is_conjugate_subgroups(s6, a, a);
  CHECK(same.conjugate);
  REQUIRE(same.witness.has_value());
  CHECK(same.witness->is_identity());
  CHECK_FALSE(is_conjugate_subgroups(s6, a, b).conjugate);
  std::uint64_t state = 11;
  for (const auto &g : small_groups()) {
    auto subs = subgroups_up_to_conjugacy(g);
    for (const auto &h : subs.representatives) {
      auto x = g.random_element(state);
      std::vector<Permutation> gens;
      for (const auto &s : h.generators())
        gens.push_back(s.conjugate_by(x));
      PermGroup hx(g.degree(), gens);
      auto r = is_conjugate_subgroups(g, h, hx);
      CHECK(r.conjugate);
      REQUIRE(r.witness.has_value());
      std::vector<Permutation> moved;
      for (const auto &s : h.generators())
        moved.push_back(s.conjugate_by(*r.witness));
      CHECK(PermGroup(g.degree(), moved) == hx);
    }
  }
}

TEST_CASE("subgroup classes") {
  CHECK(subgroups_up_to_conjugacy(symmetric(3)).representatives.size() == 4);
  CHECK(subgroups_up_to_conjugacy(metacyclic(4, 2, 3, 2)).representatives.size() == 6);
  CHECK(subgroups_up_to_conjugacy(PermGroup::trivial(2)).representatives.size() == 1);
  CHECK(subgroups_up_to_conjugacy(symmetric(4)).representatives.size() == 11);
  CHECK(subgroups_up_to_conjugacy(alternating(5)).representatives.size() == 9);
}

TEST_CASE("direct products and catalog constructors") {
  auto c6 = direct_product(cyclic(2), cyclic(3));
  CHECK(c6.order() == 6);
  CHECK(c6.is_abelian());
  auto p = psl2(29);
  CHECK(direct_product(p, p).order() == Integer(12180) * 12180);
  CHECK(dihedral(5).order() == 10);
  CHECK(alternating(6).order() == 360);
  CHECK(metacyclic(4, 2, 3, 2).order() == 8);
}

TEST_CASE("derived subgroup and abelianization") {
  CHECK(derived_subgroup(alternating(5)).order() == 60);
  CHECK(abelianization_finite(alternating(5)).is_trivial());
  CHECK(abelianization_finite(cyclic(12)).torsion == std::vector<Integer>{12});
  CHECK(abelianization_finite(dihedral(4)).torsion == std::vector<Integer>{2, 2});
}

TEST_CASE("lower central series") {
  auto lcs = lower_central_series(dihedral(8));
  CHECK(lcs.front().order() == 16);
  CHECK(lcs.back().is_trivial());
  CHECK(lcs.size() == 4); // orders 16, 4, 2, 1
  CHECK(lower_central_series(symmetric(3)).back().order() == 3);
  CHECK(is_nilpotent(metacyclic(4, 2, 3, 2)));
  CHECK_FALSE(is_nilpotent(symmetric(3)));
  CHECK(is_perfect(alternating(5)));
}

TEST_CASE("text format round trip") {
  auto g = psl2(7);
  std::istringstream in(format_perm_group(g));
  auto back = read_perm_group(in);
  CHECK(back == g);
  CHECK(back.generators() == g.generators());
  CHECK(Permutation::parse("(1 2 3)", 4).to_cycle_string() == "(1 2 3)");
}
