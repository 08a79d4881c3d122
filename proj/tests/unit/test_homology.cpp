#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcoset/homology.hpp"

#include <numeric>
#include <set>

using namespace nilcoset;
using namespace nilcoset::homology;
using exactla::Integer;
using fpgrp::parse_presentation;

namespace {

PermGroup klein() { return permgrp::dihedral(2); }

std::vector<PermGroup> groups_up_to_12() {
  using namespace permgrp;
  return {PermGroup::trivial(1), cyclic(2), cyclic(3), cyclic(4), klein(), cyclic(5), cyclic(6), symmetric(3),
          cyclic(7), cyclic(8), dihedral(4), metacyclic(4, 2, 3, 2), direct_product(cyclic(2), cyclic(4)),
          direct_product(klein(), cyclic(2)), cyclic(9), direct_product(cyclic(3), cyclic(3)), dihedral(5),
          cyclic(10), alternating(4), dihedral(6), metacyclic(3, 4, 2, 0), direct_product(cyclic(2), cyclic(6))};
}

// |H^2(G; Z/m)| from normalized cocycles and coboundaries, by enumeration.
std::uint64_t h2_cohomology_order(const BarComplexSlice &bar, std::uint64_t m) {
  const std::size_t n = bar.elements().size();
  const std::size_t cells = (n - 1) * (n - 1);
  auto pos = [&](std::size_t a, std::size_t b) { return (a - 1) * (n - 1) + (b - 1); };
  auto val = [&](const std::vector<std::uint64_t> &f, std::size_t a, std::size_t b) -> std::uint64_t {
    return a == 0 || b == 0 ? 0 : f[pos(a, b)];
  };
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < cells; ++k)
    total *= m;
  std::uint64_t cocycles = 0;
  std::vector<std::uint64_t> f(cells, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto &x : f) {
      x = c % m;
      c /= m;
    }
    bool ok = true;
    for (std::size_t a = 1; a < n && ok; ++a)
      for (std::size_t b = 1; b < n && ok; ++b)
        for (std::size_t d = 1; d < n && ok; ++d) {
          // f(b,d) - f(ab,d) + f(a,bd) - f(a,b) = 0
          std::uint64_t s = val(f, b, d) + val(f, a, bar.multiply(b, d)) + 2 * m - val(f, bar.multiply(a, b), d) -
                            val(f, a, b);
          ok = s % m == 0;
        }
    cocycles += ok;
  }
  std::set<std::vector<std::uint64_t>> boundaries;
  std::uint64_t chains = 1;
  for (std::size_t k = 1; k < n; ++k)
    chains *= m;
  std::vector<std::uint64_t> g(n, 0);
  for (std::uint64_t code = 0; code < chains; ++code) {
    std::uint64_t c = code;
    for (std::size_t k = 1; k < n; ++k) {
      g[k] = c % m;
      c /= m;
    }
    std::vector<std::uint64_t> db(cells);
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = 1; b < n; ++b)
        db[pos(a, b)] = (g[b] + g[a] + m - g[bar.multiply(a, b)]) % m;
    boundaries.insert(db);
  }
  return cocycles / boundaries.size();
}

} // namespace

TEST_CASE("h1 of finite presentations") {
  auto g2 = h1_fp(parse_presentation("gens a b c d\n[a,b]*[c,d]\n"));
  CHECK(g2.free_rank == 4);
  CHECK(g2.torsion.empty());
  CHECK(h1_fp(parse_presentation("gens a\na^6\n")).torsion == std::vector<Integer>{6});
  auto trefoil = h1_fp(parse_presentation("gens a b\na^2*b^-3\n"));
  CHECK(trefoil.free_rank == 1);
  CHECK(trefoil.torsion.empty());
}

TEST_CASE("schur multipliers of small groups") {
  for (std::size_t n = 1; n <= 6; ++n)
    CHECK(h2_finite_bar(permgrp::cyclic(n)).is_trivial());
  CHECK(h2_finite_bar(klein()).torsion == std::vector<Integer>{2});
  CHECK(h2_finite_bar(klein(), {60, false}).torsion == std::vector<Integer>{2});
  CHECK(h2_finite_bar(permgrp::metacyclic(4, 2, 3, 2)).is_trivial());
  CHECK(h2_finite_bar(permgrp::dihedral(4)).torsion == std::vector<Integer>{2});
  CHECK(h2_finite_bar(permgrp::symmetric(4)).torsion == std::vector<Integer>{2});
  CHECK(h2_finite_bar(permgrp::direct_product(permgrp::cyclic(3), permgrp::cyclic(6))).torsion ==
        std::vector<Integer>{3});
}

TEST_CASE("cocycle enumeration oracle") {
  struct Case {
    PermGroup g;
    std::uint64_t m;
  };
  for (const auto &c : {Case{permgrp::cyclic(2), 2}, Case{permgrp::cyclic(3), 3}, Case{permgrp::cyclic(3), 2},
                        Case{permgrp::cyclic(4), 2}, Case{klein(), 2}}) {
    BarComplexSlice bar(c.g, true);
    auto h1 = h1_perm(c.g), h2 = h2_finite_bar(c.g);
    // |H^2(G; Z/m)| = |Hom(H_2, Z/m)| * |Ext(H_1, Z/m)|.
    std::uint64_t expected = 1;
    for (const auto &t : h2.torsion)
      expected *= std::gcd(t.get_ui(), c.m);
    for (const auto &t : h1.torsion)
      expected *= std::gcd(t.get_ui(), c.m);
    CHECK(h2_cohomology_order(bar, c.m) == expected);
  }
}

TEST_CASE("bar complex slices") {
  for (const auto &g : groups_up_to_12()) {
    for (bool normalized : {true, false}) {
      BarComplexSlice bar(g, normalized);
      CHECK((bar.d3().to_dense() * bar.d2().to_dense()).is_zero());
      CHECK(bar.elements()[0].is_identity());
    }
    CHECK(h2_finite_bar(g, {60, true}) == h2_finite_bar(g, {60, false}));
  }
}

TEST_CASE("h2 order bound") {
  CHECK_THROWS_AS(h2_finite_bar(permgrp::symmetric(5), {60, true}), OrderBoundExceeded);
}

TEST_CASE("N mod [G,N]") {
  auto c4 = permgrp::cyclic(4);
  CHECK(n_mod_commutators(c4, c4).invariants.torsion == std::vector<Integer>{4});
  auto q8 = permgrp::metacyclic(4, 2, 3, 2);
  auto z = permgrp::subgroup(q8, {q8.generators()[0].pow(2)});
  CHECK(z.order() == 2);
  CHECK(n_mod_commutators(q8, z).invariants.torsion == std::vector<Integer>{2});
  auto s3 = permgrp::symmetric(3);
  CHECK(n_mod_commutators(s3, permgrp::derived_subgroup(s3)).invariants.is_trivial());
  auto t = permgrp::subgroup(s3, {permgrp::Permutation::parse("(1 2)", 3)});
  CHECK_THROWS_AS(n_mod_commutators(s3, t), NotNormal);
}

TEST_CASE("five-term examples") {
  auto q8 = permgrp::metacyclic(4, 2, 3, 2);
  auto z = permgrp::subgroup(q8, {q8.generators()[0].pow(2)});
  auto r = five_term_check(q8, z);
  CHECK(r.all_exact());
  CHECK(r.groups[0].is_trivial());
  CHECK(r.groups[1].torsion == std::vector<Integer>{2});
  CHECK(r.groups[2].torsion == std::vector<Integer>{2});
  CHECK(r.groups[3].torsion == std::vector<Integer>{2, 2});
  CHECK(r.groups[4].torsion == std::vector<Integer>{2, 2});
  // Transgression Z/2 -> Z/2 is onto.
  CHECK(exactla::cokernel_invariants(r.maps[1], 1).is_trivial());

  auto s4 = permgrp::symmetric(4);
  auto triv = five_term_check(s4, PermGroup::trivial(4));
  CHECK(triv.all_exact());
  CHECK(triv.groups[2].is_trivial());
  CHECK(triv.groups[0] == triv.groups[1]);

  auto c4 = permgrp::cyclic(4);
  auto c2 = permgrp::subgroup(c4, {c4.generators()[0].pow(2)});
  auto cc = five_term_check(c4, c2);
  CHECK(cc.all_exact());
  CHECK(cc.groups[1].is_trivial());
  CHECK(cc.groups[2].torsion == std::vector<Integer>{2});
  CHECK(cc.groups[3].torsion == std::vector<Integer>{4});
  CHECK(cc.groups[4].torsion == std::vector<Integer>{2});
}

TEST_CASE("transgression does not depend on the section") {
  std::vector<std::pair<PermGroup, PermGroup>> cases;
  auto q8 = permgrp::metacyclic(4, 2, 3, 2);
  cases.emplace_back(q8, permgrp::subgroup(q8, {q8.generators()[0].pow(2)}));
  auto d8 = permgrp::dihedral(4);
  cases.emplace_back(d8, permgrp::derived_subgroup(d8));
  auto s4 = permgrp::symmetric(4);
  cases.emplace_back(s4, permgrp::derived_subgroup(permgrp::derived_subgroup(s4)));
  auto c4c4 = permgrp::direct_product(permgrp::cyclic(4), permgrp::cyclic(4));
  cases.emplace_back(c4c4, permgrp::subgroup(c4c4, {c4c4.generators()[0].pow(2), c4c4.generators()[1].pow(2)}));
  for (const auto &[g, n] : cases) {
    auto base = five_term_check(g, n);
    CHECK(base.all_exact());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto other = five_term_check(g, n, {60, seed});
      CHECK(other.maps[1] == base.maps[1]);
      CHECK(other.all_exact());
    }
  }
}

TEST_CASE("h1 of a permutation group against a presentation round trip") {
  using namespace permgrp;
  for (const auto &g : {symmetric(3), symmetric(4), alternating(4), alternating(5), dihedral(6), cyclic(12),
                        metacyclic(4, 2, 3, 2), direct_product(cyclic(2), cyclic(6)), metacyclic(3, 4, 2, 0)}) {
    auto pres = fpgrp::presentation_of(g);
    auto table = fpgrp::todd_coxeter(pres, {}, 1000);
    REQUIRE(table.n_cosets == g.order().get_ui());
    std::vector<fpgrp::Word> gens;
    for (std::uint32_t k = 0; k < pres.n_gens; ++k)
      gens.push_back(fpgrp::Word::generator(k));
    auto index1 = fpgrp::todd_coxeter(pres, gens, 10);
    auto rs = fpgrp::reidemeister_schreier(pres, index1);
    CHECK(h1_fp(rs) == h1_perm(g));
    CHECK(h1_fp(pres) == h1_perm(g));
  }
}
