#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcoset/fpgrp.hpp"
#include "nilcoset/homology.hpp"

#include <map>
#include <random>

using namespace nilcoset;
using namespace nilcoset::fpgrp;
using permgrp::Permutation;
using permgrp::PermGroup;

namespace {

const FinitePresentation &a5_pres() {
  static const FinitePresentation p = parse_presentation("gens a b\na^2\nb^3\n(a*b)^5\n");
  return p;
}

Word random_word(std::mt19937_64 &rng, std::size_t n_gens, std::size_t len) {
  std::vector<Syllable> s;
  for (std::size_t k = 0; k < len; ++k)
    s.push_back({static_cast<std::uint32_t>(rng() % n_gens), rng() % 2 ? 1 : -1});
  return Word(s);
}

// Bijection between two transitive actions given by generator permutations,
// matching base points 0; nullopt when they are not isomorphic G-sets.
bool isomorphic_actions(const std::vector<Permutation> &x, const std::vector<Permutation> &y) {
  if (x.empty())
    return true;
  const std::size_t n = x[0].degree();
  if (y[0].degree() != n)
    return false;
  std::vector<long> map(n, -1);
  map[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto i = queue[q];
    for (std::size_t g = 0; g < x.size(); ++g) {
      auto xi = x[g][static_cast<permgrp::Point>(i)];
      auto yi = y[g][static_cast<permgrp::Point>(map[i])];
      if (map[xi] == -1) {
        map[xi] = yi;
        queue.push_back(xi);
      } else if (map[xi] != static_cast<long>(yi)) {
        return false;
      }
    }
  }
  return queue.size() == n;
}

std::vector<PermGroup> test_groups() {
  using namespace permgrp;
  return {symmetric(3), symmetric(4), alternating(4), alternating(5), dihedral(5), cyclic(6),
          metacyclic(4, 2, 3, 2), direct_product(cyclic(2), cyclic(4)), psl2(7), alternating(6)};
}

} // namespace

TEST_CASE("word parsing") {
  auto names = default_names(2);
  CHECK(parse_word("[a,b]", {"a", "b"}) == commutator(Word::generator(0), Word::generator(1)));
  CHECK(parse_word("a^2*b^-1", {"a", "b"}).length() == 3);
  CHECK(parse_word("a*a^-1", {"a", "b"}).empty());
  CHECK(parse_word("(a b)^2", {"a", "b"}) == parse_word("a*b*a*b", {"a", "b"}));
  CHECK(parse_word("a = b", {"a", "b"}) == parse_word("a*b^-1", {"a", "b"}));
  CHECK_THROWS_AS(parse_word("c", {"a", "b"}), PresentationError);
  CHECK(names.size() == 2);
}

TEST_CASE("todd coxeter examples") {
  CHECK(todd_coxeter(a5_pres(), {}, 100000).n_cosets == 60);
  CHECK(todd_coxeter(a5_pres(), {Word::generator(0), Word::generator(1)}, 1000).n_cosets == 1);
  CHECK_THROWS_AS(todd_coxeter(FinitePresentation::free_group(2), {Word::generator(0)}, 5000), EnumerationLimit);
}

TEST_CASE("todd coxeter matches the permutation image of A5") {
  const PermGroup a5 = permgrp::alternating(5);
  const PermHom hom(a5_pres(), a5, {Permutation::parse("(1 2)(3 4)", 5), Permutation::parse("(1 3 5)", 5)});
  CHECK(perm_image(hom).order() == todd_coxeter(a5_pres(), {}, 100000).n_cosets);
}

TEST_CASE("reidemeister schreier examples") {
  auto whole = todd_coxeter(a5_pres(), {Word::generator(0), Word::generator(1)}, 100);
  CHECK(homology::h1_fp(reidemeister_schreier(a5_pres(), whole)) == homology::h1_fp(a5_pres()));

  const auto f2 = FinitePresentation::free_group(2);
  const auto a = Word::generator(0), b = Word::generator(1);
  auto t = todd_coxeter(f2, {a.pow(2), b, a * b * a.inverse()}, 100);
  CHECK(t.n_cosets == 2);
  auto sub = reidemeister_schreier(f2, t);
  auto h1 = homology::h1_fp(sub);
  CHECK(h1.free_rank == 3);
  CHECK(h1.torsion.empty());

  // Index-5 subgroup of A5 from a point stabilizer.
  const PermGroup a5 = permgrp::alternating(5);
  const std::vector<Permutation> images{Permutation::parse("(1 2)(3 4)", 5), Permutation::parse("(1 3 5)", 5)};
  std::mt19937_64 rng(3);
  std::vector<Word> gens;
  std::vector<Permutation> perms;
  while (PermGroup(5, perms).order() != 12) {
    auto w = random_word(rng, 2, 1 + rng() % 8);
    auto p = evaluate(w, images, 5);
    if (p[0] == 0) {
      gens.push_back(w);
      perms.push_back(p);
    }
  }
  auto t5 = todd_coxeter(a5_pres(), gens, 1000);
  CHECK(t5.n_cosets == 5);
  CHECK(homology::h1_fp(reidemeister_schreier(a5_pres(), t5)) ==
        permgrp::abelianization_finite(PermGroup(5, perms)));
}

TEST_CASE("abelianization matrix") {
  CHECK(abelianization_matrix(parse_presentation("gens a b\n[a,b]\n")) == exactla::IntMatrix::zero(1, 2));
  CHECK(abelianization_matrix(parse_presentation("gens a\na^5\n")) == exactla::IntMatrix{{5}});
  CHECK(abelianization_matrix(parse_presentation("gens a b c d\n[a,b]*[c,d]\n")) == exactla::IntMatrix::zero(1, 4));
}

TEST_CASE("perm image and hom validation") {
  const PermGroup a5 = permgrp::alternating(5);
  const auto f2 = FinitePresentation::free_group(2);
  PermHom h(f2, a5, {Permutation::parse("(1 2)(3 4)", 5), Permutation::parse("(1 3 5)", 5)});
  CHECK(perm_image(h).order() == 60);
  PermHom triv(f2, a5, {Permutation(5), Permutation(5)});
  CHECK(perm_image(triv).is_trivial());
  CHECK_THROWS_AS(PermHom(parse_presentation("gens a\na^2\n"), a5, {Permutation::parse("(1 2 3)", 5)}), HomError);
}

TEST_CASE("coset tables agree with permgrp coset actions") {
  std::mt19937_64 rng(5);
  for (const auto &g : test_groups()) {
    const auto pres = presentation_of(g);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Word> words;
      std::vector<Permutation> perms;
      for (std::size_t k = 0; k < 1 + trial % 2; ++k) {
        words.push_back(random_word(rng, pres.n_gens, 1 + rng() % 6));
        perms.push_back(evaluate(words.back(), g.generators(), g.degree()));
      }
      const PermGroup h(g.degree(), perms);
      auto table = todd_coxeter(pres, words, 200000);
      CHECK(table.verify(pres, words));
      permgrp::CosetSpace space(g, h);
      REQUIRE(table.n_cosets == space.index());
      std::vector<Permutation> tc, pg;
      for (std::uint32_t s = 0; s < pres.n_gens; ++s) {
        tc.push_back(table.generator_action(s));
        pg.push_back(space.action_of(g.generators()[s]));
      }
      CHECK(isomorphic_actions(tc, pg));
      // Subgroup presentation against the permutation-group abelianization.
      CHECK(homology::h1_fp(reidemeister_schreier(pres, table)) == permgrp::abelianization_finite(h));
    }
  }
}

TEST_CASE("coset enumeration strategies give identical tables") {
  std::mt19937_64 rng(8);
  for (const auto &g : test_groups()) {
    const auto pres = presentation_of(g);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Word> words{random_word(rng, pres.n_gens, 1 + rng() % 5)};
      auto hlt = todd_coxeter(pres, words, 200000, Strategy::hlt);
      auto felsch = todd_coxeter(pres, words, 200000, Strategy::felsch);
      CHECK(hlt == felsch);
    }
  }
}

TEST_CASE("presentation of a permutation group") {
  for (const auto &g : test_groups()) {
    const auto pres = presentation_of(g);
    CHECK(pres.n_gens == g.generators().size());
    CHECK(todd_coxeter(pres, {}, 400000).n_cosets == g.order().get_ui());
    PermHom check(pres, g, g.generators());
    CHECK(perm_image(check) == g);
  }
}

TEST_CASE("fp homomorphism validation") {
  const auto f2 = FinitePresentation::free_group(2);
  const auto z2 = parse_presentation("gens a b\n[a,b]\n");
  FpHom ab(f2, z2, {Word::generator(0), Word::generator(1)});
  CHECK(ab.check == FpHomCheck::freely_trivial);
  FpHom back(z2, z2, {Word::generator(1), Word::generator(0)});
  CHECK(back.check != FpHomCheck::freely_trivial);
  CHECK_THROWS(FpHom(parse_presentation("gens a\na^2\n"), parse_presentation("gens a\na^3\n"), {Word::generator(0)}));
}
