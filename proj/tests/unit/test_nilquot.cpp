#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcoset/homology.hpp"
#include "nilcoset/nilquot.hpp"

#include <array>
#include <random>

using namespace nilcoset;
using namespace nilcoset::nilquot;
using fpgrp::FinitePresentation;
using fpgrp::parse_presentation;

namespace {

long mobius(long n) {
  long m = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0)
        return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

long witt(long n, long j) {
  long s = 0;
  for (long d = 1; d <= j; ++d)
    if (j % d == 0) {
      long p = 1;
      for (long k = 0; k < j / d; ++k)
        p *= n;
      s += mobius(d) * p;
    }
  return s / j;
}

std::vector<FinitePresentation> test_presentations() {
  return {FinitePresentation::free_group(2),
          parse_presentation("gens a b\n[a,b]\n"),
          parse_presentation("gens a b\na^2\nb^2\n(a*b)^4\n"),
          parse_presentation("gens a b\na^4\nb^2 = a^2\nb^-1*a*b = a^-1\n"),
          parse_presentation("gens a b\n[a,b,b]\n[a,b,a]\n"),
          parse_presentation("gens a b\na^3\nb^3\n"),
          parse_presentation("gens a b c\n[a,b]*[a,c]\nc^4\n"),
          parse_presentation("gens x y\nx^2*y^-3\n")};
}

// 3x3 upper unitriangular integer matrices.
using Mat = std::array<std::array<long, 3>, 3>;
Mat mul(const Mat &a, const Mat &b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        c[i][j] += a[i][k] * b[k][j];
  return c;
}
Mat unit() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }
Mat inv(const Mat &m) {
  Mat r = unit();
  r[0][1] = -m[0][1];
  r[1][2] = -m[1][2];
  r[0][2] = m[0][1] * m[1][2] - m[0][2];
  return r;
}
Mat power(const Mat &m, long e) {
  Mat base = e < 0 ? inv(m) : m, r = unit();
  for (long k = 0; k < std::labs(e); ++k)
    r = mul(r, base);
  return r;
}

PcSequence random_sequence(std::mt19937_64 &rng, std::size_t n, std::size_t len) {
  PcSequence w;
  for (std::size_t k = 0; k < len; ++k)
    w.emplace_back(static_cast<std::uint32_t>(rng() % n), static_cast<std::int64_t>(rng() % 7) - 3);
  return w;
}

} // namespace

TEST_CASE("free group class 2 is the Heisenberg group") {
  auto pc = nilpotent_quotient(FinitePresentation::free_group(2), 2);
  CHECK(pc.weight == std::vector<int>{1, 1, 2});
  auto layers = layer_invariants(pc);
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].free_rank == 2);
  CHECK(layers[1].free_rank == 1);
  auto info = order_or_hirsch(pc);
  CHECK_FALSE(info.finite);
  CHECK(info.hirsch == 3);
}

TEST_CASE("Witt formula for free groups") {
  for (long n : {2, 3}) {
    const std::size_t c = 6;
    auto pc = nilpotent_quotient(FinitePresentation::free_group(static_cast<std::size_t>(n)), c);
    auto layers = layer_invariants(pc, c);
    REQUIRE(layers.size() == c);
    for (std::size_t j = 1; j <= c; ++j) {
      CHECK(layers[j - 1].free_rank == static_cast<std::size_t>(witt(n, static_cast<long>(j))));
      CHECK(layers[j - 1].torsion.empty());
    }
    CHECK_FALSE(consistency_failure(pc).has_value());
  }
  auto f3 = layer_invariants(nilpotent_quotient(FinitePresentation::free_group(3), 3));
  CHECK(f3[0].free_rank == 3);
  CHECK(f3[1].free_rank == 3);
  CHECK(f3[2].free_rank == 8);
}

TEST_CASE("abelian and perfect inputs") {
  auto ab = layer_invariants(nilpotent_quotient(parse_presentation("gens a b\n[a,b]\n"), 3), 3);
  REQUIRE(ab.size() == 3);
  CHECK(ab[0].free_rank == 2);
  CHECK(ab[1].is_trivial());
  CHECK(ab[2].is_trivial());
  auto perfect = nilpotent_quotient(parse_presentation("gens a b\na^2\nb^3\n(a*b)^5\n"), 4);
  CHECK(perfect.size() == 0);
  CHECK(order_or_hirsch(perfect).finite);
  CHECK(order_or_hirsch(perfect).order == 1);
}

TEST_CASE("collect examples") {
  auto pc = nilpotent_quotient(FinitePresentation::free_group(2), 2);
  CHECK(collect(pc, {}) == ExpVec(3, 0));
  // Matrix model: a, b generic unitriangular, c from its definition.
  Mat a = unit(), b = unit();
  a[0][1] = 1;
  b[1][2] = 1;
  std::vector<Mat> gen{a, b};
  REQUIRE(pc.defs[2].kind == Definition::Kind::commutator);
  {
    const Mat &x = gen[pc.defs[2].j], &y = gen[pc.defs[2].i];
    gen.push_back(mul(mul(inv(x), inv(y)), mul(x, y)));
  }
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto w = random_sequence(rng, 3, 1 + rng() % 8);
    if (trial == 0)
      w = {{1, 1}, {0, 1}};
    Mat m = unit();
    for (auto [g, e] : w)
      m = mul(m, power(gen[g], e));
    auto v = collect(pc, w);
    Mat nf = unit();
    for (std::size_t g = 0; g < 3; ++g)
      nf = mul(nf, power(gen[g], v[g]));
    CHECK(nf == m);
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto w = random_sequence(rng, 3, 1 + rng() % 10);
    auto ww = w;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      ww.emplace_back(it->first, -it->second);
    CHECK(collect(pc, ww) == ExpVec(3, 0));
  }
}

TEST_CASE("collection strategies agree") {
  std::mt19937_64 rng(2);
  for (const auto &pres : test_presentations()) {
    auto pc = nilpotent_quotient(pres, 4);
    if (pc.size() == 0)
      continue;
    for (int trial = 0; trial < 1000; ++trial) {
      auto w = random_sequence(rng, pc.size(), 1 + rng() % 6);
      CHECK(collect(pc, w) == collect_by_rewriting(pc, w));
    }
  }
}

TEST_CASE("pc presentation invariants") {
  for (const auto &pres : test_presentations()) {
    for (std::size_t c = 1; c <= 4; ++c) {
      auto pc = nilpotent_quotient(pres, c);
      CHECK_FALSE(consistency_failure(pc).has_value());
      CHECK(pc.max_weight() <= c);
      for (std::size_t j = 0; j < pc.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
          for (auto [g, e] : pc.comm[j][i])
            CHECK(pc.weight[g] >= pc.weight[i] + pc.weight[j]);
    }
  }
}

TEST_CASE("idempotence, truncation and round trip") {
  for (const auto &pres : test_presentations()) {
    const std::size_t c = 4;
    auto pc = nilpotent_quotient(pres, c);
    auto again = nilpotent_quotient(to_finite_presentation(pc), c);
    CHECK(layer_invariants(again, c) == layer_invariants(pc, c));
    for (std::size_t j = 1; j <= c; ++j) {
      auto direct = nilpotent_quotient(pres, j);
      auto cut = truncate(pc, j);
      CHECK(layer_invariants(cut, j) == layer_invariants(direct, j));
      CHECK(order_or_hirsch(cut) == order_or_hirsch(direct));
      CHECK(isomorphic_nilpotent(cut, direct).verdict != IsoResult::Verdict::no);
    }
    // N_{c} -> N_{c-1} has kernel the weight-c layer.
    auto top = layer_invariants(pc, c)[c - 1];
    auto big = order_or_hirsch(pc), small = order_or_hirsch(truncate(pc, c - 1));
    CHECK(big.hirsch - small.hirsch == top.free_rank);
    CHECK(big.finite_relative_orders / small.finite_relative_orders == top.torsion_order());
  }
}

TEST_CASE("round trip of small pc groups") {
  CHECK(to_finite_presentation(PcPresentation::trivial(0)).n_gens == 0);
  CHECK(order_or_hirsch(PcPresentation::trivial(2)).order == 1);
  auto heis = nilpotent_quotient(FinitePresentation::free_group(2), 2);
  CHECK(layer_invariants(nilpotent_quotient(to_finite_presentation(heis), 2)) == layer_invariants(heis));
  auto z2 = nilpotent_quotient(parse_presentation("gens a b\n[a,b]\n"), 1);
  CHECK(homology::h1_fp(to_finite_presentation(z2)) == homology::h1_fp(parse_presentation("gens a b\n[a,b]\n")));
}

TEST_CASE("finite quotients agree with the permutation-group lower central series") {
  using namespace permgrp;
  std::vector<PermGroup> groups{dihedral(4), dihedral(8), metacyclic(4, 2, 3, 2), symmetric(3), symmetric(4),
                                alternating(4), direct_product(dihedral(4), cyclic(3)), metacyclic(8, 2, 3, 0),
                                dihedral(6), psl2(7)};
  for (const auto &g : groups) {
    auto lcs = lower_central_series(g);
    auto pc = nilpotent_quotient(fpgrp::presentation_of(g), 4);
    for (std::size_t j = 1; j <= 4; ++j) {
      auto info = order_or_hirsch(truncate(pc, j));
      REQUIRE(info.finite);
      CHECK(info.order == g.order() / lcs[std::min(j, lcs.size() - 1)].order());
    }
  }
  auto d4 = order_or_hirsch(nilpotent_quotient(parse_presentation("gens a b\na^2\nb^2\n(a*b)^4\n"), 2));
  CHECK(d4.finite);
  CHECK(d4.order == 8);
}

TEST_CASE("isomorphism testing") {
  auto heis = nilpotent_quotient(FinitePresentation::free_group(2), 2);
  auto same = isomorphic_nilpotent(heis, heis);
  CHECK(same.verdict == IsoResult::Verdict::yes);
  auto z4 = nilpotent_quotient(parse_presentation("gens a\na^4\n"), 1);
  auto v4 = nilpotent_quotient(parse_presentation("gens a b\na^2\nb^2\n[a,b]\n"), 1);
  CHECK(isomorphic_nilpotent(z4, v4).verdict == IsoResult::Verdict::no);
  auto d4 = nilpotent_quotient(parse_presentation("gens a b\na^2\nb^2\n(a*b)^4\n"), 2);
  auto q8 = nilpotent_quotient(parse_presentation("gens a b\na^4\nb^2 = a^2\nb^-1*a*b = a^-1\n"), 2);
  auto r = isomorphic_nilpotent(d4, q8);
  CHECK(r.verdict == IsoResult::Verdict::no);
  CHECK(r.reason.find("order") != std::string::npos);
  // Same group from different presentations.
  auto d4b = nilpotent_quotient(parse_presentation("gens r s\nr^4\ns^2\ns*r*s^-1 = r^-1\n"), 2);
  auto yes = isomorphic_nilpotent(d4, d4b);
  CHECK(yes.verdict == IsoResult::Verdict::yes);
  auto rep = layer_maps(d4, d4b, extend_by_definitions(d4, Collector(d4b), yes.witness), 2);
  CHECK(rep.isomorphism());
}
