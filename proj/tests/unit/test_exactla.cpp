#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcoset/exactla.hpp"

#include <random>

using namespace nilcoset::exactla;

namespace {

IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = d(rng);
  return m;
}

IntMatrix padded_diagonal(const std::vector<Integer> &d, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < d.size(); ++i)
    m(i, i) = d[i];
  return m;
}

bool divides(const Integer &a, const Integer &b) {
  if (a == 0)
    return b == 0;
  return b % a == 0;
}

bool is_row_hermite(const IntMatrix &h) {
  std::size_t last = 0;
  bool seen_zero_row = false, any = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t p = 0;
    while (p < h.cols() && h(r, p) == 0)
      ++p;
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row || (any && p <= last))
      return false;
    if (h(r, p) <= 0)
      return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, p) < 0 || h(above, p) >= h(r, p))
        return false;
    last = p;
    any = true;
  }
  return true;
}

} // namespace

TEST_CASE("hnf of identity and zero") {
  auto f = hnf(IntMatrix::identity(3));
  CHECK(f.h == IntMatrix::identity(3));
  CHECK(f.u == IntMatrix::identity(3));
  auto z = hnf(IntMatrix::zero(2, 3));
  CHECK(z.h == IntMatrix::zero(2, 3));
  CHECK(z.u == IntMatrix::identity(2));
  CHECK(z.rank == 0);
}

TEST_CASE("hnf of 2x2 agrees with brute force over unimodular row operations") {
  const IntMatrix m{{2, 4}, {1, 1}};
  // Every unimodular U with small entries; exactly one U*M is in Hermite shape.
  std::vector<IntMatrix> shapes;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c)
        for (long d = -4; d <= 4; ++d) {
          if (a * d - b * c != 1 && a * d - b * c != -1)
            continue;
          IntMatrix u{{a, b}, {c, d}};
          IntMatrix h = u * m;
          if (is_row_hermite(h) && std::find(shapes.begin(), shapes.end(), h) == shapes.end())
            shapes.push_back(h);
        }
  REQUIRE(shapes.size() == 1);
  auto f = hnf(m);
  CHECK(f.h == shapes[0]);
  CHECK(f.u * m == f.h);
  CHECK(is_unimodular(f.u));
}

TEST_CASE("snf examples") {
  CHECK(snf(IntMatrix::identity(4)).divisors == std::vector<Integer>(4, 1));
  CHECK(snf(IntMatrix{{2, 0}, {0, 6}}).divisors == std::vector<Integer>{2, 6});
  CHECK(snf(IntMatrix{{2, 4}, {4, 8}}).divisors == std::vector<Integer>{2, 0});
}

TEST_CASE("snf on random matrices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = rng() % 8 + 1, c = rng() % 8 + 1;
    auto m = random_matrix(rng, r, c);
    auto s = snf(m);
    REQUIRE(s.divisors.size() == std::min(r, c));
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
      CHECK(divides(s.divisors[i], s.divisors[i + 1]));
    for (const auto &d : s.divisors)
      CHECK(d >= 0);
    CHECK(s.u * m * s.v == padded_diagonal(s.divisors, r, c));
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
  }
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(IntMatrix::identity(3)).empty());
  auto k = kernel_basis(IntMatrix{{1, 1}});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == IntVector{1, -1});
  const IntMatrix m{{2, 4, 4}, {1, 2, 2}};
  auto k2 = kernel_basis(m);
  CHECK(k2.size() == 2);
  for (const auto &v : k2)
    CHECK(multiply(m, v) == IntVector{0, 0});
}

TEST_CASE("kernel basis on random matrices") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = rng() % 6 + 1, c = rng() % 8 + 1;
    auto m = random_matrix(rng, r, c, -3, 3);
    if (trial % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j)
        m(r - 1, j) = m(0, j) * 2;
    auto k = kernel_basis(m);
    CHECK(k.size() == c - rank(m));
    for (const auto &v : k) {
      CHECK(multiply(m, v) == IntVector(r, 0));
      auto nz = std::find_if(v.begin(), v.end(), [](const Integer &x) { return x != 0; });
      REQUIRE(nz != v.end());
      CHECK(*nz > 0);
    }
  }
}

TEST_CASE("cokernel examples") {
  auto a = cokernel_invariants(IntMatrix::zero(0, 3), 3);
  CHECK(a.free_rank == 3);
  CHECK(a.torsion.empty());
  auto b = cokernel_invariants(IntMatrix{{2, 0}, {0, 3}}, 2);
  CHECK(b.free_rank == 0);
  CHECK(b.torsion == std::vector<Integer>{6});
  auto c = cokernel_invariants(IntMatrix{{2, 4}, {4, 8}}, 2);
  CHECK(c.free_rank == 1);
  CHECK(c.torsion == std::vector<Integer>{2});
}

TEST_CASE("cokernel invariant under unimodular operations") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = rng() % 6 + 1, c = rng() % 6 + 1;
    auto m = random_matrix(rng, r, c);
    auto before = cokernel_invariants(m, c);
    for (int op = 0; op < 12; ++op) {
      Integer f = static_cast<long>(rng() % 7) - 3;
      if (op % 2 == 0 && r > 1) {
        std::size_t a = rng() % r, b = (a + 1 + rng() % (r - 1)) % r;
        m.add_row_multiple(a, b, f);
      } else if (c > 1) {
        std::size_t a = rng() % c, b = (a + 1 + rng() % (c - 1)) % c;
        m.add_col_multiple(a, b, f);
      }
      if (op == 5)
        m.negate_row(rng() % r);
      if (op == 7 && c > 1)
        m.swap_cols(0, c - 1);
    }
    CHECK(cokernel_invariants(m, c) == before);
  }
}

TEST_CASE("solve_integer") {
  IntVector b{4, -7, 2};
  CHECK(solve_integer(IntMatrix::identity(3), b) == b);
  CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{3}).has_value());
  const IntMatrix m{{2, 3}};
  auto x = solve_integer(m, IntVector{1});
  REQUIRE(x.has_value());
  CHECK(multiply(m, *x) == IntVector{1});
}

TEST_CASE("sparse and dense divisors agree") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = rng() % 30 + 1, c = rng() % 30 + 1;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 5 == 0)
          m(i, j) = static_cast<long>(rng() % 9) - 4;
    auto dense = smith_divisors(m);
    auto sparse = smith_divisors(SparseIntMatrix::from_dense(m));
    CHECK(dense == sparse);
    CHECK(cokernel_invariants(m, c) == cokernel_invariants(SparseIntMatrix::from_dense(m), c));
  }
}

TEST_CASE("unit pivot reducer matches smith divisors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = rng() % 20 + 1, c = rng() % 20 + 1;
    IntMatrix m(r, c);
    UnitPivotReducer red(c);
    for (std::size_t i = 0; i < r; ++i) {
      UnitPivotReducer::Row row;
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 4 == 0) {
          long v = static_cast<long>(rng() % 7) - 3;
          if (v == 0)
            continue;
          m(i, j) = v;
          row.emplace_back(j, v);
        }
      red.add_row(row);
    }
    CHECK(red.divisors(r) == smith_divisors(m));
  }
}

TEST_CASE("sparse matrix validation") {
  CHECK_THROWS_AS(SparseIntMatrix(2, 2, {{2, 0, 1}}), DimensionError);
  CHECK_THROWS_AS(SparseIntMatrix(2, 2, {{0, 0, 1}, {0, 0, 2}}), DimensionError);
}

TEST_CASE("abelian invariants canonical form") {
  auto a = AbelianInvariants::from_cyclic_orders(1, {2, 3, 1});
  auto b = AbelianInvariants::from_cyclic_orders(1, {6});
  CHECK(a == b);
  CHECK(AbelianInvariants::from_cyclic_orders(0, {2, 2}) != AbelianInvariants::from_cyclic_orders(0, {4}));
  CHECK(AbelianInvariants::from_cyclic_orders(0, {4, 6}).torsion == std::vector<Integer>{2, 12});
}
