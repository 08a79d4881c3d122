#include "nilcoset/permgrp.hpp"

#include <numeric>

namespace nilcoset::permgrp {

namespace {

bool is_prime(std::uint32_t q) {
  if (q < 2)
    return false;
  for (std::uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0)
      return false;
  return true;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1)
      r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

} // namespace

PermGroup symmetric(std::size_t n) {
  if (n < 2)
    return PermGroup::trivial(n);
  std::vector<Point> cyc(n);
  std::iota(cyc.begin(), cyc.end(), Point{1});
  std::vector<Permutation> gens{Permutation::from_cycles(n, {{1, 2}})};
  if (n > 2)
    gens.push_back(Permutation::from_cycles(n, {cyc}));
  return {n, gens};
}

PermGroup alternating(std::size_t n) {
  if (n < 3)
    return PermGroup::trivial(n);
  std::vector<Permutation> gens;
  // 3-cycles (1 2 k) generate Alt(n).
  for (Point k = 3; k <= n; ++k)
    gens.push_back(Permutation::from_cycles(n, {{1, 2, k}}));
  return {n, gens};
}

PermGroup cyclic(std::size_t n) {
  if (n < 2)
    return PermGroup::trivial(n == 0 ? 1 : n);
  std::vector<Point> cyc(n);
  std::iota(cyc.begin(), cyc.end(), Point{1});
  return {n, {Permutation::from_cycles(n, {cyc})}};
}

PermGroup dihedral(std::size_t n) {
  if (n == 2)
    return {4, {Permutation::from_cycles(4, {{1, 2}, {3, 4}}), Permutation::from_cycles(4, {{1, 3}, {2, 4}})}};
  if (n < 3)
    throw GroupError("dihedral(n) needs n >= 2");
  std::vector<Point> rot(n);
  std::iota(rot.begin(), rot.end(), Point{1});
  std::vector<std::vector<Point>> refl;
  for (Point i = 2, j = static_cast<Point>(n); i < j; ++i, --j)
    refl.push_back({i, j});
  return {n, {Permutation::from_cycles(n, {rot}), Permutation::from_cycles(n, refl)}};
}

PermGroup psl2(std::uint32_t q) {
  if (!is_prime(q) || q == 2)
    throw GroupError("psl2(q) needs an odd prime q, got " + std::to_string(q));
  const std::size_t deg = q + 1;
  const Point inf = q;
  std::vector<Point> t(deg), w(deg);
  for (Point z = 0; z < q; ++z) {
    t[z] = (z + 1) % q;
    // z -> -1/z
    w[z] = z == 0 ? inf : static_cast<Point>((q - pow_mod(z, q - 2, q)) % q);
  }
  t[inf] = inf;
  w[inf] = 0;
  return {deg, {Permutation(t), Permutation(w)}};
}

PermGroup direct_product(const PermGroup &g, const PermGroup &h) {
  const std::size_t deg = g.degree() + h.degree();
  std::vector<Permutation> gens;
  for (const auto &x : g.generators())
    gens.push_back(x.embedded(deg, 0));
  for (const auto &y : h.generators())
    gens.push_back(y.embedded(deg, g.degree()));
  return {deg, gens};
}

PermGroup metacyclic(std::uint32_t m, std::uint32_t n, std::uint32_t t, std::uint32_t s) {
  if (m == 0 || n == 0)
    throw GroupError("metacyclic: m and n must be positive");
  t %= m;
  s %= m;
  if (pow_mod(t, n, m) != 1 % m || (static_cast<std::uint64_t>(s) * ((t + m - 1) % m)) % m != 0)
    throw GroupError("metacyclic: parameters do not define a group");
  const std::size_t order = static_cast<std::size_t>(m) * n;
  auto idx = [m](std::uint64_t i, std::uint64_t j) { return static_cast<Point>(j * m + i); };
  // (a^i b^j)(a^k b^l) = a^(i + k t^j) b^(j+l), folding b^n = a^s.
  auto mult = [&](std::uint64_t i, std::uint64_t j, std::uint64_t k, std::uint64_t l) {
    std::uint64_t e = (i + k * pow_mod(t, j, m)) % m;
    std::uint64_t f = j + l;
    if (f >= n) {
      f -= n;
      e = (e + s) % m;
    }
    return idx(e, f);
  };
  std::vector<Point> ra(order), rb(order);
  for (std::uint64_t j = 0; j < n; ++j)
    for (std::uint64_t i = 0; i < m; ++i) {
      ra[idx(i, j)] = mult(i, j, 1 % m, 0);
      rb[idx(i, j)] = mult(i, j, 0, 1 % n);
    }
  std::vector<Permutation> gens;
  if (m > 1)
    gens.emplace_back(ra);
  if (n > 1)
    gens.emplace_back(rb);
  return {order, gens};
}

PermGroup regular_representation(const PermGroup &g) {
  const auto elems = g.elements();
  std::unordered_map<Permutation, Point, PermutationHash> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], static_cast<Point>(i));
  std::vector<Permutation> gens;
  for (const auto &x : g.generators()) {
    std::vector<Point> img(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      img[i] = index.at(elems[i] * x);
    gens.emplace_back(img);
  }
  return {elems.size(), gens};
}

} // namespace nilcoset::permgrp
