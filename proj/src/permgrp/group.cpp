#include "nilcoset/permgrp.hpp"

#include <algorithm>
#include <limits>

namespace nilcoset::permgrp {

namespace {

void compute_orbit(ChainLevel &level, std::size_t degree) {
  level.orbit.assign(1, level.base);
  level.orbit_pos.assign(degree, -1);
  level.orbit_pos[level.base] = 0;
  level.transversal.assign(1, Permutation(degree));
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    const Point q = level.orbit[i];
    for (const auto &s : level.generators) {
      const Point r = s[q];
      if (level.orbit_pos[r] >= 0)
        continue;
      level.orbit_pos[r] = static_cast<int>(level.orbit.size());
      level.orbit.push_back(r);
      level.transversal.push_back(level.transversal[i] * s);
    }
  }
}

// Sifts g through levels [from, end). Returns the residue and the level at
// which sifting stopped (levels.size() when it passed every level).
std::pair<Permutation, std::size_t> strip(const std::vector<ChainLevel> &levels, Permutation g, std::size_t from) {
  for (std::size_t l = from; l < levels.size(); ++l) {
    const Point p = g[levels[l].base];
    const int pos = levels[l].orbit_pos[p];
    if (pos < 0)
      return {std::move(g), l};
    g = g * levels[l].transversal[static_cast<std::size_t>(pos)].inverse();
  }
  return {std::move(g), levels.size()};
}

// Deterministic Schreier-Sims. Base points are the smallest point moved by
// the generator that forces a new level.
StabChain schreier_sims(std::size_t degree, const std::vector<Permutation> &gens) {
  StabChain chain;
  auto &levels = chain.levels;
  std::vector<Permutation> nontrivial;
  for (const auto &g : gens)
    if (!g.is_identity())
      nontrivial.push_back(g);
  if (nontrivial.empty())
    return chain;

  Point b = static_cast<Point>(degree);
  for (const auto &g : nontrivial)
    b = std::min(b, g.first_moved());
  levels.push_back(ChainLevel{b, nontrivial, {}, {}, {}});
  compute_orbit(levels[0], degree);

  std::size_t i = 0;
  while (true) {
    bool restarted = false;
    ChainLevel &lvl = levels[i];
    for (std::size_t oi = 0; !restarted && oi < lvl.orbit.size(); ++oi) {
      for (std::size_t si = 0; si < lvl.generators.size(); ++si) {
        const Permutation &s = lvl.generators[si];
        const Point img = s[lvl.orbit[oi]];
        Permutation h = lvl.transversal[oi] * s *
                        levels[i].transversal[static_cast<std::size_t>(lvl.orbit_pos[img])].inverse();
        if (h.is_identity())
          continue;
        auto [y, j] = strip(levels, std::move(h), i + 1);
        if (j == levels.size() && y.is_identity())
          continue;
        if (j == levels.size())
          levels.push_back(ChainLevel{y.first_moved(), {}, {}, {}, {}});
        for (std::size_t l = i + 1; l <= j; ++l) {
          levels[l].generators.push_back(y);
          compute_orbit(levels[l], degree);
        }
        i = j;
        restarted = true;
        break;
      }
    }
    if (restarted)
      continue;
    if (i == 0)
      break;
    --i;
  }
  return chain;
}

std::uint64_t splitmix(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  for (const auto &l : levels)
    b.push_back(l.base);
  return b;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)), cache_(std::make_shared<ChainCache>()) {
  for (const auto &g : generators_)
    if (g.degree() != degree_)
      throw GroupError("generator degree " + std::to_string(g.degree()) + " != group degree " +
                       std::to_string(degree_));
}

const StabChain &PermGroup::chain() const {
  std::call_once(cache_->once, [this] { cache_->chain = schreier_sims(degree_, generators_); });
  return cache_->chain;
}

Integer PermGroup::order() const {
  Integer o = 1;
  for (const auto &l : chain().levels)
    o *= static_cast<unsigned long>(l.orbit.size());
  return o;
}

std::uint64_t PermGroup::order_u64() const {
  Integer o = order();
  if (o > Integer(std::numeric_limits<std::int64_t>::max()))
    throw BoundExceeded("group order exceeds 2^63");
  return static_cast<std::uint64_t>(o.get_ui());
}

bool PermGroup::contains(const Permutation &g) const {
  if (g.degree() != degree_)
    return false;
  auto [y, j] = strip(chain().levels, g, 0);
  return j == chain().levels.size() && y.is_identity();
}

bool PermGroup::is_subgroup_of(const PermGroup &g) const {
  if (g.degree() != degree_)
    return false;
  return std::all_of(generators_.begin(), generators_.end(), [&](const Permutation &x) { return g.contains(x); });
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i])
        return false;
  return true;
}

std::vector<Permutation> PermGroup::elements(std::uint64_t bound) const {
  const Integer o = order();
  if (o > Integer(static_cast<unsigned long>(bound)))
    throw BoundExceeded("group of order " + o.get_str() + " exceeds enumeration bound " + std::to_string(bound));
  const auto &levels = chain().levels;
  // Every element is uniquely u_k * ... * u_1 with u_l from level l's transversal.
  std::vector<Permutation> out{Permutation(degree_)};
  for (std::size_t l = levels.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * levels[l].transversal.size());
    for (const auto &t : levels[l].transversal)
      for (const auto &e : out)
        next.push_back(e * t);
    out = std::move(next);
  }
  return out;
}

Permutation PermGroup::random_element(std::uint64_t &state) const {
  Permutation g(degree_);
  const auto &levels = chain().levels;
  for (std::size_t l = levels.size(); l-- > 0;) {
    const auto &t = levels[l].transversal;
    g = g * t[splitmix(state) % t.size()];
  }
  return g;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<int> which(degree_, -1);
  std::vector<std::vector<Point>> out;
  for (Point p = 0; p < degree_; ++p) {
    if (which[p] >= 0)
      continue;
    std::vector<Point> orb{p};
    which[p] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto &g : generators_) {
        const Point q = g[orb[i]];
        if (which[q] < 0) {
          which[q] = static_cast<int>(out.size());
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool operator==(const PermGroup &a, const PermGroup &b) {
  return a.degree() == b.degree() && a.order() == b.order() && a.is_subgroup_of(b);
}

PermGroup subgroup(const PermGroup &g, std::vector<Permutation> gens) {
  for (const auto &x : gens)
    if (!g.contains(x))
      throw GroupError("subgroup generator " + x.to_cycle_string() + " is not in the ambient group");
  return PermGroup(g.degree(), std::move(gens));
}

} // namespace nilcoset::permgrp
