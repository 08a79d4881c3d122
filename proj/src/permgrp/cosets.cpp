#include "nilcoset/permgrp.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace nilcoset::permgrp {

ConjClasses conjugacy_classes(const PermGroup &g, std::uint64_t order_bound) {
  if (g.order() > Integer(static_cast<unsigned long>(order_bound)))
    throw BoundExceeded("conjugacy_classes: |G| = " + g.order().get_str() + " exceeds bound " +
                        std::to_string(order_bound));
  const auto elems = g.elements(order_bound);
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  index.reserve(elems.size() * 2);
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], i);

  std::vector<int> cls(elems.size(), -1);
  struct Raw {
    std::uint64_t order;
    std::uint64_t size;
    Permutation rep;
  };
  std::vector<Raw> raw;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (cls[i] >= 0)
      continue;
    const int id = static_cast<int>(raw.size());
    std::vector<std::size_t> orbit{i};
    cls[i] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto &s : g.generators()) {
        std::size_t j = index.at(elems[orbit[k]].conjugate_by(s));
        if (cls[j] < 0) {
          cls[j] = id;
          orbit.push_back(j);
        }
      }
    Permutation rep = elems[*std::min_element(orbit.begin(), orbit.end(), [&](std::size_t a, std::size_t b) {
      return elems[a] < elems[b];
    })];
    raw.push_back({rep.order(), orbit.size(), std::move(rep)});
  }
  std::sort(raw.begin(), raw.end(), [](const Raw &a, const Raw &b) {
    return std::tie(a.order, a.size, a.rep) < std::tie(b.order, b.size, b.rep);
  });
  ConjClasses out;
  const std::uint64_t n = elems.size();
  for (auto &r : raw) {
    out.representatives.push_back(std::move(r.rep));
    out.class_sizes.push_back(r.size);
    out.centralizer_orders.push_back(n / r.size);
  }
  return out;
}

CosetSpace::CosetSpace(const PermGroup &g, const PermGroup &h, std::uint64_t max_index) : g_(g), h_(h) {
  if (!h.is_subgroup_of(g))
    throw GroupError("coset space: H is not a subgroup of G");
  const Integer idx = g.order() / h.order();
  if (idx > Integer(static_cast<unsigned long>(max_index)))
    throw BoundExceeded("coset space: index " + idx.get_str() + " exceeds bound " + std::to_string(max_index));
  h_elements_ = h.elements(1'000'000);
  reps_.push_back(g.identity());
  lookup_.emplace(key_of(reps_[0]), 0);
  for (std::size_t i = 0; i < reps_.size(); ++i)
    for (const auto &s : g.generators()) {
      Permutation y = reps_[i] * s;
      auto key = key_of(y);
      if (lookup_.find(key) == lookup_.end()) {
        lookup_.emplace(std::move(key), reps_.size());
        reps_.push_back(std::move(y));
      }
    }
}

std::vector<Point> CosetSpace::key_of(const Permutation &x) const {
  // Lexicographically least element of Hx.
  const auto &xi = x.images();
  std::vector<Point> best;
  std::vector<Point> cur(xi.size());
  for (const auto &h : h_elements_) {
    const auto &hi = h.images();
    for (std::size_t p = 0; p < cur.size(); ++p)
      cur[p] = xi[hi[p]];
    if (best.empty() || cur < best)
      best = cur;
  }
  return best;
}

std::size_t CosetSpace::coset_of(const Permutation &x) const {
  auto it = lookup_.find(key_of(x));
  if (it == lookup_.end())
    throw GroupError("coset_of: element is not in the ambient group");
  return it->second;
}

Permutation CosetSpace::action_of(const Permutation &g) const {
  std::vector<Point> img(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i)
    img[i] = static_cast<Point>(coset_of(reps_[i] * g));
  return Permutation(std::move(img));
}

CosetAction coset_action(const PermGroup &g, const PermGroup &h, const ConjClasses &classes,
                         std::uint64_t max_index) {
  CosetSpace space(g, h, max_index);
  std::vector<Permutation> gens;
  for (const auto &x : g.generators())
    gens.push_back(space.action_of(x));
  CosetAction out{PermGroup(space.index(), gens), {}};
  for (const auto &rep : classes.representatives) {
    const Permutation a = space.action_of(rep);
    std::uint64_t fixed = 0;
    for (Point p = 0; p < a.degree(); ++p)
      fixed += a[p] == p;
    out.character.values.push_back(fixed);
  }
  return out;
}

CosetAction coset_action(const PermGroup &g, const PermGroup &h, std::uint64_t max_index) {
  return coset_action(g, h, conjugacy_classes(g), max_index);
}

namespace {

std::vector<std::uint64_t> element_order_profile(const PermGroup &h) {
  std::vector<std::uint64_t> orders;
  for (const auto &x : h.elements())
    orders.push_back(x.order());
  std::sort(orders.begin(), orders.end());
  return orders;
}

std::vector<std::size_t> orbit_profile(const PermGroup &h) {
  std::vector<std::size_t> lens;
  for (const auto &o : h.orbits())
    lens.push_back(o.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

} // namespace

ConjugacyResult is_conjugate_subgroups(const PermGroup &g, const PermGroup &h1, const PermGroup &h2,
                                       std::uint64_t order_bound) {
  if (!h1.is_subgroup_of(g) || !h2.is_subgroup_of(g))
    throw GroupError("is_conjugate_subgroups: arguments are not subgroups of G");
  if (g.order() > Integer(static_cast<unsigned long>(order_bound)))
    throw BoundExceeded("is_conjugate_subgroups: |G| exceeds bound");
  ConjugacyResult res;
  if (h1.order() != h2.order()) {
    res.reason = "orders differ";
    return res;
  }
  if (h1 == h2) {
    res.conjugate = true;
    res.witness = g.identity();
    return res;
  }
  if (orbit_profile(h1) != orbit_profile(h2)) {
    res.reason = "orbit-length multisets differ";
    return res;
  }
  if (element_order_profile(h1) != element_order_profile(h2)) {
    res.reason = "element-order multisets differ";
    return res;
  }
  // Exhaustive over G: x must carry every generator of h1 into h2.
  for (const auto &x : g.elements(order_bound)) {
    bool ok = true;
    for (const auto &s : h1.generators())
      if (!h2.contains(s.conjugate_by(x))) {
        ok = false;
        break;
      }
    if (ok) {
      res.conjugate = true;
      res.witness = x;
      return res;
    }
  }
  res.reason = "exhaustive search over G found no conjugating element";
  return res;
}

} // namespace nilcoset::permgrp
