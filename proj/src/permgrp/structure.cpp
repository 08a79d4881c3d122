#include "nilcoset/permgrp.hpp"

#include <algorithm>
#include <map>

namespace nilcoset::permgrp {

PermGroup normal_closure(const PermGroup &g, const std::vector<Permutation> &gens) {
  std::vector<Permutation> ngens;
  for (const auto &x : gens)
    if (!x.is_identity())
      ngens.push_back(x);
  PermGroup n(g.degree(), ngens);
  // Add conjugates of generators until closed under conjugation.
  for (std::size_t i = 0; i < ngens.size(); ++i) {
    for (const auto &s : g.generators()) {
      Permutation c = ngens[i].conjugate_by(s);
      if (!n.contains(c)) {
        ngens.push_back(c);
        n = PermGroup(g.degree(), ngens);
      }
    }
  }
  return n;
}

bool is_normal(const PermGroup &g, const PermGroup &n) {
  if (!n.is_subgroup_of(g))
    return false;
  for (const auto &x : n.generators())
    for (const auto &s : g.generators())
      if (!n.contains(x.conjugate_by(s)))
        return false;
  return true;
}

PermGroup commutator_subgroup(const PermGroup &g, const PermGroup &a, const PermGroup &b) {
  std::vector<Permutation> comms;
  for (const auto &x : a.generators())
    for (const auto &y : b.generators())
      comms.push_back(commutator(x, y));
  return normal_closure(g, comms);
}

PermGroup derived_subgroup(const PermGroup &g) { return commutator_subgroup(g, g, g); }

std::vector<PermGroup> lower_central_series(const PermGroup &g, std::size_t max_terms) {
  std::vector<PermGroup> series{g};
  while (series.size() < max_terms) {
    PermGroup next = commutator_subgroup(g, series.back(), g);
    if (next.order() == series.back().order())
      break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_nilpotent(const PermGroup &g) { return lower_central_series(g).back().is_trivial(); }

bool is_solvable(const PermGroup &g) {
  PermGroup cur = g;
  while (!cur.is_trivial()) {
    PermGroup d = derived_subgroup(cur);
    if (d.order() == cur.order())
      return false;
    cur = std::move(d);
  }
  return true;
}

bool is_perfect(const PermGroup &g) { return derived_subgroup(g).order() == g.order(); }

AbelianInvariants abelian_group_invariants(const PermGroup &a) {
  if (!a.is_abelian())
    throw GroupError("abelian_group_invariants: group is not abelian");
  // |A[p^k]| = prod p^min(k, e_i) determines the p-primary cyclic factors.
  const auto elems = a.elements();
  std::map<std::uint64_t, std::uint64_t> order_count;
  for (const auto &x : elems)
    ++order_count[x.order()];
  std::uint64_t n = elems.size();
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2, m = n; m > 1; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0)
        m /= p;
    }
  std::vector<Integer> cyclic_orders;
  for (std::uint64_t p : primes) {
    // log_p of the number of elements killed by p^k, for k = 0, 1, ...
    std::vector<std::uint64_t> logs{0};
    std::uint64_t pk = 1;
    while (true) {
      pk *= p;
      std::uint64_t killed = 0;
      for (const auto &[o, c] : order_count)
        if (pk % o == 0)
          killed += c;
      std::uint64_t l = 0;
      for (std::uint64_t t = killed; t > 1; t /= p)
        ++l;
      if (l == logs.back())
        break;
      logs.push_back(l);
    }
    // Number of cyclic factors of order >= p^k is logs[k] - logs[k-1].
    for (std::size_t k = 1; k < logs.size(); ++k) {
      std::uint64_t at_least_k = logs[k] - logs[k - 1];
      std::uint64_t at_least_k1 = k + 1 < logs.size() ? logs[k + 1] - logs[k] : 0;
      Integer q = 1;
      for (std::size_t e = 0; e < k; ++e)
        q *= static_cast<unsigned long>(p);
      for (std::uint64_t c = 0; c < at_least_k - at_least_k1; ++c)
        cyclic_orders.push_back(q);
    }
  }
  return AbelianInvariants::from_cyclic_orders(0, cyclic_orders);
}

AbelianInvariants abelianization_finite(const PermGroup &g) {
  PermGroup d = derived_subgroup(g);
  if (d.order() == g.order())
    return {};
  CosetSpace space(g, d);
  std::vector<Permutation> gens;
  for (const auto &x : g.generators())
    gens.push_back(space.action_of(x));
  return abelian_group_invariants(PermGroup(space.index(), gens));
}

} // namespace nilcoset::permgrp
