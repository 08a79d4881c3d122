#include "nilcoset/permgrp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace nilcoset::permgrp {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits &b) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (auto w : b) {
      h ^= w;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// A finite group as a multiplication table on element indices (0 = identity).
class TableGroup {
public:
  explicit TableGroup(const PermGroup &g) : elems_(g.elements(2000)), n_(elems_.size()) {
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    for (std::size_t i = 0; i < n_; ++i)
      index.emplace(elems_[i], static_cast<std::uint32_t>(i));
    mult_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        mult_[i * n_ + j] = index.at(elems_[i] * elems_[j]);
    inv_.resize(n_);
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      inv_[i] = index.at(elems_[i].inverse());
      order_[i] = elems_[i].order();
    }
    for (const auto &s : g.generators())
      gens_.push_back(index.at(s));
  }

  std::size_t size() const { return n_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mult_[a * n_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t conj(std::uint32_t a, std::uint32_t g) const { return mul(mul(inv(g), a), g); }
  std::uint64_t order(std::uint32_t a) const { return order_[a]; }
  std::uint32_t power(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 0;
    for (std::uint64_t i = 0; i < e; ++i)
      r = mul(r, a);
    return r;
  }
  const std::vector<std::uint32_t> &generators() const { return gens_; }
  const Permutation &element(std::uint32_t i) const { return elems_[i]; }

  Bits empty_bits() const { return Bits((n_ + 63) / 64, 0); }
  static bool test(const Bits &b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
  static void set(Bits &b, std::uint32_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

  Bits closure(const std::vector<std::uint32_t> &gens) const {
    Bits b = empty_bits();
    std::vector<std::uint32_t> list{0};
    set(b, 0);
    for (std::size_t k = 0; k < list.size(); ++k)
      for (auto s : gens) {
        auto x = mul(list[k], s);
        if (!test(b, x)) {
          set(b, x);
          list.push_back(x);
        }
      }
    return b;
  }

  std::vector<std::uint32_t> members(const Bits &b) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < n_; ++i)
      if (test(b, i))
        out.push_back(i);
    return out;
  }

  Bits conjugate(const Bits &b, std::uint32_t g) const {
    Bits c = empty_bits();
    for (std::uint32_t i = 0; i < n_; ++i)
      if (test(b, i))
        set(c, conj(i, g));
    return c;
  }

  bool is_perfect(const std::vector<std::uint32_t> &gens) const {
    Bits whole = closure(gens);
    std::vector<std::uint32_t> ngens;
    for (auto a : gens)
      for (auto b : gens)
        ngens.push_back(mul(mul(inv(a), inv(b)), mul(a, b)));
    Bits n = closure(ngens);
    for (std::size_t k = 0; k < ngens.size(); ++k)
      for (auto g : gens) {
        auto c = conj(ngens[k], g);
        if (!test(n, c)) {
          ngens.push_back(c);
          n = closure(ngens);
        }
      }
    return n == whole;
  }

private:
  std::vector<Permutation> elems_;
  std::size_t n_;
  std::vector<std::uint32_t> mult_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint64_t> order_;
  std::vector<std::uint32_t> gens_;
};

struct ClassEntry {
  Bits key; // least conjugate
  std::vector<std::uint32_t> gens;
  std::size_t order;
  std::size_t length;
};

class ClassStore {
public:
  explicit ClassStore(const TableGroup &t) : t_(t) {}

  // Returns true when the class of `b` is new.
  bool add(const Bits &b, std::vector<std::uint32_t> gens) {
    if (seen_.count(b))
      return false;
    std::vector<Bits> orbit{b};
    std::set<Bits> members{b};
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (auto g : t_.generators()) {
        Bits c = t_.conjugate(orbit[k], g);
        if (members.insert(c).second)
          orbit.push_back(c);
      }
    for (const auto &c : orbit)
      seen_.insert(c);
    const Bits &key = *members.begin();
    // Carry the generators over to the canonical conjugate.
    std::vector<std::uint32_t> kgens = gens;
    if (key != b) {
      // Find a conjugating element by search over G (small groups only).
      for (std::uint32_t g = 0; g < t_.size(); ++g)
        if (t_.conjugate(b, g) == key) {
          for (auto &x : kgens)
            x = t_.conj(x, g);
          break;
        }
    }
    std::size_t order = 0;
    for (auto w : key)
      order += static_cast<std::size_t>(__builtin_popcountll(w));
    entries_.push_back({key, std::move(kgens), order, orbit.size()});
    return true;
  }

  std::vector<ClassEntry> &entries() { return entries_; }

private:
  const TableGroup &t_;
  std::unordered_set<Bits, BitsHash> seen_;
  std::vector<ClassEntry> entries_;
};

std::uint64_t splitmix(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0)
      return p;
  return n;
}

bool is_prime_power(std::uint64_t n) {
  if (n < 2)
    return false;
  std::uint64_t p = smallest_prime_factor(n);
  while (n % p == 0)
    n /= p;
  return n == 1;
}

// Every subgroup reachable from the trivial group by adjoining one element at a
// time; the brute-force oracle for small groups.
std::size_t brute_force_class_count(const TableGroup &t) {
  std::unordered_set<Bits, BitsHash> all;
  std::vector<Bits> queue{t.closure({})};
  all.insert(queue[0]);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto mem = t.members(queue[k]);
    for (std::uint32_t g = 0; g < t.size(); ++g) {
      if (TableGroup::test(queue[k], g))
        continue;
      auto gens = mem;
      gens.push_back(g);
      Bits v = t.closure(gens);
      if (all.insert(v).second)
        queue.push_back(std::move(v));
    }
  }
  ClassStore store(t);
  for (const auto &b : queue)
    store.add(b, {});
  return store.entries().size();
}

} // namespace

SubgroupClasses subgroups_up_to_conjugacy(const PermGroup &g, std::uint64_t seed) {
  if (g.order() > 2000)
    throw BoundExceeded("subgroups_up_to_conjugacy: |G| = " + g.order().get_str() + " exceeds 2000");
  const TableGroup t(g);
  ClassStore store(t);
  store.add(t.closure({}), {});

  const bool solvable = is_solvable(g);
  if (!solvable) {
    // Perfect seeds: 2-generated perfect subgroups, one generator a class representative.
    const auto classes = conjugacy_classes(g);
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    for (std::uint32_t i = 0; i < t.size(); ++i)
      index.emplace(t.element(i), i);
    std::unordered_set<Bits, BitsHash> tried;
    auto try_pair = [&](std::uint32_t a, std::uint32_t b) {
      Bits p = t.closure({a, b});
      if (!tried.insert(p).second)
        return;
      if (p == t.closure({}) || !t.is_perfect({a, b}))
        return;
      store.add(p, {a, b});
    };
    const std::uint64_t pair_budget = 2'000'000;
    if (classes.size() * t.size() <= pair_budget) {
      for (const auto &rep : classes.representatives)
        for (std::uint32_t b = 0; b < t.size(); ++b)
          try_pair(index.at(rep), b);
    } else {
      std::uint64_t state = seed;
      for (std::uint64_t k = 0; k < pair_budget / 4; ++k)
        try_pair(static_cast<std::uint32_t>(splitmix(state) % t.size()),
                 static_cast<std::uint32_t>(splitmix(state) % t.size()));
    }
  }

  // Cyclic extension: R -> R<z> for z of prime-power order normalising R with z^p in R.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> pp; // element, prime
  for (std::uint32_t i = 1; i < t.size(); ++i)
    if (is_prime_power(t.order(i)))
      pp.emplace_back(i, smallest_prime_factor(t.order(i)));
  for (std::size_t k = 0; k < store.entries().size(); ++k) {
    const Bits key = store.entries()[k].key;
    const std::vector<std::uint32_t> gens = store.entries()[k].gens;
    const auto mem = t.members(key);
    for (const auto &[z, p] : pp) {
      if (TableGroup::test(key, z))
        continue;
      if (!TableGroup::test(key, t.power(z, p)))
        continue;
      bool normalises = true;
      for (auto u : gens)
        if (!TableGroup::test(key, t.conj(u, z))) {
          normalises = false;
          break;
        }
      if (!normalises)
        continue;
      Bits v = t.empty_bits();
      std::uint32_t zi = 0;
      for (std::uint64_t i = 0; i < p; ++i) {
        for (auto r : mem)
          TableGroup::set(v, t.mul(r, zi));
        zi = t.mul(zi, z);
      }
      auto vgens = gens;
      vgens.push_back(z);
      store.add(v, std::move(vgens));
    }
  }

  auto entries = store.entries();
  std::sort(entries.begin(), entries.end(), [](const ClassEntry &a, const ClassEntry &b) {
    if (a.order != b.order)
      return a.order < b.order;
    return a.key < b.key;
  });
  SubgroupClasses out;
  for (const auto &e : entries) {
    std::vector<Permutation> gens;
    for (auto x : e.gens)
      gens.push_back(t.element(x));
    out.representatives.emplace_back(g.degree(), std::move(gens));
    out.class_lengths.push_back(e.length);
  }
  if (solvable)
    out.completeness_verified = true;
  else if (t.size() <= 360)
    out.completeness_verified = brute_force_class_count(t) == entries.size();
  return out;
}

} // namespace nilcoset::permgrp
