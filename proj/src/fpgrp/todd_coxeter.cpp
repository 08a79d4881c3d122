#include "nilcoset/fpgrp.hpp"

#include <algorithm>
#include <deque>

namespace nilcoset::fpgrp {

namespace {

constexpr std::int64_t kUndef = -1;

std::vector<std::uint32_t> to_columns(const Word &w) {
  std::vector<std::uint32_t> out;
  for (auto l : w.letters())
    out.push_back(l > 0 ? 2 * static_cast<std::uint32_t>(l - 1) : 2 * static_cast<std::uint32_t>(-l - 1) + 1);
  return out;
}

// Coset table under construction with union-find coincidence handling.
class Enumerator {
public:
  Enumerator(const FinitePresentation &pres, const std::vector<Word> &subgroup_gens, std::size_t max_cosets)
      : ncols_(2 * pres.n_gens), max_live_(max_cosets), max_total_(16 * max_cosets + 1024) {
    for (const auto &r : pres.relators) {
      auto c = to_columns(r);
      if (!c.empty())
        relators_.push_back(std::move(c));
    }
    for (const auto &h : subgroup_gens) {
      auto c = to_columns(h);
      if (!c.empty())
        subgens_.push_back(std::move(c));
    }
    // Cyclic rotations of relators and their inverses, indexed by first column.
    rotations_.resize(ncols_);
    for (const auto &r : relators_) {
      std::vector<std::uint32_t> inv(r.rbegin(), r.rend());
      for (auto &x : inv)
        x ^= 1;
      for (const std::vector<std::uint32_t> *w : {&r, static_cast<const std::vector<std::uint32_t> *>(&inv)})
        for (std::size_t k = 0; k < w->size(); ++k) {
          std::vector<std::uint32_t> rot(w->begin() + static_cast<std::ptrdiff_t>(k), w->end());
          rot.insert(rot.end(), w->begin(), w->begin() + static_cast<std::ptrdiff_t>(k));
          rotations_[rot[0]].push_back(std::move(rot));
        }
    }
    for (auto &list : rotations_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    new_coset();
  }

  CosetTable run(Strategy strategy) {
    for (const auto &h : subgens_)
      scan_and_fill(0, h);
    if (strategy == Strategy::hlt)
      run_hlt();
    else
      run_felsch();
    // A full HLT pass that changes nothing proves every relator holds everywhere.
    while (true) {
      const std::size_t before = parent_.size();
      had_coincidence_ = false;
      for (const auto &h : subgens_)
        scan_and_fill(rep(0), h);
      run_hlt();
      if (!had_coincidence_ && parent_.size() == before)
        break;
    }
    return canonical();
  }

private:
  bool live(std::size_t c) const { return parent_[c] == static_cast<std::int64_t>(c); }
  std::int64_t &entry(std::size_t c, std::size_t x) { return table_[c * ncols_ + x]; }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != static_cast<std::int64_t>(r))
      r = static_cast<std::size_t>(parent_[r]);
    while (parent_[c] != static_cast<std::int64_t>(c)) {
      std::size_t next = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int64_t>(r);
      c = next;
    }
    return r;
  }

  std::size_t new_coset() {
    if (live_ >= max_live_ || parent_.size() >= max_total_)
      throw EnumerationLimit("coset enumeration exceeded " + std::to_string(max_live_) +
                             " cosets (index unknown or larger than the bound)");
    const std::size_t c = parent_.size();
    parent_.push_back(static_cast<std::int64_t>(c));
    table_.resize(table_.size() + ncols_, kUndef);
    ++live_;
    return c;
  }

  std::size_t define(std::size_t c, std::uint32_t x) {
    if (live_ >= max_live_) {
      lookahead();
      // A lookahead that frees almost nothing would only thrash.
      if (live_ + max_live_ / 100 >= max_live_)
        throw EnumerationLimit("coset enumeration exceeded " + std::to_string(max_live_) +
                               " cosets (index unknown or larger than the bound)");
      if (!live(c))
        return rep(c);
    }
    const std::size_t d = new_coset();
    entry(c, x) = static_cast<std::int64_t>(d);
    entry(d, x ^ 1) = static_cast<std::int64_t>(c);
    deductions_.emplace_back(c, x);
    return d;
  }

  void merge(std::size_t a, std::size_t b, std::vector<std::size_t> &queue) {
    a = rep(a);
    b = rep(b);
    if (a == b)
      return;
    if (a > b)
      std::swap(a, b);
    parent_[b] = static_cast<std::int64_t>(a);
    --live_;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::size_t e = queue[i];
      for (std::uint32_t x = 0; x < ncols_; ++x) {
        const std::int64_t f = entry(e, x);
        if (f == kUndef)
          continue;
        if (entry(static_cast<std::size_t>(f), x ^ 1) == static_cast<std::int64_t>(e))
          entry(static_cast<std::size_t>(f), x ^ 1) = kUndef;
        const std::size_t e1 = rep(e);
        const std::size_t f1 = rep(static_cast<std::size_t>(f));
        if (entry(e1, x) != kUndef) {
          merge(f1, static_cast<std::size_t>(entry(e1, x)), queue);
        } else if (entry(f1, x ^ 1) != kUndef) {
          merge(e1, static_cast<std::size_t>(entry(f1, x ^ 1)), queue);
        } else {
          entry(e1, x) = static_cast<std::int64_t>(f1);
          entry(f1, x ^ 1) = static_cast<std::int64_t>(e1);
          deductions_.emplace_back(e1, x);
        }
      }
    }
    had_coincidence_ = true;
  }

  // Returns false when the scan stopped at a gap of length > 1 (fill = false).
  bool scan(std::size_t c, const std::vector<std::uint32_t> &w, bool fill) {
    std::size_t f = c, b = c;
    std::size_t i = 0, j = w.size();
    while (true) {
      while (i < j && entry(f, w[i]) != kUndef)
        f = static_cast<std::size_t>(entry(f, w[i++]));
      if (i == j) {
        if (f != c)
          coincidence(f, c);
        return true;
      }
      while (j > i && entry(b, w[j - 1] ^ 1) != kUndef)
        b = static_cast<std::size_t>(entry(b, w[--j] ^ 1));
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        entry(f, w[i]) = static_cast<std::int64_t>(b);
        entry(b, w[i] ^ 1) = static_cast<std::int64_t>(f);
        deductions_.emplace_back(f, w[i]);
        return true;
      }
      if (!fill)
        return false;
      define(f, w[i]);
      if (!live(c))
        return true;
      f = rep(f);
      b = rep(b);
    }
  }

  void scan_and_fill(std::size_t c, const std::vector<std::uint32_t> &w) { scan(c, w, true); }

  void lookahead() {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (const auto &r : relators_) {
        if (!live(c))
          break;
        scan(c, r, false);
      }
    }
    for (const auto &h : subgens_)
      scan(rep(0), h, false);
  }

  void run_hlt() {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (const auto &r : relators_) {
        if (!live(c))
          break;
        scan_and_fill(c, r);
      }
      for (std::uint32_t x = 0; live(c) && x < ncols_; ++x)
        if (entry(c, x) == kUndef)
          define(c, x);
      deductions_.clear();
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.front();
      deductions_.pop_front();
      if (!live(c) || entry(c, x) == kUndef)
        continue;
      for (const auto &rot : rotations_[x]) {
        if (!live(c))
          break;
        scan(c, rot, false);
      }
      if (!live(c) || entry(c, x) == kUndef)
        continue;
      const std::size_t d = rep(static_cast<std::size_t>(entry(c, x)));
      for (const auto &rot : rotations_[x ^ 1]) {
        if (!live(d))
          break;
        scan(d, rot, false);
      }
      for (const auto &h : subgens_)
        scan(rep(0), h, false);
    }
  }

  void run_felsch() {
    std::size_t c = 0;
    std::uint32_t x = 0;
    process_deductions();
    while (true) {
      while (c < parent_.size() && (!live(c) || entry(c, x) != kUndef)) {
        if (!live(c) || ++x == ncols_) {
          ++c;
          x = 0;
        }
      }
      if (c >= parent_.size())
        return;
      define(c, x);
      process_deductions();
    }
  }

  CosetTable canonical() {
    // Breadth-first renumbering from the subgroup coset.
    const std::size_t root = rep(0);
    std::vector<std::int64_t> number(parent_.size(), -1);
    std::vector<std::size_t> order{root};
    number[root] = 0;
    CosetTable t;
    t.n_gens = ncols_ / 2;
    t.parent.push_back(-1);
    t.parent_col.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::uint32_t x = 0; x < ncols_; ++x) {
        const std::int64_t e = entry(order[i], x);
        if (e == kUndef)
          throw EnumerationLimit("coset enumeration ended with an incomplete table");
        const std::size_t d = rep(static_cast<std::size_t>(e));
        if (number[d] < 0) {
          number[d] = static_cast<std::int64_t>(order.size());
          order.push_back(d);
          t.parent.push_back(static_cast<std::int64_t>(i));
          t.parent_col.push_back(x);
        }
      }
    t.n_cosets = order.size();
    t.table.resize(t.n_cosets * ncols_);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::uint32_t x = 0; x < ncols_; ++x)
        t.table[i * ncols_ + x] =
            static_cast<std::uint32_t>(number[rep(static_cast<std::size_t>(entry(order[i], x)))]);
    return t;
  }

  std::size_t ncols_;
  std::size_t max_live_;
  std::size_t max_total_;
  std::size_t live_ = 0;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::vector<std::uint32_t>> subgens_;
  std::vector<std::vector<std::vector<std::uint32_t>>> rotations_;
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> table_;
  std::deque<std::pair<std::size_t, std::uint32_t>> deductions_;
  bool had_coincidence_ = false;
};

} // namespace

CosetTable todd_coxeter(const FinitePresentation &pres, const std::vector<Word> &subgroup_gens,
                        std::size_t max_cosets, Strategy strategy) {
  if (max_cosets < 1)
    throw EnumerationLimit("max_cosets must be at least 1");
  pres.validate();
  for (const auto &h : subgroup_gens)
    if (!h.empty() && h.max_generator() >= pres.n_gens)
      throw PresentationError("subgroup generator uses an undeclared generator");
  if (pres.n_gens == 0) {
    CosetTable t;
    t.n_cosets = 1;
    t.parent = {-1};
    t.parent_col = {0};
    return t;
  }
  Enumerator e(pres, subgroup_gens, max_cosets);
  return e.run(strategy);
}

std::uint32_t CosetTable::act(std::uint32_t coset, const Word &w) const {
  for (const auto &s : w.syllables()) {
    const std::size_t col = 2 * s.gen + (s.exp < 0 ? 1 : 0);
    for (std::int64_t k = 0; k < (s.exp < 0 ? -s.exp : s.exp); ++k)
      coset = at(coset, col);
  }
  return coset;
}

Permutation CosetTable::generator_action(std::uint32_t g) const {
  std::vector<permgrp::Point> img(n_cosets);
  for (std::size_t c = 0; c < n_cosets; ++c)
    img[c] = at(c, 2 * g);
  return Permutation(std::move(img));
}

bool CosetTable::verify(const FinitePresentation &pres, const std::vector<Word> &subgroup_gens) const {
  if (pres.n_gens != n_gens || table.size() != n_cosets * 2 * n_gens)
    return false;
  for (std::size_t c = 0; c < n_cosets; ++c)
    for (std::size_t x = 0; x < 2 * n_gens; ++x) {
      const auto d = at(c, x);
      if (d >= n_cosets || at(d, x ^ 1) != c)
        return false;
    }
  // Transitivity from coset 0.
  std::vector<bool> seen(n_cosets, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t x = 0; x < 2 * n_gens; ++x) {
      const auto d = at(queue[i], x);
      if (!seen[d]) {
        seen[d] = true;
        queue.push_back(d);
      }
    }
  if (queue.size() != n_cosets)
    return false;
  for (const auto &r : pres.relators)
    for (std::uint32_t c = 0; c < n_cosets; ++c)
      if (act(c, r) != c)
        return false;
  for (const auto &h : subgroup_gens)
    if (act(0, h) != 0)
      return false;
  return true;
}

} // namespace nilcoset::fpgrp
