#include "nilcoset/nilquot.hpp"

#include <algorithm>
#include <deque>

namespace nilcoset::nilquot {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw ResourceLimit("exponent overflow during collection");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ResourceLimit("exponent overflow during collection");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t m) {
  std::int64_t q = a / m;
  if ((a % m) < 0)
    --q;
  return q;
}

} // namespace

PcWord to_word(const ExpVec &v) {
  PcWord w;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i])
      w.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return w;
}

ExpVec to_expvec(const PcWord &w, std::size_t n) {
  ExpVec v(n, 0);
  for (const auto &[g, e] : w)
    v[g] = add_checked(v[g], e);
  return v;
}

PcPresentation PcPresentation::trivial(std::size_t n_orig) {
  PcPresentation pc;
  pc.n_orig = n_orig;
  pc.images.assign(n_orig, {});
  return pc;
}

std::size_t PcPresentation::max_weight() const {
  return weight.empty() ? 0 : static_cast<std::size_t>(*std::max_element(weight.begin(), weight.end()));
}

void PcPresentation::add_generator(int w, std::int64_t order, Definition def) {
  weight.push_back(w);
  rel_order.push_back(order);
  power.emplace_back();
  comm.emplace_back(comm.size());
  defs.push_back(def);
}

Collector::Collector(PcPresentation pc) : pc_(std::move(pc)) {
  const std::size_t n = pc_.size();
  conj_neg_.assign(n, std::vector<PcWord>(n));
  // a_g a_k a_g^-1 = a_k y with y = a_g t^-1 a_g^-1, t = [a_k, a_g]; needs the
  // entries for later generators first.
  for (std::size_t g = n; g-- > 0;) {
    if (pc_.rel_order[g] != 0)
      continue;
    for (std::size_t k = n; k-- > g + 1;) {
      const PcWord &t = pc_.comm[k][g];
      PcWord w{{static_cast<std::uint32_t>(k), 1}};
      if (!t.empty()) {
        ExpVec e = identity();
        multiply(e, static_cast<std::uint32_t>(g), 1);
        multiply(e, t, -1);
        multiply(e, static_cast<std::uint32_t>(g), -1);
        for (auto &s : to_word(e))
          w.push_back(s);
      }
      conj_neg_[k][g] = std::move(w);
    }
  }
}

void Collector::add_at_end(ExpVec &e, std::uint32_t g, std::int64_t s) const {
  e[g] = add_checked(e[g], s);
  const std::int64_t m = pc_.rel_order[g];
  if (m > 0) {
    const std::int64_t q = floor_div(e[g], m);
    if (q != 0) {
      e[g] -= mul_checked(q, m);
      multiply(e, pc_.power[g], q);
    }
  }
}

void Collector::unit_step(ExpVec &e, std::uint32_t g, int sigma) const {
  PcWord suffix;
  for (std::size_t k = g + 1; k < e.size(); ++k)
    if (e[k]) {
      suffix.emplace_back(static_cast<std::uint32_t>(k), e[k]);
      e[k] = 0;
    }
  add_at_end(e, g, sigma);
  for (const auto &[k, ek] : suffix) {
    if (sigma > 0) {
      const PcWord &t = pc_.comm[k][g];
      if (t.empty()) {
        multiply(e, k, ek);
      } else {
        PcWord w{{k, 1}};
        w.insert(w.end(), t.begin(), t.end());
        multiply(e, w, ek);
      }
    } else {
      const PcWord &c = conj_neg_[k][g];
      if (c.size() == 1)
        multiply(e, k, ek);
      else
        multiply(e, c, ek);
    }
  }
}

void Collector::multiply(ExpVec &e, std::uint32_t g, std::int64_t s) const {
  if (s == 0)
    return;
  bool suffix_empty = true;
  for (std::size_t k = g + 1; k < e.size(); ++k)
    if (e[k]) {
      suffix_empty = false;
      break;
    }
  if (suffix_empty) {
    add_at_end(e, g, s);
    return;
  }
  const std::int64_t m = pc_.rel_order[g];
  if (m > 0) {
    // a_g^s = a_g^r (a_g^m)^q with 0 <= r < m.
    const std::int64_t q = floor_div(s, m);
    const std::int64_t r = s - q * m;
    for (std::int64_t k = 0; k < r; ++k)
      unit_step(e, g, 1);
    if (q != 0)
      multiply(e, pc_.power[g], q);
    return;
  }
  const int sigma = s > 0 ? 1 : -1;
  for (std::int64_t k = 0; k < (s > 0 ? s : -s); ++k)
    unit_step(e, g, sigma);
}

void Collector::multiply(ExpVec &e, const PcWord &w, std::int64_t times) const {
  if (times > 0) {
    for (std::int64_t t = 0; t < times; ++t)
      for (const auto &[g, s] : w)
        multiply(e, g, s);
  } else {
    for (std::int64_t t = 0; t < -times; ++t)
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        multiply(e, it->first, -it->second);
  }
}

ExpVec Collector::collect(const PcWord &w) const {
  ExpVec e = identity();
  multiply(e, w);
  return e;
}

ExpVec Collector::product(const ExpVec &a, const ExpVec &b) const {
  ExpVec e = a;
  multiply(e, to_word(b));
  return e;
}

ExpVec Collector::inverse(const ExpVec &a) const {
  ExpVec e = identity();
  multiply(e, to_word(a), -1);
  return e;
}

ExpVec Collector::power(const ExpVec &a, std::int64_t k) const {
  ExpVec base = k < 0 ? inverse(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  ExpVec r = identity();
  while (n) {
    if (n & 1)
      r = product(r, base);
    n >>= 1;
    if (n)
      base = product(base, base);
  }
  return r;
}

ExpVec Collector::commutator(const ExpVec &a, const ExpVec &b) const {
  return product(product(inverse(a), inverse(b)), product(a, b));
}

ExpVec collect(const PcPresentation &pc, const PcSequence &word) {
  Collector c(pc);
  ExpVec e = c.identity();
  for (const auto &[g, s] : word)
    c.multiply(e, g, s);
  return e;
}

ExpVec collect_by_rewriting(const PcPresentation &pc, const PcSequence &word) {
  const std::size_t n = pc.size();
  // Letters (g, +-1); finite generators only ever appear with +1.
  using Letter = std::pair<std::uint32_t, int>;
  std::deque<Letter> w;
  auto expand = [&](const PcWord &x, std::int64_t times, std::vector<Letter> &out) {
    for (std::int64_t t = 0; t < (times < 0 ? -times : times); ++t) {
      if (times > 0) {
        for (const auto &[g, s] : x)
          for (std::int64_t k = 0; k < (s < 0 ? -s : s); ++k)
            out.emplace_back(g, s < 0 ? -1 : 1);
      } else {
        for (auto it = x.rbegin(); it != x.rend(); ++it)
          for (std::int64_t k = 0; k < (it->second < 0 ? -it->second : it->second); ++k)
            out.emplace_back(it->first, it->second < 0 ? 1 : -1);
      }
    }
  };
  for (const auto &[g, s] : word)
    for (std::int64_t k = 0; k < (s < 0 ? -s : s); ++k)
      w.emplace_back(g, s < 0 ? -1 : 1);

  // Conjugates by a_i come straight from the relations; conjugates by a_i^-1
  // are taken from the collector.
  Collector col(pc);
  auto conj = [&](std::uint32_t j, std::uint32_t i, int sigma) {
    if (sigma > 0) {
      PcWord w{{j, 1}};
      w.insert(w.end(), pc.comm[j][i].begin(), pc.comm[j][i].end());
      return w;
    }
    ExpVec e = col.identity();
    col.multiply(e, i, -sigma);
    col.multiply(e, j, 1);
    col.multiply(e, i, sigma);
    return to_word(e);
  };

  std::size_t steps = 0;
  while (true) {
    if (++steps > 50'000'000)
      throw ResourceLimit("rewriting collection did not finish");
    bool changed = false;
    for (std::size_t p = 0; p < w.size(); ++p) {
      const auto [g, s] = w[p];
      std::vector<Letter> repl;
      std::size_t span = 0;
      if (s < 0 && pc.rel_order[g] > 0) {
        // a^-1 = a^(m-1) (a^m)^-1
        for (std::int64_t k = 0; k + 1 < pc.rel_order[g]; ++k)
          repl.emplace_back(g, 1);
        expand(pc.power[g], -1, repl);
        span = 1;
      } else if (p + 1 < w.size()) {
        const auto [h, t] = w[p + 1];
        if (h == g && t == -s) {
          span = 2;
        } else if (h < g) {
          // a_g^s a_h^t = a_h^t (a_g^(a_h^t))^s
          if (t < 0 && pc.rel_order[h] > 0)
            continue;
          repl.emplace_back(h, t);
          expand(conj(g, h, t), s, repl);
          span = 2;
        }
      }
      if (span == 0 && pc.rel_order[g] > 0 && s > 0) {
        std::size_t run = 0;
        while (p + run < w.size() && w[p + run] == Letter{g, 1})
          ++run;
        if (static_cast<std::int64_t>(run) >= pc.rel_order[g]) {
          expand(pc.power[g], 1, repl);
          span = static_cast<std::size_t>(pc.rel_order[g]);
        }
      }
      if (span == 0)
        continue;
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(p), w.begin() + static_cast<std::ptrdiff_t>(p + span));
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(p), repl.begin(), repl.end());
      changed = true;
      break;
    }
    if (!changed)
      break;
  }
  ExpVec e(n, 0);
  for (const auto &[g, s] : w)
    e[g] += s;
  return e;
}

} // namespace nilcoset::nilquot
