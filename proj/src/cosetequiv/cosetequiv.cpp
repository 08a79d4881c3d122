#include "nilcoset/cosetequiv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace nilcoset::cosetequiv {

std::string Obstruction::to_string() const {
  if (kind == Kind::local_at_p)
    return "local-at-p: no F_" + std::to_string(prime) + "-combination of Hecke operators is invertible";
  return "character-mismatch at " + class_representative.to_cycle_string() + ": " + std::to_string(fixed_gamma) +
         " vs " + std::to_string(fixed_lambda) + " fixed cosets";
}

std::optional<Obstruction> gassmann_obstruction(const PermGroup &omega, const PermGroup &gamma,
                                                const PermGroup &lambda) {
  if (!gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega))
    throw permgrp::GroupError("gassmann: subgroup not contained in Omega");
  if (gamma.order() != lambda.order()) {
    Obstruction o;
    o.class_representative = omega.identity();
    o.fixed_gamma = Integer(omega.order() / gamma.order()).get_ui();
    o.fixed_lambda = Integer(omega.order() / lambda.order()).get_ui();
    return o;
  }
  const auto classes = permgrp::conjugacy_classes(omega);
  const auto cg = permgrp::coset_action(omega, gamma, classes);
  const auto cl = permgrp::coset_action(omega, lambda, classes);
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (cg.character.values[k] != cl.character.values[k]) {
      Obstruction o;
      o.class_representative = classes.representatives[k];
      o.fixed_gamma = cg.character.values[k];
      o.fixed_lambda = cl.character.values[k];
      return o;
    }
  return std::nullopt;
}

bool gassmann_equivalent(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda) {
  return !gassmann_obstruction(omega, gamma, lambda).has_value();
}

IntMatrix coset_action_matrix(const permgrp::CosetSpace &space, const Permutation &g) {
  const Permutation a = space.action_of(g);
  IntMatrix m(space.index(), space.index());
  for (std::size_t i = 0; i < space.index(); ++i)
    m(i, a[static_cast<permgrp::Point>(i)]) = 1;
  return m;
}

namespace {

bool intertwines_actions(const std::vector<std::pair<Permutation, Permutation>> &actions, const IntMatrix &t) {
  for (const auto &[al, ag] : actions)
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j)
        if (t(al[static_cast<permgrp::Point>(i)], ag[static_cast<permgrp::Point>(j)]) != t(i, j))
          return false;
  return true;
}

std::vector<std::pair<Permutation, Permutation>> generator_actions(const PermGroup &omega,
                                                                   const permgrp::CosetSpace &lc,
                                                                   const permgrp::CosetSpace &gc) {
  std::vector<std::pair<Permutation, Permutation>> out;
  for (const auto &g : omega.generators())
    out.emplace_back(lc.action_of(g), gc.action_of(g));
  return out;
}

} // namespace

bool intertwines(const PermGroup &omega, const permgrp::CosetSpace &lambda_cosets,
                 const permgrp::CosetSpace &gamma_cosets, const IntMatrix &t) {
  if (t.rows() != lambda_cosets.index() || t.cols() != gamma_cosets.index())
    return false;
  return intertwines_actions(generator_actions(omega, lambda_cosets, gamma_cosets), t);
}

DoubleCosets double_cosets(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                           std::uint64_t max_index) {
  const permgrp::CosetSpace lc(omega, lambda, max_index), gc(omega, gamma, max_index);
  const std::size_t ml = lc.index(), mg = gc.index();

  // Gamma-orbits on the cosets of Lambda are the double cosets Lambda x Gamma.
  std::vector<Permutation> gamma_on_l;
  for (const auto &g : gamma.generators())
    gamma_on_l.push_back(lc.action_of(g));
  std::vector<std::int64_t> orbit(ml, -1);
  DoubleCosets out;
  const std::uint64_t lambda_order = lambda.order().get_ui();
  for (std::size_t start = 0; start < ml; ++start) {
    if (orbit[start] >= 0)
      continue;
    const auto id = static_cast<std::int64_t>(out.representatives.size());
    std::vector<std::size_t> queue{start};
    orbit[start] = id;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto &a : gamma_on_l) {
        const std::size_t y = a[static_cast<permgrp::Point>(queue[q])];
        if (orbit[y] < 0) {
          orbit[y] = id;
          queue.push_back(y);
        }
      }
    out.representatives.push_back(lc.representatives()[start]);
    out.sizes.push_back(lambda_order * queue.size());
  }

  out.hecke.assign(out.size(), IntMatrix(ml, mg));
  for (std::size_t j = 0; j < mg; ++j) {
    const Permutation back = lc.action_of(gc.representatives()[j].inverse());
    for (std::size_t a = 0; a < ml; ++a)
      out.hecke[static_cast<std::size_t>(orbit[back[static_cast<permgrp::Point>(a)]])](a, j) = 1;
  }

  const auto actions = generator_actions(omega, lc, gc);
  for (const auto &h : out.hecke)
    if (!intertwines_actions(actions, h))
      throw std::logic_error("double_cosets: Hecke operator does not intertwine");
  return out;
}

std::vector<exactla::IntVector> intertwiner_lattice(const PermGroup &omega, const PermGroup &gamma,
                                                    const PermGroup &lambda) {
  const permgrp::CosetSpace lc(omega, lambda), gc(omega, gamma);
  const std::size_t ml = lc.index(), mg = gc.index();
  if (ml * mg > 4096)
    throw permgrp::BoundExceeded("intertwiner_lattice: " + std::to_string(ml * mg) + " unknowns exceed 4096");
  // One equation T(i^g, j^g) - T(i, j) = 0 per generator and entry; repeated
  // equations are dropped.
  std::set<std::pair<std::size_t, std::size_t>> eqs;
  for (const auto &[al, ag] : generator_actions(omega, lc, gc))
    for (std::size_t i = 0; i < ml; ++i)
      for (std::size_t j = 0; j < mg; ++j) {
        const std::size_t u = i * mg + j;
        const std::size_t v = al[static_cast<permgrp::Point>(i)] * mg + ag[static_cast<permgrp::Point>(j)];
        if (u != v)
          eqs.emplace(std::min(u, v), std::max(u, v));
      }
  IntMatrix sys(eqs.size(), ml * mg);
  std::size_t r = 0;
  for (const auto &[u, v] : eqs) {
    sys(r, u) = 1;
    sys(r, v) = -1;
    ++r;
  }
  return exactla::kernel_basis(sys);
}

std::string to_string(CertifyResult::Outcome o) {
  switch (o) {
  case CertifyResult::Outcome::certified:
    return "certified";
  case CertifyResult::Outcome::obstructed:
    return "obstructed";
  default:
    return "unknown";
  }
}

std::string CertifyTranscript::to_string() const {
  std::ostringstream out;
  out << "index " << index << ", hecke rank " << hecke_rank << "\n";
  for (const auto &l : local) {
    out << "p=" << l.prime << ": ";
    switch (l.status) {
    case LocalCheck::Status::invertible_found:
      out << "invertible combination found";
      break;
    case LocalCheck::Status::obstructed:
      out << "no invertible combination";
      break;
    default:
      out << "inconclusive";
    }
    out << (l.exhaustive ? " (exhaustive, " : " (sampled, ") << l.evaluations << " determinants)\n";
  }
  out << "L1 shells swept to norm " << box_bound << " (" << box_evaluations << " evaluations), " << random_evaluations
      << " random evaluations, " << exact_determinants << " exact determinants\n";
  return out.str();
}

namespace {

constexpr std::uint64_t kFilterPrime = (std::uint64_t{1} << 61) - 1;
constexpr std::uint32_t kSmallFilters[] = {7, 11, 13};

// Hecke operators have disjoint supports, so a combination is determined by
// the double coset label of each entry.
struct HeckeLabels {
  std::size_t n = 0;
  std::vector<std::uint32_t> label;

  explicit HeckeLabels(const std::vector<IntMatrix> &ops) : n(ops[0].rows()), label(n * n, 0) {
    for (std::size_t d = 0; d < ops.size(); ++d)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (ops[d](i, j) != 0)
            label[i * n + j] = static_cast<std::uint32_t>(d);
  }
};

std::uint32_t det_mod_small(const HeckeLabels &h, const std::vector<long> &c, std::uint32_t p) {
  const std::size_t n = h.n;
  std::vector<std::uint32_t> cm(c.size());
  for (std::size_t d = 0; d < c.size(); ++d)
    cm[d] = static_cast<std::uint32_t>(((c[d] % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
  std::vector<std::uint32_t> a(n * n);
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] = cm[h.label[k]];
  std::vector<std::uint32_t> inv(p, 0);
  for (std::uint32_t x = 1; x < p; ++x)
    for (std::uint32_t y = 1; y < p; ++y)
      if (x * y % p == 1)
        inv[x] = y;
  std::uint32_t det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != col) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * n), a.begin() + static_cast<std::ptrdiff_t>(piv * n + n),
                       a.begin() + static_cast<std::ptrdiff_t>(col * n));
      det = (p - det) % p;
    }
    det = det * a[col * n + col] % p;
    const std::uint32_t iv = inv[a[col * n + col]];
    for (std::size_t i = col + 1; i < n; ++i) {
      const std::uint32_t f = a[i * n + col] * iv % p;
      if (f == 0)
        continue;
      const std::uint32_t nf = p - f;
      for (std::size_t j = col; j < n; ++j)
        a[i * n + j] = (a[i * n + j] + nf * a[col * n + j]) % p;
    }
  }
  return det;
}

std::uint64_t det_mod(const HeckeLabels &h, const std::vector<long> &c, std::uint64_t p) {
  if (p < 65536)
    return det_mod_small(h, c, static_cast<std::uint32_t>(p));
  std::vector<std::uint64_t> e(h.n * h.n);
  const auto sp = static_cast<long>(p);
  for (std::size_t k = 0; k < e.size(); ++k)
    e[k] = static_cast<std::uint64_t>(((c[h.label[k]] % sp) + sp) % sp);
  return exactla::determinant_mod(std::move(e), h.n, p);
}

IntMatrix combine(const HeckeLabels &h, const std::vector<long> &c) {
  IntMatrix t(h.n, h.n);
  for (std::size_t i = 0; i < h.n; ++i)
    for (std::size_t j = 0; j < h.n; ++j)
      t(i, j) = c[h.label[i * h.n + j]];
  return t;
}

// Number of integer vectors of length r with L1 norm exactly s.
double shell_size(std::size_t r, long s) {
  if (s == 0)
    return 1;
  double total = 0, binom_r = 1, binom_s = 1;
  for (long k = 1; k <= s && k <= static_cast<long>(r); ++k) {
    binom_r = binom_r * static_cast<double>(static_cast<long>(r) - k + 1) / static_cast<double>(k);
    binom_s = k == 1 ? 1 : binom_s * static_cast<double>(s - k + 1) / static_cast<double>(k - 1);
    total += binom_r * binom_s * std::pow(2.0, static_cast<double>(k));
  }
  return total;
}

// Visits the vectors of L1 norm s in lexicographic order until f returns true.
template <class F> bool for_each_in_shell(std::vector<long> &c, std::size_t pos, long rest, F &f) {
  if (pos + 1 == c.size()) {
    for (long v : {-rest, rest}) {
      c[pos] = v;
      if (f(c))
        return true;
      if (rest == 0)
        break;
    }
    return false;
  }
  for (long v = -rest; v <= rest; ++v) {
    c[pos] = v;
    if (for_each_in_shell(c, pos + 1, rest - (v < 0 ? -v : v), f))
      return true;
  }
  return false;
}

LocalCheck local_check(const HeckeLabels &h, std::size_t r, std::uint64_t p, const CertifyOptions &options) {
  LocalCheck out;
  out.prime = p;
  std::uint64_t space = 1;
  for (std::size_t k = 0; k < r && space <= options.local_exhaustive_limit; ++k)
    space *= p;
  if (space <= options.local_exhaustive_limit) {
    out.exhaustive = true;
    std::vector<long> c(r, 0);
    while (true) {
      std::size_t k = r;
      while (k > 0 && c[k - 1] == static_cast<long>(p) - 1)
        c[--k] = 0;
      if (k == 0)
        break;
      ++c[k - 1];
      ++out.evaluations;
      if (det_mod(h, c, p) != 0) {
        out.status = LocalCheck::Status::invertible_found;
        out.witness = c;
        return out;
      }
    }
    out.status = LocalCheck::Status::obstructed;
    return out;
  }
  std::mt19937_64 rng(options.seed * 1000003 + p);
  std::vector<long> c(r);
  for (std::uint64_t s = 0; s < options.local_samples; ++s) {
    for (auto &x : c)
      x = static_cast<long>(rng() % p);
    ++out.evaluations;
    if (det_mod(h, c, p) != 0) {
      out.status = LocalCheck::Status::invertible_found;
      out.witness = c;
      return out;
    }
  }
  return out;
}

} // namespace

CertifyResult z_coset_certify(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                              const CertifyOptions &options) {
  CertifyResult res;
  if (auto ob = gassmann_obstruction(omega, gamma, lambda)) {
    res.outcome = CertifyResult::Outcome::obstructed;
    res.obstruction = ob;
    return res;
  }
  const DoubleCosets dc = double_cosets(omega, gamma, lambda);
  const HeckeLabels labels(dc.hecke);
  const std::size_t r = dc.size();
  res.transcript.hecke_rank = r;
  res.transcript.index = labels.n;

  for (auto p : options.local_primes) {
    res.transcript.local.push_back(local_check(labels, r, p, options));
    if (res.transcript.local.back().status == LocalCheck::Status::obstructed) {
      res.outcome = CertifyResult::Outcome::obstructed;
      Obstruction o;
      o.kind = Obstruction::Kind::local_at_p;
      o.prime = p;
      res.obstruction = o;
      return res;
    }
  }

  std::uint64_t budget = options.effort;
  auto attempt = [&](const std::vector<long> &c) {
    for (auto q : kSmallFilters) {
      const std::uint64_t d = det_mod(labels, c, q);
      if (d != 1 && d != q - 1)
        return false;
    }
    const std::uint64_t d = det_mod(labels, c, kFilterPrime);
    if (d != 1 && d != kFilterPrime - 1)
      return false;
    ++res.transcript.exact_determinants;
    IntMatrix t = combine(labels, c);
    Integer det = exactla::determinant(t);
    if (abs(det) != 1)
      return false;
    res.outcome = CertifyResult::Outcome::certified;
    res.certificate = EquivCertificate{c, std::move(t), det};
    return true;
  };

  // Shells of growing L1 norm, each swept completely while it fits in half
  // of the remaining budget.
  long s = 1;
  auto visit = [&](const std::vector<long> &c) {
    --budget;
    ++res.transcript.box_evaluations;
    return attempt(c);
  };
  while (shell_size(r, s) <= static_cast<double>(budget) / 2) {
    std::vector<long> c(r, 0);
    if (for_each_in_shell(c, 0, s, visit))
      return res;
    res.transcript.box_bound = s;
    ++s;
  }
  std::mt19937_64 rng(options.seed);
  const long span = s;
  std::vector<long> c(r);
  while (budget > 0) {
    for (auto &x : c)
      x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
    --budget;
    ++res.transcript.random_evaluations;
    if (attempt(c))
      return res;
  }
  return res;
}

bool verify_certificate(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                        const EquivCertificate &cert) {
  const permgrp::CosetSpace lc(omega, lambda), gc(omega, gamma);
  if (!intertwines(omega, lc, gc, cert.matrix))
    return false;
  return abs(exactla::determinant(cert.matrix)) == 1;
}

PairSearchResult gassmann_pair_search(const std::vector<PermGroup> &catalog, std::uint64_t order_bound) {
  PairSearchResult out;
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    const PermGroup &g = catalog[k];
    if (g.order() > Integer(static_cast<unsigned long>(order_bound))) {
      out.skipped.emplace_back(k, "order " + g.order().get_str() + " exceeds bound " + std::to_string(order_bound));
      continue;
    }
    const auto subs = permgrp::subgroups_up_to_conjugacy(g);
    const auto classes = permgrp::conjugacy_classes(g);
    std::vector<permgrp::PermChar> chars;
    for (const auto &h : subs.representatives)
      chars.push_back(permgrp::coset_action(g, h, classes).character);
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = i + 1; j < chars.size(); ++j)
        if (chars[i] == chars[j])
          out.pairs.push_back({k, subs.representatives[i], subs.representatives[j]});
  }
  return out;
}

bool hall_product_surjective(const std::vector<fpgrp::PermHom> &homs) {
  if (homs.empty())
    throw HomMismatch("hall_product_surjective: no homomorphisms");
  const auto &first = homs.front();
  for (const auto &h : homs)
    if (h.source.to_string() != first.source.to_string() || !(h.target == first.target) ||
        h.target.degree() != first.target.degree())
      throw HomMismatch("hall_product_surjective: homomorphisms differ in source or target");
  const std::size_t d = first.target.degree(), s = homs.size();
  std::vector<Permutation> gens;
  for (std::size_t x = 0; x < first.source.n_gens; ++x) {
    std::vector<permgrp::Point> img(d * s);
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t p = 0; p < d; ++p)
        img[k * d + p] = static_cast<permgrp::Point>(k * d + homs[k].images[x][static_cast<permgrp::Point>(p)]);
    gens.emplace_back(std::move(img));
  }
  Integer full = 1;
  for (std::size_t k = 0; k < s; ++k)
    full *= first.target.order();
  return PermGroup(d * s, std::move(gens)).order() == full;
}

} // namespace nilcoset::cosetequiv
