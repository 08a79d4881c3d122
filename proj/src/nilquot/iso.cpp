#include "nilcoset/nilquot.hpp"

#include <algorithm>
#include <map>

namespace nilcoset::nilquot {

namespace {

std::pair<std::size_t, std::size_t> weight_range(const PcPresentation &pc, std::size_t w) {
  std::size_t lo = 0;
  while (lo < pc.size() && pc.weight[lo] < static_cast<int>(w))
    ++lo;
  std::size_t hi = lo;
  while (hi < pc.size() && pc.weight[hi] == static_cast<int>(w))
    ++hi;
  return {lo, hi};
}

exactla::AbelianPresentation layer_presentation(const PcPresentation &pc, std::size_t w) {
  const auto [lo, hi] = weight_range(pc, w);
  exactla::AbelianPresentation p{hi - lo, exactla::IntMatrix(0, hi - lo)};
  for (std::size_t k = lo; k < hi; ++k) {
    if (pc.rel_order[k] == 0)
      continue;
    exactla::IntVector row(hi - lo);
    row[k - lo] = static_cast<long>(pc.rel_order[k]);
    for (const auto &[g, e] : pc.power[k])
      if (g >= lo && g < hi)
        row[g - lo] -= static_cast<long>(e);
    p.relations.append_row(row);
  }
  return p;
}

bool same_relations(const PcPresentation &a, const PcPresentation &b) {
  return a.weight == b.weight && a.rel_order == b.rel_order && a.power == b.power && a.comm == b.comm;
}

std::size_t weight_one_count(const PcPresentation &pc) { return weight_range(pc, 1).second; }

} // namespace

std::vector<ExpVec> extend_by_definitions(const PcPresentation &a, const Collector &b,
                                          const std::vector<ExpVec> &weight1_images) {
  std::vector<ExpVec> images(a.size());
  std::size_t next = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Definition &d = a.defs[k];
    if (a.weight[k] == 1) {
      if (next >= weight1_images.size())
        throw std::invalid_argument("extend_by_definitions: too few weight-1 images");
      images[k] = weight1_images[next++];
    } else if (d.kind == Definition::Kind::commutator) {
      images[k] = b.commutator(images[d.j], images[d.i]);
    } else {
      throw std::invalid_argument("extend_by_definitions: generator a" + std::to_string(k + 1) +
                                  " of weight > 1 has no commutator definition");
    }
  }
  return images;
}

ExpVec evaluate(const PcWord &w, const std::vector<ExpVec> &images, const Collector &b) {
  ExpVec e = b.identity();
  for (const auto &[g, s] : w)
    e = b.product(e, b.power(images[g], s));
  return e;
}

std::optional<std::string> hom_failure(const PcPresentation &a, const Collector &b,
                                       const std::vector<ExpVec> &images) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k)
    if (a.rel_order[k] > 0 && b.power(images[k], a.rel_order[k]) != evaluate(a.power[k], images, b))
      return "a" + std::to_string(k + 1) + "^" + std::to_string(a.rel_order[k]);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (b.commutator(images[j], images[i]) != evaluate(a.comm[j][i], images, b))
        return "[a" + std::to_string(j + 1) + ",a" + std::to_string(i + 1) + "]";
  return std::nullopt;
}

bool LayerMapReport::isomorphism() const {
  return respects_weights && std::all_of(layers.begin(), layers.end(), [](const auto &l) { return l.isomorphism(); });
}

LayerMapReport layer_maps(const PcPresentation &a, const PcPresentation &b, const std::vector<ExpVec> &images,
                          std::size_t class_c) {
  LayerMapReport report;
  for (std::size_t w = 1; w <= class_c; ++w) {
    const auto [alo, ahi] = weight_range(a, w);
    const auto [blo, bhi] = weight_range(b, w);
    exactla::IntMatrix map(ahi - alo, bhi - blo);
    for (std::size_t k = alo; k < ahi; ++k) {
      for (std::size_t g = 0; g < blo; ++g)
        if (images[k][g] != 0)
          report.respects_weights = false;
      for (std::size_t g = blo; g < bhi; ++g)
        map(k - alo, g - blo) = static_cast<long>(images[k][g]);
    }
    report.layers.push_back(exactla::check_induced_map(layer_presentation(a, w), layer_presentation(b, w), map));
  }
  return report;
}

std::vector<ExpVec> enumerate_elements(const PcPresentation &pc, std::uint64_t bound) {
  const OrderInfo info = order_or_hirsch(pc);
  if (!info.finite || info.order > static_cast<unsigned long>(bound))
    throw ResourceLimit("enumerate_elements: group is infinite or larger than " + std::to_string(bound));
  std::vector<ExpVec> out;
  ExpVec v(pc.size(), 0);
  while (true) {
    out.push_back(v);
    std::size_t k = pc.size();
    while (k > 0) {
      --k;
      if (++v[k] < pc.rel_order[k])
        break;
      v[k] = 0;
      if (k == 0)
        return out;
    }
    if (pc.size() == 0)
      return out;
  }
}

std::uint64_t element_order(const Collector &c, const ExpVec &v, std::uint64_t group_order) {
  std::uint64_t o = group_order;
  std::uint64_t m = group_order;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0)
        m /= p;
    }
  if (m > 1)
    primes.push_back(m);
  const ExpVec id = c.identity();
  for (auto p : primes)
    while (o % p == 0 && c.power(v, static_cast<std::int64_t>(o / p)) == id)
      o /= p;
  return o;
}

std::string to_string(IsoResult::Verdict v) {
  switch (v) {
  case IsoResult::Verdict::yes:
    return "yes";
  case IsoResult::Verdict::no:
    return "no";
  default:
    return "unknown";
  }
}

IsoResult isomorphic_nilpotent(const PcPresentation &a, const PcPresentation &b, std::uint64_t effort) {
  IsoResult res;
  const std::size_t d = weight_one_count(a);
  const Collector cb(b);

  auto identity_witness = [&]() {
    std::vector<ExpVec> w;
    for (std::size_t k = 0; k < d; ++k) {
      ExpVec e = cb.identity();
      e[k] = 1;
      w.push_back(std::move(e));
    }
    return w;
  };

  if (same_relations(a, b)) {
    res.verdict = IsoResult::Verdict::yes;
    res.reason = "identical pc presentations";
    res.witness = identity_witness();
    return res;
  }

  const OrderInfo oa = order_or_hirsch(a), ob = order_or_hirsch(b);
  if (!(oa == ob)) {
    res.verdict = IsoResult::Verdict::no;
    res.reason = "order/Hirsch length: " + oa.to_string() + " vs " + ob.to_string();
    return res;
  }
  res.matched.push_back(oa.to_string());

  const std::size_t top = std::max(a.max_weight(), b.max_weight());
  const auto la = layer_invariants(a, top), lb = layer_invariants(b, top);
  for (std::size_t w = 0; w < top; ++w)
    if (!(la[w] == lb[w])) {
      res.verdict = IsoResult::Verdict::no;
      res.reason = "layer invariants at weight " + std::to_string(w + 1) + ": " + la[w].to_string() + " vs " +
                   lb[w].to_string();
      return res;
    }
  res.matched.push_back("layer invariants");

  // Weight-1 images are a homomorphism candidate; an isomorphism on every
  // layer makes it bijective.
  auto verified = [&](const std::vector<ExpVec> &w1) {
    try {
      const auto images = extend_by_definitions(a, cb, w1);
      if (hom_failure(a, cb, images))
        return false;
      return layer_maps(a, b, images, top).isomorphism();
    } catch (const std::invalid_argument &) {
      return false;
    }
  };

  if (d == weight_one_count(b) && verified(identity_witness())) {
    res.verdict = IsoResult::Verdict::yes;
    res.reason = "generator correspondence a_k -> b_k verified on relations and layers";
    res.witness = identity_witness();
    return res;
  }

  constexpr std::uint64_t kEnumerationBound = 1u << 14;
  if (!oa.finite || oa.order > static_cast<unsigned long>(kEnumerationBound)) {
    res.reason = "no invariant differs; search space beyond the exhaustive bound";
    return res;
  }
  const std::uint64_t order = oa.order.get_ui();
  const Collector ca(a);
  const auto ea = enumerate_elements(a, kEnumerationBound), eb = enumerate_elements(b, kEnumerationBound);
  std::map<std::uint64_t, std::uint64_t> ma, mb;
  std::vector<std::uint64_t> order_b(eb.size());
  for (const auto &e : ea)
    ++ma[element_order(ca, e, order)];
  for (std::size_t k = 0; k < eb.size(); ++k)
    ++mb[order_b[k] = element_order(cb, eb[k], order)];
  if (ma != mb) {
    res.verdict = IsoResult::Verdict::no;
    auto fmt = [](const std::map<std::uint64_t, std::uint64_t> &m) {
      std::string s;
      for (const auto &[o, c] : m)
        s += (s.empty() ? "" : " ") + std::to_string(o) + ":" + std::to_string(c);
      return s;
    };
    res.reason = "element orders: {" + fmt(ma) + "} vs {" + fmt(mb) + "}";
    return res;
  }
  res.matched.push_back("element orders");

  // Candidates for each weight-1 generator: same order, outside [B,B].
  const std::size_t d_b = weight_one_count(b);
  std::vector<std::vector<std::size_t>> cand(d);
  std::uint64_t space = 1;
  for (std::size_t k = 0; k < d; ++k) {
    ExpVec g = ca.identity();
    g[k] = 1;
    const std::uint64_t ok = element_order(ca, g, order);
    for (std::size_t e = 0; e < eb.size(); ++e) {
      if (order_b[e] != ok)
        continue;
      if (std::all_of(eb[e].begin(), eb[e].begin() + static_cast<std::ptrdiff_t>(d_b),
                      [](std::int64_t x) { return x == 0; }))
        continue;
      cand[k].push_back(e);
    }
    space = cand[k].empty() ? 0 : (space > effort ? space : space * cand[k].size());
  }
  if (space > effort) {
    res.reason = "no invariant differs; image search of " + std::to_string(space) + " candidates exceeds effort " +
                 std::to_string(effort);
    return res;
  }
  std::vector<std::size_t> pick(d, 0);
  std::vector<ExpVec> w1(d);
  while (space > 0) {
    for (std::size_t k = 0; k < d; ++k)
      w1[k] = eb[cand[k][pick[k]]];
    if (verified(w1)) {
      res.verdict = IsoResult::Verdict::yes;
      res.reason = "exhaustive image search found an isomorphism";
      res.witness = w1;
      return res;
    }
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++pick[k] < cand[k].size())
        break;
      pick[k] = 0;
      if (k == 0)
        space = 0;
    }
    if (d == 0)
      break;
  }
  res.verdict = IsoResult::Verdict::no;
  res.reason = "exhaustive image search: no weight-1 image assignment is an isomorphism";
  return res;
}

} // namespace nilcoset::nilquot
