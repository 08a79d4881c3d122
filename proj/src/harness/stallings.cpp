#include "nilcoset/harness.hpp"

#include "common.hpp"

namespace nilcoset::harness {

namespace {

using nilquot::Collector;
using nilquot::ExpVec;

// H_2 of a presentation with at most one relator: 0 for free groups, and for
// one-relator groups Z or 0 according as the relator lies in [F,F].
std::optional<exactla::AbelianInvariants> h2_small(const fpgrp::FinitePresentation &p) {
  if (p.relators.empty())
    return exactla::AbelianInvariants{};
  if (p.relators.size() > 1)
    return std::nullopt;
  std::vector<long> sums(p.n_gens, 0);
  for (const auto &s : p.relators[0].syllables())
    sums[s.gen] += static_cast<long>(s.exp);
  for (auto x : sums)
    if (x != 0)
      return exactla::AbelianInvariants{};
  return exactla::AbelianInvariants{1, {}};
}

} // namespace

InducedNjMap induced_nj_map(const fpgrp::FpHom &hom, const nilquot::PcPresentation &source,
                            const nilquot::PcPresentation &target) {
  InducedNjMap out{source, target, std::nullopt, "", false};
  const Collector ct(target);
  std::vector<ExpVec> tv;
  for (const auto &w : target.images)
    tv.push_back(nilquot::to_expvec(w, target.size()));
  auto eval = [&](const fpgrp::Word &w) {
    ExpVec e = ct.identity();
    for (const auto &s : w.syllables())
      e = ct.product(e, ct.power(tv[s.gen], s.exp));
    return e;
  };
  std::vector<ExpVec> w1;
  for (std::size_t k = 0; k < source.size() && source.weight[k] == 1; ++k) {
    if (source.defs[k].kind != nilquot::Definition::Kind::image) {
      out.failure = "weight-1 generator a" + std::to_string(k + 1) + " is not the image of an input generator";
      return out;
    }
    w1.push_back(eval(hom.images[source.defs[k].x]));
  }
  std::vector<ExpVec> images;
  try {
    images = nilquot::extend_by_definitions(source, ct, w1);
  } catch (const std::invalid_argument &e) {
    out.failure = e.what();
    return out;
  }
  if (auto bad = nilquot::hom_failure(source, ct, images)) {
    out.failure = "relation " + *bad + " not preserved";
    return out;
  }
  for (std::size_t x = 0; x < source.n_orig; ++x)
    if (nilquot::evaluate(source.images[x], images, ct) != eval(hom.images[x])) {
      out.failure = "map disagrees with the homomorphism on input generator " + std::to_string(x + 1);
      return out;
    }
  const std::size_t top = std::max(source.max_weight(), target.max_weight());
  out.isomorphism = nilquot::layer_maps(source, target, images, top).isomorphism();
  out.images = std::move(images);
  return out;
}

VerificationReport verify_stallings(const fpgrp::FpHom &hom, std::size_t class_c,
                                    std::optional<H2Status> h2_certificate) {
  VerificationReport rep;
  rep.scenario = "stallings";
  rep.inputs["source"] = fingerprint(hom.source.to_string());
  rep.inputs["target"] = fingerprint(hom.target.to_string());
  Json imgs = Json::array();
  for (const auto &w : hom.images)
    imgs.push_back(w.to_string(hom.target.names));
  rep.inputs["images"] = imgs;
  rep.inputs["class"] = class_c;

  // H_1: exponent-sum matrix on the abelianizations.
  exactla::IntMatrix map(hom.source.n_gens, hom.target.n_gens);
  for (std::size_t i = 0; i < hom.images.size(); ++i)
    for (const auto &s : hom.images[i].syllables())
      map(i, s.gen) += static_cast<long>(s.exp);
  const exactla::AbelianPresentation as{hom.source.n_gens, fpgrp::abelianization_matrix(hom.source)};
  const exactla::AbelianPresentation at{hom.target.n_gens, fpgrp::abelianization_matrix(hom.target)};
  const auto h1 = exactla::check_induced_map(as, at, map);
  rep.hypothesis_checks["H1"] = {{"source", as.invariants().to_string()},
                                 {"target", at.invariants().to_string()},
                                 {"well_defined", h1.well_defined},
                                 {"injective", h1.injective},
                                 {"surjective", h1.surjective},
                                 {"status", h1.isomorphism() ? "holds" : "failed"}};
  rep.hypothesis_checks["relator_check"] =
      hom.check == fpgrp::FpHomCheck::freely_trivial ? "freely trivial" : "abelianization only";

  H2Status h2 = H2Status::assumed;
  std::string h2_how = "not computable for these presentations";
  if (h2_certificate) {
    h2 = *h2_certificate;
    h2_how = "supplied certificate";
  } else {
    const auto ht = h2_small(hom.target), hs = h2_small(hom.source);
    if (ht && ht->is_trivial()) {
      h2 = H2Status::verified;
      h2_how = "H_2(target) = 0";
    } else if (ht && hs && hs->is_trivial()) {
      h2 = H2Status::failed;
      h2_how = "H_2(source) = 0, H_2(target) = " + ht->to_string();
    }
  }
  rep.hypothesis_checks["H2_onto"] = {{"status", to_string(h2)}, {"method", h2_how}};
  rep.notes.push_back("only surjectivity of psi_2 on H_2 is required");

  if (!h1.isomorphism()) {
    rep.hypothesis = Hypothesis::failed;
    rep.verdict = Verdict::consistent;
    rep.notes.push_back("H_1 map is not an isomorphism; conclusion checks skipped");
    return rep;
  }
  rep.hypothesis = h2 == H2Status::verified ? Hypothesis::holds
                   : h2 == H2Status::failed ? Hypothesis::failed
                                            : Hypothesis::assumed;

  const auto src = nilquot::nilpotent_quotient(hom.source, class_c);
  const auto tgt = nilquot::nilpotent_quotient(hom.target, class_c);
  bool any_no = false, any_unknown = false;
  for (std::size_t j = 1; j <= class_c; ++j) {
    const auto sj = nilquot::truncate(src, j), tj = nilquot::truncate(tgt, j);
    const InducedNjMap m = induced_nj_map(hom, sj, tj);
    Json c;
    c["j"] = j;
    c["source_layers"] = layer_json(sj, j);
    c["target_layers"] = layer_json(tj, j);
    c["source_order"] = nilquot::order_or_hirsch(sj).to_string();
    c["target_order"] = nilquot::order_or_hirsch(tj).to_string();
    if (!m.images) {
      c["induced_map"] = "unknown";
      c["reason"] = m.failure;
      any_unknown = true;
    } else {
      c["induced_map"] = m.isomorphism ? "isomorphism" : "not an isomorphism";
      any_no |= !m.isomorphism;
    }
    rep.comparisons.push_back(std::move(c));
  }
  if (any_no)
    rep.verdict = rep.hypothesis == Hypothesis::holds     ? Verdict::counterexample_candidate
                  : rep.hypothesis == Hypothesis::failed ? Verdict::consistent
                                                          : Verdict::inconclusive;
  else
    rep.verdict = any_unknown ? Verdict::inconclusive : Verdict::consistent;
  rep.budget["nq_generators_source"] = src.size();
  rep.budget["nq_generators_target"] = tgt.size();
  return rep;
}

} // namespace nilcoset::harness
