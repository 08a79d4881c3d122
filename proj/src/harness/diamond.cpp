#include "nilcoset/harness.hpp"

#include "common.hpp"

namespace nilcoset::harness {

nilquot::PcPresentation nilpotent_quotient_of(const PermGroup &g, std::size_t class_c) {
  return nilquot::nilpotent_quotient(fpgrp::presentation_of(g), class_c);
}

std::vector<PermGroup> normal_subgroups(const PermGroup &g) {
  const auto subs = permgrp::subgroups_up_to_conjugacy(g);
  std::vector<PermGroup> out;
  for (std::size_t k = 0; k < subs.representatives.size(); ++k)
    if (subs.class_lengths[k] == 1)
      out.push_back(subs.representatives[k]);
  return out;
}

std::vector<CatalogEntry> small_catalog() {
  using namespace permgrp;
  std::vector<CatalogEntry> c;
  for (std::size_t n = 1; n <= 16; ++n)
    c.push_back({"C" + std::to_string(n), cyclic(n)});
  c.push_back({"C2xC2", dihedral(2)});
  for (std::size_t n = 3; n <= 8; ++n)
    c.push_back({"D" + std::to_string(2 * n), dihedral(n)});
  c.push_back({"C2xC4", direct_product(cyclic(2), cyclic(4))});
  c.push_back({"C2xC2xC2", direct_product(dihedral(2), cyclic(2))});
  c.push_back({"C3xC3", direct_product(cyclic(3), cyclic(3))});
  c.push_back({"C2xC6", direct_product(cyclic(2), cyclic(6))});
  c.push_back({"C2xC8", direct_product(cyclic(2), cyclic(8))});
  c.push_back({"C4xC4", direct_product(cyclic(4), cyclic(4))});
  c.push_back({"C2xC2xC4", direct_product(dihedral(2), cyclic(4))});
  c.push_back({"C2^4", direct_product(dihedral(2), dihedral(2))});
  c.push_back({"C2xD8", direct_product(cyclic(2), dihedral(4))});
  c.push_back({"Q8", metacyclic(4, 2, 3, 2)});
  c.push_back({"C2xQ8", direct_product(cyclic(2), metacyclic(4, 2, 3, 2))});
  c.push_back({"Dic12", metacyclic(6, 2, 5, 3)});
  c.push_back({"Q16", metacyclic(8, 2, 7, 4)});
  c.push_back({"SD16", metacyclic(8, 2, 3, 0)});
  c.push_back({"M16", metacyclic(8, 2, 5, 0)});
  c.push_back({"C4:C4", metacyclic(4, 4, 3, 0)});
  c.push_back({"C3:C4", metacyclic(3, 4, 2, 0)});
  c.push_back({"A4", alternating(4)});
  return c;
}

namespace {

void record_hypothesis(VerificationReport &rep, const PermGroup &omega, const PermGroup &gamma,
                       const PermGroup &lambda, const DiamondOptions &options) {
  const auto ob = cosetequiv::gassmann_obstruction(omega, gamma, lambda);
  rep.hypothesis_checks["gassmann"] = {{"equivalent", !ob.has_value()}};
  if (ob)
    rep.hypothesis_checks["gassmann"]["obstruction"] = ob->to_string();
  const auto cert = cosetequiv::z_coset_certify(omega, gamma, lambda, options.certify);
  rep.hypothesis_checks["z_coset"] = certify_json(cert);
  if (cert.certificate)
    rep.hypothesis_checks["z_coset"]["verified"] = cosetequiv::verify_certificate(omega, gamma, lambda, *cert.certificate);
  switch (cert.outcome) {
  case cosetequiv::CertifyResult::Outcome::certified:
    rep.hypothesis = Hypothesis::holds;
    break;
  case cosetequiv::CertifyResult::Outcome::obstructed:
    rep.hypothesis = Hypothesis::failed;
    break;
  default:
    rep.hypothesis = Hypothesis::unverified;
  }
  const auto &t = cert.transcript;
  rep.budget["certify_effort"] = options.certify.effort;
  rep.budget["certify_seed"] = options.certify.seed;
  rep.budget["certify_evaluations"] = t.box_evaluations + t.random_evaluations;
  rep.budget["iso_effort"] = options.iso_effort;
}

Integer quotient_order(const PermGroup &g, const std::vector<PermGroup> &lcs, std::size_t j) {
  return g.order() / lcs[std::min(j, lcs.size() - 1)].order();
}

Verdict classify(Hypothesis h, bool any_no, bool any_unknown) {
  if (any_no)
    return h == Hypothesis::holds ? Verdict::counterexample_candidate
           : h == Hypothesis::failed ? Verdict::consistent
                                     : Verdict::inconclusive;
  return any_unknown ? Verdict::inconclusive : Verdict::consistent;
}

} // namespace

VerificationReport verify_diamond(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                                  std::size_t class_c, const DiamondOptions &options) {
  if (!gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega))
    throw permgrp::GroupError("verify_diamond: subgroup not contained in Omega");
  VerificationReport rep;
  rep.scenario = "diamond";
  rep.inputs["omega"] = fingerprint(group_text(omega));
  rep.inputs["gamma"] = fingerprint(group_text(gamma));
  rep.inputs["lambda"] = fingerprint(group_text(lambda));
  rep.inputs["class"] = class_c;
  record_hypothesis(rep, omega, gamma, lambda, options);

  const auto pg = nilpotent_quotient_of(gamma, class_c), pl = nilpotent_quotient_of(lambda, class_c);
  const auto lg = permgrp::lower_central_series(gamma, class_c + 1);
  const auto ll = permgrp::lower_central_series(lambda, class_c + 1);
  bool any_no = false, any_unknown = false, paths_agree = true;
  for (std::size_t j = 1; j <= class_c; ++j) {
    const auto gj = nilquot::truncate(pg, j), lj = nilquot::truncate(pl, j);
    const auto og = nilquot::order_or_hirsch(gj), ol = nilquot::order_or_hirsch(lj);
    const bool agree = og.finite && ol.finite && og.order == quotient_order(gamma, lg, j) &&
                       ol.order == quotient_order(lambda, ll, j);
    paths_agree &= agree;
    const auto iso = nilquot::isomorphic_nilpotent(gj, lj, options.iso_effort);
    Json c;
    c["j"] = j;
    c["gamma_layers"] = layer_json(gj, j);
    c["lambda_layers"] = layer_json(lj, j);
    c["gamma_order"] = og.to_string();
    c["lambda_order"] = ol.to_string();
    c["lcs_cross_check"] = agree;
    c["isomorphic"] = nilquot::to_string(iso.verdict);
    c["reason"] = iso.reason;
    rep.comparisons.push_back(std::move(c));
    any_no |= iso.verdict == nilquot::IsoResult::Verdict::no;
    any_unknown |= iso.verdict == nilquot::IsoResult::Verdict::unknown;
  }
  rep.verdict = classify(rep.hypothesis, any_no, any_unknown);
  if (!paths_agree) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("nilpotent quotient orders disagree with the permutation-group lower central series");
  }
  rep.notes.push_back("commutativity of eta_j with the maps to N_j(Omega) and from N_j(Gamma cap Lambda) is not checked");
  if (rep.hypothesis == Hypothesis::failed)
    rep.notes.push_back("hypothesis refuted; the theorem says nothing about this pair");
  return rep;
}

VerificationReport corollary_rig_check(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                                       const DiamondOptions &options) {
  if (!gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega))
    throw permgrp::GroupError("corollary_rig_check: subgroup not contained in Omega");
  VerificationReport rep;
  rep.scenario = "rigidity";
  rep.inputs["omega"] = fingerprint(group_text(omega));
  rep.inputs["gamma"] = fingerprint(group_text(gamma));
  rep.inputs["lambda"] = fingerprint(group_text(lambda));

  const auto ll = permgrp::lower_central_series(lambda);
  const bool lambda_nilpotent = ll.back().is_trivial();
  rep.hypothesis_checks["lambda_nilpotent"] = lambda_nilpotent;
  if (!lambda_nilpotent) {
    rep.hypothesis = Hypothesis::unverified;
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("precondition: Lambda is not nilpotent");
    return rep;
  }
  record_hypothesis(rep, omega, gamma, lambda, options);

  const auto lg = permgrp::lower_central_series(gamma);
  const bool gamma_nilpotent = lg.back().is_trivial();
  rep.hypothesis_checks["gamma_nilpotent"] = gamma_nilpotent;
  Json c;
  c["gamma_order"] = gamma.order().get_str();
  c["lambda_order"] = lambda.order().get_str();
  nilquot::IsoResult iso;
  if (!gamma_nilpotent) {
    iso.verdict = nilquot::IsoResult::Verdict::no;
    iso.reason = "Gamma is not nilpotent";
  } else {
    const std::size_t cls = std::max<std::size_t>({lg.size() - 1, ll.size() - 1, 1});
    const auto pg = nilpotent_quotient_of(gamma, cls), pl = nilpotent_quotient_of(lambda, cls);
    const auto og = nilquot::order_or_hirsch(pg), ol = nilquot::order_or_hirsch(pl);
    c["class"] = cls;
    c["lcs_cross_check"] = og.finite && ol.finite && og.order == gamma.order() && ol.order == lambda.order();
    c["gamma_layers"] = layer_json(pg, cls);
    c["lambda_layers"] = layer_json(pl, cls);
    iso = nilquot::isomorphic_nilpotent(pg, pl, options.iso_effort);
  }
  c["isomorphic"] = nilquot::to_string(iso.verdict);
  c["reason"] = iso.reason;
  rep.comparisons.push_back(std::move(c));
  rep.verdict = classify(rep.hypothesis, iso.verdict == nilquot::IsoResult::Verdict::no,
                         iso.verdict == nilquot::IsoResult::Verdict::unknown);
  if (rep.hypothesis == Hypothesis::failed)
    rep.notes.push_back("hypothesis refuted, corollary vacuous");
  return rep;
}

} // namespace nilcoset::harness
