#pragma once

// Verification scenarios producing machine-readable reports.

#include "nilcoset/cosetequiv.hpp"
#include "nilcoset/fpgrp.hpp"
#include "nilcoset/nilquot.hpp"
#include "nilcoset/permgrp.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilcoset::harness {

using Json = nlohmann::ordered_json;
using exactla::Integer;
using permgrp::PermGroup;

inline constexpr int kSchemaVersion = 1;

enum class Verdict { consistent, counterexample_candidate, inconclusive };
std::string to_string(Verdict v);

/// holds: every hypothesis verified; assumed: some part taken on trust;
/// failed: a hypothesis is refuted; unverified: the check could not decide.
enum class Hypothesis { holds, assumed, failed, unverified };
std::string to_string(Hypothesis h);

struct VerificationReport {
  std::string scenario;
  Json inputs = Json::object();
  Json hypothesis_checks = Json::object();
  Json comparisons = Json::array();
  Hypothesis hypothesis = Hypothesis::unverified;
  Verdict verdict = Verdict::inconclusive;
  Json budget = Json::object();
  std::vector<std::string> notes;

  Json to_json() const;
  /// 0 consistent, 1 hypothesis failed or conclusion false, 2 inconclusive.
  int exit_code() const;
};

/// FNV-1a 64-bit digest in hex, used to fingerprint inputs.
std::string fingerprint(const std::string &data);

/// Outcome, certificate or obstruction, and search transcript.
Json certify_json(const cosetequiv::CertifyResult &r);

enum class H2Status { verified, assumed, failed };
std::string to_string(H2Status s);

/// Map N_j(source) -> N_j(target) induced by a homomorphism, for one j.
struct InducedNjMap {
  nilquot::PcPresentation source;
  nilquot::PcPresentation target;
  std::optional<std::vector<nilquot::ExpVec>> images; // of the source pc generators
  std::string failure;                                // why no map was built
  bool isomorphism = false;
};
InducedNjMap induced_nj_map(const fpgrp::FpHom &hom, const nilquot::PcPresentation &source,
                            const nilquot::PcPresentation &target);

VerificationReport verify_stallings(const fpgrp::FpHom &hom, std::size_t class_c,
                                    std::optional<H2Status> h2_certificate = std::nullopt);

struct DiamondOptions {
  cosetequiv::CertifyOptions certify;
  std::uint64_t iso_effort = 2'000'000;
};

VerificationReport verify_diamond(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                                  std::size_t class_c, const DiamondOptions &options = {});

VerificationReport corollary_rig_check(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                                       const DiamondOptions &options = {});

VerificationReport scott_demo(std::size_t copies, std::uint64_t seed);

struct CatalogEntry {
  std::string name;
  PermGroup group;
};
/// Built-in groups of order at most 16.
std::vector<CatalogEntry> small_catalog();

/// Normal subgroups of g, from the conjugacy classes of subgroups of length 1.
std::vector<PermGroup> normal_subgroups(const PermGroup &g);

/// N_j(G) for a finite permutation group from its presentation on the given
/// generators; N_j = G / G_j.
nilquot::PcPresentation nilpotent_quotient_of(const PermGroup &g, std::size_t class_c);

} // namespace nilcoset::harness
