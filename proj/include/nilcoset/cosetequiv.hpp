#pragma once

// Coset equivalence of subgroups Gamma, Lambda of a finite group Omega.
// Q[Omega/Gamma] = Q[Omega/Lambda] is decided by permutation characters; the
// integral question is attacked through the Hecke basis of intertwiners.

#include "nilcoset/exactla.hpp"
#include "nilcoset/fpgrp.hpp"
#include "nilcoset/permgrp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nilcoset::cosetequiv {

using exactla::IntMatrix;
using exactla::Integer;
using permgrp::Permutation;
using permgrp::PermGroup;

struct Obstruction {
  enum class Kind { character_mismatch, local_at_p } kind = Kind::character_mismatch;
  // character_mismatch: a class representative and both fixed-point counts
  Permutation class_representative;
  std::uint64_t fixed_gamma = 0;
  std::uint64_t fixed_lambda = 0;
  // local_at_p: no F_p-combination of Hecke operators is invertible
  std::uint64_t prime = 0;
  std::string to_string() const;
};

/// nullopt when Gassmann equivalent. Throws permgrp::GroupError when a
/// subgroup is not contained in Omega.
std::optional<Obstruction> gassmann_obstruction(const PermGroup &omega, const PermGroup &gamma,
                                                const PermGroup &lambda);
bool gassmann_equivalent(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda);

/// Double cosets Lambda x Gamma. Operator A_D has rows indexed by the right
/// cosets of Lambda and columns by those of Gamma (CosetSpace numbering);
/// entry (Lambda x, Gamma y) is 1 when x y^-1 lies in D. Each A_D satisfies
/// rho_Lambda(g) A_D = A_D rho_Gamma(g) where rho(g)(i, j) = [coset i . g = j].
struct DoubleCosets {
  std::vector<Permutation> representatives;
  std::vector<std::uint64_t> sizes;
  std::vector<IntMatrix> hecke;
  std::size_t size() const { return representatives.size(); }
};

DoubleCosets double_cosets(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                           std::uint64_t max_index = 5000);

/// Permutation matrix of g on right cosets: (i, j) = 1 when coset i . g = j.
IntMatrix coset_action_matrix(const permgrp::CosetSpace &space, const Permutation &g);
/// T with rho_Lambda(g) T = T rho_Gamma(g) for every generator g of Omega.
bool intertwines(const PermGroup &omega, const permgrp::CosetSpace &lambda_cosets,
                 const permgrp::CosetSpace &gamma_cosets, const IntMatrix &t);
/// Lattice of integer intertwiners from the linear system over all matrix
/// entries, independent of the Hecke construction. Basis vectors are
/// row-major flattenings.
std::vector<exactla::IntVector> intertwiner_lattice(const PermGroup &omega, const PermGroup &gamma,
                                                    const PermGroup &lambda);

struct EquivCertificate {
  std::vector<long> coefficients; // over the Hecke basis
  IntMatrix matrix;
  Integer determinant;
};

struct CertifyOptions {
  std::uint64_t effort = 2000; // exact determinant evaluations (mod-P filter included)
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> local_primes{2, 3, 5, 7, 11, 13};
  std::uint64_t local_exhaustive_limit = 4096; // p^r up to this is enumerated
  std::uint64_t local_samples = 64;
};

struct LocalCheck {
  std::uint64_t prime = 0;
  enum class Status { invertible_found, obstructed, inconclusive } status = Status::inconclusive;
  std::vector<long> witness; // coefficients mod p when one was found
  std::uint64_t evaluations = 0;
  bool exhaustive = false;
};

struct CertifyTranscript {
  std::size_t hecke_rank = 0;
  std::size_t index = 0;
  std::vector<LocalCheck> local;
  long box_bound = 0;             // largest L1 norm whose shell was swept completely
  std::uint64_t box_evaluations = 0;
  std::uint64_t random_evaluations = 0;
  std::uint64_t exact_determinants = 0;
  std::string to_string() const;
};

struct CertifyResult {
  enum class Outcome { certified, obstructed, unknown } outcome = Outcome::unknown;
  std::optional<EquivCertificate> certificate;
  std::optional<Obstruction> obstruction;
  CertifyTranscript transcript;
};

std::string to_string(CertifyResult::Outcome o);

CertifyResult z_coset_certify(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                              const CertifyOptions &options = {});

/// Intertwining on all generators and |det| = 1, recomputed from scratch.
bool verify_certificate(const PermGroup &omega, const PermGroup &gamma, const PermGroup &lambda,
                        const EquivCertificate &cert);

struct GassmannPair {
  std::size_t catalog_index = 0;
  PermGroup gamma;
  PermGroup lambda;
};

struct PairSearchResult {
  std::vector<GassmannPair> pairs;
  std::vector<std::pair<std::size_t, std::string>> skipped; // catalog index, reason
};

/// Non-conjugate subgroup classes with equal permutation characters, in
/// catalog order, then by subgroup class order.
PairSearchResult gassmann_pair_search(const std::vector<PermGroup> &catalog, std::uint64_t order_bound = 2000);

struct HomMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Whether F -> T^s, w -> (phi_1(w), ..., phi_s(w)) is onto, by comparing the
/// order of the image on the disjoint-union action with |T|^s.
bool hall_product_surjective(const std::vector<fpgrp::PermHom> &homs);

} // namespace nilcoset::cosetequiv
