#pragma once

// Nilpotent quotients N_c(G) = G/G_c as weighted polycyclic presentations.
//
// Indexing: G_0 = G, G_{j+1} = [G, G_j]. N_c = G/G_c, so N_1 is the
// abelianization, N_0 is trivial, and N_c has nilpotency class at most c.
// Commutators are [x,y] = x^-1 y^-1 x y.

#include "nilcoset/exactla.hpp"
#include "nilcoset/fpgrp.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcoset::nilquot {

using exactla::AbelianInvariants;
using exactla::Integer;

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense exponent vector, one entry per pc generator.
using ExpVec = std::vector<std::int64_t>;
/// Normal-form word: (generator, exponent) with strictly increasing generators.
using PcWord = std::vector<std::pair<std::uint32_t, std::int64_t>>;

PcWord to_word(const ExpVec &v);
ExpVec to_expvec(const PcWord &w, std::size_t n);

struct Definition {
  enum class Kind { image, commutator } kind;
  std::uint32_t x = 0; // original generator, for images
  std::uint32_t j = 0; // [a_j, a_i] with j > i
  std::uint32_t i = 0;
  bool operator==(const Definition &) const = default;
};

class PcPresentation {
public:
  PcPresentation() = default;
  /// Trivial group, with `n_orig` original generators all mapping to 1.
  static PcPresentation trivial(std::size_t n_orig);

  std::size_t size() const { return weight.size(); }
  std::size_t max_weight() const;

  std::size_t n_orig = 0;
  std::vector<int> weight;
  std::vector<std::int64_t> rel_order;      // 0 = infinite
  std::vector<PcWord> power;                 // a_i^{m_i}, used when m_i > 0
  std::vector<std::vector<PcWord>> comm;     // comm[j][i] = [a_j, a_i], i < j
  std::vector<PcWord> images;                // images of the original generators
  std::vector<Definition> defs;
  std::vector<std::string> orig_names;

  void add_generator(int weight, std::int64_t order, Definition def);
  bool operator==(const PcPresentation &) const = default;
};

/// Collection from the left. Holds inverse-conjugate tables derived from the
/// presentation.
class Collector {
public:
  explicit Collector(PcPresentation pc);

  const PcPresentation &presentation() const { return pc_; }
  ExpVec identity() const { return ExpVec(pc_.size(), 0); }
  void multiply(ExpVec &e, std::uint32_t g, std::int64_t s) const;
  void multiply(ExpVec &e, const PcWord &w, std::int64_t times = 1) const;
  ExpVec collect(const PcWord &w) const;
  ExpVec product(const ExpVec &a, const ExpVec &b) const;
  ExpVec inverse(const ExpVec &a) const;
  ExpVec power(const ExpVec &a, std::int64_t k) const;
  ExpVec commutator(const ExpVec &a, const ExpVec &b) const;

private:
  void unit_step(ExpVec &e, std::uint32_t g, int sigma) const;
  void add_at_end(ExpVec &e, std::uint32_t g, std::int64_t s) const;

  PcPresentation pc_;
  std::vector<std::vector<PcWord>> conj_neg_; // [k][g] = a_g a_k a_g^-1 for infinite a_g
};

/// Word over pc generators in arbitrary order (not a normal form).
using PcSequence = std::vector<std::pair<std::uint32_t, std::int64_t>>;

ExpVec collect(const PcPresentation &pc, const PcSequence &word);
/// Independent strategy: rewrite the leftmost non-normal adjacent pair.
ExpVec collect_by_rewriting(const PcPresentation &pc, const PcSequence &word);

struct NqOptions {
  std::size_t max_generators = 4000;
};

PcPresentation nilpotent_quotient(const fpgrp::FinitePresentation &pres, std::size_t class_c,
                                  const NqOptions &options = {});
/// N_j from N_c for j <= c by dropping generators of weight > j.
PcPresentation truncate(const PcPresentation &pc, std::size_t j);

/// One entry per weight 1..max(class, max_weight).
std::vector<AbelianInvariants> layer_invariants(const PcPresentation &pc, std::size_t class_c = 0);

struct OrderInfo {
  bool finite = true;
  Integer order = 1;                     // when finite
  std::size_t hirsch = 0;                // number of infinite relative orders
  Integer finite_relative_orders = 1;    // product of the finite relative orders
  std::string to_string() const;
  bool operator==(const OrderInfo &) const = default;
};
OrderInfo order_or_hirsch(const PcPresentation &pc);

fpgrp::FinitePresentation to_finite_presentation(const PcPresentation &pc);

/// Returns the failed test, or nothing when all overlap tests pass.
std::optional<std::string> consistency_failure(const PcPresentation &pc);

std::string dump(const PcPresentation &pc);

// ---------------------------------------------------------------------------
// Homomorphisms between pc groups

/// Images of every pc generator of the source, extended from images of the
/// weight-1 generators through the definitions.
std::vector<ExpVec> extend_by_definitions(const PcPresentation &a, const Collector &b,
                                          const std::vector<ExpVec> &weight1_images);
/// Evaluates a normal-form word of `a` under generator images in `b`.
ExpVec evaluate(const PcWord &w, const std::vector<ExpVec> &images, const Collector &b);
/// Returns the first pc relation of `a` violated by the images, if any.
std::optional<std::string> hom_failure(const PcPresentation &a, const Collector &b,
                                       const std::vector<ExpVec> &images);

struct LayerMapReport {
  std::vector<exactla::InducedMapCheck> layers; // weights 1..c
  bool respects_weights = true;
  bool isomorphism() const;
};
/// Maps induced on each layer G_w/G_{w+1} by a homomorphism a -> b.
LayerMapReport layer_maps(const PcPresentation &a, const PcPresentation &b, const std::vector<ExpVec> &images,
                          std::size_t class_c);

std::vector<ExpVec> enumerate_elements(const PcPresentation &pc, std::uint64_t bound);
std::uint64_t element_order(const Collector &c, const ExpVec &v, std::uint64_t group_order);

struct IsoResult {
  enum class Verdict { yes, no, unknown } verdict = Verdict::unknown;
  std::string reason;                  // invariant that differs, or method of the witness
  std::vector<ExpVec> witness;         // images of the weight-1 generators of A in B
  std::vector<std::string> matched;    // invariants that agreed
};
std::string to_string(IsoResult::Verdict v);

IsoResult isomorphic_nilpotent(const PcPresentation &a, const PcPresentation &b, std::uint64_t effort = 2'000'000);

} // namespace nilcoset::nilquot
