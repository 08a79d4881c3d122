#pragma once

// Integral homology of finite and finitely presented groups, and the
// five-term exact sequence
//   H_2(G) -> H_2(Q) -> N/[G,N] -> H_1(G) -> H_1(Q)
// of an extension 1 -> N -> G -> Q -> 1 with trivial coefficients Z.

#include "nilcoset/exactla.hpp"
#include "nilcoset/fpgrp.hpp"
#include "nilcoset/permgrp.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilcoset::homology {

using exactla::AbelianInvariants;
using exactla::IntMatrix;
using exactla::Integer;
using exactla::SparseIntMatrix;
using permgrp::Permutation;
using permgrp::PermGroup;

struct OrderBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotNormal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

AbelianInvariants h1_fp(const fpgrp::FinitePresentation &pres);
AbelianInvariants h1_perm(const PermGroup &g);

/// Degrees 1..3 of the bar complex of a finite group, with row convention:
/// row i of d_k is the boundary of the i-th k-chain basis element.
///   d2(a|b)   = (b) - (ab) + (a)
///   d3(a|b|c) = (b|c) - (ab|c) + (a|bc) - (a|b)
/// The normalized complex drops every tuple with an identity entry.
class BarComplexSlice {
public:
  BarComplexSlice(const PermGroup &g, bool normalized, std::uint64_t max_order = 60);

  bool normalized() const { return normalized_; }
  /// Elements in stabilizer-chain order; index 0 is the identity.
  const std::vector<Permutation> &elements() const { return elements_; }
  std::size_t index_of(const Permutation &x) const;
  std::size_t multiply(std::size_t a, std::size_t b) const { return mul_[a * elements_.size() + b]; }

  std::size_t dim1() const { return d2_.cols(); }
  std::size_t dim2() const { return d2_.rows(); }
  std::size_t dim3() const { return d3_.rows(); }
  /// Basis position of (a|b); nothing when the tuple is degenerate in the normalized complex.
  std::optional<std::size_t> chain2(std::size_t a, std::size_t b) const;
  std::pair<std::size_t, std::size_t> tuple2(std::size_t position) const;

  const SparseIntMatrix &d2() const { return d2_; }
  const SparseIntMatrix &d3() const { return d3_; }

private:
  bool normalized_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, permgrp::PermutationHash> index_;
  std::vector<std::uint32_t> mul_;
  SparseIntMatrix d2_{0, 0, {}};
  SparseIntMatrix d3_{0, 0, {}};
};

struct H2Options {
  std::uint64_t max_order = 60;
  bool normalized = true;
};

/// Schur multiplier ker(d2)/im(d3). Above order 16 the sparse elimination
/// path is always used.
AbelianInvariants h2_finite_bar(const PermGroup &g, const H2Options &options = {});

/// Finite abelian group in Smith coordinates: Z/orders[0] + ... (0 = Z),
/// every order != 1.
struct SmithCoordinates {
  std::vector<Integer> orders;
  IntMatrix to_smith;   // ambient coordinates -> Smith coordinates (columns)
  IntMatrix from_smith; // rows: ambient lifts of the Smith generators

  static SmithCoordinates of(const IntMatrix &relations, std::size_t n_gens);
  AbelianInvariants invariants() const;
  IntMatrix relations() const; // diagonal
  exactla::IntVector reduce(const exactla::IntVector &ambient) const;
};

/// M/K for K normal in M with M/K abelian, with coordinates for elements.
class AbelianQuotient {
public:
  AbelianQuotient(const PermGroup &m, const PermGroup &k);

  const SmithCoordinates &coordinates() const { return smith_; }
  AbelianInvariants invariants() const { return smith_.invariants(); }
  /// Smith coordinates of the image of x (which must lie in M).
  exactla::IntVector coordinates_of(const Permutation &x) const;
  /// Elements of M lifting the Smith generators.
  const std::vector<Permutation> &generator_lifts() const { return lifts_; }

private:
  permgrp::CosetSpace space_;
  std::vector<exactla::IntVector> coset_vectors_;
  SmithCoordinates smith_;
  std::vector<Permutation> lifts_;
};

struct NModCommutators {
  AbelianInvariants invariants;
  std::vector<Permutation> generator_lifts; // elements of N mapping to the Smith generators
};

/// N/[G,N]; throws NotNormal when N is not a normal subgroup of G.
NModCommutators n_mod_commutators(const PermGroup &g, const PermGroup &n);

struct FiveTermOptions {
  std::uint64_t max_order = 60;
  /// 0 uses coset representatives as the section Q -> G; other values pick a
  /// pseudo-random section (still sending 1 to 1).
  std::uint64_t section_seed = 0;
};

struct FiveTermReport {
  // H_2(G), H_2(Q), N/[G,N], H_1(G), H_1(Q)
  std::vector<AbelianInvariants> groups;
  // inflation, transgression, inclusion, projection; rows are images of the
  // Smith generators of the source in Smith coordinates of the target.
  std::vector<IntMatrix> maps;
  std::vector<bool> compositions_zero; // 3 entries
  std::vector<bool> exact;             // at H_2(Q), N/[G,N], H_1(G)
  bool all_exact() const;
  std::string to_string() const;
};

FiveTermReport five_term_check(const PermGroup &g, const PermGroup &n, const FiveTermOptions &options = {});

} // namespace nilcoset::homology
