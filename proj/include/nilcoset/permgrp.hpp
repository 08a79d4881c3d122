#pragma once

// Finite permutation groups. Permutations act on the right: x^(ab) = (x^a)^b,
// so a*b applies a first. Points are 0-based internally and 1-based in all
// text formats.

#include "nilcoset/exactla.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilcoset::permgrp {

using exactla::AbelianInvariants;
using exactla::Integer;
using Point = std::uint32_t;

class GroupError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BoundExceeded : public GroupError {
public:
  using GroupError::GroupError;
};

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  /// Validates that `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Point> images);
  /// Cycles use 1-based points.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>> &cycles);
  /// Parses cycle notation such as "(1 2 3)(4 5)" or "()", 1-based.
  static Permutation parse(const std::string &text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point p) const { return images_[p]; }
  const std::vector<Point> &images() const { return images_; }

  Permutation operator*(const Permutation &rhs) const;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  /// g^-1 * this * g
  Permutation conjugate_by(const Permutation &g) const;
  bool is_identity() const;
  std::uint64_t order() const;
  /// Smallest moved point, or degree() when the identity.
  Point first_moved() const;
  /// Same permutation on a larger domain, fixing the new points; `shift`
  /// relabels point p as p + shift.
  Permutation embedded(std::size_t degree, std::size_t shift = 0) const;
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &a, const Permutation &b) { return a.images_ <=> b.images_; }

private:
  std::vector<Point> images_;
};

Permutation commutator(const Permutation &x, const Permutation &y); // x^-1 y^-1 x y

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const noexcept;
};

struct PointVectorHash {
  std::size_t operator()(const std::vector<Point> &v) const noexcept;
};

/// One level of a stabilizer chain.
struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> generators; // strong generators fixing earlier base points
  std::vector<Point> orbit;
  std::vector<int> orbit_pos;             // point -> position in orbit, -1 if absent
  std::vector<Permutation> transversal;   // transversal[i] maps base to orbit[i]
};

struct StabChain {
  std::vector<ChainLevel> levels;
  std::vector<Point> base() const;
};

class PermGroup {
public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> generators);
  static PermGroup trivial(std::size_t degree) { return {degree, {}}; }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return generators_; }
  Permutation identity() const { return Permutation(degree_); }

  const StabChain &chain() const;
  Integer order() const;
  /// Order as a machine integer; throws BoundExceeded above 2^63.
  std::uint64_t order_u64() const;
  bool contains(const Permutation &g) const;
  bool is_subgroup_of(const PermGroup &g) const;
  bool is_trivial() const { return order() == 1; }
  bool is_abelian() const;

  /// All elements, in stabilizer-chain enumeration order (identity first).
  /// Throws BoundExceeded when the order exceeds `bound`.
  std::vector<Permutation> elements(std::uint64_t bound = 10'000'000) const;
  /// Uniform random element from a seeded engine state.
  Permutation random_element(std::uint64_t &state) const;
  /// Orbits on points, each sorted, ordered by smallest point.
  std::vector<std::vector<Point>> orbits() const;

private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  struct ChainCache {
    std::once_flag once;
    StabChain chain;
  };
  std::shared_ptr<ChainCache> cache_;
};

bool operator==(const PermGroup &a, const PermGroup &b); // same subgroup of Sym(n)

// ---------------------------------------------------------------------------
// Constructors.

PermGroup symmetric(std::size_t n);
PermGroup alternating(std::size_t n);
PermGroup cyclic(std::size_t n);
/// Dihedral group of order 2n acting on n points (n >= 3); dihedral(2) is the
/// Klein four group on 4 points.
PermGroup dihedral(std::size_t n);
/// PSL(2,q) on the q+1 points of the projective line (points 1..q are 0..q-1,
/// point q+1 is infinity), generated by z -> z+1 and z -> -1/z.
PermGroup psl2(std::uint32_t q);
/// Natural action on the disjoint union of the two domains.
PermGroup direct_product(const PermGroup &g, const PermGroup &h);
/// Group <a, b | a^m, b^n = a^s, b a b^-1 = a^t> in its regular representation
/// (order m*n). Requires t^n = 1 and s(t-1) = 0 mod m. Covers semidirect
/// products (s = 0), dihedral, quaternion and dicyclic groups.
PermGroup metacyclic(std::uint32_t m, std::uint32_t n, std::uint32_t t, std::uint32_t s);
/// Regular representation of G on its own elements (right multiplication).
PermGroup regular_representation(const PermGroup &g);

/// Subgroup of `g` generated by `gens`, on g's domain.
PermGroup subgroup(const PermGroup &g, std::vector<Permutation> gens);

// ---------------------------------------------------------------------------
// Structure.

PermGroup normal_closure(const PermGroup &g, const std::vector<Permutation> &gens);
bool is_normal(const PermGroup &g, const PermGroup &n);
/// [A, B] for subgroups normalised by `g`: normal closure of commutators of generators.
PermGroup commutator_subgroup(const PermGroup &g, const PermGroup &a, const PermGroup &b);
PermGroup derived_subgroup(const PermGroup &g);
/// gamma_1 = G, gamma_{i+1} = [gamma_i, G], up to stabilisation or `max_terms`.
std::vector<PermGroup> lower_central_series(const PermGroup &g, std::size_t max_terms = 64);
bool is_nilpotent(const PermGroup &g);
bool is_solvable(const PermGroup &g);
bool is_perfect(const PermGroup &g);
/// Invariants of an abelian permutation group (throws if non-abelian).
AbelianInvariants abelian_group_invariants(const PermGroup &a);
AbelianInvariants abelianization_finite(const PermGroup &g);

// ---------------------------------------------------------------------------
// Conjugacy classes and cosets.

struct ConjClasses {
  std::vector<Permutation> representatives; // lexicographically least element of each class
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::uint64_t> centralizer_orders;
  std::size_t size() const { return representatives.size(); }
};

/// Classes sorted by (element order, class size, representative).
ConjClasses conjugacy_classes(const PermGroup &g, std::uint64_t order_bound = 10'000'000);

/// Fixed-point counts of the coset action, one value per class of the ambient group.
struct PermChar {
  std::vector<std::uint64_t> values;
  friend bool operator==(const PermChar &, const PermChar &) = default;
};

/// Right cosets Hx of H in G, numbered in breadth-first order from H itself.
class CosetSpace {
public:
  CosetSpace(const PermGroup &g, const PermGroup &h, std::uint64_t max_index = 100'000);

  std::size_t index() const { return reps_.size(); }
  const std::vector<Permutation> &representatives() const { return reps_; }
  /// Position of the coset Hx.
  std::size_t coset_of(const Permutation &x) const;
  /// Action of g on the cosets, as a permutation of {0..index-1}.
  Permutation action_of(const Permutation &g) const;
  const PermGroup &subgroup() const { return h_; }

private:
  std::vector<Point> key_of(const Permutation &x) const;

  PermGroup g_;
  PermGroup h_;
  std::vector<Permutation> h_elements_;
  std::vector<Permutation> reps_;
  std::unordered_map<std::vector<Point>, std::size_t, PointVectorHash> lookup_;
};

struct CosetAction {
  PermGroup action;
  PermChar character; // indexed by conjugacy_classes(g)
};

/// Throws GroupError when H is not a subgroup of G, BoundExceeded above max_index.
CosetAction coset_action(const PermGroup &g, const PermGroup &h, const ConjClasses &classes,
                         std::uint64_t max_index = 100'000);
CosetAction coset_action(const PermGroup &g, const PermGroup &h, std::uint64_t max_index = 100'000);

struct ConjugacyResult {
  bool conjugate = false;
  std::optional<Permutation> witness; // h1^witness == h2
  std::string reason;                 // invariant that separated them, when not conjugate
};

ConjugacyResult is_conjugate_subgroups(const PermGroup &g, const PermGroup &h1, const PermGroup &h2,
                                       std::uint64_t order_bound = 10'000'000);

struct SubgroupClasses {
  std::vector<PermGroup> representatives; // ordered by subgroup order, then canonical key
  std::vector<std::uint64_t> class_lengths;
  bool completeness_verified = false;     // true for solvable G or after the brute-force check
};

/// Conjugacy classes of subgroups by cyclic extension (|G| <= 2000).
SubgroupClasses subgroups_up_to_conjugacy(const PermGroup &g, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Scott's pair of non-conjugate Alt(5) subgroups in PSL(2,29).

struct ScottPair {
  PermGroup omega;
  PermGroup l0;
  PermGroup l1;
};
ScottPair scott_pair();

/// Searches `g` for subgroups isomorphic to Alt(5) generated by an involution
/// x and an element y of order 3 with xy of order 5; returns the canonical
/// (lexicographically least generating pair) representative of each
/// conjugacy class found.
std::vector<PermGroup> alt5_subgroup_classes(const PermGroup &g);

// ---------------------------------------------------------------------------
// Text format: "degree n" then one generator per line in cycle notation.

PermGroup read_perm_group(std::istream &in);
PermGroup read_perm_group_file(const std::string &path);
std::string format_perm_group(const PermGroup &g);

} // namespace nilcoset::permgrp
