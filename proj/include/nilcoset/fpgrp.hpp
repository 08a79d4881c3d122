#pragma once

#include "nilcoset/exactla.hpp"
#include "nilcoset/permgrp.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcoset::fpgrp {

using exactla::IntMatrix;
using permgrp::Permutation;
using permgrp::PermGroup;

struct PresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerationLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HomError : std::runtime_error {
  HomError(const std::string &what, std::size_t relator) : std::runtime_error(what), relator_index(relator) {}
  std::size_t relator_index;
};

struct Syllable {
  std::uint32_t gen;
  std::int64_t exp;
  bool operator==(const Syllable &) const = default;
};

/// Freely reduced word: adjacent syllables have distinct generators and no
/// syllable has exponent 0.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables); // reduces
  static Word generator(std::uint32_t g, std::int64_t exp = 1);

  const std::vector<Syllable> &syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  std::size_t length() const; // sum of |exponents|
  std::uint32_t max_generator() const;

  Word inverse() const;
  Word pow(std::int64_t e) const;
  Word operator*(const Word &o) const;
  /// Letters +-(g+1), one per unit exponent.
  std::vector<std::int32_t> letters() const;
  static Word from_letters(const std::vector<std::int32_t> &letters);
  /// Replaces generator g by images[g].
  Word substitute(const std::vector<Word> &images) const;

  std::string to_string(const std::vector<std::string> &names) const;
  bool operator==(const Word &) const = default;

private:
  std::vector<Syllable> syl_;
};

Word commutator(const Word &x, const Word &y); // x^-1 y^-1 x y

/// Parses letters with optional ^k, '*' or juxtaposition, [x,y] (and
/// left-normed [x,y,z]), parentheses, "1" for the identity and "lhs = rhs".
Word parse_word(const std::string &text, const std::vector<std::string> &names);

std::vector<std::string> default_names(std::size_t n);

struct FinitePresentation {
  std::size_t n_gens = 0;
  std::vector<Word> relators;
  std::vector<std::string> names;

  FinitePresentation() = default;
  FinitePresentation(std::size_t n, std::vector<Word> rels, std::vector<std::string> names = {});
  static FinitePresentation free_group(std::size_t n);

  void validate() const;
  std::string to_string() const; // text format
};

FinitePresentation parse_presentation(std::istream &in);
FinitePresentation parse_presentation(const std::string &text);
FinitePresentation read_presentation_file(const std::string &path);

IntMatrix abelianization_matrix(const FinitePresentation &pres);

// ---------------------------------------------------------------------------
// Coset enumeration

/// Column 2g is generator g, column 2g+1 its inverse.
struct CosetTable {
  std::size_t n_gens = 0;
  std::size_t n_cosets = 0;
  std::vector<std::uint32_t> table; // n_cosets * 2 n_gens
  std::vector<std::int64_t> parent; // BFS tree: parent coset, -1 for coset 0
  std::vector<std::uint32_t> parent_col;

  std::uint32_t at(std::size_t coset, std::size_t col) const { return table[coset * 2 * n_gens + col]; }
  std::uint32_t act(std::uint32_t coset, const Word &w) const;
  /// Permutation of the cosets induced by generator g.
  Permutation generator_action(std::uint32_t g) const;
  /// Checks completeness, compatibility, transitivity and the relators.
  bool verify(const FinitePresentation &pres, const std::vector<Word> &subgroup_gens) const;
  bool operator==(const CosetTable &) const = default;
};

enum class Strategy { hlt, felsch };

CosetTable todd_coxeter(const FinitePresentation &pres, const std::vector<Word> &subgroup_gens,
                        std::size_t max_cosets, Strategy strategy = Strategy::hlt);

/// Presentation on Schreier generators of the subgroup whose coset table is
/// given. Generator names are <gen><coset>, cosets 1-based.
FinitePresentation reidemeister_schreier(const FinitePresentation &pres, const CosetTable &table);

/// Schreier generator words (in the parent group) matching the output of
/// reidemeister_schreier.
std::vector<Word> schreier_generator_words(const FinitePresentation &pres, const CosetTable &table);

// ---------------------------------------------------------------------------
// Homomorphisms

Permutation evaluate(const Word &w, const std::vector<Permutation> &images, std::size_t degree);

struct PermHom {
  FinitePresentation source;
  PermGroup target;
  std::vector<Permutation> images;

  /// Throws HomError naming the first violated relator.
  PermHom(FinitePresentation source, PermGroup target, std::vector<Permutation> images);
  Permutation apply(const Word &w) const { return evaluate(w, images, target.degree()); }
};

PermGroup perm_image(const PermHom &hom);

enum class FpHomCheck { freely_trivial, abelianization_only };

/// Homomorphism between finite presentations. Relator images must be freely
/// trivial or at least trivial in the target's abelianization; which check
/// was conclusive is recorded. Deeper checks happen in nilpotent quotients.
struct FpHom {
  FinitePresentation source;
  FinitePresentation target;
  std::vector<Word> images;
  FpHomCheck check = FpHomCheck::freely_trivial;

  FpHom(FinitePresentation source, FinitePresentation target, std::vector<Word> images);
};

/// Presentation of a finite permutation group on its generators, pruned to a
/// short prefix of Cayley-graph relators that already defines a group of the
/// right order.
FinitePresentation presentation_of(const PermGroup &g, const std::vector<std::string> &names = {});

} // namespace nilcoset::fpgrp
