#include "nilcoset/fpgrp.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace nilcoset::fpgrp {

namespace {

void push_reduced(std::vector<Syllable> &out, Syllable s) {
  if (s.exp == 0)
    return;
  if (!out.empty() && out.back().gen == s.gen) {
    out.back().exp += s.exp;
    if (out.back().exp == 0)
      out.pop_back();
    return;
  }
  out.push_back(s);
}

} // namespace

Word::Word(std::vector<Syllable> syllables) {
  for (const auto &s : syllables)
    push_reduced(syl_, s);
}

Word Word::generator(std::uint32_t g, std::int64_t exp) { return Word({{g, exp}}); }

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const auto &s : syl_)
    n += static_cast<std::size_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

std::uint32_t Word::max_generator() const {
  std::uint32_t m = 0;
  for (const auto &s : syl_)
    m = std::max(m, s.gen);
  return m;
}

Word Word::inverse() const {
  Word w;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
    w.syl_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow(std::int64_t e) const {
  Word base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Word r;
  while (n) {
    if (n & 1)
      r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Word Word::operator*(const Word &o) const {
  Word w = *this;
  for (const auto &s : o.syl_)
    push_reduced(w.syl_, s);
  return w;
}

std::vector<std::int32_t> Word::letters() const {
  std::vector<std::int32_t> out;
  for (const auto &s : syl_) {
    const std::int32_t l = static_cast<std::int32_t>(s.gen) + 1;
    for (std::int64_t k = 0; k < (s.exp < 0 ? -s.exp : s.exp); ++k)
      out.push_back(s.exp < 0 ? -l : l);
  }
  return out;
}

Word Word::from_letters(const std::vector<std::int32_t> &letters) {
  std::vector<Syllable> syl;
  for (auto l : letters)
    syl.push_back({static_cast<std::uint32_t>((l < 0 ? -l : l) - 1), l < 0 ? -1 : 1});
  return Word(std::move(syl));
}

Word Word::substitute(const std::vector<Word> &images) const {
  Word w;
  for (const auto &s : syl_) {
    if (s.gen >= images.size())
      throw PresentationError("substitute: generator index out of range");
    w = w * images[s.gen].pow(s.exp);
  }
  return w;
}

std::string Word::to_string(const std::vector<std::string> &names) const {
  if (syl_.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < syl_.size(); ++i) {
    if (i)
      out += "*";
    out += syl_[i].gen < names.size() ? names[syl_[i].gen] : "g" + std::to_string(syl_[i].gen + 1);
    if (syl_[i].exp != 1)
      out += "^" + std::to_string(syl_[i].exp);
  }
  return out;
}

Word commutator(const Word &x, const Word &y) { return x.inverse() * y.inverse() * x * y; }

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  return names;
}

namespace {

class WordParser {
public:
  WordParser(const std::string &text, const std::vector<std::string> &names) : s_(text), names_(names) {}

  Word parse() {
    Word lhs = product();
    skip();
    if (peek() == '=') {
      ++i_;
      Word rhs = product();
      lhs = lhs * rhs.inverse();
    }
    skip();
    if (i_ != s_.size())
      fail("unexpected character");
    return lhs;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw PresentationError(msg + " at position " + std::to_string(i_ + 1) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

  bool starts_factor() {
    skip();
    char c = peek();
    return c == '(' || c == '[' || c == '1' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Word product() {
    Word w = factor();
    while (true) {
      skip();
      if (peek() == '*') {
        ++i_;
        w = w * factor();
      } else if (starts_factor()) {
        w = w * factor();
      } else {
        return w;
      }
    }
  }

  Word factor() {
    Word a = atom();
    skip();
    while (peek() == '^') {
      ++i_;
      skip();
      bool neg = false;
      if (peek() == '-' || peek() == '+') {
        neg = peek() == '-';
        ++i_;
      }
      skip();
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected exponent");
      std::int64_t e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        if (e > std::numeric_limits<std::int64_t>::max() / 10 - 10)
          fail("exponent too large");
        e = e * 10 + (s_[i_++] - '0');
      }
      a = a.pow(neg ? -e : e);
      skip();
    }
    return a;
  }

  Word atom() {
    skip();
    char c = peek();
    if (c == '(') {
      ++i_;
      Word w = product();
      skip();
      if (peek() != ')')
        fail("expected ')'");
      ++i_;
      return w;
    }
    if (c == '[') {
      ++i_;
      Word w = product();
      skip();
      if (peek() != ',')
        fail("expected ','");
      while (peek() == ',') {
        ++i_;
        w = commutator(w, product());
        skip();
      }
      if (peek() != ']')
        fail("expected ']'");
      ++i_;
      return w;
    }
    if (c == '1') {
      ++i_;
      return {};
    }
    // Longest generator name matching here.
    std::size_t best = names_.size(), best_len = 0;
    for (std::size_t g = 0; g < names_.size(); ++g) {
      const auto &n = names_[g];
      if (n.size() > best_len && s_.compare(i_, n.size(), n) == 0) {
        best = g;
        best_len = n.size();
      }
    }
    if (best == names_.size())
      fail("unknown generator");
    i_ += best_len;
    return Word::generator(static_cast<std::uint32_t>(best));
  }

  const std::string &s_;
  const std::vector<std::string> &names_;
  std::size_t i_ = 0;
};

} // namespace

Word parse_word(const std::string &text, const std::vector<std::string> &names) {
  return WordParser(text, names).parse();
}

FinitePresentation::FinitePresentation(std::size_t n, std::vector<Word> rels, std::vector<std::string> nm)
    : n_gens(n), relators(std::move(rels)), names(std::move(nm)) {
  if (names.empty())
    names = default_names(n);
  validate();
}

FinitePresentation FinitePresentation::free_group(std::size_t n) { return FinitePresentation(n, {}); }

void FinitePresentation::validate() const {
  if (names.size() != n_gens)
    throw PresentationError("presentation has " + std::to_string(n_gens) + " generators but " +
                            std::to_string(names.size()) + " names");
  for (std::size_t i = 0; i < relators.size(); ++i)
    if (!relators[i].empty() && relators[i].max_generator() >= n_gens)
      throw PresentationError("relator " + std::to_string(i + 1) + " uses an undeclared generator");
}

std::string FinitePresentation::to_string() const {
  std::string out = "gens";
  for (const auto &n : names)
    out += " " + n;
  out += "\n";
  for (const auto &r : relators)
    out += r.to_string(names) + "\n";
  return out;
}

FinitePresentation parse_presentation(std::istream &in) {
  std::string line;
  std::vector<std::string> names;
  bool have_gens = false;
  std::vector<Word> rels;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue;
    if (!have_gens) {
      if (first != "gens")
        throw PresentationError("presentation must start with \"gens ...\"");
      for (std::string n; ls >> n;) {
        if (std::find(names.begin(), names.end(), n) != names.end())
          throw PresentationError("duplicate generator name " + n);
        names.push_back(n);
      }
      have_gens = true;
      continue;
    }
    rels.push_back(parse_word(line, names));
  }
  if (!have_gens)
    throw PresentationError("presentation is empty");
  const std::size_t n = names.size();
  return FinitePresentation(n, std::move(rels), std::move(names));
}

FinitePresentation parse_presentation(const std::string &text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

FinitePresentation read_presentation_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw PresentationError("cannot open " + path);
  return parse_presentation(in);
}

IntMatrix abelianization_matrix(const FinitePresentation &pres) {
  IntMatrix m(pres.relators.size(), pres.n_gens);
  for (std::size_t r = 0; r < pres.relators.size(); ++r)
    for (const auto &s : pres.relators[r].syllables())
      m(r, s.gen) += static_cast<long>(s.exp);
  return m;
}

} // namespace nilcoset::fpgrp
