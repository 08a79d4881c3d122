#include "nilcoset/permgrp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nilcoset::permgrp {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p])
      throw GroupError("permutation images are not a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>> &cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto &cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point p = cycle[i];
      if (p < 1 || p > degree)
        throw GroupError("cycle point " + std::to_string(p) + " outside 1.." + std::to_string(degree));
      if (used[p - 1])
        throw GroupError("point " + std::to_string(p) + " repeated in cycles");
      used[p - 1] = true;
      img[p - 1] = cycle[(i + 1) % cycle.size()] - 1;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse(const std::string &text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw GroupError("expected '(' in permutation \"" + text + "\"");
    ++i;
    std::vector<Point> cycle;
    while (true) {
      skip_ws();
      if (i >= text.size())
        throw GroupError("unterminated cycle in \"" + text + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw GroupError("unexpected character in permutation \"" + text + "\"");
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<unsigned long>(text[i++] - '0');
      cycle.push_back(static_cast<Point>(v));
    }
    if (!cycle.empty())
      cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::operator*(const Permutation &rhs) const {
  if (rhs.degree() != degree())
    throw GroupError("product of permutations of different degree");
  std::vector<Point> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    img[i] = rhs.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    p.images_[images_[i]] = static_cast<Point>(i);
  return p;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation r(degree());
  while (n) {
    if (n & 1)
      r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Permutation Permutation::conjugate_by(const Permutation &g) const {
  // x^(g^-1 p g): image of x^g... computed as g^-1 * this * g directly.
  std::vector<Point> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    img[g.images_[i]] = g.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t o = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    std::uint64_t len = 0;
    for (Point p = static_cast<Point>(i); !seen[p]; p = images_[p]) {
      seen[p] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

Point Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

Permutation Permutation::embedded(std::size_t degree, std::size_t shift) const {
  if (degree < images_.size() + shift)
    throw GroupError("embedding into a smaller domain");
  Permutation p(degree);
  for (std::size_t i = 0; i < images_.size(); ++i)
    p.images_[i + shift] = static_cast<Point>(images_[i] + shift);
  return p;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    any = true;
    os << '(';
    bool first = true;
    for (Point p = static_cast<Point>(i); !seen[p]; p = images_[p]) {
      seen[p] = true;
      os << (first ? "" : " ") << p + 1;
      first = false;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

Permutation commutator(const Permutation &x, const Permutation &y) {
  return x.inverse() * y.inverse() * x * y;
}

std::size_t PermutationHash::operator()(const Permutation &p) const noexcept {
  return PointVectorHash{}(p.images());
}

std::size_t PointVectorHash::operator()(const std::vector<Point> &v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

} // namespace nilcoset::permgrp
