#include "tc/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace tc {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw PreconditionError("image list is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (Point x : c) {
      if (x >= degree) throw PreconditionError("cycle point out of range");
      if (used[x]) throw PreconditionError("cycles are not disjoint");
      used[x] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) p.images_[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

Permutation Permutation::parse_cycles(std::size_t degree, const std::string& text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", 1, i + 1);
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip();
      if (i >= text.size()) throw ParseError("unterminated cycle", 1, i + 1);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError(std::string("unexpected character '") + text[i] + "'", 1, i + 1);
      unsigned long long v = 0;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v > degree) throw ParseError("point exceeds degree", 1, start + 1);
        ++i;
      }
      if (v == 0) throw ParseError("points are 1-indexed", 1, start + 1);
      cycle.push_back(static_cast<Point>(v - 1));
    }
    if (cycle.size() > 1) cycles.push_back(std::move(cycle));
    skip();
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::operator*(const Permutation& other) const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[x] = other.images_[images_[x]];
  return r;
}

Permutation& Permutation::operator*=(const Permutation& other) {
  for (auto& x : images_) x = other.images_[x];
  return *this;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[images_[x]] = static_cast<Point>(x);
  return r;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation result(degree());
  while (k) {
    if (k & 1) result *= base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

Permutation Permutation::conjugate(const Permutation& g) const {
  // x^(g^-1 p g): the point y^g maps to (y^p)^g
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t y = 0; y < images_.size(); ++y) r.images_[g.images_[y]] = g.images_[images_[y]];
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::size_t Permutation::support_size() const {
  std::size_t s = 0;
  for (std::size_t x = 0; x < images_.size(); ++x) s += images_[x] != x;
  return s;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lens;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    if (len > 1) lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

Integer Permutation::order() const {
  Integer o = 1;
  for (std::size_t len : cycle_type()) {
    Integer l = static_cast<unsigned long>(len);
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), l.get_mpz_t());
  }
  return o;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    std::vector<Point> c;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_string(bool zero_based) const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(c[i] + (zero_based ? 0 : 1));
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

Permutation Permutation::restrict_to(std::span<const Point> points) const {
  std::vector<Point> local(images_.size(), static_cast<Point>(-1));
  for (std::size_t i = 0; i < points.size(); ++i) local[points[i]] = static_cast<Point>(i);
  std::vector<Point> img(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Point y = local[images_[points[i]]];
    if (y == static_cast<Point>(-1)) throw PreconditionError("restriction to a non-invariant set");
    img[i] = y;
  }
  return Permutation(std::move(img));
}

std::size_t Permutation::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Point x : images_) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace tc
