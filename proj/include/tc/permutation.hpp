#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tc/common.hpp"

namespace tc {

// A bijection of {0..n-1}. Products act on the right: x^(a*b) = (x^a)^b.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  explicit Permutation(std::vector<Point> images);  // validated

  // cycles use 0-indexed points; missing points are fixed
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);
  // "(1 2 3)(4 5)", 1-indexed; "()" or "" is the identity
  static Permutation parse_cycles(std::size_t degree, const std::string& text);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation operator*(const Permutation& other) const;
  Permutation& operator*=(const Permutation& other);
  Permutation inverse() const;
  Permutation pow(long long e) const;
  // g^-1 * this * g
  Permutation conjugate(const Permutation& g) const;

  bool is_identity() const;
  std::size_t support_size() const;
  Integer order() const;
  std::vector<std::size_t> cycle_type() const;  // sorted cycle lengths > 1
  std::vector<std::vector<Point>> cycles() const;  // nontrivial cycles

  // disjoint cycle notation, 1-indexed unless zero_based
  std::string to_string(bool zero_based = false) const;

  // Restriction to a subset invariant under this permutation; the i-th point
  // of `points` becomes point i.
  Permutation restrict_to(std::span<const Point> points) const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

  std::size_t hash() const;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace tc
