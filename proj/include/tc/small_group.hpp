#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "tc/perm_group.hpp"

namespace tc {

// Maps elements of a permutation group to dense indices by their images of
// a base. Lookups take the base-image tuple.
class BaseImageIndex {
 public:
  BaseImageIndex() = default;
  explicit BaseImageIndex(std::vector<Point> base) : base_(std::move(base)) {}

  const std::vector<Point>& base() const { return base_; }
  std::size_t size() const { return count_; }
  // returns the existing index or inserts a new one
  std::uint32_t insert(std::span<const Point> images);
  std::int64_t find(std::span<const Point> images) const;
  std::int64_t find(const Permutation& g) const;
  std::span<const Point> images(std::uint32_t idx) const {
    return {data_.data() + static_cast<std::size_t>(idx) * base_.size(), base_.size()};
  }
  void reserve(std::size_t n);

 private:
  std::uint64_t hash(std::span<const Point> images) const;
  void grow();

  std::vector<Point> base_;
  std::vector<Point> data_;
  std::vector<std::int64_t> table_;
  std::size_t count_ = 0;
};

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const;
};

// Multiplication table of a group with at most a few thousand elements.
class ElementTable {
 public:
  ElementTable(const PermGroup& G, std::size_t max_order = 2000);

  const PermGroup& group() const { return G_; }
  std::size_t size() const { return elements_.size(); }
  const Permutation& element(std::uint32_t i) const { return elements_[i]; }
  std::uint32_t index(const Permutation& g) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * size() + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const { return mul(inv(g), mul(x, g)); }
  std::uint32_t element_order(std::uint32_t a) const { return order_[a]; }
  std::uint32_t identity() const { return identity_; }
  const std::vector<std::uint32_t>& generator_indices() const { return gens_; }

  // element conjugacy classes
  std::uint32_t class_of(std::uint32_t a) const { return class_of_[a]; }
  std::size_t class_count() const { return class_reps_.size(); }
  const std::vector<std::uint32_t>& class_reps() const { return class_reps_; }
  std::size_t class_size(std::size_t c) const { return class_sizes_[c]; }

  Bits empty_bits() const { return Bits((size() + 63) / 64, 0); }
  Bits generate(std::span<const std::uint32_t> gens) const;
  std::vector<std::uint32_t> members(const Bits& b) const;
  Bits conjugate(const Bits& sub, std::uint32_t g) const;
  PermGroup to_group(std::span<const std::uint32_t> gens) const;

 private:
  PermGroup G_;
  std::vector<Permutation> elements_;
  BaseImageIndex index_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> gens_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::uint32_t> class_reps_;
  std::vector<std::size_t> class_sizes_;
};

inline bool test_bit(const Bits& b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(Bits& b, std::uint32_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
std::size_t popcount(const Bits& b);
bool is_subset(const Bits& a, const Bits& b);
Bits bits_and(const Bits& a, const Bits& b);

struct SubgroupClassInfo {
  Bits rep;
  std::vector<std::uint32_t> gens;  // generating elements of rep
  std::size_t order = 0;
  std::size_t class_size = 0;       // number of conjugates
  std::size_t depth = 0;            // shortest maximal chain from G
  std::vector<std::size_t> maximal_in;  // classes containing a conjugate as a maximal subgroup
  Bits core;                        // intersection of the conjugates
};

// All conjugacy classes of subgroups, found by joining known class
// representatives with cyclic subgroups until nothing new appears.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const ElementTable& T);

  const ElementTable& table() const { return T_; }
  std::size_t size() const { return classes_.size(); }
  const SubgroupClassInfo& operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<SubgroupClassInfo>& classes() const { return classes_; }
  std::size_t class_of(const Bits& sub) const;
  const std::vector<Bits>& conjugates(std::size_t c) const { return conjugates_[c]; }
  std::size_t whole() const { return whole_; }
  std::size_t trivial() const { return 0; }
  PermGroup group(std::size_t c) const;
  std::vector<std::size_t> normal_classes() const;
  // classes maximal in G
  std::vector<std::size_t> maximal_classes() const;

 private:
  const ElementTable& T_;
  std::vector<SubgroupClassInfo> classes_;
  std::vector<std::vector<Bits>> conjugates_;
  std::unordered_map<Bits, std::size_t, BitsHash> lookup_;
  std::size_t whole_ = 0;
};

}  // namespace tc
