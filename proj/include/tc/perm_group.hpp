#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tc/permutation.hpp"

namespace tc {

struct ChainOptions {
  std::vector<Point> base_prefix;
  // When set, random Schreier-Sims stops as soon as the chain reaches this
  // order and the deterministic pass is skipped.
  std::optional<Integer> known_order;
  // Source of uniformly random elements of the group (e.g. an existing chain
  // of the same group). Used together with known_order for base changes.
  std::function<Permutation()> random_source;
};

// One level of a stabilizer chain: the orbit of base point b_i under the
// strong generators fixing b_0..b_{i-1}, stored as a Schreier vector with an
// optional explicit transversal.
struct ChainLevel {
  Point base = 0;
  std::vector<std::uint32_t> gens;       // indices into the strong generator list
  std::vector<Point> orbit;              // orbit[0] == base
  std::vector<std::int32_t> slot;        // point -> orbit position, -1 if absent
  std::vector<std::int32_t> label;       // per position: generator index (into gens), -1 at root
  std::vector<Permutation> reps;         // explicit u_gamma per position, may be empty
  std::vector<Permutation> reps_inv;

  bool in_orbit(Point x) const { return slot[x] >= 0; }
};

class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(std::size_t degree);  // trivial group
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            const ChainOptions& options = {});

  static PermGroup symmetric(std::size_t degree);
  static PermGroup alternating(std::size_t degree);
  // factors act on consecutive blocks of points; the chain is assembled
  // from the factors' chains without any randomized construction
  static PermGroup direct_product(const std::vector<PermGroup>& factors);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Integer& order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  std::vector<Point> base() const;
  const std::vector<ChainLevel>& levels() const { return levels_; }
  const std::vector<Permutation>& strong_generators() const { return strong_; }
  std::size_t chain_length() const { return levels_.size(); }

  // u with base(i)^u == x; x must lie in the i-th fundamental orbit
  Permutation transversal(std::size_t level, Point x) const;
  Permutation transversal_inverse(std::size_t level, Point x) const;

  // Strips g through levels from `from`. Returns the residue and the first
  // level at which it could not continue (chain_length() if it got through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& p) const;
  bool contains(const PermGroup& h) const;  // h <= this
  friend bool operator==(const PermGroup& a, const PermGroup& b);

  std::vector<std::vector<Point>> orbits() const;
  std::vector<Point> orbit(Point x) const;
  bool is_transitive() const;
  std::vector<Point> moved_points() const;

  // Same group with a chain whose base starts with `prefix`.
  PermGroup with_base(std::span<const Point> prefix) const;
  // G^(i): pointwise stabilizer of the first i base points, chain reused.
  PermGroup chain_stabilizer(std::size_t i) const;
  PermGroup point_stabilizer(Point x) const;
  PermGroup pointwise_stabilizer(std::span<const Point> points) const;

  Permutation random_element() const;
  Permutation identity() const { return Permutation(degree_); }

  // Calls f on every element; stops early when f returns false.
  // Throws BudgetExceeded when order > max_elements.
  void for_each_element(const std::function<bool(const Permutation&)>& f,
                        const Integer& max_elements = Integer(10000000)) const;
  std::vector<Permutation> elements(const Integer& max_elements = Integer(10000000)) const;

  bool is_abelian() const;
  bool is_full_symmetric() const { return full_sym_; }

 private:
  void build(std::vector<Permutation> gens, const ChainOptions& options);
  void add_strong(const Permutation& h, std::size_t upto_level);
  void rebuild_level(std::size_t i);
  void append_level(Point b);
  void schreier_sims_random(const std::function<Permutation()>& source,
                            const std::optional<Integer>& target, std::size_t patience);
  void schreier_sims_complete();
  void finish();
  void make_symmetric_chain(bool alternating);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
  std::vector<ChainLevel> levels_;
  Integer order_ = 1;
  bool full_sym_ = false;
};

PermGroup group_from_generators(std::vector<Permutation> generators);
PermGroup group_from_generators(std::size_t degree, std::vector<Permutation> generators);

}  // namespace tc
