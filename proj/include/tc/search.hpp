#pragma once

#include <functional>
#include <optional>
#include <span>

#include "tc/perm_group.hpp"

namespace tc {

// Base-image backtrack inside a group G. `prune(depth, images)` sees the
// images of base points 0..depth of G's chain and returns false to cut the
// subtree. `accept(g)` decides the property at leaves. Both must describe
// the same property: prune may only reject prefixes no accepted element has.
struct SearchProblem {
  std::function<bool(std::size_t depth, std::span<const Point> images)> prune;
  std::function<bool(const Permutation&)> accept;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

struct SearchLimits {
  std::uint64_t max_nodes = 50000000;
  const Deadline* deadline = nullptr;
};

// The subgroup {g in G : accept(g)}. The property must define a subgroup.
// `known` generators (already satisfying the property) seed the result.
// The chain of G is used as is; callers choose a good base beforehand.
PermGroup subgroup_search(const PermGroup& G, const SearchProblem& problem,
                          const std::vector<Permutation>& known = {},
                          SearchLimits limits = {}, SearchStats* stats = nullptr);

// Some g in G with accept(g), or nothing.
std::optional<Permutation> element_search(const PermGroup& G, const SearchProblem& problem,
                                          SearchLimits limits = {},
                                          SearchStats* stats = nullptr);

// Common instances.
PermGroup setwise_stabilizer(const PermGroup& G, std::span<const Point> set);
PermGroup intersection(const PermGroup& G, const PermGroup& H);
PermGroup centralizer(const PermGroup& G, const Permutation& x);
// g in G with g^-1 x g == y
std::optional<Permutation> conjugating_element(const PermGroup& G, const Permutation& x,
                                               const Permutation& y);
// Largest subgroup of G preserving the n x n color matrix (row-major).
PermGroup color_automorphisms(const PermGroup& G, std::span<const std::uint32_t> colors,
                              const std::vector<Permutation>& known = {},
                              SearchLimits limits = {}, SearchStats* stats = nullptr);

}  // namespace tc
