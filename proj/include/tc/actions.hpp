#pragma once

#include <optional>
#include <vector>

#include "tc/perm_group.hpp"

namespace tc {

// Action of G on the right cosets of H. image's generators correspond
// one-to-one with G's generators; coset 0 is H itself.
struct CosetAction {
  PermGroup parent;
  PermGroup stabilizer;
  PermGroup image;
  PermGroup kernel;
  std::vector<Permutation> coset_reps;
};

CosetAction coset_action(const PermGroup& G, const PermGroup& H,
                         std::size_t max_degree = 100000, bool with_kernel = true);

// Generator images of G acting on the cosets of H (no kernel computation).
std::vector<Permutation> coset_action_images(const PermGroup& G, const PermGroup& H,
                                             std::size_t max_degree = 100000);

// act1 and act2 are transitive groups whose generators are the images of
// G's generators under two actions. True iff their point stabilizers
// correspond to conjugate subgroups of G.
bool permutationally_equivalent(const PermGroup& G, const PermGroup& act1, const PermGroup& act2);

struct BlockSystem {
  std::vector<std::vector<Point>> blocks;  // each sorted; ordered by least point
  std::size_t block_count() const { return blocks.size(); }
  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  std::vector<std::uint32_t> block_of(std::size_t degree) const;
  friend bool operator==(const BlockSystem& a, const BlockSystem& b) { return a.blocks == b.blocks; }
};

// Finest block system with 0 and every point of `seeds` in one block.
BlockSystem minimal_block(const PermGroup& G, const std::vector<Point>& seeds);
std::vector<BlockSystem> minimal_block_systems(const PermGroup& G);
// Nontrivial block systems whose block through 0 contains `block`
// (pass {0} or an empty list for all of them).
std::vector<BlockSystem> block_systems_above(const PermGroup& G, const std::vector<Point>& block);
std::vector<BlockSystem> all_block_systems(const PermGroup& G);
bool is_block_system(const PermGroup& G, const BlockSystem& sigma);

struct InducedAction {
  PermGroup block_image;        // L = G^Sigma, generators aligned with G's
  PermGroup kernel;
  PermGroup block_stabilizer;   // M = G_Delta, Delta the block containing 0
  PermGroup within_block;       // R = M^Delta on |Delta| points
  std::vector<Point> delta;     // points of Delta; point i of R is delta[i]
};

InducedAction induce_on_blocks(const PermGroup& G, const BlockSystem& sigma);

}  // namespace tc
