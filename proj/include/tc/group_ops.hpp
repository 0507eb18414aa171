#pragma once

#include <span>
#include <vector>

#include "tc/perm_group.hpp"

namespace tc {

// G acting on two domains at once: points 0..n-1 carry G, points n..n+m-1
// carry the image of each generator under a homomorphism. Kernels,
// images and preimages of the homomorphism become stabilizer questions.
class CombinedAction {
 public:
  CombinedAction(const PermGroup& G, const std::vector<Permutation>& images);

  const PermGroup& group() const { return D_; }
  std::size_t left_degree() const { return n_; }
  std::size_t right_degree() const { return m_; }

  PermGroup image() const;   // on m points
  PermGroup kernel() const;  // on n points
  // preimage of the stabilizer of right-hand point x
  PermGroup preimage_of_stabilizer(Point x) const;
  // preimage of a subgroup given by generators on m points
  PermGroup preimage(const PermGroup& sub) const;
  Permutation left(const Permutation& d) const;
  Permutation right(const Permutation& d) const;

 private:
  std::size_t n_, m_;
  PermGroup D_;
};

PermGroup restrict_group(const PermGroup& G, std::span<const Point> invariant_set);
PermGroup conjugate_group(const PermGroup& H, const Permutation& g);
PermGroup normal_closure(const PermGroup& G, const std::vector<Permutation>& gens);
PermGroup derived_subgroup(const PermGroup& G);
bool is_normal(const PermGroup& G, const PermGroup& N);
PermGroup core(const PermGroup& G, const PermGroup& H);
bool is_factorization(const PermGroup& G, const PermGroup& H, const PermGroup& K);
PermGroup direct_product(const std::vector<PermGroup>& factors);  // on the disjoint union

}  // namespace tc
