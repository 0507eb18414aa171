#pragma once

#include <span>
#include <string>

#include "tc/orbital.hpp"
#include "tc/perm_group.hpp"

namespace tc {

enum class ClosureMethod { Backtrack, Oracle, CertifiedEqual };
std::string to_string(ClosureMethod m);

struct ClosureResult {
  PermGroup input;
  PermGroup closure;
  Integer index = 1;  // |closure| / |input|
  ClosureMethod method = ClosureMethod::Backtrack;
  // false when the search ran out of budget; closure is then only a
  // subgroup of the true 2-closure containing the input
  bool certified = true;
  std::uint64_t nodes = 0;
};

// Automorphism group of the orbital coloring of Omega x Omega. With
// shortcuts off, symmetric, regular and rank-2 inputs go through the search too.
ClosureResult two_closure(const PermGroup& G, const Budget& budget = {}, bool shortcuts = true);

bool closure_membership(const PermGroup& G, const Permutation& x);
bool closure_membership(const OrbitalPartition& op, const Permutation& x);

// Filters Sym(n) through the pair condition, extending images point by
// point and dropping a prefix as soon as one pair fails.
PermGroup brute_force_two_closure(const PermGroup& G, std::size_t max_degree = 9);

// G = G_gamma G_delta for all gamma in Gamma and delta in Delta.
bool dissection_condition(const PermGroup& G, std::span<const Point> gamma,
                          std::span<const Point> delta);

// (closure of G^Gamma) x (closure of G^Delta) placed back on Omega; contains
// the closure of G.
PermGroup intransitive_closure_bound(const PermGroup& G, std::span<const Point> gamma,
                                     std::span<const Point> delta, const Budget& budget = {});

}  // namespace tc
