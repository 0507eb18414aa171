#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tc/perm_group.hpp"

namespace tc {

PermGroup cyclic(std::size_t n);               // regular, on n points
PermGroup dihedral(std::size_t n);             // order 2n, on n points
PermGroup dicyclic(std::size_t order);         // Q8, Q16, ... (order divisible by 4), regular
PermGroup abelian(const std::vector<std::size_t>& cyclic_factors);  // regular
PermGroup direct_product_regular(const PermGroup& A, const PermGroup& B);
PermGroup frobenius20();                        // AGL(1,5) on 5 points
PermGroup gamma_l1_16();                        // GammaL(1,16) on the 15 nonzero field elements
PermGroup psl2(unsigned p);                     // on the projective line, p prime
PermGroup pgl2(unsigned p);
PermGroup mathieu11();
PermGroup sym3_on_five();                       // Sym(3) with orbits of sizes 3 and 2

// Right regular representation of a group given by its multiplication
// table on 0..size-1 with identity 0.
PermGroup regular_from_table(std::size_t size,
                             const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                             const std::vector<std::size_t>& generators);
// Right regular representation of an arbitrary permutation group.
PermGroup regular_representation(const PermGroup& G, std::size_t max_order = 5000);

struct NamedGroup {
  std::string name;
  PermGroup group;
  bool nilpotent = false;
};

// Small groups shipped with the library, by name ("C6", "D8", "Q8xC3", ...).
std::vector<NamedGroup> builtin_groups();
PermGroup builtin_group(const std::string& name);

}  // namespace tc
