#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tc/actions.hpp"
#include "tc/closure.hpp"

namespace tc {

// A transitive group with a chosen nontrivial block system. Block 0 is the
// block containing point 0 (Delta); local coordinate c on block i is the
// point delta[c]^t_i, t_i = block_reps[i].
struct ReductionContext {
  PermGroup G;
  BlockSystem sigma;
  PermGroup L;        // action on blocks, generators aligned with G's
  PermGroup kernel;   // of G -> L
  PermGroup M;        // stabilizer of Delta
  PermGroup H;        // stabilizer of point 0
  PermGroup R;        // M restricted to Delta, on |Delta| points
  PermGroup Y;        // 2-closure of R
  std::vector<Point> delta;
  std::vector<Permutation> block_reps;
  bool core_free = true;

  std::size_t block_count() const { return sigma.block_count(); }
  std::size_t block_size() const { return delta.size(); }
  Point point(std::size_t block, Point local) const { return block_reps[block][delta[local]]; }
  // representatives j != 0 of the M-orbits on the other blocks, with orbit lengths
  std::vector<std::pair<std::size_t, std::size_t>> block_orbit_reps() const;
  // M intersected with the stabilizer of block j
  PermGroup two_block_stabilizer(std::size_t j) const;
};

ReductionContext make_reduction_context(const PermGroup& G, const BlockSystem& sigma,
                                        const Budget& budget = {});

// Y^s acting blockwise on Omega in the context's coordinates.
PermGroup base_group(const ReductionContext& ctx, const PermGroup& A);

// K acts on 2d points (d = Y's degree; points d..2d-1 are the second
// block). Returns the pairs (y1, y2) in Y x Y, as permutations of the 2d
// points, that fix setwise every K-orbit on the product of the two blocks.
PermGroup product_one_closure_filter(const PermGroup& K, const PermGroup& Y);

enum class NKind { Trivial, FullDiagonal, ContainsBase, PrimeAbelianSocle, Unclassified };
std::string to_string(NKind k);

struct NStructure {
  NKind kind = NKind::Trivial;
  PermGroup N;                 // block-preserving part of the closure, on Omega
  PermGroup A;                 // projection of N to Delta, on |Delta| points
  std::size_t a = 1;           // common A-orbit length on Delta
  unsigned p = 0;              // for PrimeAbelianSocle
  PermGroup socle_base;        // for ContainsBase: B_S(Y)
  // for FullDiagonal: images of A's generators in each block coordinate
  std::vector<std::vector<Permutation>> diagonal_maps;
  std::string note;
};

struct PairFilter {
  std::size_t block = 0;       // representative j
  std::size_t orbit_length = 0;
  Integer stabilizer_order;    // |M cap M_j|
  Integer filter_order;        // |(Y x Y) cap K^(1)|
  bool full = false;           // filter is Y x Y
  bool diagonal = false;       // filter projects injectively on both sides
};

struct ComplementReport {
  NStructure structure;
  PermGroup closure;           // <N, G>
  bool two_closed = true;      // N <= G
  std::vector<PairFilter> filters;
  // set when |R| is prime and N is not inside G: whether some element of N
  // moves both block 0 and block j, for every representative j
  std::optional<bool> nontrivial_pair_witness;
  std::vector<std::string> diagnostics;
};

// Requires L to be 2-closed. N is the subgroup of B_Y preserving every
// G-orbital; G's closure is then <N, G>. When G is not faithful on the
// blocks, N contains the kernel and G is 2-closed iff N equals the kernel.
ComplementReport crucial_complement(const ReductionContext& ctx, const Budget& budget = {});

NStructure classify_N(const ReductionContext& ctx, const PermGroup& N, const Budget& budget = {});

// Intersection of all nontrivial subnormal subgroups.
PermGroup subnormal_intersection(const PermGroup& Y, const Budget& budget = {});

struct Block2Verdict {
  bool two_closed = true;
  std::optional<Permutation> witness;  // swaps the two points of every block
  std::vector<std::size_t> failing_blocks;
};
Block2Verdict maincor_block2(const ReductionContext& ctx);

struct DivisorReport {
  Integer gcd;
  std::vector<std::pair<std::size_t, Integer>> trail;  // (block j, |L_0j|)
  bool certifies_closed = false;
};
DivisorReport maincor_divisor(const ReductionContext& ctx);

struct PrimeReport {
  bool condition_holds = true;  // false certifies that G is 2-closed
  std::vector<std::size_t> failing_blocks;
};
PrimeReport maincor_prime(const ReductionContext& ctx);

struct InvariantLine {
  std::vector<unsigned> vector;      // first nonzero entry is 1
  std::vector<unsigned> eigenvalues; // one per generator of L
};
// Lines of F_p^n (L on n points) mapped to themselves by every generator.
std::vector<InvariantLine> one_dim_submodules(const PermGroup& L, unsigned p,
                                              std::size_t max_lines = 100000);

struct Strip {
  std::vector<std::size_t> support;
  PermGroup group;  // the strip as a subgroup of H
  // per support entry: generator images on that factor, aligned across entries
  std::vector<std::vector<Permutation>> maps;
};
// factors[i] is the set of points of the i-th simple factor.
std::vector<Strip> strip_decomposition(const PermGroup& H, const std::vector<std::vector<Point>>& factors,
                                       const Budget& budget = {}, bool assume_simple = false);

bool is_simple(const PermGroup& T, const Budget& budget = {});

}  // namespace tc
