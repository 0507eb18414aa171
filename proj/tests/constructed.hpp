#pragma once

// Imprimitive groups built as coset actions: L a transitive 2-closed group
// of small degree, H a proper subgroup of a point stabilizer of L. The
// action of L on the cosets of H has the cosets of the point stabilizer as
// a block system, and L acts on those blocks as it does on its points.

#include <random>
#include <string>
#include <vector>

#include "tc/actions.hpp"
#include "tc/closure.hpp"
#include "tc/small_group.hpp"

namespace cases {

struct Imprimitive {
  tc::PermGroup G;
  tc::BlockSystem sigma;
  std::string label;
};

inline std::vector<Imprimitive> imprimitive(std::size_t max_l_degree, std::size_t max_degree,
                                            std::size_t limit = 1000) {
  using namespace tc;
  std::vector<Imprimitive> out;
  for (std::size_t n = 2; n <= max_l_degree; ++n) {
    ElementTable T(PermGroup::symmetric(n), 1000);
    SubgroupLattice lat(T);
    for (std::size_t c = 0; c < lat.size(); ++c) {
      PermGroup L = lat.group(c);
      if (!L.is_transitive() || two_closure(L).index != 1) continue;
      PermGroup M = L.point_stabilizer(0);
      ElementTable TM(M, 1000);
      SubgroupLattice lm(TM);
      for (std::size_t h = 0; h < lm.size(); ++h) {
        PermGroup H = lm.group(h);
        if (H.order() == M.order()) continue;
        Integer idx = L.order() / H.order();
        if (idx > static_cast<unsigned long>(max_degree)) continue;
        PermGroup G = coset_action(L, H).image;
        for (const auto& s : all_block_systems(G)) {
          if (s.block_count() != n) continue;
          // keep systems whose block action is the 2-closed L
          if (two_closure(induce_on_blocks(G, s).block_image).index != 1) continue;
          out.push_back({G, s,
                         "L order " + L.order().get_str() + " on " + std::to_string(n) + ", H order " +
                             H.order().get_str()});
          if (out.size() >= limit) return out;
        }
      }
    }
  }
  return out;
}

// Random transitive subgroups of Sym(k) wr Sym(n) on k*n points, blocks
// {i*k .. i*k+k-1}, kept when the block action is 2-closed.
inline std::vector<Imprimitive> random_wreath(std::size_t k, std::size_t n, std::size_t count,
                                              std::mt19937_64& gen, std::size_t max_tries = 5000) {
  using namespace tc;
  BlockSystem sigma;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Point> b;
    for (std::size_t j = 0; j < k; ++j) b.push_back(static_cast<Point>(i * k + j));
    sigma.blocks.push_back(b);
  }
  auto element = [&] {
    std::vector<Point> top(n), img(k * n);
    for (std::size_t i = 0; i < n; ++i) top[i] = static_cast<Point>(i);
    std::shuffle(top.begin(), top.end(), gen);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Point> in(k);
      for (std::size_t j = 0; j < k; ++j) in[j] = static_cast<Point>(j);
      std::shuffle(in.begin(), in.end(), gen);
      for (std::size_t j = 0; j < k; ++j) img[i * k + j] = static_cast<Point>(top[i] * k + in[j]);
    }
    return Permutation(img);
  };
  std::vector<Imprimitive> out;
  for (std::size_t t = 0; t < max_tries && out.size() < count; ++t) {
    PermGroup G(k * n, {element(), element()});
    if (!G.is_transitive()) continue;
    if (two_closure(induce_on_blocks(G, sigma).block_image).index != 1) continue;
    out.push_back({G, sigma, "random " + std::to_string(n) + " blocks of size " + std::to_string(k) +
                                 ", order " + G.order().get_str()});
  }
  return out;
}

}  // namespace cases
