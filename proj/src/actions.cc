#include "tc/actions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tc/group_ops.hpp"
#include "tc/small_group.hpp"

namespace tc {

namespace {

// Lexicographically least base-image tuple over the coset H*g, where Hb is
// H with a chain based on G's base.
void coset_key(const PermGroup& Hb, std::size_t k, Permutation g, std::vector<Point>& key) {
  key.resize(k);
  for (std::size_t l = 0; l < k; ++l) {
    const ChainLevel& lv = Hb.levels()[l];
    Point best = lv.orbit[0];
    Point best_img = g[best];
    for (Point d : lv.orbit)
      if (g[d] < best_img) {
        best_img = g[d];
        best = d;
      }
    key[l] = best_img;
    if (best != lv.orbit[0]) g = Hb.transversal(l, best) * g;
  }
}

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Point{0}); }
  Point find(Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

BlockSystem canonical(std::vector<std::vector<Point>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return BlockSystem{std::move(blocks)};
}

bool system_less(const BlockSystem& a, const BlockSystem& b) {
  if (a.block_size() != b.block_size()) return a.block_size() < b.block_size();
  return a.blocks.front() < b.blocks.front();
}

}  // namespace

std::vector<Permutation> coset_action_images(const PermGroup& G, const PermGroup& H,
                                             std::size_t max_degree) {
  if (H.degree() != G.degree()) throw PreconditionError("degree mismatch");
  if (!G.contains(H)) throw PreconditionError("H is not a subgroup of G");
  Integer index = G.order() / H.order();
  if (index > static_cast<unsigned long>(max_degree))
    throw BudgetExceeded("coset action degree exceeds the budget");
  const std::vector<Point> base = G.base();
  const std::size_t k = base.size();
  PermGroup Hb = H.with_base(base);
  BaseImageIndex keys(base);
  const auto m = static_cast<std::size_t>(index.get_ui());
  keys.reserve(m);
  std::vector<Permutation> reps;
  std::vector<Point> key;
  coset_key(Hb, k, G.identity(), key);
  keys.insert(key);
  reps.push_back(G.identity());
  const auto& gens = G.generators();
  std::vector<std::vector<Point>> img(gens.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation g = reps[i] * gens[s];
      coset_key(Hb, k, g, key);
      std::size_t before = keys.size();
      std::uint32_t id = keys.insert(key);
      if (keys.size() > before) reps.push_back(std::move(g));
      img[s].push_back(static_cast<Point>(id));
    }
  }
  if (reps.size() != m) throw Error("coset enumeration found an unexpected number of cosets");
  std::vector<Permutation> out;
  for (auto& v : img) out.emplace_back(std::move(v));
  return out;
}

CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::size_t max_degree,
                         bool with_kernel) {
  CosetAction a;
  auto images = coset_action_images(G, H, max_degree);
  a.parent = G;
  a.stabilizer = H;
  const std::size_t m = images.empty() ? Integer(G.order() / H.order()).get_ui() : images.front().degree();
  a.image = PermGroup(m, images);
  if (with_kernel) {
    if (images.empty())
      a.kernel = G;
    else
      a.kernel = CombinedAction(G, images).kernel();
  }
  // coset representatives: G's elements mapping coset 0 to coset i
  std::vector<Permutation> reps(m);
  std::vector<bool> have(m, false);
  reps[0] = G.identity();
  have[0] = true;
  std::vector<Point> queue{0};
  for (std::size_t p = 0; p < queue.size(); ++p)
    for (std::size_t s = 0; s < images.size(); ++s) {
      Point y = images[s][queue[p]];
      if (!have[y]) {
        have[y] = true;
        reps[y] = reps[queue[p]] * G.generators()[s];
        queue.push_back(y);
      }
    }
  a.coset_reps = std::move(reps);
  return a;
}

bool permutationally_equivalent(const PermGroup& G, const PermGroup& act1, const PermGroup& act2) {
  const auto& g1 = act1.generators();
  const auto& g2 = act2.generators();
  if (g1.size() != G.generators().size() || g2.size() != G.generators().size())
    throw PreconditionError("actions must list one image per generator of G");
  if (!act1.is_transitive() || !act2.is_transitive())
    throw PreconditionError("actions must be transitive");
  const std::size_t n1 = act1.degree(), n2 = act2.degree();
  std::vector<Permutation> joined;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    std::vector<Point> img(g1[i].images().begin(), g1[i].images().end());
    for (Point x : g2[i].images()) img.push_back(x + static_cast<Point>(n1));
    joined.emplace_back(std::move(img));
  }
  CombinedAction ca(G, joined);  // throws if these are not actions of G
  if (n1 != n2) return false;
  PermGroup D = ca.image();
  PermGroup S = D.point_stabilizer(0);
  for (Point q = static_cast<Point>(n1); q < n1 + n2; ++q) {
    bool fixed = true;
    for (const auto& s : S.generators())
      if (s[q] != q) {
        fixed = false;
        break;
      }
    if (fixed) return true;
  }
  return false;
}

std::vector<std::uint32_t> BlockSystem::block_of(std::size_t degree) const {
  std::vector<std::uint32_t> b(degree, static_cast<std::uint32_t>(-1));
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (Point x : blocks[i]) b[x] = static_cast<std::uint32_t>(i);
  return b;
}

BlockSystem minimal_block(const PermGroup& G, const std::vector<Point>& seeds) {
  const std::size_t n = G.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  for (Point s : seeds)
    if (uf.unite(0, s)) queue.emplace_back(0, s);
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (const auto& g : G.generators()) {
      Point a = uf.find(g[x]), b = uf.find(g[y]);
      if (a != b) {
        uf.unite(a, b);
        queue.emplace_back(a, b);
      }
    }
  }
  std::vector<std::vector<Point>> by_root(n);
  for (Point x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x);
  std::vector<std::vector<Point>> blocks;
  for (auto& b : by_root)
    if (!b.empty()) blocks.push_back(std::move(b));
  return canonical(std::move(blocks));
}

namespace {

std::vector<BlockSystem> atoms(const PermGroup& G) {
  if (!G.is_transitive()) throw PreconditionError("group is not transitive");
  const std::size_t n = G.degree();
  std::vector<BlockSystem> out;
  if (n <= 2) return out;
  PermGroup S = G.point_stabilizer(0);
  for (const auto& orb : S.orbits()) {
    Point beta = orb.front();
    if (beta == 0) continue;
    BlockSystem sys = minimal_block(G, {beta});
    if (sys.block_size() == n) continue;
    if (std::find(out.begin(), out.end(), sys) == out.end()) out.push_back(std::move(sys));
  }
  return out;
}

}  // namespace

std::vector<BlockSystem> minimal_block_systems(const PermGroup& G) {
  auto cands = atoms(G);
  std::vector<BlockSystem> out;
  for (const auto& a : cands) {
    bool minimal = true;
    for (const auto& b : cands)
      if (b.block_size() < a.block_size() &&
          std::includes(a.blocks.front().begin(), a.blocks.front().end(),
                        b.blocks.front().begin(), b.blocks.front().end())) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), system_less);
  return out;
}

std::vector<BlockSystem> all_block_systems(const PermGroup& G) {
  std::vector<BlockSystem> list = atoms(G);
  const std::vector<BlockSystem> base = list;
  const std::size_t n = G.degree();
  for (std::size_t i = 0; i < list.size(); ++i)
    for (const auto& a : base) {
      std::vector<Point> seeds = list[i].blocks.front();
      seeds.insert(seeds.end(), a.blocks.front().begin(), a.blocks.front().end());
      BlockSystem j = minimal_block(G, seeds);
      if (j.block_size() == n) continue;
      if (std::find(list.begin(), list.end(), j) == list.end()) list.push_back(std::move(j));
    }
  std::sort(list.begin(), list.end(), system_less);
  return list;
}

std::vector<BlockSystem> block_systems_above(const PermGroup& G, const std::vector<Point>& block) {
  std::vector<Point> want = block;
  std::sort(want.begin(), want.end());
  std::vector<BlockSystem> out;
  for (auto& sys : all_block_systems(G)) {
    bool ok = want.empty();
    for (const auto& b : sys.blocks)
      if (std::includes(b.begin(), b.end(), want.begin(), want.end())) ok = true;
    if (ok) out.push_back(std::move(sys));
  }
  return out;
}

bool is_block_system(const PermGroup& G, const BlockSystem& sigma) {
  const std::size_t n = G.degree();
  auto bo = sigma.block_of(n);
  std::size_t total = 0;
  for (const auto& b : sigma.blocks) {
    if (b.size() != sigma.block_size()) return false;
    total += b.size();
  }
  if (total != n) return false;
  for (auto v : bo)
    if (v == static_cast<std::uint32_t>(-1)) return false;
  for (const auto& g : G.generators())
    for (const auto& b : sigma.blocks) {
      std::uint32_t t = bo[g[b.front()]];
      for (Point x : b)
        if (bo[g[x]] != t) return false;
    }
  return true;
}

InducedAction induce_on_blocks(const PermGroup& G, const BlockSystem& sigma) {
  if (!is_block_system(G, sigma)) throw PreconditionError("partition is not G-invariant");
  const std::size_t n = G.degree();
  const std::size_t s = sigma.block_count();
  auto bo = sigma.block_of(n);
  std::vector<Permutation> imgs;
  for (const auto& g : G.generators()) {
    std::vector<Point> img(s);
    for (std::size_t i = 0; i < s; ++i) img[i] = bo[g[sigma.blocks[i].front()]];
    imgs.emplace_back(std::move(img));
  }
  InducedAction ia;
  ia.block_image = PermGroup(s, imgs);
  ia.delta = sigma.blocks[bo[0]];
  if (imgs.empty()) {
    ia.kernel = G;
    ia.block_stabilizer = G;
  } else {
    CombinedAction ca(G, imgs);
    ia.kernel = ca.kernel();
    ia.block_stabilizer = ca.preimage_of_stabilizer(bo[0]);
  }
  ia.within_block = restrict_group(ia.block_stabilizer, ia.delta);
  return ia;
}

}  // namespace tc
