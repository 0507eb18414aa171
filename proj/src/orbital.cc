#include "tc/orbital.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace tc {

namespace {

std::size_t width_for(std::size_t rank) {
  if (rank <= 0xff) return 1;
  if (rank <= 0xffff) return 2;
  return 4;
}

}  // namespace

void OrbitalPartition::set(std::size_t i, std::uint32_t c) {
  switch (width_) {
    case 1: cells_[i] = static_cast<std::uint8_t>(c); break;
    case 2: reinterpret_cast<std::uint16_t*>(cells_.data())[i] = static_cast<std::uint16_t>(c); break;
    default: reinterpret_cast<std::uint32_t*>(cells_.data())[i] = c; break;
  }
}

OrbitalPartition::OrbitalPartition(const PermGroup& G) : n_(G.degree()) {
  const std::size_t n = n_;
  transitive_ = G.is_transitive();
  if (n == 0) return;
  if (transitive_) {
    // color(a,b) = suborbit of b^(t_a^-1), t_a mapping 0 to a
    Point zero[1] = {0};
    PermGroup Gb = G.with_base(zero);
    PermGroup S = Gb.chain_stabilizer(1);
    std::vector<std::uint32_t> sub(n, 0);
    std::vector<std::size_t> sub_size;
    {
      // suborbits numbered by least point, i.e. their order of appearance in row 0
      auto orbs = S.orbits();
      std::vector<std::pair<Point, std::size_t>> firsts;
      for (std::size_t i = 0; i < orbs.size(); ++i) firsts.emplace_back(orbs[i].front(), i);
      std::sort(firsts.begin(), firsts.end());
      for (std::size_t c = 0; c < firsts.size(); ++c) {
        for (Point x : orbs[firsts[c].second]) sub[x] = static_cast<std::uint32_t>(c);
        sub_size.push_back(orbs[firsts[c].second].size());
        reps_.emplace_back(0, firsts[c].first);
      }
    }
    width_ = width_for(sub_size.size());
    cells_.assign(n * n * width_, 0);
    for (Point a = 0; a < n; ++a) {
      Permutation ti = Gb.transversal_inverse(0, a);
      for (Point b = 0; b < n; ++b) set(static_cast<std::size_t>(a) * n + b, sub[ti[b]]);
    }
    for (std::size_t c = 0; c < sub_size.size(); ++c) sizes_.push_back(sub_size[c] * n);
  } else {
    std::vector<std::uint32_t> tmp(n * n, static_cast<std::uint32_t>(-1));
    std::vector<std::pair<Point, Point>> queue;
    for (Point a = 0; a < n; ++a)
      for (Point b = 0; b < n; ++b) {
        if (tmp[static_cast<std::size_t>(a) * n + b] != static_cast<std::uint32_t>(-1)) continue;
        auto c = static_cast<std::uint32_t>(sizes_.size());
        tmp[static_cast<std::size_t>(a) * n + b] = c;
        queue.assign(1, {a, b});
        for (std::size_t p = 0; p < queue.size(); ++p)
          for (const auto& g : G.generators()) {
            Point x = g[queue[p].first], y = g[queue[p].second];
            auto& cell = tmp[static_cast<std::size_t>(x) * n + y];
            if (cell != c) {
              cell = c;
              queue.emplace_back(x, y);
            }
          }
        sizes_.push_back(queue.size());
        reps_.emplace_back(a, b);
      }
    width_ = width_for(sizes_.size());
    cells_.assign(n * n * width_, 0);
    for (std::size_t i = 0; i < n * n; ++i) set(i, tmp[i]);
  }
  for (const auto& [a, b] : reps_) paired_.push_back(color(b, a));
}

std::vector<std::uint32_t> OrbitalPartition::dense() const {
  std::vector<std::uint32_t> out(n_ * n_);
  for (Point a = 0; a < n_; ++a)
    for (Point b = 0; b < n_; ++b) out[static_cast<std::size_t>(a) * n_ + b] = color(a, b);
  return out;
}

std::vector<std::size_t> OrbitalPartition::subdegrees() const {
  if (!transitive_) throw PreconditionError("subdegrees need a transitive group");
  std::vector<std::size_t> out;
  for (std::size_t s : sizes_) out.push_back(s / n_);
  std::sort(out.begin(), out.end());
  return out;
}

bool higman_primitive(const PermGroup& G) { return higman_primitive(G, OrbitalPartition(G)); }

bool higman_primitive(const PermGroup& G, const OrbitalPartition& op) {
  if (!G.is_transitive()) throw PreconditionError("group is not transitive");
  const std::size_t n = op.degree();
  const std::size_t r = op.rank();
  // one union-find forest per color, all in one array
  std::vector<Point> parent(r * n);
  for (std::size_t c = 0; c < r; ++c) std::iota(parent.begin() + static_cast<std::ptrdiff_t>(c * n),
                                                parent.begin() + static_cast<std::ptrdiff_t>((c + 1) * n), Point{0});
  auto find = [&](std::size_t c, Point x) {
    Point* p = parent.data() + c * n;
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  std::vector<std::size_t> components(r, n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      if (a == b) continue;
      std::uint32_t c = op.color(a, b);
      Point x = find(c, a), y = find(c, b);
      if (x != y) {
        parent[c * n + std::max(x, y)] = std::min(x, y);
        --components[c];
      }
    }
  for (std::size_t c = 0; c < r; ++c)
    if (!op.is_diagonal(static_cast<std::uint32_t>(c)) && components[c] != 1) return false;
  return true;
}

}  // namespace tc
