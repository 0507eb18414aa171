#include "tc/search.hpp"

#include <algorithm>

namespace tc {

namespace {

class Backtrack {
 public:
  Backtrack(const PermGroup& G, const SearchProblem& problem, SearchLimits limits,
            SearchStats* stats)
      : G_(G), problem_(problem), limits_(limits), stats_(stats),
        base_(G.base()), images_(base_.size()) {}

  // Looks for g in G^(level) with base[level]^g == target.
  std::optional<Permutation> find_from(std::size_t level, Point target) {
    for (std::size_t l = 0; l < level; ++l) images_[l] = base_[l];
    images_[level] = target;
    tick();
    if (problem_.prune && !problem_.prune(level, std::span<const Point>(images_.data(), level + 1)))
      return std::nullopt;
    Permutation p = G_.transversal(level, target);
    return descend(level + 1, p);
  }

  std::optional<Permutation> find_any() {
    return descend(0, G_.identity());
  }

 private:
  void tick() {
    if (stats_) ++stats_->nodes;
    if (++nodes_ > limits_.max_nodes) throw BudgetExceeded("backtrack node budget exhausted");
    if (limits_.deadline && (nodes_ & 1023) == 0 && limits_.deadline->expired())
      throw BudgetExceeded("backtrack time budget exhausted");
  }

  std::optional<Permutation> descend(std::size_t level, const Permutation& p) {
    if (level == base_.size()) {
      if (stats_) ++stats_->leaves;
      if (!problem_.accept || problem_.accept(p)) return p;
      return std::nullopt;
    }
    const ChainLevel& lv = G_.levels()[level];
    for (Point d : lv.orbit) {
      images_[level] = p[d];
      tick();
      if (problem_.prune &&
          !problem_.prune(level, std::span<const Point>(images_.data(), level + 1)))
        continue;
      auto r = descend(level + 1, G_.transversal(level, d) * p);
      if (r) return r;
    }
    return std::nullopt;
  }

  const PermGroup& G_;
  const SearchProblem& problem_;
  SearchLimits limits_;
  SearchStats* stats_;
  std::vector<Point> base_;
  std::vector<Point> images_;
  std::uint64_t nodes_ = 0;
};

PermGroup with_prefix(std::size_t n, const std::vector<Permutation>& gens,
                      const std::vector<Point>& prefix) {
  ChainOptions opt;
  opt.base_prefix = prefix;
  return PermGroup(n, gens, opt);
}

}  // namespace

PermGroup subgroup_search(const PermGroup& G, const SearchProblem& problem,
                          const std::vector<Permutation>& known, SearchLimits limits,
                          SearchStats* stats) {
  const std::size_t n = G.degree();
  const std::vector<Point> base = G.base();
  std::vector<Permutation> kgens;
  for (const auto& g : known)
    if (!g.is_identity()) kgens.push_back(g);
  PermGroup K = with_prefix(n, kgens, base);
  Backtrack bt(G, problem, limits, stats);
  std::vector<char> failed(n);
  for (std::size_t i = base.size(); i-- > 0;) {
    std::fill(failed.begin(), failed.end(), 0);
    for (Point target : G.levels()[i].orbit) {
      if (K.levels()[i].in_orbit(target) || failed[target]) continue;
      auto g = bt.find_from(i, target);
      if (g) {
        kgens.push_back(*g);
        K = with_prefix(n, kgens, base);
      } else {
        // nothing maps base[i] into this K^(i)-orbit either
        PermGroup Ki = K.chain_stabilizer(i);
        for (Point x : Ki.orbit(target)) failed[x] = 1;
      }
    }
  }
  return K;
}

std::optional<Permutation> element_search(const PermGroup& G, const SearchProblem& problem,
                                          SearchLimits limits, SearchStats* stats) {
  Backtrack bt(G, problem, limits, stats);
  return bt.find_any();
}

PermGroup setwise_stabilizer(const PermGroup& G, std::span<const Point> set) {
  const std::size_t n = G.degree();
  std::vector<char> in(n, 0);
  for (Point x : set) {
    if (x >= n) throw PreconditionError("point out of range");
    in[x] = 1;
  }
  std::size_t size = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
  if (size == 0 || size == n) return G;
  // base the chain on the smaller side so prefixes decide membership early
  std::vector<Point> prefix;
  bool side = size * 2 <= n;
  for (Point x : G.moved_points())
    if (static_cast<bool>(in[x]) == side) prefix.push_back(x);
  PermGroup H = G.with_base(prefix);
  std::vector<Point> base = H.base();
  SearchProblem prob;
  prob.prune = [&](std::size_t d, std::span<const Point> img) {
    return in[base[d]] == in[img[d]];
  };
  prob.accept = [&](const Permutation& g) {
    for (Point x = 0; x < n; ++x)
      if (in[x] && !in[g[x]]) return false;
    return true;
  };
  return subgroup_search(H, prob);
}

PermGroup intersection(const PermGroup& G1, const PermGroup& G2) {
  if (G1.degree() != G2.degree()) throw PreconditionError("degree mismatch");
  if (G1.contains(G2)) return G2;
  if (G2.contains(G1)) return G1;
  const PermGroup& A = G1.order() <= G2.order() ? G1 : G2;
  const PermGroup& B0 = G1.order() <= G2.order() ? G2 : G1;
  std::vector<Point> abase = A.base();
  PermGroup B = B0.with_base(abase);
  const std::size_t n = A.degree();
  // inverse transversals of B, materialized lazily per level
  std::vector<std::vector<Permutation>> binv(abase.size());
  auto inv_rep = [&](std::size_t l, Point x) -> const Permutation& {
    auto& v = binv[l];
    if (v.empty()) v.resize(n);
    if (v[x].degree() == 0) v[x] = B.transversal_inverse(l, x);
    return v[x];
  };
  SearchProblem prob;
  prob.prune = [&](std::size_t d, std::span<const Point> img) {
    // is there b in B with base[l]^b == img[l] for l <= d?
    std::vector<Point> cur(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(d) + 1);
    for (std::size_t l = 0; l <= d; ++l) {
      Point g = cur[l];
      if (!B.levels()[l].in_orbit(g)) return false;
      const Permutation& w = inv_rep(l, g);
      for (std::size_t m = l + 1; m <= d; ++m) cur[m] = w[cur[m]];
    }
    return true;
  };
  prob.accept = [&](const Permutation& g) { return B.contains(g); };
  return subgroup_search(A, prob);
}

namespace {

std::vector<std::size_t> cycle_lengths(const Permutation& x) {
  std::vector<std::size_t> len(x.degree(), 0);
  for (Point a = 0; a < x.degree(); ++a) {
    if (len[a]) continue;
    std::size_t l = 0;
    Point b = a;
    do {
      ++l;
      b = x[b];
    } while (b != a);
    b = a;
    do {
      len[b] = l;
      b = x[b];
    } while (b != a);
  }
  return len;
}

SearchProblem conjugacy_problem(const std::vector<Point>& base, const Permutation& x,
                                const Permutation& y, std::vector<std::size_t>& lx,
                                std::vector<std::size_t>& ly) {
  lx = cycle_lengths(x);
  ly = cycle_lengths(y);
  SearchProblem prob;
  prob.prune = [&base, &x, &y, &lx, &ly](std::size_t d, std::span<const Point> img) {
    if (lx[base[d]] != ly[img[d]]) return false;
    for (std::size_t l = 0; l < d; ++l) {
      if (x[base[l]] == base[d] && y[img[l]] != img[d]) return false;
      if (x[base[d]] == base[l] && y[img[d]] != img[l]) return false;
    }
    return true;
  };
  prob.accept = [&x, &y](const Permutation& g) { return x.conjugate(g) == y; };
  return prob;
}

}  // namespace

PermGroup centralizer(const PermGroup& G, const Permutation& x) {
  std::vector<Point> base = G.base();
  std::vector<std::size_t> lx, ly;
  SearchProblem prob = conjugacy_problem(base, x, x, lx, ly);
  std::vector<Permutation> known;
  if (G.contains(x)) known.push_back(x);
  return subgroup_search(G, prob, known);
}

std::optional<Permutation> conjugating_element(const PermGroup& G, const Permutation& x,
                                               const Permutation& y) {
  if (x.cycle_type() != y.cycle_type()) return std::nullopt;
  std::vector<Point> base = G.base();
  std::vector<std::size_t> lx, ly;
  SearchProblem prob = conjugacy_problem(base, x, y, lx, ly);
  return element_search(G, prob);
}

PermGroup color_automorphisms(const PermGroup& G, std::span<const std::uint32_t> colors,
                              const std::vector<Permutation>& known, SearchLimits limits,
                              SearchStats* stats) {
  const std::size_t n = G.degree();
  if (colors.size() != n * n) throw PreconditionError("color matrix size mismatch");
  std::vector<Point> base = G.base();
  auto C = [&](Point a, Point b) { return colors[static_cast<std::size_t>(a) * n + b]; };
  SearchProblem prob;
  prob.prune = [&](std::size_t d, std::span<const Point> img) {
    for (std::size_t l = 0; l <= d; ++l) {
      if (C(base[l], base[d]) != C(img[l], img[d])) return false;
      if (C(base[d], base[l]) != C(img[d], img[l])) return false;
    }
    return true;
  };
  prob.accept = [&](const Permutation& g) {
    for (Point a = 0; a < n; ++a)
      for (Point b = 0; b < n; ++b)
        if (C(a, b) != C(g[a], g[b])) return false;
    return true;
  };
  return subgroup_search(G, prob, known, limits, stats);
}

}  // namespace tc
