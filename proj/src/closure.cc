#include "tc/closure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "tc/group_ops.hpp"
#include "tc/search.hpp"

namespace tc {

std::string to_string(ClosureMethod m) {
  switch (m) {
    case ClosureMethod::Backtrack: return "backtrack";
    case ClosureMethod::Oracle: return "oracle";
    case ClosureMethod::CertifiedEqual: return "certified-equal";
  }
  return "?";
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Ordered partition of the points. Cells are contiguous ranges of elem and
// are named by their start index.
struct Partition {
  std::vector<Point> elem;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> start;  // point -> start of its cell
  std::vector<std::uint32_t> len;    // cell start -> length
  std::size_t cells = 0;

  bool discrete() const { return cells == elem.size(); }
};

// Equitable refinement of the colored complete digraph. A vertex's
// invariant against a cell W is the sum of a hash of (c(v,w), c(w,v)) over
// w in W. Splits are recorded as trace events so a second partition can be
// compared step by step against the first.
class Refiner {
 public:
  explicit Refiner(const OrbitalPartition& op) : op_(op), n_(op.degree()), h_(n_) {}

  Partition initial(std::vector<std::uint64_t>& trace) {
    Partition P;
    P.elem.resize(n_);
    std::iota(P.elem.begin(), P.elem.end(), Point{0});
    P.pos.assign(P.elem.begin(), P.elem.end());
    P.start.assign(n_, 0);
    P.len.assign(n_, 0);
    P.len[0] = static_cast<std::uint32_t>(n_);
    P.cells = n_ ? 1 : 0;
    if (n_ == 0) return P;
    for (Point v = 0; v < n_; ++v) h_[v] = mix(op_.color(v, v) + 1);
    std::vector<std::uint32_t> queue;
    std::vector<char> inq(n_, 0);
    std::size_t k = 0;
    split(P, 0, &trace, nullptr, k, queue, inq, /*all=*/true);
    for (std::uint32_t c = 0; c < n_; c += P.len[c])
      if (!inq[c]) {
        inq[c] = 1;
        queue.push_back(c);
      }
    refine(P, queue, inq, &trace, nullptr, k);
    return P;
  }

  // Individualizes v and refines. With `expect`, returns false as soon as
  // the trace departs from it.
  bool individualize(Partition& P, Point v, std::vector<std::uint64_t>* record,
                     const std::vector<std::uint64_t>* expect) {
    std::size_t k = 0;
    std::uint32_t c = P.start[v];
    std::uint32_t L = P.len[c];
    if (L > 1) {
      std::uint32_t i = P.pos[v];
      std::swap(P.elem[c], P.elem[i]);
      P.pos[P.elem[i]] = i;
      P.pos[v] = c;
      P.len[c] = 1;
      P.len[c + 1] = L - 1;
      for (std::uint32_t j = c + 1; j < c + L; ++j) P.start[P.elem[j]] = c + 1;
      ++P.cells;
    }
    if (!emit(mix(0xabcdULL ^ (std::uint64_t{c} << 20)), record, expect, k)) return false;
    std::vector<std::uint32_t> queue{c};
    std::vector<char> inq(n_, 0);
    inq[c] = 1;
    if (!refine(P, queue, inq, record, expect, k)) return false;
    return !expect || k == expect->size();
  }

 private:
  static bool emit(std::uint64_t ev, std::vector<std::uint64_t>* record,
                   const std::vector<std::uint64_t>* expect, std::size_t& k) {
    if (record) record->push_back(ev);
    if (expect) {
      if (k >= expect->size() || (*expect)[k] != ev) return false;
    }
    ++k;
    return true;
  }

  // Splits cell c by h_. Queues new fragments (all of them when `all` or
  // when c was queued, otherwise all but the first largest).
  bool split(Partition& P, std::uint32_t c, std::vector<std::uint64_t>* record,
             const std::vector<std::uint64_t>* expect, std::size_t& k,
             std::vector<std::uint32_t>& queue, std::vector<char>& inq, bool all) {
    const std::uint32_t L = P.len[c];
    auto first = P.elem.begin() + c, last = first + L;
    std::sort(first, last, [&](Point a, Point b) { return h_[a] != h_[b] ? h_[a] < h_[b] : a < b; });
    if (h_[*first] == h_[*(last - 1)]) return true;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frags;  // start, length
    std::uint64_t ev = mix(c);
    for (std::uint32_t i = c; i < c + L;) {
      std::uint32_t j = i;
      while (j < c + L && h_[P.elem[j]] == h_[P.elem[i]]) ++j;
      frags.emplace_back(i, j - i);
      ev = mix(ev ^ h_[P.elem[i]]);
      ev = mix(ev + (j - i));
      i = j;
    }
    if (!emit(ev, record, expect, k)) return false;
    for (const auto& [s, l] : frags) {
      P.len[s] = l;
      for (std::uint32_t i = s; i < s + l; ++i) {
        P.start[P.elem[i]] = s;
        P.pos[P.elem[i]] = i;
      }
    }
    P.cells += frags.size() - 1;
    std::size_t skip = frags.size();
    if (!all && !inq[c]) {
      skip = 0;
      for (std::size_t f = 1; f < frags.size(); ++f)
        if (frags[f].second > frags[skip].second) skip = f;
    }
    for (std::size_t f = 0; f < frags.size(); ++f) {
      if (f == skip || inq[frags[f].first]) continue;
      inq[frags[f].first] = 1;
      queue.push_back(frags[f].first);
    }
    return true;
  }

  bool refine(Partition& P, std::vector<std::uint32_t>& queue, std::vector<char>& inq,
              std::vector<std::uint64_t>* record, const std::vector<std::uint64_t>* expect,
              std::size_t& k) {
    std::vector<Point> W;
    std::vector<std::uint32_t> open;
    for (std::size_t q = 0; q < queue.size() && !P.discrete(); ++q) {
      std::uint32_t s = queue[q];
      inq[s] = 0;
      W.assign(P.elem.begin() + s, P.elem.begin() + s + P.len[s]);
      open.clear();
      for (std::uint32_t c = 0; c < n_; c += P.len[c])
        if (P.len[c] > 1) open.push_back(c);
      for (std::uint32_t c : open)
        for (std::uint32_t i = c; i < c + P.len[c]; ++i) {
          Point v = P.elem[i];
          std::uint64_t hv = 0;
          for (Point w : W)
            hv += mix((std::uint64_t{op_.color(v, w)} << 32) | op_.color(w, v));
          h_[v] = hv;
        }
      for (std::uint32_t c : open)
        if (!split(P, c, record, expect, k, queue, inq, false)) return false;
    }
    return true;
  }

  const OrbitalPartition& op_;
  std::size_t n_;
  std::vector<std::uint64_t> h_;
};

bool preserves(const OrbitalPartition& op, const Permutation& x) {
  const std::size_t n = op.degree();
  for (Point a = 0; a < n; ++a) {
    Point xa = x[a];
    for (Point b = 0; b < n; ++b)
      if (op.color(xa, x[b]) != op.color(a, b)) return false;
  }
  return true;
}

class ClosureSearch {
 public:
  ClosureSearch(const PermGroup& G, const OrbitalPartition& op, const Budget& budget,
                const Deadline* deadline)
      : G_(G), op_(op), ref_(op), budget_(budget), deadline_(deadline) {}

  // Strong generators found so far and the order they generate once done.
  std::vector<Permutation> gens;
  Integer order = 1;
  std::uint64_t nodes = 0;

  void run() {
    std::vector<std::uint64_t> t0;
    left_.push_back(ref_.initial(t0));
    trace_.push_back(std::move(t0));
    while (!left_.back().discrete()) {
      const Partition& P = left_.back();
      std::uint32_t best = 0, best_len = 0;
      for (std::uint32_t c = 0; c < P.elem.size(); c += P.len[c])
        if (P.len[c] > 1 && (best_len == 0 || P.len[c] < best_len)) {
          best = c;
          best_len = P.len[c];
        }
      target_.push_back(best);
      Point b = P.elem[best];
      base_.push_back(b);
      Partition Q = P;
      std::vector<std::uint64_t> t;
      ref_.individualize(Q, b, &t, nullptr);
      left_.push_back(std::move(Q));
      trace_.push_back(std::move(t));
    }
    const std::size_t k = base_.size();
    PermGroup Gb = G_.with_base(base_);
    for (const auto& s : Gb.strong_generators())
      if (!s.is_identity()) gens.push_back(s);
    std::vector<Integer> orbit_len(k, 1);
    for (std::size_t i = k; i-- > 0;) {
      std::vector<std::size_t> level_gens;
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (fixes_prefix(gens[s], i)) level_gens.push_back(s);
      const Partition& P = left_[i];
      std::vector<Point> cell(P.elem.begin() + target_[i], P.elem.begin() + target_[i] + P.len[target_[i]]);
      std::vector<char> in_orbit = orbit_of(base_[i], level_gens);
      std::vector<char> failed(op_.degree(), 0);
      auto count = [&] { return static_cast<std::size_t>(std::count(in_orbit.begin(), in_orbit.end(), 1)); };
      std::size_t have = count();
      for (Point w : cell) {
        if (have == cell.size()) break;
        if (in_orbit[w] || failed[w]) continue;
        auto x = search(i, w);
        if (x) {
          level_gens.push_back(gens.size());
          gens.push_back(*x);
          in_orbit = orbit_of(base_[i], level_gens);
          have = count();
        } else {
          auto o = orbit_of(w, level_gens);
          for (Point p = 0; p < o.size(); ++p)
            if (o[p]) failed[p] = 1;
        }
      }
      orbit_len[i] = static_cast<unsigned long>(have);
    }
    for (const auto& l : orbit_len) order *= l;
  }

 private:
  bool fixes_prefix(const Permutation& g, std::size_t i) const {
    for (std::size_t j = 0; j < i; ++j)
      if (g[base_[j]] != base_[j]) return false;
    return true;
  }

  std::vector<char> orbit_of(Point x, const std::vector<std::size_t>& idx) const {
    std::vector<char> seen(op_.degree(), 0);
    std::vector<Point> q{x};
    seen[x] = 1;
    for (std::size_t p = 0; p < q.size(); ++p)
      for (std::size_t s : idx) {
        Point y = gens[s][q[p]];
        if (!seen[y]) {
          seen[y] = 1;
          q.push_back(y);
        }
      }
    return seen;
  }

  void tick() {
    ++nodes;
    if (nodes > budget_.max_nodes) throw BudgetExceeded("closure search node budget exhausted");
    if (deadline_ && (nodes & 255) == 0 && deadline_->expired())
      throw BudgetExceeded("closure search time budget exhausted");
  }

  std::optional<Permutation> leaf(const Partition& Q) {
    const Partition& L = left_.back();
    std::vector<Point> img(op_.degree());
    for (std::size_t j = 0; j < img.size(); ++j) img[L.elem[j]] = Q.elem[j];
    Permutation x(std::move(img));
    if (preserves(op_, x)) return x;
    return std::nullopt;
  }

  // An automorphism fixing base_[0..i-1] and mapping base_[i] to w.
  std::optional<Permutation> search(std::size_t i, Point w) {
    tick();
    Partition Q = left_[i];
    if (!ref_.individualize(Q, w, nullptr, &trace_[i + 1])) return std::nullopt;
    if (i + 1 == base_.size()) return leaf(Q);
    return dive(i + 1, Q);
  }

  std::optional<Permutation> dive(std::size_t d, const Partition& P) {
    const std::uint32_t c = target_[d];
    for (std::uint32_t j = c; j < c + P.len[c]; ++j) {
      tick();
      Partition Q = P;
      if (!ref_.individualize(Q, P.elem[j], nullptr, &trace_[d + 1])) continue;
      std::optional<Permutation> x = d + 1 == base_.size() ? leaf(Q) : dive(d + 1, Q);
      if (x) return x;
    }
    return std::nullopt;
  }

  const PermGroup& G_;
  const OrbitalPartition& op_;
  Refiner ref_;
  Budget budget_;
  const Deadline* deadline_;
  std::vector<Partition> left_;
  std::vector<std::vector<std::uint64_t>> trace_;
  std::vector<std::uint32_t> target_;
  std::vector<Point> base_;
};

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

// The groups in `parts` act on consecutive blocks; `points` lists the
// original point for each position. Returns their product on Omega.
PermGroup place_product(const std::vector<PermGroup>& parts, const std::vector<Point>& points) {
  PermGroup P = direct_product(parts);
  Permutation sigma{std::vector<Point>(points)};
  return conjugate_group(P, sigma);
}

std::vector<std::vector<Point>> orbit_split(const PermGroup& G) { return G.orbits(); }

ClosureResult transitive_closure(const PermGroup& G, const Budget& budget, bool shortcuts) {
  ClosureResult r;
  r.input = G;
  const std::size_t n = G.degree();
  // symmetric and regular groups are 2-closed
  if (shortcuts && (G.is_full_symmetric() || G.order() == factorial(n) ||
                    G.order() == static_cast<unsigned long>(n))) {
    r.closure = G;
    r.method = ClosureMethod::CertifiedEqual;
    return r;
  }
  OrbitalPartition op(G);
  if (shortcuts && op.rank() == 2) {
    r.closure = PermGroup::symmetric(n);
    r.index = r.closure.order() / G.order();
    r.method = ClosureMethod::CertifiedEqual;
    return r;
  }
  Deadline dl(budget.max_seconds);
  ClosureSearch cs(G, op, budget, budget.has_deadline() ? &dl : nullptr);
  try {
    cs.run();
  } catch (const BudgetExceeded&) {
    r.closure = group_from_generators(n, cs.gens);
    r.index = r.closure.order() / G.order();
    r.certified = false;
    r.nodes = cs.nodes;
    return r;
  }
  ChainOptions opt;
  opt.known_order = cs.order;
  r.closure = PermGroup(n, cs.gens, opt);
  r.index = cs.order / G.order();
  r.nodes = cs.nodes;
  return r;
}

}  // namespace

ClosureResult two_closure(const PermGroup& G, const Budget& budget, bool shortcuts) {
  const std::size_t n = G.degree();
  if (n > budget.max_degree) throw BudgetExceeded("degree exceeds the closure budget");
  if (n <= 1 || G.is_transitive()) {
    if (n <= 1) {
      ClosureResult r;
      r.input = r.closure = G;
      r.method = shortcuts ? ClosureMethod::CertifiedEqual : ClosureMethod::Backtrack;
      return r;
    }
    return transitive_closure(G, budget, shortcuts);
  }
  ClosureResult r;
  r.input = G;
  r.method = ClosureMethod::Backtrack;
  auto orbs = orbit_split(G);
  std::vector<PermGroup> parts;
  std::vector<Point> points;
  for (const auto& o : orbs) {
    ClosureResult c = transitive_closure(restrict_group(G, o), budget, shortcuts);
    r.nodes += c.nodes;
    if (!c.certified) {
      r.closure = G;
      r.certified = false;
      return r;
    }
    parts.push_back(std::move(c.closure));
    points.insert(points.end(), o.begin(), o.end());
  }
  PermGroup P = place_product(parts, points);
  OrbitalPartition op(G);
  auto colors = op.dense();
  SearchLimits lim;
  lim.max_nodes = budget.max_nodes;
  Deadline dl(budget.max_seconds);
  if (budget.has_deadline()) lim.deadline = &dl;
  SearchStats st;
  try {
    r.closure = color_automorphisms(P, colors, G.generators(), lim, &st);
  } catch (const BudgetExceeded&) {
    r.closure = G;
    r.certified = false;
  }
  r.nodes += st.nodes;
  r.index = r.closure.order() / G.order();
  return r;
}

bool closure_membership(const OrbitalPartition& op, const Permutation& x) {
  if (x.degree() != op.degree()) throw PreconditionError("degree mismatch");
  return preserves(op, x);
}

bool closure_membership(const PermGroup& G, const Permutation& x) {
  if (x.degree() != G.degree()) throw PreconditionError("degree mismatch");
  return preserves(OrbitalPartition(G), x);
}

PermGroup brute_force_two_closure(const PermGroup& G, std::size_t max_degree) {
  const std::size_t n = G.degree();
  if (n > max_degree) throw PreconditionError("degree too large for exhaustive enumeration");
  // pair orbits by plain breadth-first search on the generators
  std::vector<std::uint32_t> col(n * n, static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < n * n; ++s) {
    if (col[s] != static_cast<std::uint32_t>(-1)) continue;
    col[s] = next;
    std::vector<std::size_t> q{s};
    for (std::size_t p = 0; p < q.size(); ++p)
      for (const auto& g : G.generators()) {
        std::size_t t = g[q[p] / n] * n + g[q[p] % n];
        if (col[t] == static_cast<std::uint32_t>(-1)) {
          col[t] = next;
          q.push_back(t);
        }
      }
    ++next;
  }
  auto C = [&](Point a, Point b) { return col[a * n + b]; };
  std::vector<Point> img(n);
  std::vector<char> used(n, 0);
  std::vector<Permutation> gens;
  PermGroup X(n);
  Integer count = 0;
  std::function<void(Point)> extend = [&](Point d) {
    if (d == n) {
      ++count;
      Permutation x(img);
      if (!X.contains(x)) {
        gens.push_back(x);
        X = PermGroup(n, gens);
      }
      return;
    }
    for (Point y = 0; y < n; ++y) {
      if (used[y] || C(d, d) != C(y, y)) continue;
      bool ok = true;
      for (Point e = 0; ok && e < d; ++e)
        ok = C(e, d) == C(img[e], y) && C(d, e) == C(y, img[e]);
      if (!ok) continue;
      used[y] = 1;
      img[d] = y;
      extend(d + 1);
      used[y] = 0;
    }
  };
  extend(0);
  if (X.order() != count) throw Error("pair-preserving permutations do not form a group");
  return X;
}

namespace {

void check_split(const PermGroup& G, std::span<const Point> gamma, std::span<const Point> delta) {
  const std::size_t n = G.degree();
  std::vector<char> side(n, 0);
  for (Point x : gamma) {
    if (x >= n || side[x]) throw PreconditionError("Gamma and Delta must partition the points");
    side[x] = 1;
  }
  for (Point x : delta) {
    if (x >= n || side[x]) throw PreconditionError("Gamma and Delta must partition the points");
    side[x] = 2;
  }
  for (Point x = 0; x < n; ++x) {
    if (!side[x]) throw PreconditionError("Gamma and Delta must partition the points");
    for (const auto& g : G.generators())
      if (side[g[x]] != side[x]) throw PreconditionError("Gamma is not G-invariant");
  }
}

}  // namespace

bool dissection_condition(const PermGroup& G, std::span<const Point> gamma,
                          std::span<const Point> delta) {
  check_split(G, gamma, delta);
  const std::size_t n = G.degree();
  std::vector<char> in_gamma(n, 0);
  for (Point x : gamma) in_gamma[x] = 1;
  auto orbs = G.orbits();
  // G = G_gamma G_delta iff G_delta is transitive on the G-orbit of gamma;
  // both sides are constant on G-orbits of delta
  for (const auto& od : orbs) {
    if (in_gamma[od.front()]) continue;
    PermGroup S = G.point_stabilizer(od.front());
    std::vector<std::uint32_t> sorb(n, 0);
    auto so = S.orbits();
    for (std::uint32_t i = 0; i < so.size(); ++i)
      for (Point x : so[i]) sorb[x] = i;
    for (const auto& og : orbs) {
      if (!in_gamma[og.front()]) continue;
      for (Point x : og)
        if (sorb[x] != sorb[og.front()]) return false;
    }
  }
  return true;
}

PermGroup intransitive_closure_bound(const PermGroup& G, std::span<const Point> gamma,
                                     std::span<const Point> delta, const Budget& budget) {
  check_split(G, gamma, delta);
  std::vector<PermGroup> parts;
  std::vector<Point> points;
  for (auto side : {gamma, delta}) {
    if (side.empty()) continue;
    std::vector<Point> s(side.begin(), side.end());
    ClosureResult c = two_closure(restrict_group(G, s), budget);
    if (!c.certified) throw BudgetExceeded("constituent closure did not finish");
    parts.push_back(std::move(c.closure));
    points.insert(points.end(), s.begin(), s.end());
  }
  return place_product(parts, points);
}

}  // namespace tc
