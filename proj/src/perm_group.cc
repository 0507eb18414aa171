#include "tc/perm_group.hpp"

#include <algorithm>
#include <numeric>

namespace tc {

namespace {

// Explicit transversals are kept while they fit in this many points per group.
constexpr std::size_t kExplicitBudget = std::size_t{1} << 24;
constexpr std::size_t kGenericSymmetricLimit = 12;

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

class ProductReplacement {
 public:
  ProductReplacement(std::size_t degree, const std::vector<Permutation>& gens) {
    for (std::size_t i = 0; i < std::max<std::size_t>(10, gens.size()); ++i)
      slots_.push_back(gens.empty() ? Permutation(degree) : gens[i % gens.size()]);
    acc_ = Permutation(degree);
    for (int i = 0; i < 50; ++i) next();
  }
  Permutation next() {
    auto& r = rng();
    std::uniform_int_distribution<std::size_t> pick(0, slots_.size() - 1);
    std::size_t a = pick(r), b = pick(r);
    while (b == a && slots_.size() > 1) b = pick(r);
    if (r() & 1)
      slots_[a] = slots_[a] * slots_[b];
    else
      slots_[a] = slots_[b] * slots_[a];
    acc_ = acc_ * slots_[a];
    return acc_;
  }

 private:
  std::vector<Permutation> slots_;
  Permutation acc_;
};

}  // namespace

PermGroup::PermGroup(std::size_t degree) : degree_(degree) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators,
                     const ChainOptions& options)
    : degree_(degree) {
  for (const auto& g : generators)
    if (g.degree() != degree) throw PreconditionError("generator degree mismatch");
  build(std::move(generators), options);
}

PermGroup group_from_generators(std::vector<Permutation> generators) {
  if (generators.empty()) throw PreconditionError("degree needed for an empty generator list");
  std::size_t n = generators.front().degree();
  return PermGroup(n, std::move(generators));
}

PermGroup group_from_generators(std::size_t degree, std::vector<Permutation> generators) {
  return PermGroup(degree, std::move(generators));
}

PermGroup PermGroup::symmetric(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<Point> cyc(degree);
    std::iota(cyc.begin(), cyc.end(), Point{0});
    gens.push_back(Permutation::from_cycles(degree, {{0, 1}}));
    if (degree > 2) gens.push_back(Permutation::from_cycles(degree, {cyc}));
  }
  if (degree <= kGenericSymmetricLimit) return PermGroup(degree, gens);
  PermGroup g(degree);
  g.generators_ = gens;
  g.make_symmetric_chain(false);
  return g;
}

PermGroup PermGroup::alternating(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree >= 3) {
    gens.push_back(Permutation::from_cycles(degree, {{0, 1, 2}}));
    if (degree > 3) {
      std::vector<Point> cyc;
      // (1..n) for odd n, (2..n) for even n
      for (std::size_t i = degree % 2 ? 0 : 1; i < degree; ++i) cyc.push_back(static_cast<Point>(i));
      gens.push_back(Permutation::from_cycles(degree, {cyc}));
    }
  }
  if (degree <= kGenericSymmetricLimit) return PermGroup(degree, gens);
  PermGroup g(degree);
  g.generators_ = gens;
  g.make_symmetric_chain(true);
  return g;
}

PermGroup PermGroup::direct_product(const std::vector<PermGroup>& factors) {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.degree();
  PermGroup g(n);
  auto lift = [&](const Permutation& s, std::size_t off) {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t x = 0; x < s.degree(); ++x)
      img[off + x] = static_cast<Point>(off) + s[static_cast<Point>(x)];
    return Permutation(std::move(img));
  };
  std::vector<std::size_t> first_strong;
  std::size_t off = 0;
  for (const auto& f : factors) {
    first_strong.push_back(g.strong_.size());
    for (const auto& s : f.strong_) {
      g.strong_.push_back(lift(s, off));
      g.strong_inv_.push_back(g.strong_.back().inverse());
    }
    for (const auto& s : f.generators_) g.generators_.push_back(lift(s, off));
    off += f.degree();
  }
  off = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& f = factors[k];
    for (const auto& flv : f.levels_) {
      ChainLevel lv;
      lv.base = flv.base + static_cast<Point>(off);
      for (auto s : flv.gens) lv.gens.push_back(static_cast<std::uint32_t>(first_strong[k] + s));
      for (std::size_t s = (k + 1 < factors.size() ? first_strong[k + 1] : g.strong_.size());
           s < g.strong_.size(); ++s)
        lv.gens.push_back(static_cast<std::uint32_t>(s));
      g.levels_.push_back(std::move(lv));
      g.rebuild_level(g.levels_.size() - 1);
    }
    off += f.degree();
  }
  g.finish();
  return g;
}

void PermGroup::make_symmetric_chain(bool alternating) {
  const std::size_t n = degree_;
  const std::size_t step = alternating ? 3 : 2;
  for (std::size_t j = 0; j + step <= n; ++j) {
    std::vector<Point> c;
    for (std::size_t t = 0; t < step; ++t) c.push_back(static_cast<Point>(j + t));
    strong_.push_back(Permutation::from_cycles(n, {c}));
    strong_inv_.push_back(strong_.back().inverse());
  }
  for (std::size_t l = 0; l + step <= n; ++l) {
    ChainLevel lv;
    lv.base = static_cast<Point>(l);
    for (std::size_t j = l; j < strong_.size(); ++j) lv.gens.push_back(static_cast<std::uint32_t>(j));
    levels_.push_back(std::move(lv));
    rebuild_level(levels_.size() - 1);
  }
  full_sym_ = !alternating;
  order_ = factorial(n);
  if (alternating) order_ /= 2;
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

void PermGroup::rebuild_level(std::size_t i) {
  ChainLevel& lv = levels_[i];
  lv.orbit.assign(1, lv.base);
  lv.slot.assign(degree_, -1);
  lv.label.assign(1, -1);
  lv.slot[lv.base] = 0;
  for (std::size_t p = 0; p < lv.orbit.size(); ++p) {
    Point x = lv.orbit[p];
    for (std::size_t k = 0; k < lv.gens.size(); ++k) {
      Point y = strong_[lv.gens[k]][x];
      if (lv.slot[y] < 0) {
        lv.slot[y] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.label.push_back(static_cast<std::int32_t>(k));
      }
    }
  }
  lv.reps.clear();
  lv.reps_inv.clear();
  std::size_t used = 0;
  for (std::size_t j = 0; j < levels_.size(); ++j)
    if (j != i) used += levels_[j].reps.size() * 2 * degree_;
  if (used + lv.orbit.size() * 2 * degree_ <= kExplicitBudget) {
    lv.reps.reserve(lv.orbit.size());
    lv.reps.push_back(Permutation(degree_));
    for (std::size_t p = 1; p < lv.orbit.size(); ++p) {
      const Permutation& s = strong_[lv.gens[lv.label[p]]];
      Point parent = strong_inv_[lv.gens[lv.label[p]]][lv.orbit[p]];
      lv.reps.push_back(lv.reps[lv.slot[parent]] * s);
    }
    lv.reps_inv.reserve(lv.orbit.size());
    for (const auto& u : lv.reps) lv.reps_inv.push_back(u.inverse());
  }
}

Permutation PermGroup::transversal(std::size_t level, Point x) const {
  const ChainLevel& lv = levels_[level];
  std::int32_t pos = lv.slot[x];
  if (pos < 0) throw PreconditionError("point not in fundamental orbit");
  if (!lv.reps.empty()) return lv.reps[pos];
  std::vector<std::uint32_t> path;
  while (lv.label[pos] >= 0) {
    std::uint32_t g = lv.gens[lv.label[pos]];
    path.push_back(g);
    x = strong_inv_[g][x];
    pos = lv.slot[x];
  }
  Permutation u(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u *= strong_[*it];
  return u;
}

Permutation PermGroup::transversal_inverse(std::size_t level, Point x) const {
  const ChainLevel& lv = levels_[level];
  std::int32_t pos = lv.slot[x];
  if (pos < 0) throw PreconditionError("point not in fundamental orbit");
  if (!lv.reps_inv.empty()) return lv.reps_inv[pos];
  Permutation u(degree_);
  while (lv.label[pos] >= 0) {
    std::uint32_t g = lv.gens[lv.label[pos]];
    u *= strong_inv_[g];
    x = strong_inv_[g][x];
    pos = lv.slot[x];
  }
  return u;
}

std::pair<Permutation, std::size_t> PermGroup::sift(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const ChainLevel& lv = levels_[i];
    Point x = g[lv.base];
    std::int32_t pos = lv.slot[x];
    if (pos < 0) return {std::move(g), i};
    if (pos == 0) continue;
    if (!lv.reps_inv.empty()) {
      g *= lv.reps_inv[pos];
    } else {
      while (lv.label[pos] >= 0) {
        std::uint32_t s = lv.gens[lv.label[pos]];
        g *= strong_inv_[s];
        x = strong_inv_[s][x];
        pos = lv.slot[x];
      }
    }
  }
  return {std::move(g), levels_.size()};
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw PreconditionError("degree mismatch");
  if (full_sym_) return true;
  auto [r, lvl] = sift(p);
  return lvl == levels_.size() && r.is_identity();
}

bool PermGroup::contains(const PermGroup& h) const {
  if (h.degree_ != degree_) throw PreconditionError("degree mismatch");
  for (const auto& g : h.generators_)
    if (!contains(g)) return false;
  return true;
}

bool operator==(const PermGroup& a, const PermGroup& b) {
  return a.degree_ == b.degree_ && a.order_ == b.order_ && b.contains(a);
}

void PermGroup::append_level(Point b) {
  ChainLevel lv;
  lv.base = b;
  for (std::size_t s = 0; s < strong_.size(); ++s) {
    bool fixes = true;
    for (const auto& l : levels_)
      if (strong_[s][l.base] != l.base) {
        fixes = false;
        break;
      }
    if (fixes) lv.gens.push_back(static_cast<std::uint32_t>(s));
  }
  levels_.push_back(std::move(lv));
  rebuild_level(levels_.size() - 1);
}

// h fixes b_0..b_{upto-1}; add it to levels from..upto (appending a base
// point when upto is past the end).
void PermGroup::add_strong(const Permutation& h, std::size_t upto) {
  strong_.push_back(h);
  strong_inv_.push_back(h.inverse());
  auto idx = static_cast<std::uint32_t>(strong_.size() - 1);
  if (upto >= levels_.size()) {
    Point moved = 0;
    while (h[moved] == moved) ++moved;
    for (auto& lv : levels_) lv.gens.push_back(idx);
    ChainLevel lv;
    lv.base = moved;
    lv.gens.push_back(idx);
    levels_.push_back(std::move(lv));
    for (std::size_t i = 0; i < levels_.size(); ++i) rebuild_level(i);
    return;
  }
  for (std::size_t i = 0; i <= upto; ++i) {
    levels_[i].gens.push_back(idx);
    rebuild_level(i);
  }
}

void PermGroup::schreier_sims_random(const std::function<Permutation()>& source,
                                     const std::optional<Integer>& target,
                                     std::size_t patience) {
  auto current = [&] {
    Integer o = 1;
    for (const auto& lv : levels_) o *= static_cast<unsigned long>(lv.orbit.size());
    return o;
  };
  std::size_t quiet = 0;
  std::size_t rounds = 0;
  while (true) {
    if (target) {
      Integer o = current();
      if (o == *target) return;
      if (o > *target) throw Error("chain order exceeds the stated group order");
      if (++rounds > 200000) throw Error("random Schreier-Sims did not reach the stated order");
    } else if (quiet >= patience) {
      return;
    }
    auto [h, lvl] = sift(source());
    if (lvl == levels_.size() && h.is_identity()) {
      ++quiet;
      continue;
    }
    quiet = 0;
    add_strong(h, lvl);
  }
}

void PermGroup::schreier_sims_complete() {
  if (levels_.empty()) return;
  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool restart = false;
    const ChainLevel* lv = &levels_[i];
    for (std::size_t p = 0; p < lv->orbit.size() && !restart; ++p) {
      Point x = lv->orbit[p];
      Permutation ux = transversal(i, x);
      for (std::size_t k = 0; k < lv->gens.size(); ++k) {
        std::uint32_t s = lv->gens[k];
        Point y = strong_[s][x];
        // tree edges give trivial Schreier generators
        if (lv->label[lv->slot[y]] == static_cast<std::int32_t>(k) &&
            strong_inv_[s][y] == x)
          continue;
        auto [h, lvl] = sift(ux * strong_[s], i);
        if (lvl == levels_.size() && h.is_identity()) continue;
        add_strong(h, lvl);
        i = std::min(lvl + 1, levels_.size());
        restart = true;
        break;
      }
    }
    (void)lv;
  }
}

void PermGroup::build(std::vector<Permutation> gens, const ChainOptions& options) {
  generators_ = std::move(gens);
  std::vector<Point> prefix;
  for (Point b : options.base_prefix) {
    if (b >= degree_) throw PreconditionError("base point out of range");
    if (std::find(prefix.begin(), prefix.end(), b) == prefix.end()) prefix.push_back(b);
  }
  for (Point b : prefix) append_level(b);
  bool nontrivial = false;
  for (const auto& g : generators_) {
    if (g.is_identity()) continue;
    nontrivial = true;
    auto [h, lvl] = sift(g);
    if (lvl == levels_.size() && h.is_identity()) continue;
    add_strong(h, lvl);
  }
  if (!nontrivial) {
    finish();
    return;
  }
  if (options.random_source) {
    schreier_sims_random(options.random_source, options.known_order, 40);
  } else {
    ProductReplacement pr(degree_, generators_);
    schreier_sims_random([&] { return pr.next(); }, options.known_order, 40);
  }
  if (!options.known_order) schreier_sims_complete();
  finish();
}

void PermGroup::finish() {
  order_ = 1;
  for (const auto& lv : levels_) order_ *= static_cast<unsigned long>(lv.orbit.size());
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::int32_t> id(degree_, -1);
  std::vector<std::vector<Point>> out;
  for (Point x = 0; x < degree_; ++x) {
    if (id[x] >= 0) continue;
    std::vector<Point> orb{x};
    id[x] = static_cast<std::int32_t>(out.size());
    for (std::size_t p = 0; p < orb.size(); ++p)
      for (const auto& g : generators_) {
        Point y = g[orb[p]];
        if (id[y] < 0) {
          id[y] = id[x];
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<Point> PermGroup::orbit(Point x) const {
  if (x >= degree_) throw PreconditionError("point out of range");
  std::vector<bool> seen(degree_, false);
  std::vector<Point> orb{x};
  seen[x] = true;
  for (std::size_t p = 0; p < orb.size(); ++p)
    for (const auto& g : generators_) {
      Point y = g[orb[p]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  return orb;
}

bool PermGroup::is_transitive() const {
  return degree_ <= 1 || orbit(0).size() == degree_;
}

std::vector<Point> PermGroup::moved_points() const {
  std::vector<Point> out;
  for (Point x = 0; x < degree_; ++x)
    for (const auto& g : generators_)
      if (g[x] != x) {
        out.push_back(x);
        break;
      }
  return out;
}

PermGroup PermGroup::with_base(std::span<const Point> prefix) const {
  std::vector<Point> b = base();
  bool ok = prefix.size() <= b.size();
  for (std::size_t i = 0; ok && i < prefix.size(); ++i) ok = b[i] == prefix[i];
  if (ok) return *this;
  ChainOptions opt;
  opt.base_prefix.assign(prefix.begin(), prefix.end());
  opt.known_order = order_;
  auto self = std::make_shared<PermGroup>(*this);
  opt.random_source = [self] { return self->random_element(); };
  PermGroup g(degree_, generators_, opt);
  g.full_sym_ = full_sym_;
  return g;
}

PermGroup PermGroup::chain_stabilizer(std::size_t i) const {
  PermGroup g(degree_);
  if (i >= levels_.size()) return g;
  std::vector<std::int32_t> remap(strong_.size(), -1);
  for (std::uint32_t s : levels_[i].gens) {
    remap[s] = static_cast<std::int32_t>(g.strong_.size());
    g.strong_.push_back(strong_[s]);
    g.strong_inv_.push_back(strong_inv_[s]);
  }
  g.generators_ = g.strong_;
  for (std::size_t l = i; l < levels_.size(); ++l) {
    ChainLevel lv = levels_[l];
    for (auto& s : lv.gens) s = static_cast<std::uint32_t>(remap[s]);
    g.levels_.push_back(std::move(lv));
  }
  g.finish();
  return g;
}

PermGroup PermGroup::point_stabilizer(Point x) const {
  if (x >= degree_) throw PreconditionError("point out of range");
  Point b[1] = {x};
  return with_base(b).chain_stabilizer(1);
}

PermGroup PermGroup::pointwise_stabilizer(std::span<const Point> points) const {
  std::vector<Point> pre;
  for (Point p : points) {
    if (p >= degree_) throw PreconditionError("point out of range");
    if (std::find(pre.begin(), pre.end(), p) == pre.end()) pre.push_back(p);
  }
  return with_base(pre).chain_stabilizer(pre.size());
}

Permutation PermGroup::random_element() const {
  Permutation g(degree_);
  auto& r = rng();
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const auto& orb = levels_[i].orbit;
    std::uniform_int_distribution<std::size_t> pick(0, orb.size() - 1);
    g = transversal(i, orb[pick(r)]) * g;
  }
  return g;
}

void PermGroup::for_each_element(const std::function<bool(const Permutation&)>& f,
                                 const Integer& max_elements) const {
  if (order_ > max_elements) throw BudgetExceeded("group order exceeds the element budget");
  const std::size_t k = levels_.size();
  std::vector<std::vector<Permutation>> reps(k);
  for (std::size_t i = 0; i < k; ++i)
    for (Point x : levels_[i].orbit) reps[i].push_back(transversal(i, x));
  // element = u_{k-1} * ... * u_0
  std::vector<Permutation> partial(k + 1, Permutation(degree_));
  std::vector<std::size_t> idx(k, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
    if (depth == 0) return f(partial[0]);
    std::size_t i = depth - 1;
    for (std::size_t j = 0; j < reps[i].size(); ++j) {
      partial[i] = partial[depth] * reps[i][j];
      if (!rec(i)) return false;
    }
    return true;
  };
  rec(k);
}

std::vector<Permutation> PermGroup::elements(const Integer& max_elements) const {
  std::vector<Permutation> out;
  for_each_element([&](const Permutation& p) {
    out.push_back(p);
    return true;
  }, max_elements);
  return out;
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (!(generators_[i] * generators_[j] == generators_[j] * generators_[i])) return false;
  return true;
}

}  // namespace tc
