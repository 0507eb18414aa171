#include "tc/reduction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "tc/class_data.hpp"
#include "tc/group_ops.hpp"
#include "tc/orbital.hpp"
#include "tc/search.hpp"
#include "tc/small_group.hpp"

namespace tc {

std::string to_string(NKind k) {
  switch (k) {
    case NKind::Trivial: return "trivial";
    case NKind::FullDiagonal: return "full-diagonal";
    case NKind::ContainsBase: return "contains-base";
    case NKind::PrimeAbelianSocle: return "prime-abelian-socle";
    case NKind::Unclassified: return "unclassified";
  }
  return "?";
}

namespace {

// The groups in `parts` act on consecutive blocks; points[pos] is the
// point of Omega at each position.
PermGroup place(const std::vector<PermGroup>& parts, const std::vector<Point>& points) {
  return conjugate_group(direct_product(parts), Permutation(std::vector<Point>(points)));
}

bool acts_trivially(const PermGroup& K, const std::vector<Point>& points) {
  for (const auto& g : K.generators())
    for (Point x : points)
      if (g[x] != x) return false;
  return true;
}

std::vector<Point> orbit_under(const std::vector<Permutation>& gens, Point x, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::vector<Point> q{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (const auto& g : gens)
      if (!seen[g[q[i]]]) {
        seen[g[q[i]]] = 1;
        q.push_back(g[q[i]]);
      }
  return q;
}

void require_closed_blocks(const ReductionContext& ctx) {
  ClosureResult r = two_closure(ctx.L);
  if (!r.certified || r.index != 1)
    throw PreconditionError("the action on the blocks is not 2-closed");
}

void require_core_free(const ReductionContext& ctx) {
  if (!ctx.core_free)
    throw PreconditionError("the block stabilizer has a nontrivial core; G must act faithfully on the blocks");
}

// Normal closure of `gens` inside the subgroup with generators `amb`,
// using the element table.
Bits normal_closure_bits(const ElementTable& T, std::vector<std::uint32_t> gens,
                         const std::vector<std::uint32_t>& amb) {
  Bits cur = T.generate(gens);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::uint32_t c : amb) {
      std::uint32_t x = T.conj(gens[i], c);
      if (!test_bit(cur, x)) {
        gens.push_back(x);
        cur = T.generate(gens);
      }
    }
  return cur;
}

std::vector<std::uint32_t> generators_of(const ElementTable& T, const Bits& b) {
  // a small generating set, picked greedily
  std::vector<std::uint32_t> gens;
  Bits cur = T.empty_bits();
  set_bit(cur, T.identity());
  for (std::uint32_t x : T.members(b))
    if (!test_bit(cur, x)) {
      gens.push_back(x);
      cur = T.generate(gens);
    }
  return gens;
}

bool subnormal(const ElementTable& T, const Bits& U, const std::vector<std::uint32_t>& ugens) {
  Bits cur(T.empty_bits());
  for (std::uint32_t i = 0; i < T.size(); ++i) set_bit(cur, i);
  std::vector<std::uint32_t> cgens = T.generator_indices();
  for (;;) {
    if (cur == U) return true;
    Bits ncl = normal_closure_bits(T, ugens, cgens);
    if (ncl == cur) return false;
    cur = ncl;
    cgens = generators_of(T, cur);
  }
}

struct MinimalNormals {
  std::vector<PermGroup> groups;
};

MinimalNormals minimal_normal_subgroups(const PermGroup& Y, const Budget& budget) {
  MinimalNormals out;
  if (Y.is_trivial()) return out;
  const std::size_t n = Y.degree();
  Integer fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<unsigned long>(i);
  if (n >= 5 && (Y.is_full_symmetric() || Y.order() == fact)) {
    out.groups.push_back(PermGroup::alternating(n));
    return out;
  }
  if (n >= 5 && Y.order() * 2 == fact) {
    out.groups.push_back(Y);
    return out;
  }
  if (Y.order() > static_cast<unsigned long>(budget.max_small_group))
    throw BudgetExceeded("group too large for normal-subgroup enumeration");
  ElementTable T(Y, budget.max_small_group);
  // minimal normal subgroups are normal closures of single elements
  std::vector<Bits> cands;
  for (std::uint32_t x : T.class_reps()) {
    if (x == T.identity()) continue;
    Bits b = normal_closure_bits(T, {x}, T.generator_indices());
    if (std::find(cands.begin(), cands.end(), b) == cands.end()) cands.push_back(b);
  }
  for (const auto& b : cands) {
    bool minimal = true;
    for (const auto& c : cands)
      if (c != b && is_subset(c, b)) minimal = false;
    if (minimal) {
      auto g = generators_of(T, b);
      out.groups.push_back(T.to_group(g));
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> ReductionContext::block_orbit_reps() const {
  const std::size_t s = block_count();
  auto bo = sigma.block_of(G.degree());
  std::vector<Permutation> on_blocks;
  for (const auto& m : M.generators()) {
    std::vector<Point> img(s);
    for (std::size_t i = 0; i < s; ++i) img[i] = bo[m[sigma.blocks[i].front()]];
    on_blocks.emplace_back(std::move(img));
  }
  std::vector<char> seen(s, 0);
  seen[0] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 1; j < s; ++j) {
    if (seen[j]) continue;
    auto orb = orbit_under(on_blocks, static_cast<Point>(j), s);
    for (Point x : orb) seen[x] = 1;
    out.emplace_back(j, orb.size());
  }
  return out;
}

PermGroup ReductionContext::two_block_stabilizer(std::size_t j) const {
  return setwise_stabilizer(M, sigma.blocks.at(j));
}

ReductionContext make_reduction_context(const PermGroup& G, const BlockSystem& sigma,
                                        const Budget& budget) {
  if (!G.is_transitive()) throw PreconditionError("group is not transitive");
  const std::size_t n = G.degree();
  if (sigma.block_count() <= 1 || sigma.block_size() <= 1 || !is_block_system(G, sigma))
    throw PreconditionError("no nontrivial block system");
  ReductionContext ctx;
  ctx.G = G;
  ctx.sigma = sigma;
  InducedAction ind = induce_on_blocks(G, sigma);
  ctx.L = ind.block_image;
  ctx.kernel = ind.kernel;
  ctx.M = ind.block_stabilizer;
  ctx.R = ind.within_block;
  ctx.delta = ind.delta;
  ctx.H = G.point_stabilizer(0);
  ctx.core_free = ctx.kernel.is_trivial();
  ClosureResult y = two_closure(ctx.R, budget);
  if (!y.certified) throw BudgetExceeded("closure of the block constituent did not finish");
  ctx.Y = y.closure;
  const std::size_t s = sigma.block_count();
  auto bo = sigma.block_of(n);
  ctx.block_reps.assign(s, Permutation());
  std::vector<char> have(s, 0);
  ctx.block_reps[0] = G.identity();
  have[0] = 1;
  std::vector<std::size_t> q{0};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (const auto& g : G.generators()) {
      std::size_t j = bo[g[sigma.blocks[q[i]].front()]];
      if (!have[j]) {
        have[j] = 1;
        ctx.block_reps[j] = ctx.block_reps[q[i]] * g;
        q.push_back(j);
      }
    }
  return ctx;
}

PermGroup base_group(const ReductionContext& ctx, const PermGroup& A) {
  const std::size_t s = ctx.block_count(), d = ctx.block_size();
  if (A.degree() != d) throw PreconditionError("group must act on the block");
  std::vector<Point> points;
  for (std::size_t i = 0; i < s; ++i)
    for (Point c = 0; c < d; ++c) points.push_back(ctx.point(i, c));
  return place(std::vector<PermGroup>(s, A), points);
}

PermGroup product_one_closure_filter(const PermGroup& K, const PermGroup& Y) {
  const std::size_t d = Y.degree();
  if (K.degree() != 2 * d) throw PreconditionError("K must act on two copies of Y's domain");
  const auto none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(d * d, none);
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < d * d; ++s) {
    if (label[s] != none) continue;
    label[s] = next;
    std::vector<std::size_t> q{s};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (const auto& k : K.generators()) {
        Point a = k[static_cast<Point>(q[i] / d)];
        Point b = k[static_cast<Point>(d + q[i] % d)];
        if (a >= d || b < d) throw PreconditionError("K does not preserve the two blocks");
        std::size_t t = a * d + (b - d);
        if (label[t] == none) {
          label[t] = next;
          q.push_back(t);
        }
      }
    ++next;
  }
  std::vector<std::uint32_t> colors(4 * d * d, 0);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) colors[a * 2 * d + d + b] = 1 + label[a * d + b];
  PermGroup YY = direct_product({Y, Y});
  return color_automorphisms(YY, colors, K.generators());
}

NStructure classify_N(const ReductionContext& ctx, const PermGroup& N, const Budget& budget) {
  NStructure st;
  st.N = N;
  const std::size_t s = ctx.block_count(), d = ctx.block_size();
  st.A = restrict_group(N, ctx.delta);
  {
    auto orbs = st.A.orbits();
    st.a = orbs.front().size();
    for (const auto& o : orbs)
      if (o.size() != st.a) st.note = "A-orbits on Delta have different lengths";
  }
  if (N.order() == ctx.kernel.order()) {
    st.kind = NKind::Trivial;
    return st;
  }
  if (!ctx.core_free) {
    st.kind = NKind::Unclassified;
    st.note = "classification needs G to act faithfully on the blocks";
    return st;
  }
  if (!higman_primitive(ctx.L)) {
    st.kind = NKind::Unclassified;
    st.note = "the block stabilizer is not maximal";
    return st;
  }
  std::vector<std::vector<Point>> block_points(s);
  for (std::size_t i = 0; i < s; ++i)
    for (Point c = 0; c < d; ++c) block_points[i].push_back(ctx.point(i, c));
  // full diagonal: every coordinate projection is injective
  bool diagonal = true;
  for (std::size_t i = 0; i < s && diagonal; ++i) {
    PermGroup Pi = restrict_group(N, block_points[i]);
    if (Pi.order() != N.order()) diagonal = false;
  }
  if (diagonal) {
    st.kind = NKind::FullDiagonal;
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<Permutation> imgs;
      for (const auto& g : N.generators()) imgs.push_back(g.restrict_to(block_points[i]));
      st.diagonal_maps.push_back(std::move(imgs));
    }
    return st;
  }
  PermGroup S = subnormal_intersection(ctx.Y, budget);
  if (!S.is_trivial()) {
    PermGroup B = base_group(ctx, S);
    if (N.contains(B)) {
      st.kind = NKind::ContainsBase;
      st.socle_base = B;
      return st;
    }
  }
  auto mins = minimal_normal_subgroups(ctx.Y, budget);
  if (mins.groups.size() == 1 && is_prime(mins.groups[0].order().get_ui()) &&
      mins.groups[0].order().fits_ulong_p()) {
    st.kind = NKind::PrimeAbelianSocle;
    st.p = static_cast<unsigned>(mins.groups[0].order().get_ui());
    return st;
  }
  st.kind = NKind::Unclassified;
  st.note = "none of the expected structures was found";
  return st;
}

ComplementReport crucial_complement(const ReductionContext& ctx, const Budget& budget) {
  require_closed_blocks(ctx);
  const PermGroup& G = ctx.G;
  const std::size_t n = G.degree(), d = ctx.block_size();
  ComplementReport rep;
  if (!ctx.core_free)
    rep.diagnostics.push_back("G is not faithful on the blocks (kernel order " +
                              ctx.kernel.order().get_str() +
                              "); N contains the kernel and G is 2-closed iff N equals it");
  OrbitalPartition op(G);
  auto colors = op.dense();
  PermGroup BY = base_group(ctx, ctx.Y);
  SearchLimits lim;
  lim.max_nodes = budget.max_nodes;
  Deadline dl(budget.max_seconds);
  if (budget.has_deadline()) lim.deadline = &dl;
  PermGroup N = color_automorphisms(BY, colors, ctx.kernel.generators(), lim);
  rep.two_closed = N.order() == ctx.kernel.order();
  {
    std::vector<Permutation> gens = G.generators();
    for (const auto& x : N.generators()) gens.push_back(x);
    ChainOptions opt;
    opt.known_order = N.order() * G.order() / ctx.kernel.order();
    rep.closure = PermGroup(n, gens, opt);
  }
  // pairwise filters for one block per M-orbit
  std::vector<Point> local(n);
  std::vector<std::size_t> block_of(n);
  for (std::size_t i = 0; i < ctx.block_count(); ++i)
    for (Point c = 0; c < d; ++c) {
      local[ctx.point(i, c)] = c;
      block_of[ctx.point(i, c)] = i;
    }
  for (auto [j, len] : ctx.block_orbit_reps()) {
    PermGroup K = ctx.two_block_stabilizer(j);
    std::vector<Permutation> kres;
    for (const auto& k : K.generators()) {
      std::vector<Point> img(2 * d);
      for (Point c = 0; c < d; ++c) {
        img[c] = local[k[ctx.point(0, c)]];
        img[d + c] = static_cast<Point>(d) + local[k[ctx.point(j, c)]];
      }
      kres.emplace_back(std::move(img));
    }
    PairFilter f;
    f.block = j;
    f.orbit_length = len;
    f.stabilizer_order = K.order();
    PermGroup F = product_one_closure_filter(PermGroup(2 * d, kres), ctx.Y);
    f.filter_order = F.order();
    f.full = F.order() == ctx.Y.order() * ctx.Y.order();
    std::vector<Point> first(d), second(d);
    std::iota(first.begin(), first.end(), Point{0});
    std::iota(second.begin(), second.end(), static_cast<Point>(d));
    f.diagonal = restrict_group(F, first).order() == F.order() &&
                 restrict_group(F, second).order() == F.order();
    rep.filters.push_back(std::move(f));
  }
  rep.structure = classify_N(ctx, N, budget);
  if (ctx.R.order().fits_ulong_p() && is_prime(ctx.R.order().get_ui()) && !rep.two_closed) {
    bool all = true;
    for (auto [j, len] : ctx.block_orbit_reps()) {
      (void)len;
      std::vector<Point> pts;
      for (Point c = 0; c < d; ++c) pts.push_back(ctx.point(0, c));
      for (Point c = 0; c < d; ++c) pts.push_back(ctx.point(j, c));
      PermGroup P = restrict_group(N, pts);
      bool found = false;
      P.for_each_element([&](const Permutation& y) {
        bool a = false, b = false;
        for (Point c = 0; c < d; ++c) {
          a = a || y[c] != c;
          b = b || y[d + c] != d + c;
        }
        found = a && b;
        return !found;
      });
      all = all && found;
    }
    rep.nontrivial_pair_witness = all;
  }
  return rep;
}

PermGroup subnormal_intersection(const PermGroup& Y, const Budget& budget) {
  const std::size_t n = Y.degree();
  if (Y.is_trivial()) return Y;
  Integer fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<unsigned long>(i);
  if (n >= 5 && (Y.is_full_symmetric() || Y.order() == fact)) return PermGroup::alternating(n);
  if (n >= 5 && Y.order() * 2 == fact) return Y;
  if (Y.order() > static_cast<unsigned long>(budget.max_small_group))
    throw BudgetExceeded("group too large for subnormal-subgroup enumeration");
  ElementTable T(Y, budget.max_small_group);
  SubgroupLattice lat(T);
  Bits acc(T.empty_bits());
  for (std::uint32_t i = 0; i < T.size(); ++i) set_bit(acc, i);
  for (std::size_t c = 0; c < lat.size(); ++c) {
    if (c == lat.trivial()) continue;
    if (!subnormal(T, lat[c].rep, lat[c].gens)) continue;
    for (const auto& conj : lat.conjugates(c)) acc = bits_and(acc, conj);
  }
  return T.to_group(generators_of(T, acc));
}

Block2Verdict maincor_block2(const ReductionContext& ctx) {
  if (ctx.block_size() != 2) throw PreconditionError("blocks must have size 2");
  require_core_free(ctx);
  require_closed_blocks(ctx);
  Block2Verdict v;
  for (auto [j, len] : ctx.block_orbit_reps()) {
    (void)len;
    PermGroup K = ctx.two_block_stabilizer(j);
    if (acts_trivially(K, ctx.delta)) v.failing_blocks.push_back(j);
  }
  if (v.failing_blocks.empty()) {
    v.two_closed = false;
    std::vector<Point> img(ctx.G.degree());
    for (const auto& b : ctx.sigma.blocks) {
      img[b[0]] = b[1];
      img[b[1]] = b[0];
    }
    v.witness = Permutation(std::move(img));
  }
  return v;
}

DivisorReport maincor_divisor(const ReductionContext& ctx) {
  require_core_free(ctx);
  require_closed_blocks(ctx);
  DivisorReport r;
  r.gcd = 0;
  for (auto [j, len] : ctx.block_orbit_reps()) {
    Integer o = ctx.M.order() / static_cast<unsigned long>(len);
    r.trail.emplace_back(j, o);
    mpz_gcd(r.gcd.get_mpz_t(), r.gcd.get_mpz_t(), o.get_mpz_t());
  }
  r.certifies_closed = r.gcd == 1;
  return r;
}

PrimeReport maincor_prime(const ReductionContext& ctx) {
  if (!is_prime(ctx.block_size())) throw PreconditionError("block size must be prime");
  require_core_free(ctx);
  require_closed_blocks(ctx);
  PrimeReport r;
  for (auto [j, len] : ctx.block_orbit_reps()) {
    (void)len;
    PermGroup K = ctx.two_block_stabilizer(j);
    auto orb = orbit_under(K.generators(), ctx.delta[0], ctx.G.degree());
    if (orb.size() != ctx.block_size()) r.failing_blocks.push_back(j);
  }
  r.condition_holds = r.failing_blocks.empty();
  return r;
}

namespace {

unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw PreconditionError("not invertible");
}

// Row-reduced echelon form mod p; returns pivot columns.
std::vector<std::size_t> reduce(std::vector<std::vector<unsigned>>& rows, std::size_t ncols, unsigned p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][c] == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    unsigned iv = inv_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = x * iv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      unsigned f = rows[i][c];
      for (std::size_t t = 0; t < ncols; ++t) rows[i][t] = (rows[i][t] + p * p - f * rows[r][t] % p) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<std::vector<unsigned>> nullspace(std::vector<std::vector<unsigned>> rows, std::size_t n, unsigned p) {
  auto piv = reduce(rows, n, p);
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<std::vector<unsigned>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<unsigned> v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - rows[r][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<InvariantLine> one_dim_submodules(const PermGroup& L, unsigned p, std::size_t max_lines) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  const std::size_t n = L.degree();
  const auto& gens = L.generators();
  std::vector<InvariantLine> out;
  std::vector<unsigned> lambda(gens.size(), 1);
  // v^g = lambda v reads v_i = lambda v_{i^g}; one generator at a time,
  // dropping eigenvalue choices whose common solution space is zero
  std::function<void(std::size_t, std::vector<std::vector<unsigned>>)> rec =
      [&](std::size_t k, std::vector<std::vector<unsigned>> rows) {
        if (k == gens.size()) {
          auto basis = nullspace(rows, n, p);
          const std::size_t dim = basis.size();
          if (dim == 0) return;
          // lines: coefficient vectors with leading coefficient 1
          std::size_t count = 0;
          for (std::size_t lead = 0; lead < dim; ++lead) {
            std::size_t tail = dim - lead - 1;
            std::size_t combos = 1;
            for (std::size_t t = 0; t < tail; ++t) {
              combos *= p;
              if (combos > max_lines) throw BudgetExceeded("too many invariant lines");
            }
            count += combos;
            if (out.size() + count > max_lines) throw BudgetExceeded("too many invariant lines");
            for (std::size_t idx = 0; idx < combos; ++idx) {
              std::vector<unsigned> v(basis[lead]);
              std::size_t rem = idx;
              for (std::size_t t = lead + 1; t < dim; ++t) {
                unsigned c = static_cast<unsigned>(rem % p);
                rem /= p;
                for (std::size_t x = 0; x < n; ++x) v[x] = (v[x] + c * basis[t][x]) % p;
              }
              std::size_t f = 0;
              while (v[f] == 0) ++f;
              unsigned iv = inv_mod(v[f], p);
              for (auto& x : v) x = x * iv % p;
              out.push_back({std::move(v), lambda});
            }
          }
          return;
        }
        for (unsigned lam = 1; lam < p; ++lam) {
          auto r2 = rows;
          for (Point i = 0; i < n; ++i) {
            std::vector<unsigned> row(n, 0);
            row[i] = (row[i] + 1) % p;
            row[gens[k][i]] = (row[gens[k][i]] + p - lam) % p;
            r2.push_back(std::move(row));
          }
          reduce(r2, n, p);
          if (r2.size() == n) continue;
          lambda[k] = lam;
          rec(k + 1, std::move(r2));
        }
      };
  rec(0, {});
  std::sort(out.begin(), out.end(), [](const InvariantLine& a, const InvariantLine& b) { return a.vector < b.vector; });
  return out;
}

bool is_simple(const PermGroup& T, const Budget& budget) {
  if (T.is_trivial()) return false;
  if (T.order().fits_ulong_p() && is_prime(T.order().get_ui())) return true;
  auto mins = minimal_normal_subgroups(T, budget);
  return mins.groups.size() == 1 && mins.groups[0].order() == T.order();
}

std::vector<Strip> strip_decomposition(const PermGroup& H, const std::vector<std::vector<Point>>& factors,
                                       const Budget& budget, bool assume_simple) {
  const std::size_t r = factors.size();
  const std::size_t n = H.degree();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < r; ++i)
    for (Point x : factors[i]) {
      if (x >= n || owner[x] >= 0) throw PreconditionError("factor point sets must be disjoint");
      owner[x] = static_cast<int>(i);
    }
  std::vector<PermGroup> proj;
  for (std::size_t i = 0; i < r; ++i) {
    proj.push_back(restrict_group(H, factors[i]));  // throws if not invariant
    if (!assume_simple && !is_simple(proj.back(), budget))
      throw PreconditionError("factor " + std::to_string(i + 1) + " is not simple");
  }
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < r; ++i) {
    PermGroup ker = H.pointwise_stabilizer(factors[i]);
    for (std::size_t j = 0; j < r; ++j)
      if (j != i && acts_trivially(ker, factors[j])) parent[find(j)] = find(i);
  }
  std::vector<Strip> out;
  Integer total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (find(i) != i) continue;
    Strip st;
    std::vector<Point> outside;
    for (std::size_t j = 0; j < r; ++j)
      if (find(j) == i)
        st.support.push_back(j);
      else
        outside.insert(outside.end(), factors[j].begin(), factors[j].end());
    st.group = H.pointwise_stabilizer(outside);
    for (std::size_t j : st.support) {
      std::vector<Permutation> imgs;
      for (const auto& g : st.group.generators()) imgs.push_back(g.restrict_to(factors[j]));
      st.maps.push_back(std::move(imgs));
    }
    total *= st.group.order();
    out.push_back(std::move(st));
  }
  if (total != H.order()) throw Error("strips do not reassemble H");
  return out;
}

}  // namespace tc
