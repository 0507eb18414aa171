#include "tc/group_ops.hpp"

#include <algorithm>
#include <numeric>

#include "tc/search.hpp"

namespace tc {

namespace {

Permutation join(const Permutation& a, const Permutation& b) {
  std::vector<Point> img(a.images().begin(), a.images().end());
  auto n = static_cast<Point>(a.degree());
  for (Point x : b.images()) img.push_back(x + n);
  return Permutation(std::move(img));
}

}  // namespace

CombinedAction::CombinedAction(const PermGroup& G, const std::vector<Permutation>& images)
    : n_(G.degree()), m_(images.empty() ? 0 : images.front().degree()) {
  const auto& gens = G.generators();
  if (gens.size() != images.size())
    throw PreconditionError("one image per generator required");
  std::vector<Permutation> d;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (images[i].degree() != m_) throw PreconditionError("image degree mismatch");
    d.push_back(join(gens[i], images[i]));
  }
  D_ = PermGroup(n_ + m_, d);
  if (D_.order() != G.order())
    throw PreconditionError("generator images do not define a homomorphism");
}

Permutation CombinedAction::left(const Permutation& d) const {
  std::vector<Point> img(d.images().begin(), d.images().begin() + static_cast<std::ptrdiff_t>(n_));
  return Permutation(std::move(img));
}

Permutation CombinedAction::right(const Permutation& d) const {
  std::vector<Point> img;
  for (std::size_t i = n_; i < n_ + m_; ++i) img.push_back(d[static_cast<Point>(i)] - static_cast<Point>(n_));
  return Permutation(std::move(img));
}

PermGroup CombinedAction::image() const {
  std::vector<Permutation> g;
  for (const auto& d : D_.generators()) g.push_back(right(d));
  ChainOptions opt;
  return PermGroup(m_, g, opt);
}

PermGroup CombinedAction::kernel() const {
  PermGroup im = image();
  std::vector<Point> fix;
  for (Point b : im.base()) fix.push_back(b + static_cast<Point>(n_));
  PermGroup K = D_.pointwise_stabilizer(fix);
  std::vector<Permutation> g;
  for (const auto& d : K.strong_generators()) g.push_back(left(d));
  ChainOptions opt;
  opt.known_order = K.order();
  return PermGroup(n_, g, opt);
}

PermGroup CombinedAction::preimage_of_stabilizer(Point x) const {
  PermGroup S = D_.point_stabilizer(x + static_cast<Point>(n_));
  std::vector<Permutation> g;
  for (const auto& d : S.strong_generators()) g.push_back(left(d));
  ChainOptions opt;
  opt.known_order = S.order();
  return PermGroup(n_, g, opt);
}

PermGroup CombinedAction::preimage(const PermGroup& sub) const {
  // kernel generators plus one lift of each generator of sub
  PermGroup im = image();
  if (!im.contains(sub)) throw PreconditionError("not a subgroup of the image");
  std::vector<Point> rbase;
  for (Point b : im.base()) rbase.push_back(b + static_cast<Point>(n_));
  PermGroup Dr = D_.with_base(rbase);
  std::vector<Permutation> g;
  PermGroup K = Dr.chain_stabilizer(rbase.size());
  for (const auto& d : K.strong_generators()) g.push_back(left(d));
  for (const auto& s : sub.generators()) {
    // lift by sifting the right-hand part through Dr's first levels
    Permutation lift = D_.identity();
    Permutation target = join(Permutation(n_), s);
    Permutation rem = target;
    for (std::size_t l = 0; l < rbase.size(); ++l) {
      Point y = rem[rbase[l]];
      Permutation u = Dr.transversal(l, y);
      lift = u * lift;
      rem = rem * u.inverse();
    }
    g.push_back(left(lift));
  }
  ChainOptions opt;
  opt.known_order = K.order() * sub.order();
  return PermGroup(n_, g, opt);
}

PermGroup restrict_group(const PermGroup& G, std::span<const Point> set) {
  std::vector<Permutation> g;
  for (const auto& x : G.generators()) g.push_back(x.restrict_to(set));
  return PermGroup(set.size(), g);
}

PermGroup conjugate_group(const PermGroup& H, const Permutation& g) {
  std::vector<Permutation> gens;
  for (const auto& h : H.generators()) gens.push_back(h.conjugate(g));
  ChainOptions opt;
  opt.known_order = H.order();
  return PermGroup(H.degree(), gens, opt);
}

PermGroup normal_closure(const PermGroup& G, const std::vector<Permutation>& gens) {
  std::vector<Permutation> cur;
  for (const auto& x : gens)
    if (!x.is_identity()) cur.push_back(x);
  PermGroup N(G.degree(), cur);
  for (bool grown = true; grown;) {
    grown = false;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (const auto& g : G.generators()) {
        Permutation c = cur[i].conjugate(g);
        if (!N.contains(c)) {
          cur.push_back(c);
          N = PermGroup(G.degree(), cur);
          grown = true;
        }
      }
  }
  return N;
}

PermGroup derived_subgroup(const PermGroup& G) {
  std::vector<Permutation> comms;
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) comms.push_back(c);
    }
  return normal_closure(G, comms);
}

bool is_normal(const PermGroup& G, const PermGroup& N) {
  for (const auto& n : N.generators())
    for (const auto& g : G.generators())
      if (!N.contains(n.conjugate(g))) return false;
  return true;
}

PermGroup core(const PermGroup& G, const PermGroup& H) {
  if (!G.contains(H)) throw PreconditionError("H is not a subgroup of G");
  PermGroup C = H;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& g : G.generators()) {
      PermGroup Cg = conjugate_group(C, g);
      if (Cg.contains(C)) continue;
      C = intersection(C, Cg);
      changed = true;
    }
  }
  return C;
}

bool is_factorization(const PermGroup& G, const PermGroup& H, const PermGroup& K) {
  if (!G.contains(H) || !G.contains(K)) throw PreconditionError("not subgroups of G");
  PermGroup I = intersection(H, K);
  return H.order() * K.order() == G.order() * I.order();
}

PermGroup direct_product(const std::vector<PermGroup>& factors) {
  return PermGroup::direct_product(factors);
}

}  // namespace tc
