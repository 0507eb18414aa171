#include "tc/small_group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace tc {

std::uint64_t BaseImageIndex::hash(std::span<const Point> images) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (Point x : images) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return h ^ (h >> 33);
}

void BaseImageIndex::reserve(std::size_t n) {
  data_.reserve(n * base_.size());
  std::size_t cap = 16;
  while (cap < 2 * n) cap <<= 1;
  if (cap > table_.size()) {
    table_.assign(cap, -1);
    for (std::size_t i = 0; i < count_; ++i) {
      auto img = images(static_cast<std::uint32_t>(i));
      std::size_t pos = hash(img) & (cap - 1);
      while (table_[pos] >= 0) pos = (pos + 1) & (cap - 1);
      table_[pos] = static_cast<std::int64_t>(i);
    }
  }
}

void BaseImageIndex::grow() { reserve(std::max<std::size_t>(16, count_ * 2)); }

std::int64_t BaseImageIndex::find(std::span<const Point> img) const {
  if (table_.empty()) return -1;
  std::size_t mask = table_.size() - 1;
  for (std::size_t pos = hash(img) & mask;; pos = (pos + 1) & mask) {
    std::int64_t v = table_[pos];
    if (v < 0) return -1;
    auto cand = images(static_cast<std::uint32_t>(v));
    if (std::equal(cand.begin(), cand.end(), img.begin())) return v;
  }
}

std::int64_t BaseImageIndex::find(const Permutation& g) const {
  std::vector<Point> img(base_.size());
  for (std::size_t t = 0; t < base_.size(); ++t) img[t] = g[base_[t]];
  return find(img);
}

std::uint32_t BaseImageIndex::insert(std::span<const Point> img) {
  std::int64_t f = find(img);
  if (f >= 0) return static_cast<std::uint32_t>(f);
  if (2 * (count_ + 1) > table_.size()) grow();
  data_.insert(data_.end(), img.begin(), img.end());
  std::size_t mask = table_.size() - 1;
  std::size_t pos = hash(img) & mask;
  while (table_[pos] >= 0) pos = (pos + 1) & mask;
  table_[pos] = static_cast<std::int64_t>(count_);
  return static_cast<std::uint32_t>(count_++);
}

std::size_t BitsHash::operator()(const Bits& b) const {
  std::uint64_t h = 0;
  for (auto w : b) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return static_cast<std::size_t>(h);
}

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

Bits bits_and(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

ElementTable::ElementTable(const PermGroup& G, std::size_t max_order)
    : G_(G), index_(G.base()) {
  if (G.order() > static_cast<unsigned long>(max_order))
    throw BudgetExceeded("group too large for a multiplication table");
  elements_ = G.elements();
  const std::size_t N = elements_.size();
  const auto& base = index_.base();
  const std::size_t k = base.size();
  index_.reserve(N);
  std::vector<Point> img(k);
  for (const auto& e : elements_) {
    for (std::size_t t = 0; t < k; ++t) img[t] = e[base[t]];
    index_.insert(img);
  }
  identity_ = index(G.identity());
  table_.resize(N * N);
  for (std::size_t a = 0; a < N; ++a) {
    std::vector<Point> ia(k);
    for (std::size_t t = 0; t < k; ++t) ia[t] = elements_[a][base[t]];
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t t = 0; t < k; ++t) img[t] = elements_[b][ia[t]];
      table_[a * N + b] = static_cast<std::uint32_t>(index_.find(img));
    }
  }
  inverse_.resize(N);
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = 0; b < N; ++b)
      if (mul(a, b) == identity_) {
        inverse_[a] = b;
        break;
      }
  order_.resize(N);
  for (std::uint32_t a = 0; a < N; ++a) {
    std::uint32_t o = 1;
    for (std::uint32_t x = a; x != identity_; x = mul(x, a)) ++o;
    order_[a] = o;
  }
  for (const auto& g : G.generators()) gens_.push_back(index(g));
  class_of_.assign(N, static_cast<std::uint32_t>(-1));
  for (std::uint32_t a = 0; a < N; ++a) {
    if (class_of_[a] != static_cast<std::uint32_t>(-1)) continue;
    auto c = static_cast<std::uint32_t>(class_reps_.size());
    class_reps_.push_back(a);
    std::vector<std::uint32_t> q{a};
    class_of_[a] = c;
    for (std::size_t p = 0; p < q.size(); ++p)
      for (auto g : gens_) {
        std::uint32_t y = conj(q[p], g);
        if (class_of_[y] != c) {
          class_of_[y] = c;
          q.push_back(y);
        }
      }
    class_sizes_.push_back(q.size());
  }
}

std::uint32_t ElementTable::index(const Permutation& g) const {
  std::int64_t i = index_.find(g);
  if (i < 0 || !(elements_[static_cast<std::size_t>(i)] == g))
    throw PreconditionError("element not in the group");
  return static_cast<std::uint32_t>(i);
}

Bits ElementTable::generate(std::span<const std::uint32_t> gens) const {
  Bits b = empty_bits();
  std::vector<std::uint32_t> list{identity_};
  set_bit(b, identity_);
  for (std::size_t p = 0; p < list.size(); ++p)
    for (auto s : gens) {
      std::uint32_t y = mul(list[p], s);
      if (!test_bit(b, y)) {
        set_bit(b, y);
        list.push_back(y);
      }
    }
  return b;
}

std::vector<std::uint32_t> ElementTable::members(const Bits& b) const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < b.size(); ++w)
    for (std::uint64_t x = b[w]; x; x &= x - 1)
      out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(x))));
  return out;
}

Bits ElementTable::conjugate(const Bits& sub, std::uint32_t g) const {
  Bits r = empty_bits();
  for (auto x : members(sub)) set_bit(r, conj(x, g));
  return r;
}

PermGroup ElementTable::to_group(std::span<const std::uint32_t> gens) const {
  std::vector<Permutation> g;
  for (auto i : gens) g.push_back(elements_[i]);
  return PermGroup(G_.degree(), g);
}

SubgroupLattice::SubgroupLattice(const ElementTable& T) : T_(T) {
  const std::size_t N = T.size();
  // distinct cyclic subgroups with a generator each
  std::vector<std::pair<Bits, std::uint32_t>> cyclic;
  {
    std::unordered_map<Bits, std::size_t, BitsHash> seen;
    for (std::uint32_t x = 0; x < N; ++x) {
      if (x == T.identity()) continue;
      std::uint32_t g[1] = {x};
      Bits b = T.generate(g);
      if (seen.emplace(b, cyclic.size()).second) cyclic.emplace_back(std::move(b), x);
    }
  }
  std::vector<SubgroupClassInfo> found;
  std::vector<std::vector<Bits>> conj;
  auto add_class = [&](Bits rep, std::vector<std::uint32_t> gens) {
    std::size_t id = found.size();
    std::vector<Bits> list{rep};
    lookup_.emplace(rep, id);
    for (std::size_t p = 0; p < list.size(); ++p)
      for (auto g : T.generator_indices()) {
        Bits c = T.conjugate(list[p], g);
        if (lookup_.emplace(c, id).second) list.push_back(std::move(c));
      }
    SubgroupClassInfo info;
    info.order = popcount(rep);
    info.class_size = list.size();
    info.core = rep;
    for (const auto& c : list) info.core = bits_and(info.core, c);
    info.rep = std::move(rep);
    info.gens = std::move(gens);
    found.push_back(std::move(info));
    conj.push_back(std::move(list));
  };
  {
    Bits triv = T.empty_bits();
    set_bit(triv, T.identity());
    add_class(triv, {});
  }
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    for (const auto& [cb, x] : cyclic) {
      if (test_bit(found[idx].rep, x)) continue;
      std::vector<std::uint32_t> gens = found[idx].gens;
      gens.push_back(x);
      Bits t = T.generate(gens);
      if (lookup_.count(t)) continue;
      add_class(std::move(t), std::move(gens));
    }
  }
  // order classes by subgroup order, discovery order within an order
  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return found[a].order < found[b].order; });
  lookup_.clear();
  for (std::size_t i = 0; i < perm.size(); ++i) {
    classes_.push_back(std::move(found[perm[i]]));
    conjugates_.push_back(std::move(conj[perm[i]]));
    for (const auto& c : conjugates_.back()) lookup_.emplace(c, i);
  }
  whole_ = classes_.size() - 1;

  // maximal containment between classes
  std::vector<std::pair<const Bits*, std::size_t>> all;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (const auto& b : conjugates_[c]) all.emplace_back(&b, c);
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    const Bits& K = classes_[k].rep;
    std::vector<std::pair<const Bits*, std::size_t>> below;
    for (const auto& [b, c] : all)
      if (classes_[c].order < classes_[k].order && is_subset(*b, K)) below.emplace_back(b, c);
    for (const auto& [h, hc] : below) {
      bool maximal = true;
      for (const auto& [j, jc] : below)
        if (classes_[jc].order > classes_[hc].order && is_subset(*h, *j)) {
          maximal = false;
          break;
        }
      if (!maximal) continue;
      auto& mi = classes_[hc].maximal_in;
      if (std::find(mi.begin(), mi.end(), k) == mi.end()) mi.push_back(k);
    }
  }
  for (auto& c : classes_) std::sort(c.maximal_in.begin(), c.maximal_in.end());
  const std::size_t inf = static_cast<std::size_t>(-1);
  for (auto& c : classes_) c.depth = inf;
  classes_[whole_].depth = 0;
  for (std::size_t i = classes_.size(); i-- > 0;)
    for (std::size_t k : classes_[i].maximal_in)
      if (classes_[k].depth != inf) classes_[i].depth = std::min(classes_[i].depth, classes_[k].depth + 1);
}

std::size_t SubgroupLattice::class_of(const Bits& sub) const {
  auto it = lookup_.find(sub);
  if (it == lookup_.end()) throw PreconditionError("not a subgroup");
  return it->second;
}

PermGroup SubgroupLattice::group(std::size_t c) const {
  std::vector<Permutation> g;
  for (auto i : classes_[c].gens) g.push_back(T_.element(i));
  ChainOptions opt;
  opt.known_order = Integer(static_cast<unsigned long>(classes_[c].order));
  return PermGroup(T_.group().degree(), g, opt);
}

std::vector<std::size_t> SubgroupLattice::normal_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].class_size == 1) out.push_back(c);
  return out;
}

std::vector<std::size_t> SubgroupLattice::maximal_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].depth == 1) out.push_back(c);
  return out;
}

}  // namespace tc
