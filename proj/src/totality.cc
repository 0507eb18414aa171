#include "tc/totality.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "tc/actions.hpp"
#include "tc/closure.hpp"
#include "tc/orbital.hpp"
#include "tc/reduction.hpp"

namespace tc {

std::string to_string(TotalityStatus s) {
  switch (s) {
    case TotalityStatus::Yes: return "yes";
    case TotalityStatus::No: return "no";
    case TotalityStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

SubgroupClassTable::SubgroupClassTable(const PermGroup& G, const Budget& budget) : G_(G) {
  table_ = std::make_unique<ElementTable>(G, budget.max_small_group);
  lattice_ = std::make_unique<SubgroupLattice>(*table_);
  const auto& lat = *lattice_;
  to_lattice_.resize(lat.size());
  std::iota(to_lattice_.begin(), to_lattice_.end(), std::size_t{0});
  std::stable_sort(to_lattice_.begin(), to_lattice_.end(),
                   [&](std::size_t a, std::size_t b) { return lat[a].order < lat[b].order; });
  std::vector<std::size_t> from_lattice(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) from_lattice[to_lattice_[i]] = i;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& info = lat[to_lattice_[i]];
    SubgroupClass c;
    c.rep = lat.group(to_lattice_[i]);
    c.order = static_cast<unsigned long>(info.order);
    c.class_size = info.class_size;
    c.depth = info.depth;
    for (std::size_t m : info.maximal_in) c.maximal_in.push_back(from_lattice[m]);
    std::sort(c.maximal_in.begin(), c.maximal_in.end());
    c.core_order = static_cast<unsigned long>(popcount(info.core));
    classes_.push_back(std::move(c));
  }
}

std::size_t SubgroupClassTable::index(std::size_t c) const {
  return table_->size() / (*lattice_)[to_lattice_[c]].order;
}

bool SubgroupClassTable::cores_meet_trivially(const std::vector<std::size_t>& cs) const {
  Bits acc(table_->empty_bits());
  for (std::uint32_t i = 0; i < table_->size(); ++i) set_bit(acc, i);
  for (std::size_t c : cs) acc = bits_and(acc, (*lattice_)[to_lattice_[c]].core);
  return popcount(acc) == 1;
}

bool SubgroupClassTable::factorizes(std::size_t h, std::size_t k) const {
  const auto& H = (*lattice_)[to_lattice_[h]];
  const auto& K = (*lattice_)[to_lattice_[k]];
  std::size_t meet = popcount(bits_and(H.rep, K.rep));
  return H.order * K.order == table_->size() * meet;
}

Integer SubgroupClassTable::core_product_order(std::size_t h, std::size_t k) const {
  const auto& H = (*lattice_)[to_lattice_[h]];
  const auto& K = (*lattice_)[to_lattice_[k]];
  Integer a = static_cast<unsigned long>(popcount(H.core));
  Integer b = static_cast<unsigned long>(popcount(K.core));
  Integer m = static_cast<unsigned long>(popcount(bits_and(H.core, K.core)));
  return a * b / m;
}

PermGroup action_on_classes(const SubgroupClassTable& t, const std::vector<std::size_t>& classes) {
  const PermGroup& G = t.group();
  const std::size_t ng = G.generators().size();
  std::vector<std::vector<Point>> imgs(ng);
  std::size_t offset = 0;
  for (std::size_t c : classes) {
    auto part = coset_action_images(G, t[c].rep);
    const std::size_t d = part.empty() ? t.index(c) : part[0].degree();
    for (std::size_t i = 0; i < ng; ++i)
      for (Point x = 0; x < d; ++x) imgs[i].push_back(static_cast<Point>(offset + part[i][x]));
    offset += d;
  }
  std::vector<Permutation> gens;
  for (auto& v : imgs) gens.emplace_back(std::move(v));
  ChainOptions opt;
  if (t.cores_meet_trivially(classes)) opt.known_order = G.order();
  return PermGroup(offset, gens, opt);
}

std::optional<FactorizationWitness> factorization_disproof(const SubgroupClassTable& t) {
  const Integer& order = t.group().order();
  for (std::size_t h = 1; h < t.whole(); ++h)
    for (std::size_t k = h; k < t.whole(); ++k) {
      if (!t.factorizes(h, k) || !t.cores_meet_trivially({h, k})) continue;
      if (t[h].core_order * t[k].core_order == order) continue;
      return FactorizationWitness{h, k, t[h].core_order, t[k].core_order};
    }
  return std::nullopt;
}

std::optional<FactorizationWitness> nontrivial_factorization(const SubgroupClassTable& t) {
  for (std::size_t h = 1; h < t.whole(); ++h)
    for (std::size_t k = h; k < t.whole(); ++k)
      if (t.factorizes(h, k)) return FactorizationWitness{h, k, t[h].core_order, t[k].core_order};
  return std::nullopt;
}

ActionStream::ActionStream(const SubgroupClassTable& t, Options opt) : t_(t), opt_(opt) {
  if (!opt_.dedupe && opt_.max_degree == 0)
    throw PreconditionError("a degree cap is required when repeated orbits are allowed");
  // fixed points never matter; regular orbits make any action 2-closed
  for (std::size_t c = opt_.dedupe ? 1 : 0; c < t.whole(); ++c) order_.push_back(c);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return t.index(a) < t.index(b); });
  if (!order_.empty()) push({t.index(order_[0]), {0}});
}

ActionStream::ActionStream(const SubgroupClassTable& t, Options opt,
                           std::vector<std::vector<std::size_t>> pending)
    : ActionStream(t, opt) {
  heap_.clear();
  std::vector<std::size_t> pos(t.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
  for (const auto& cs : pending) {
    Node n{0, {}};
    for (std::size_t c : cs) {
      if (c >= t.size() || pos[c] == static_cast<std::size_t>(-1))
        throw PreconditionError("frontier does not match this group");
      n.items.push_back(pos[c]);
      n.degree += t.index(c);
    }
    if (!std::is_sorted(n.items.begin(), n.items.end())) throw PreconditionError("malformed frontier");
    push(std::move(n));
  }
}

void ActionStream::push(Node n) {
  if (opt_.max_degree && n.degree > opt_.max_degree) return;
  heap_.push_back(std::move(n));
  std::push_heap(heap_.begin(), heap_.end(), Cmp{});
}

std::vector<std::size_t> ActionStream::classes_of(const Node& n) const {
  std::vector<std::size_t> cs;
  for (std::size_t i : n.items) cs.push_back(order_[i]);
  return cs;
}

std::optional<std::vector<std::size_t>> ActionStream::next() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), Cmp{});
    Node n = std::move(heap_.back());
    heap_.pop_back();
    // children: extend by the next (or same) item, or bump the last one;
    // every list of nondecreasing positions is reached exactly once
    const std::size_t last = n.items.back();
    const std::size_t ext = opt_.dedupe ? last + 1 : last;
    if (ext < order_.size()) {
      Node c = n;
      c.items.push_back(ext);
      c.degree += t_.index(order_[ext]);
      push(std::move(c));
    }
    if (last + 1 < order_.size()) {
      Node c = n;
      c.items.back() = last + 1;
      c.degree = c.degree - t_.index(order_[last]) + t_.index(order_[last + 1]);
      push(std::move(c));
    }
    auto cs = classes_of(n);
    if (t_.cores_meet_trivially(cs)) return cs;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> ActionStream::pending() const {
  auto h = heap_;
  std::sort(h.begin(), h.end(), [](const Node& a, const Node& b) { return Cmp{}(b, a); });
  std::vector<std::vector<std::size_t>> out;
  for (const auto& n : h) out.push_back(classes_of(n));
  return out;
}

namespace {

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

TotalityWitness make_witness(const SubgroupClassTable& t, std::string reason,
                             std::vector<std::size_t> classes, const Budget& budget) {
  TotalityWitness w;
  w.reason = std::move(reason);
  w.classes = std::move(classes);
  for (std::size_t c : w.classes) w.stabilizer_orders.push_back(t[c].order);
  w.action = action_on_classes(t, w.classes);
  w.closure_index = two_closure(w.action, budget).index;
  return w;
}

// pending: stream nodes not yet expanded; untested: actions already taken
// from the stream whose closure is still undecided
std::string frontier_json(const SubgroupClassTable& t, std::size_t tested,
                          const std::vector<std::vector<std::size_t>>& pending,
                          const std::vector<std::vector<std::size_t>>& untested) {
  nlohmann::ordered_json j;
  j["group_order"] = t.group().order().get_str();
  std::vector<std::string> orders;
  for (std::size_t c = 0; c < t.size(); ++c) orders.push_back(t[c].order.get_str());
  j["class_orders"] = orders;
  j["tested"] = tested;
  j["pending"] = pending;
  j["untested"] = untested;
  return j.dump() + "\n";
}

}  // namespace

bool is_section(const PermGroup& T, const PermGroup& U, const Budget& budget) {
  if (!is_simple(T, budget)) throw PreconditionError("section test needs a simple group");
  if (U.order() % T.order() != 0) return false;
  if (T.order() >= 20160) throw BudgetExceeded("simple groups of this order are not determined by their order");
  ElementTable E(U, budget.max_small_group);
  SubgroupLattice lat(E);
  const std::size_t target = T.order().get_ui();
  std::vector<const Bits*> all;
  std::vector<std::size_t> all_order;
  for (std::size_t c = 0; c < lat.size(); ++c)
    for (const auto& b : lat.conjugates(c)) {
      all.push_back(&b);
      all_order.push_back(lat[c].order);
    }
  for (std::size_t c = 0; c < lat.size(); ++c) {
    const auto& H = lat[c];
    if (H.order % target) continue;
    // normal subgroups of H
    std::vector<std::size_t> normal;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (H.order % all_order[i] || !is_subset(*all[i], H.rep)) continue;
      bool ok = true;
      for (std::uint32_t g : H.gens)
        if (E.conjugate(*all[i], g) != *all[i]) {
          ok = false;
          break;
        }
      if (ok) normal.push_back(i);
    }
    for (std::size_t i : normal) {
      if (H.order / all_order[i] != target) continue;
      // H/N simple: N is maximal among normal subgroups of H
      bool maximal = true;
      for (std::size_t j : normal)
        if (all_order[j] > all_order[i] && all_order[j] < H.order && is_subset(*all[i], *all[j])) {
          maximal = false;
          break;
        }
      if (maximal) return true;
    }
  }
  return false;
}

std::optional<std::vector<PermGroup>> simple_direct_factors(const PermGroup& G, const Budget& budget) {
  if (G.is_trivial()) return std::nullopt;
  if (G.order() > static_cast<unsigned long>(budget.max_small_group)) {
    if (is_simple(G, budget) && !G.is_abelian()) return std::vector<PermGroup>{G};
    throw BudgetExceeded("group too large to split into direct factors");
  }
  ElementTable E(G, budget.max_small_group);
  SubgroupLattice lat(E);
  auto normal = lat.normal_classes();
  std::vector<std::size_t> minimal;
  for (std::size_t c : normal) {
    if (lat[c].order == 1) continue;
    bool is_min = true;
    for (std::size_t d : normal)
      if (lat[d].order > 1 && lat[d].order < lat[c].order && is_subset(lat[d].rep, lat[c].rep)) is_min = false;
    if (is_min) minimal.push_back(c);
  }
  std::vector<PermGroup> out;
  std::size_t prod = 1;
  std::vector<std::uint32_t> gens;
  for (std::size_t c : minimal) {
    PermGroup N = lat.group(c);
    if (N.is_abelian() || !is_simple(N, budget)) return std::nullopt;
    prod *= lat[c].order;
    gens.insert(gens.end(), lat[c].gens.begin(), lat[c].gens.end());
    out.push_back(std::move(N));
  }
  if (prod != E.size() || popcount(E.generate(gens)) != E.size()) return std::nullopt;
  return out;
}

TransitiveCheck transitive_reduction_check(const PermGroup& G, const std::vector<PermGroup>& factors,
                                           const Budget& budget) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].is_abelian() || !is_simple(factors[i], budget))
      throw PreconditionError("factor " + std::to_string(i + 1) + " is not a nonabelian simple group");
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (i != j && is_section(factors[i], factors[j], budget))
        throw PreconditionError("factor " + std::to_string(i + 1) + " is a section of factor " +
                                std::to_string(j + 1));
  }
  TransitiveCheck r;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    SubgroupClassTable ft(factors[i], budget);
    if (nontrivial_factorization(ft)) {
      r.factor_factorizes = true;
      r.factor = i;
      return r;
    }
  }
  SubgroupClassTable t(G, budget);
  std::vector<std::size_t> order(t.whole());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.index(a) < t.index(b); });
  for (std::size_t c : order) {
    PermGroup act = action_on_classes(t, {c});
    ++r.actions_tested;
    ClosureResult cr = two_closure(act, budget);
    if (!cr.certified) throw BudgetExceeded("closure search did not finish");
    if (cr.index > 1) {
      TotalityWitness w;
      w.reason = "transitive";
      w.classes = {c};
      w.stabilizer_orders = {t[c].order};
      w.action = act;
      w.closure_index = cr.index;
      r.witness = std::move(w);
      return r;
    }
  }
  return r;
}

TotalityVerdict is_totally_two_closed(const PermGroup& G, const TotalityOptions& opt) {
  TotalityVerdict v;
  if (G.is_trivial()) {
    v.status = TotalityStatus::Yes;
    v.stage = "trivial";
    return v;
  }
  std::unique_ptr<SubgroupClassTable> tp;
  try {
    tp = std::make_unique<SubgroupClassTable>(G, opt.budget);
  } catch (const BudgetExceeded& e) {
    v.stage = "subgroup-classes";
    v.notes.push_back(e.what());
    return v;
  }
  const SubgroupClassTable& t = *tp;
  v.class_count = t.size();
  for (std::size_t c = 0; c < t.size(); ++c) v.class_orders.push_back(t[c].order);
  Deadline dl(opt.budget.max_seconds);

  if (opt.shortcuts && !opt.resume) {
    if (auto f = factorization_disproof(t)) {
      v.status = TotalityStatus::No;
      v.stage = "factorization";
      v.witness = make_witness(t, "factorization", {f->h, f->k}, opt.budget);
      return v;
    }
    for (std::size_t c = 1; c < t.whole(); ++c) {
      if (t[c].core_order != 1) continue;
      const std::size_t n = t.index(c);
      if (G.order() == factorial(n)) continue;
      PermGroup act = action_on_classes(t, {c});
      if (OrbitalPartition(act).rank() == 2) {
        v.status = TotalityStatus::No;
        v.stage = "two-transitive";
        v.witness = make_witness(t, "two-transitive", {c}, opt.budget);
        return v;
      }
    }
    std::optional<std::vector<PermGroup>> factors;
    try {
      factors = simple_direct_factors(G, opt.budget);
    } catch (const BudgetExceeded& e) {
      v.notes.push_back(std::string("direct factor test skipped: ") + e.what());
    }
    if (factors) {
      try {
        TransitiveCheck tr = transitive_reduction_check(G, *factors, opt.budget);
        v.actions_tested += tr.actions_tested;
        if (tr.witness) {
          v.status = TotalityStatus::No;
          v.stage = "transitive";
          v.witness = std::move(tr.witness);
          return v;
        }
        if (!tr.factor_factorizes) {
          v.status = TotalityStatus::Yes;
          v.stage = "transitive";
          v.notes.push_back("direct product of simple groups: transitive actions suffice");
          return v;
        }
        v.notes.push_back("simple factor " + std::to_string(*tr.factor + 1) +
                          " has a nontrivial factorization; searching for an explicit witness");
      } catch (const PreconditionError& e) {
        v.notes.push_back(std::string("transitive reduction not applicable: ") + e.what());
      } catch (const BudgetExceeded& e) {
        v.notes.push_back(std::string("transitive reduction skipped: ") + e.what());
      }
    }
  }

  ActionStream::Options so{opt.dedupe, opt.max_degree};
  std::unique_ptr<ActionStream> stream;
  std::size_t tested_before = 0;
  std::vector<std::vector<std::size_t>> untested;
  if (opt.resume) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(*opt.resume);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("frontier: ") + e.what(), 1, e.byte);
    }
    std::vector<std::string> orders;
    for (std::size_t c = 0; c < t.size(); ++c) orders.push_back(t[c].order.get_str());
    if (j.value("group_order", std::string()) != G.order().get_str() ||
        j.value("class_orders", std::vector<std::string>()) != orders)
      throw PreconditionError("frontier does not belong to this group");
    tested_before = j.value("tested", std::size_t{0});
    untested = j.value("untested", std::vector<std::vector<std::size_t>>());
    for (const auto& a : untested)
      for (std::size_t c : a)
        if (c >= t.size()) throw PreconditionError("frontier does not match this group");
    stream = std::make_unique<ActionStream>(t, so, j.at("pending").get<std::vector<std::vector<std::size_t>>>());
  } else {
    stream = std::make_unique<ActionStream>(t, so);
  }
  v.actions_tested += tested_before;
  v.stage = "sweep";
  const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t batch_size = 4 * threads;
  const std::size_t tested_cap = 1000;
  std::size_t budget_left = opt.max_actions;
  for (;;) {
    std::vector<std::vector<std::size_t>> batch;
    while (batch.size() < std::min(batch_size, budget_left)) {
      if (!untested.empty()) {
        batch.push_back(std::move(untested.front()));
        untested.erase(untested.begin());
        continue;
      }
      auto a = stream->next();
      if (!a) break;
      batch.push_back(std::move(*a));
    }
    if (batch.empty()) break;
    std::vector<Integer> index(batch.size());
    std::vector<char> certified(batch.size(), 1);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < batch.size();) {
        PermGroup act = action_on_classes(t, batch[i]);
        ClosureResult cr = two_closure(act, opt.budget);
        index[i] = cr.index;
        certified[i] = cr.certified;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < std::min<std::size_t>(threads, batch.size()); ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++v.actions_tested;
      if (v.tested.size() < tested_cap) v.tested.push_back(batch[i]);
      if (index[i] > 1) {
        v.status = TotalityStatus::No;
        v.witness = make_witness(t, "sweep", batch[i], opt.budget);
        return v;
      }
      if (!certified[i]) {
        v.notes.push_back("closure search ran out of budget on an action");
        std::vector<std::vector<std::size_t>> rest(batch.begin() + static_cast<std::ptrdiff_t>(i), batch.end());
        rest.insert(rest.end(), untested.begin(), untested.end());
        v.frontier = frontier_json(t, v.actions_tested - 1, stream->pending(), rest);
        return v;
      }
    }
    budget_left -= batch.size();
    if (budget_left == 0 || dl.expired()) {
      auto pend = stream->pending();
      if (pend.empty() && untested.empty()) break;
      v.notes.push_back("sweep budget exhausted");
      v.frontier = frontier_json(t, v.actions_tested, pend, untested);
      return v;
    }
  }
  v.status = TotalityStatus::Yes;
  return v;
}

}  // namespace tc
