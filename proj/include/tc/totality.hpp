#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tc/perm_group.hpp"
#include "tc/small_group.hpp"

namespace tc {

struct SubgroupClass {
  PermGroup rep;
  Integer order;
  std::size_t class_size = 0;
  std::size_t depth = 0;               // 0 for G itself
  std::vector<std::size_t> maximal_in; // classes containing a conjugate as a maximal subgroup
  Integer core_order;
};

// Conjugacy classes of subgroups. Class 0 is the trivial subgroup; classes
// are sorted by order and the last one is G.
class SubgroupClassTable {
 public:
  SubgroupClassTable(const PermGroup& G, const Budget& budget = {});

  const PermGroup& group() const { return G_; }
  std::size_t size() const { return classes_.size(); }
  const SubgroupClass& operator[](std::size_t i) const { return classes_[i]; }
  std::size_t whole() const { return classes_.size() - 1; }
  std::size_t index(std::size_t c) const;  // [G : H]
  bool cores_meet_trivially(const std::vector<std::size_t>& cs) const;
  // HK = G; this does not depend on the chosen conjugates
  bool factorizes(std::size_t h, std::size_t k) const;
  Integer core_product_order(std::size_t h, std::size_t k) const;

  const ElementTable& elements() const { return *table_; }
  const SubgroupLattice& lattice() const { return *lattice_; }

 private:
  PermGroup G_;
  std::unique_ptr<ElementTable> table_;
  std::unique_ptr<SubgroupLattice> lattice_;
  std::vector<std::size_t> to_lattice_;
  std::vector<SubgroupClass> classes_;
};

// G acting on the union of the coset spaces of the listed classes, one orbit each.
PermGroup action_on_classes(const SubgroupClassTable& t, const std::vector<std::size_t>& classes);

struct FactorizationWitness {
  std::size_t h = 0, k = 0;  // classes
  Integer core_h, core_k;
};
// G = HK with Core(H) cap Core(K) = 1 and G != Core(H) x Core(K).
std::optional<FactorizationWitness> factorization_disproof(const SubgroupClassTable& t);
// any G = HK with H, K proper
std::optional<FactorizationWitness> nontrivial_factorization(const SubgroupClassTable& t);

// Streams faithful actions, as lists of classes, in nondecreasing total
// degree. With dedupe on, each class appears at most once per action and
// actions with a regular orbit are skipped (they are always 2-closed).
class ActionStream {
 public:
  struct Options {
    bool dedupe = true;
    std::size_t max_degree = 0;  // 0: no cap
  };
  ActionStream(const SubgroupClassTable& t, Options opt);
  ActionStream(const SubgroupClassTable& t, Options opt, std::vector<std::vector<std::size_t>> pending);

  std::optional<std::vector<std::size_t>> next();
  // nodes not yet expanded, for resuming
  std::vector<std::vector<std::size_t>> pending() const;

 private:
  struct Node {
    std::size_t degree;
    std::vector<std::size_t> items;  // positions into order_
  };
  struct Cmp {
    bool operator()(const Node& a, const Node& b) const {
      return a.degree != b.degree ? a.degree > b.degree : a.items > b.items;
    }
  };
  void push(Node n);
  std::vector<std::size_t> classes_of(const Node& n) const;

  const SubgroupClassTable& t_;
  Options opt_;
  std::vector<std::size_t> order_;  // candidate classes sorted by index
  std::vector<Node> heap_;
};

enum class TotalityStatus { Yes, No, Inconclusive };
std::string to_string(TotalityStatus s);

struct TotalityWitness {
  std::string reason;                 // factorization | two-transitive | transitive | sweep
  std::vector<std::size_t> classes;   // point stabilizer classes, one per orbit
  std::vector<Integer> stabilizer_orders;
  PermGroup action;
  Integer closure_index;
};

struct TotalityOptions {
  Budget budget;
  std::size_t max_actions = 1000000;
  std::size_t max_degree = 0;     // cap on total degree in the sweep, 0: none
  bool dedupe = true;             // skip repeated and regular orbits
  unsigned threads = 0;           // 0: hardware concurrency
  bool shortcuts = true;          // factorization, 2-transitivity and product stages
  std::optional<std::string> resume;  // frontier JSON
};

struct TotalityVerdict {
  TotalityStatus status = TotalityStatus::Inconclusive;
  std::optional<TotalityWitness> witness;
  std::string stage;                               // stage that decided
  std::size_t actions_tested = 0;
  std::vector<std::vector<std::size_t>> tested;    // first actions tested, capped
  std::size_t class_count = 0;
  std::vector<Integer> class_orders;
  std::string frontier;                            // JSON when inconclusive
  std::vector<std::string> notes;
};

struct TransitiveCheck {
  bool factor_factorizes = false;  // some factor has a nontrivial factorization
  std::optional<std::size_t> factor;
  std::optional<TotalityWitness> witness;  // a transitive action that is not 2-closed
  std::size_t actions_tested = 0;
};
// G a direct product of the nonabelian simple subgroups `factors`, none a
// section of another. Sweeps the transitive actions only.
TransitiveCheck transitive_reduction_check(const PermGroup& G, const std::vector<PermGroup>& factors,
                                           const Budget& budget = {});

// T a section of U, by subgroup enumeration in U.
bool is_section(const PermGroup& T, const PermGroup& U, const Budget& budget = {});

// Nonabelian simple direct factors when G is such a product, else nothing.
std::optional<std::vector<PermGroup>> simple_direct_factors(const PermGroup& G, const Budget& budget = {});

TotalityVerdict is_totally_two_closed(const PermGroup& G, const TotalityOptions& opt = {});

}  // namespace tc
