#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tc/class_data.hpp"
#include "tc/perm_group.hpp"

namespace tc {

struct BaseSizeReport {
  std::optional<std::size_t> exact;
  std::size_t lower = 0;             // always valid
  std::size_t upper = 0;             // greedy base length
  std::vector<Point> witness_base;   // trivial pointwise stabilizer, length upper
  std::optional<std::size_t> qhat_bound;  // least c tried with qhat < 1
  std::optional<Rational> qhat_value;
  std::uint64_t nodes = 0;
};

// Greedy descent for an upper bound, then an exhaustive search over point
// sequences up to G-symmetry for anything shorter. On budget exhaustion
// `exact` stays empty and lower/upper are bounds.
BaseSizeReport exact_base_size(const PermGroup& G, const Budget& budget = {});

// sum |x_i^G cap H|^c / |x_i^G|^(c-1) over the classes in `classes`
Rational qhat(const PermGroup& G, const PermGroup& H, unsigned c, const ClassData& classes,
              const Budget& budget = {});

// Least c in 1..max_c with qhat(G, H, c) < 1.
std::optional<std::pair<unsigned, Rational>> qhat_base_bound(const PermGroup& G, const PermGroup& H,
                                                             const ClassData& classes,
                                                             unsigned max_c = 4,
                                                             const Budget& budget = {});

// Number of elements of H conjugate in G to x (x of prime order).
Integer class_intersection_count(const PermGroup& G, const PermGroup& H, const Permutation& x,
                                 const Budget& budget = {});

struct GcdReport {
  Integer gcd;
  // (representative point, |M cap M_b|) per M-orbit other than {0}
  std::vector<std::pair<Point, Integer>> trail;
};
// gcd of the two-point stabilizer orders |G_0 cap G_b| over b != 0.
GcdReport two_point_stabilizer_gcd(const PermGroup& G);

struct ReferenceRow {
  std::string group;
  std::string subgroup;
  Integer g;
  std::string note;
};

struct SectionFact {
  std::string section;
  std::string group;
  bool is_section = false;
};

struct ReferenceTable {
  std::string version;
  std::vector<ReferenceRow> rows;
  std::vector<SectionFact> sections;
  std::vector<std::string> notes;

  const ReferenceRow* find(const std::string& group, const std::string& subgroup) const;
  // nothing when the pair is not listed
  std::optional<bool> is_section(const std::string& section, const std::string& group) const;
};

// Built-in copy of the published constants.
const ReferenceTable& reference_table();
ReferenceTable parse_reference_table(const std::string& json_text);
ReferenceTable load_reference_table(const std::string& path);
std::string reference_table_to_json(const ReferenceTable& t);

}  // namespace tc
