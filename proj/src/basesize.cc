#include "tc/basesize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "tc/search.hpp"

namespace tc {

namespace {

std::size_t counting_lower_bound(const PermGroup& G) {
  const std::size_t n = G.degree();
  Integer prod = 1;
  std::size_t k = 0;
  while (prod < G.order() && k < n) {
    prod *= static_cast<unsigned long>(n - k);
    ++k;
  }
  return k;
}

struct BaseSearch {
  std::size_t target;
  const Budget& budget;
  Deadline* deadline;
  std::uint64_t nodes = 0;
  std::vector<Point> prefix;

  bool run(const PermGroup& S) {
    if (++nodes > budget.max_nodes || (deadline && deadline->expired()))
      throw BudgetExceeded("base size search budget exhausted");
    const std::size_t left = target - prefix.size();
    if (left == 0) return S.is_trivial();
    auto orbs = S.orbits();
    if (left == 1) {
      for (const auto& o : orbs)
        if (S.order() == static_cast<unsigned long>(o.size())) {
          prefix.push_back(o.front());
          return true;
        }
      return false;
    }
    for (const auto& o : orbs) {
      if (o.size() == 1) continue;
      PermGroup T = S.point_stabilizer(o.front());
      // each further point cuts the order by at most the degree
      Integer cap = 1;
      for (std::size_t i = 1; i < left; ++i) cap *= static_cast<unsigned long>(S.degree());
      if (T.order() > cap) continue;
      prefix.push_back(o.front());
      if (run(T)) return true;
      prefix.pop_back();
    }
    return false;
  }
};

}  // namespace

BaseSizeReport exact_base_size(const PermGroup& G, const Budget& budget) {
  BaseSizeReport r;
  r.lower = counting_lower_bound(G);
  PermGroup S = G;
  while (!S.is_trivial()) {
    auto orbs = S.orbits();
    const auto& best = *std::max_element(orbs.begin(), orbs.end(),
                                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
    r.witness_base.push_back(best.front());
    S = S.point_stabilizer(best.front());
  }
  r.upper = r.witness_base.size();
  Deadline dl(budget.max_seconds);
  for (std::size_t m = r.lower; m < r.upper; ++m) {
    BaseSearch bs{m, budget, budget.has_deadline() ? &dl : nullptr, 0, {}};
    bool found;
    try {
      found = bs.run(G);
    } catch (const BudgetExceeded&) {
      r.nodes += bs.nodes;
      return r;
    }
    r.nodes += bs.nodes;
    if (found) {
      r.exact = m;
      r.upper = m;
      r.witness_base = bs.prefix;
      return r;
    }
    r.lower = m + 1;
  }
  r.exact = r.upper;
  r.lower = r.upper;
  return r;
}

Rational qhat(const PermGroup& G, const PermGroup& H, unsigned c, const ClassData& classes,
              const Budget& budget) {
  if (c == 0) throw PreconditionError("c must be positive");
  if (H.degree() != G.degree() || !G.contains(H)) throw PreconditionError("H must be a subgroup of G");
  std::vector<Integer> counts(classes.classes.size(), 0);
  H.for_each_element([&](const Permutation& h) {
    if (auto cid = classes.class_of(G, h)) counts[*cid] += 1;
    return true;
  }, Integer(static_cast<unsigned long>(budget.max_elements)));
  Rational q = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), counts[i].get_mpz_t(), c);
    mpz_pow_ui(den.get_mpz_t(), classes.classes[i].size.get_mpz_t(), c - 1);
    q += Rational(num, den);
  }
  q.canonicalize();
  return q;
}

std::optional<std::pair<unsigned, Rational>> qhat_base_bound(const PermGroup& G, const PermGroup& H,
                                                             const ClassData& classes, unsigned max_c,
                                                             const Budget& budget) {
  for (unsigned c = 1; c <= max_c; ++c) {
    Rational q = qhat(G, H, c, classes, budget);
    if (q < 1) return std::make_pair(c, q);
  }
  return std::nullopt;
}

Integer class_intersection_count(const PermGroup& G, const PermGroup& H, const Permutation& x,
                                 const Budget& budget) {
  if (x.degree() != G.degree() || H.degree() != G.degree()) throw PreconditionError("degree mismatch");
  if (!x.order().fits_ulong_p() || !is_prime(x.order().get_ui()))
    throw PreconditionError("x must have prime order");
  const auto type = x.cycle_type();
  // H-classes are decided once
  std::unordered_map<Permutation, bool, PermutationHash> known;
  Integer count = 0;
  H.for_each_element([&](const Permutation& h) {
    if (h.cycle_type() != type) return true;
    auto it = known.find(h);
    if (it == known.end()) {
      bool conj = conjugating_element(G, x, h).has_value();
      std::vector<Permutation> cls{h};
      known.emplace(h, conj);
      for (std::size_t i = 0; i < cls.size(); ++i)
        for (const auto& g : H.generators()) {
          Permutation y = cls[i].conjugate(g);
          if (known.emplace(y, conj).second) cls.push_back(std::move(y));
        }
      it = known.find(h);
    }
    if (it->second) count += 1;
    return true;
  }, Integer(static_cast<unsigned long>(budget.max_elements)));
  return count;
}

GcdReport two_point_stabilizer_gcd(const PermGroup& G) {
  if (!G.is_transitive()) throw PreconditionError("group is not transitive");
  PermGroup M = G.point_stabilizer(0);
  GcdReport r;
  r.gcd = 0;
  for (const auto& o : M.orbits()) {
    if (o.front() == 0) continue;
    Integer s = M.order() / static_cast<unsigned long>(o.size());
    r.trail.emplace_back(o.front(), s);
    mpz_gcd(r.gcd.get_mpz_t(), r.gcd.get_mpz_t(), s.get_mpz_t());
  }
  return r;
}

const ReferenceRow* ReferenceTable::find(const std::string& group, const std::string& subgroup) const {
  for (const auto& r : rows)
    if (r.group == group && r.subgroup == subgroup) return &r;
  return nullptr;
}

std::optional<bool> ReferenceTable::is_section(const std::string& section, const std::string& group) const {
  for (const auto& s : sections)
    if (s.section == section && s.group == group) return s.is_section;
  return std::nullopt;
}

const ReferenceTable& reference_table() {
  static const ReferenceTable table = [] {
    ReferenceTable t;
    t.version = "1";
    auto row = [&](const char* g, const char* m, const char* v, const char* note = "") {
      t.rows.push_back({g, m, Integer(v), note});
    };
    row("J1", "L2(11)", "1");
    row("J3", "L2(16)", "1");
    row("J3", "L2(16).2", "2");
    row("J4", "2^11:M24", "24");
    row("J4", "2^(1+12).3.M22.2", "2");
    row("J4", "2^10:L5(2)", "5040", "d <= 30 is also known; the exact value is not published");
    row("J4", "2^(1+12).3.M22", "2");
    row("J4", "2^(1+12).3.L3(4)", "2");
    row("J4", "2^(1+12).3.L3(4).2", "2");
    row("Ly", "G2(5)", "48");
    row("Ly", "3.McL", "30");
    row("Ly", "3.McL.2", "30");
    row("Th", "2^5.L5(2)", "1");
    row("Th", "3D4(2)", "6");
    row("Th", "3D4(2).3", "6");
    row("M", "2.B", "2090188800",
        "209018880 also appears for this entry; the tabulated value is kept");
    const char* names[] = {"J1", "J3", "J4", "Ly", "Th", "M"};
    for (const char* a : names)
      for (const char* b : names)
        if (std::string(a) != b)
          t.sections.push_back({a, b, std::string(a) == "Th" && std::string(b) == "M"});
    t.notes.push_back("g(T,M) is a multiple of the gcd of the two-point stabilizer orders in M");
    return t;
  }();
  return table;
}

ReferenceTable parse_reference_table(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("reference data: ") + e.what(), 1, e.byte);
  }
  ReferenceTable t;
  try {
    t.version = j.at("version").get<std::string>();
    for (const auto& r : j.at("rows"))
      t.rows.push_back({r.at("group").get<std::string>(), r.at("subgroup").get<std::string>(),
                        Integer(r.at("g").get<std::string>()), r.value("note", std::string())});
    for (const auto& s : j.at("sections"))
      t.sections.push_back({s.at("section").get<std::string>(), s.at("group").get<std::string>(),
                            s.at("is_section").get<bool>()});
    if (j.contains("notes"))
      for (const auto& n : j.at("notes")) t.notes.push_back(n.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("reference data: ") + e.what(), 1, 1);
  }
  return t;
}

ReferenceTable load_reference_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_reference_table(ss.str());
}

std::string reference_table_to_json(const ReferenceTable& t) {
  nlohmann::ordered_json j;
  j["version"] = t.version;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    o["group"] = r.group;
    o["subgroup"] = r.subgroup;
    o["g"] = r.g.get_str();
    if (!r.note.empty()) o["note"] = r.note;
    j["rows"].push_back(o);
  }
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : t.sections)
    j["sections"].push_back({{"section", s.section}, {"group", s.group}, {"is_section", s.is_section}});
  j["notes"] = t.notes;
  return j.dump(2) + "\n";
}

}  // namespace tc
