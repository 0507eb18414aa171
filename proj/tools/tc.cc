// Command-line front end.
//
// Exit codes: 0 yes / 2-closed / condition holds, 10 no / not 2-closed,
// 20 inconclusive or budget exhausted, 2 bad input, 3 precondition failed.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tc/actions.hpp"
#include "tc/basesize.hpp"
#include "tc/class_data.hpp"
#include "tc/closure.hpp"
#include "tc/constructions.hpp"
#include "tc/group_io.hpp"
#include "tc/group_ops.hpp"
#include "tc/orbital.hpp"
#include "tc/reduction.hpp"
#include "tc/totality.hpp"

using namespace tc;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kYes = 0, kUsage = 2, kPrecondition = 3, kNo = 10, kInconclusive = 20 };

struct Config {
  std::string input;
  unsigned threads = 0;
  std::uint64_t seed = default_seed();
  std::uint64_t budget_degree = Budget{}.max_degree;
  std::uint64_t budget_elements = Budget{}.max_elements;
  std::uint64_t budget_nodes = Budget{}.max_nodes;
  double budget_seconds = 0;
  std::string format = "text";
  std::string classes;
  std::string resume;
  bool timing = false;

  Budget budget() const {
    Budget b;
    b.max_degree = budget_degree;
    b.max_elements = budget_elements;
    b.max_nodes = budget_nodes;
    b.max_seconds = budget_seconds;
    return b;
  }
};

PermGroup read_input(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return builtin_group(spec.substr(8));
  return load_group(spec);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

json one_based(std::span<const Point> pts) {
  json a = json::array();
  for (Point p : pts) a.push_back(p + 1);
  return a;
}

std::vector<Point> parse_points(const std::string& text, std::size_t n) {
  std::vector<Point> pts;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    for (char& c : tok)
      if (c == ',') c = ' ';
    std::stringstream inner(tok);
    long v;
    while (inner >> v) {
      if (v < 1 || static_cast<std::size_t>(v) > n) throw ParseError("point out of range: " + std::to_string(v), 1, 1);
      pts.push_back(static_cast<Point>(v - 1));
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

json group_json(const PermGroup& G) {
  json j;
  j["degree"] = G.degree();
  j["generators"] = json::array();
  for (const auto& g : G.generators()) j["generators"].push_back(g.to_string());
  return j;
}

json provenance(const Config& c) {
  json j;
  j["version"] = kVersion;
  j["seed"] = c.seed;
  j["budget"] = {{"degree", c.budget_degree},
                 {"elements", c.budget_elements},
                 {"nodes", c.budget_nodes},
                 {"seconds", c.budget_seconds}};
  return j;
}

void print_text(const json& j, int indent, std::ostream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      print_text(v, indent + 2, os);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
      os << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          os << pad << "  -\n";
          print_text(e, indent + 4, os);
        } else {
          os << pad << "  - " << e.dump() << "\n";
        }
      }
    } else if (v.is_array()) {
      os << pad << it.key() << ":";
      for (const auto& e : v) os << " " << (e.is_string() ? e.get<std::string>() : e.dump());
      os << "\n";
    } else {
      os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Config& c, json report) {
  report["provenance"] = provenance(c);
  if (c.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    print_text(report, 0, std::cout);
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int closure_exit(const ClosureResult& r) {
  if (!r.certified) return kInconclusive;
  return r.index == 1 ? kYes : kNo;
}

int cmd_analyze(const Config& c) {
  PermGroup G = read_input(c.input);
  json j;
  j["command"] = "analyze";
  j["degree"] = G.degree();
  j["order"] = G.order().get_str();
  json orbs = json::array();
  for (const auto& o : G.orbits()) orbs.push_back(one_based(o));
  j["orbit_count"] = orbs.size();
  j["orbits"] = orbs;
  j["transitive"] = G.is_transitive();
  OrbitalPartition op(G);
  j["rank"] = op.rank();
  json orbitals = json::array();
  for (std::uint32_t k = 0; k < op.rank(); ++k) {
    auto [a, b] = op.representative(k);
    orbitals.push_back({{"size", op.orbit_size(k)},
                        {"representative", {a + 1, b + 1}},
                        {"self_paired", op.is_self_paired(k)}});
  }
  j["orbitals"] = orbitals;
  if (G.is_transitive() && G.degree() > 0) {
    j["subdegrees"] = op.subdegrees();
    bool prim = higman_primitive(G, op);
    j["primitive"] = prim;
    json systems = json::array();
    if (!prim)
      for (const auto& s : all_block_systems(G))
        systems.push_back({{"blocks", s.block_count()}, {"block_size", s.block_size()},
                           {"block_of_1", one_based(s.blocks.front())}});
    j["block_systems"] = systems;
  }
  emit(c, j);
  return kYes;
}

int cmd_closure(const Config& c, bool shortcuts, bool print_gens) {
  PermGroup G = read_input(c.input);
  Timer t;
  ClosureResult r = two_closure(G, c.budget(), shortcuts);
  json j;
  j["command"] = "closure";
  j["degree"] = G.degree();
  j["input_order"] = G.order().get_str();
  j["closure_order"] = r.closure.order().get_str();
  j["index"] = r.index.get_str();
  j["two_closed"] = r.certified && r.index == 1;
  j["method"] = to_string(r.method);
  j["certified"] = r.certified;
  j["nodes"] = r.nodes;
  if (print_gens) j["closure"] = group_json(r.closure);
  if (c.timing) j["seconds"] = t.seconds();
  emit(c, j);
  return closure_exit(r);
}

int cmd_oracle(const Config& c, std::size_t max_degree) {
  PermGroup G = read_input(c.input);
  PermGroup X = brute_force_two_closure(G, max_degree);
  json j;
  j["command"] = "oracle";
  j["degree"] = G.degree();
  j["input_order"] = G.order().get_str();
  j["closure_order"] = X.order().get_str();
  Integer idx = X.order() / G.order();
  j["index"] = idx.get_str();
  j["two_closed"] = idx == 1;
  emit(c, j);
  return idx == 1 ? kYes : kNo;
}

int cmd_membership(const Config& c, const std::string& perm) {
  PermGroup G = read_input(c.input);
  Permutation x = Permutation::parse_cycles(G.degree(), perm);
  bool in = closure_membership(G, x);
  json j;
  j["command"] = "membership";
  j["permutation"] = x.to_string();
  j["in_group"] = G.contains(x);
  j["in_closure"] = in;
  emit(c, j);
  return in ? kYes : kNo;
}

ClassData class_data_for(const Config& c, const PermGroup& G) {
  if (!c.classes.empty()) return load_class_data(G, c.classes);
  return prime_order_classes(G, Integer(static_cast<unsigned long>(c.budget_elements)));
}

json rational_json(const Rational& q) {
  json j;
  j["numerator"] = q.get_num().get_str();
  j["denominator"] = q.get_den().get_str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", q.get_d());
  j["decimal"] = buf;
  j["less_than_one"] = q < 1;
  return j;
}

int cmd_basesize(const Config& c, const std::string& subgroup, unsigned max_c, bool reference) {
  PermGroup G = read_input(c.input);
  Budget b = c.budget();
  BaseSizeReport r = exact_base_size(G, b);
  json j;
  j["command"] = "basesize";
  j["degree"] = G.degree();
  j["order"] = G.order().get_str();
  if (r.exact) j["exact"] = *r.exact;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["witness_base"] = one_based(r.witness_base);
  j["nodes"] = r.nodes;
  if (G.is_transitive()) {
    GcdReport g = two_point_stabilizer_gcd(G);
    json trail = json::array();
    for (const auto& [pt, o] : g.trail) trail.push_back({{"point", pt + 1}, {"stabilizer_order", o.get_str()}});
    j["two_point_stabilizer_gcd"] = g.gcd.get_str();
    j["gcd_trail"] = trail;
  }
  if (!subgroup.empty()) {
    PermGroup H = read_input(subgroup);
    ClassData cd = class_data_for(c, G);
    auto q = qhat_base_bound(G, H, cd, max_c, b);
    if (q) {
      j["qhat_bound"] = q->first;
      j["qhat_value"] = rational_json(q->second);
    } else {
      j["qhat_bound"] = nullptr;
    }
  }
  if (reference) {
    json ref;
    ref["banner"] = "published constants, shown for cross-checking; never used in computation";
    ref["table"] = json::parse(reference_table_to_json(reference_table()));
    j["reference"] = ref;
  }
  emit(c, j);
  return r.exact ? kYes : kInconclusive;
}

int cmd_qhat(const Config& c, const std::string& subgroup, unsigned cc) {
  PermGroup G = read_input(c.input);
  PermGroup H = read_input(subgroup);
  ClassData cd = class_data_for(c, G);
  Rational q = qhat(G, H, cc, cd, c.budget());
  json j;
  j["command"] = "qhat";
  j["order"] = G.order().get_str();
  j["subgroup_order"] = H.order().get_str();
  j["c"] = cc;
  j["class_count"] = cd.classes.size();
  j["class_data"] = cd.provenance == ClassProvenance::Computed ? "computed" : "ingested";
  j["value"] = rational_json(q);
  emit(c, j);
  return q < 1 ? kYes : kNo;
}

int cmd_dissect(const Config& c, const std::string& gamma_text) {
  PermGroup G = read_input(c.input);
  std::vector<Point> gamma = parse_points(gamma_text, G.degree()), delta;
  for (Point x = 0; x < G.degree(); ++x)
    if (!std::binary_search(gamma.begin(), gamma.end(), x)) delta.push_back(x);
  bool cond = dissection_condition(G, gamma, delta);
  std::vector<PermGroup> parts{restrict_group(G, gamma), restrict_group(G, delta)};
  std::vector<Point> points(gamma);
  points.insert(points.end(), delta.begin(), delta.end());
  PermGroup P = conjugate_group(direct_product(parts), Permutation(std::vector<Point>(points)));
  OrbitalPartition op(G);
  bool inside = true;
  for (const auto& g : P.generators()) inside = inside && closure_membership(op, g);
  json j;
  j["command"] = "dissect";
  j["gamma"] = one_based(gamma);
  j["delta"] = one_based(delta);
  j["condition"] = cond;
  j["product_order"] = P.order().get_str();
  j["product_in_closure"] = inside;
  emit(c, j);
  return cond ? kYes : kNo;
}

int cmd_reduce(const Config& c, const std::string& block_text, std::size_t system, bool oracle) {
  PermGroup G = read_input(c.input);
  if (!G.is_transitive()) throw PreconditionError("group is not transitive");
  BlockSystem sigma;
  if (!block_text.empty()) {
    auto seeds = parse_points(block_text, G.degree());
    sigma = minimal_block(G, seeds);
  } else {
    auto systems = all_block_systems(G);
    if (systems.empty()) throw PreconditionError("no nontrivial block system");
    if (system < 1 || system > systems.size())
      throw PreconditionError("block system index out of range (1.." + std::to_string(systems.size()) + ")");
    sigma = systems[system - 1];
  }
  Budget b = c.budget();
  ReductionContext ctx = make_reduction_context(G, sigma, b);
  json j;
  j["command"] = "reduce";
  j["degree"] = G.degree();
  j["order"] = G.order().get_str();
  j["blocks"] = ctx.block_count();
  j["block_size"] = ctx.block_size();
  j["block_of_1"] = one_based(ctx.delta);
  j["kernel_order"] = ctx.kernel.order().get_str();
  j["core_free"] = ctx.core_free;
  j["block_action_order"] = ctx.L.order().get_str();
  ClosureResult lc = two_closure(ctx.L, b);
  j["block_action_two_closed"] = lc.certified && lc.index == 1;
  j["block_constituent_order"] = ctx.R.order().get_str();
  j["block_constituent_closure_order"] = ctx.Y.order().get_str();
  std::optional<bool> closed;
  Integer closure_order;
  try {
    ComplementReport rep = crucial_complement(ctx, b);
    json n;
    n["order"] = rep.structure.N.order().get_str();
    n["kind"] = to_string(rep.structure.kind);
    n["projection_order"] = rep.structure.A.order().get_str();
    n["projection_orbit_length"] = rep.structure.a;
    if (rep.structure.p) n["prime"] = rep.structure.p;
    if (!rep.structure.note.empty()) n["note"] = rep.structure.note;
    j["complement"] = n;
    json filters = json::array();
    for (const auto& f : rep.filters)
      filters.push_back({{"block", f.block + 1},
                         {"orbit_length", f.orbit_length},
                         {"stabilizer_order", f.stabilizer_order.get_str()},
                         {"filter_order", f.filter_order.get_str()},
                         {"full", f.full},
                         {"diagonal", f.diagonal}});
    j["pair_filters"] = filters;
    if (rep.nontrivial_pair_witness) j["nontrivial_pair_witness"] = *rep.nontrivial_pair_witness;
    if (!rep.diagnostics.empty()) j["diagnostics"] = rep.diagnostics;
    closed = rep.two_closed;
    closure_order = rep.closure.order();
  } catch (const PreconditionError& e) {
    j["complement"] = {{"not_applicable", e.what()}};
  }
  auto attempt = [&](const char* key, auto&& f) {
    try {
      j[key] = f();
    } catch (const PreconditionError& e) {
      j[key] = {{"not_applicable", e.what()}};
    }
  };
  attempt("block2", [&] {
    Block2Verdict v = maincor_block2(ctx);
    json o{{"two_closed", v.two_closed}};
    if (v.witness) o["witness"] = v.witness->to_string();
    json fb = json::array();
    for (auto x : v.failing_blocks) fb.push_back(x + 1);
    o["failing_blocks"] = fb;
    return o;
  });
  attempt("prime", [&] {
    PrimeReport p = maincor_prime(ctx);
    json fb = json::array();
    for (auto x : p.failing_blocks) fb.push_back(x + 1);
    return json{{"condition_holds", p.condition_holds}, {"certifies_closed", !p.condition_holds}, {"failing_blocks", fb}};
  });
  attempt("divisor", [&] {
    DivisorReport d = maincor_divisor(ctx);
    json trail = json::array();
    for (const auto& [blk, o] : d.trail) trail.push_back({{"block", blk + 1}, {"stabilizer_order", o.get_str()}});
    return json{{"gcd", d.gcd.get_str()}, {"certifies_closed", d.certifies_closed}, {"trail", trail}};
  });
  if (!closed) {
    ClosureResult r = two_closure(G, b);
    if (!r.certified) {
      j["two_closed"] = nullptr;
      emit(c, j);
      return kInconclusive;
    }
    closed = r.index == 1;
    closure_order = r.closure.order();
    j["verdict_source"] = "closure search";
  } else {
    j["verdict_source"] = "complement";
  }
  j["closure_order"] = closure_order.get_str();
  j["two_closed"] = *closed;
  if (oracle) {
    PermGroup X = brute_force_two_closure(G, 12);
    j["oracle_closure_order"] = X.order().get_str();
    j["oracle_agrees"] = X.order() == closure_order;
  }
  emit(c, j);
  return *closed ? kYes : kNo;
}

int cmd_totality(const Config& c, std::size_t max_actions, std::size_t max_degree, bool no_dedupe,
                 bool no_shortcuts, const std::string& frontier_out, const std::string& witness_out) {
  PermGroup G = read_input(c.input);
  TotalityOptions o;
  o.budget = c.budget();
  o.max_actions = max_actions;
  o.max_degree = max_degree;
  o.dedupe = !no_dedupe;
  o.shortcuts = !no_shortcuts;
  o.threads = c.threads;
  if (!c.resume.empty()) o.resume = read_text(c.resume);
  TotalityVerdict v = is_totally_two_closed(G, o);
  json j;
  j["command"] = "totality";
  j["order"] = G.order().get_str();
  j["status"] = to_string(v.status);
  j["stage"] = v.stage;
  j["subgroup_classes"] = v.class_count;
  j["actions_tested"] = v.actions_tested;
  if (v.witness) {
    const auto& w = *v.witness;
    json wj;
    wj["reason"] = w.reason;
    json so = json::array();
    for (const auto& x : w.stabilizer_orders) so.push_back(x.get_str());
    wj["stabilizer_orders"] = so;
    wj["closure_index"] = w.closure_index.get_str();
    wj["action"] = group_json(w.action);
    j["witness"] = wj;
    if (!witness_out.empty()) write_text(witness_out, format_group(w.action));
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  if (!v.frontier.empty()) {
    j["frontier"] = json::parse(v.frontier);
    if (!frontier_out.empty()) write_text(frontier_out, v.frontier);
  }
  emit(c, j);
  switch (v.status) {
    case TotalityStatus::Yes: return kYes;
    case TotalityStatus::No: return kNo;
    default: return kInconclusive;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-closures of permutation groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--threads", c.threads, "worker threads (0: all cores)");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--budget-degree", c.budget_degree)->check(CLI::PositiveNumber);
  app.add_option("--budget-elements", c.budget_elements)->check(CLI::PositiveNumber);
  app.add_option("--budget-nodes", c.budget_nodes)->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", c.budget_seconds, "0: no time limit")->check(CLI::NonNegativeNumber);
  app.add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
  app.add_option("--classes", c.classes, "class data to ingest (JSON)");
  app.add_option("--resume", c.resume, "frontier file from an earlier run");
  app.add_flag("--timing", c.timing, "report wall time");

  auto input = [&](CLI::App* sub) {
    sub->add_option("group", c.input, "group file, or builtin:NAME")->required();
  };

  auto* analyze = app.add_subcommand("analyze", "orbits, rank, subdegrees, primitivity, block systems");
  input(analyze);

  bool no_shortcuts = false, print_gens = false;
  auto* closure = app.add_subcommand("closure", "2-closure by backtrack search");
  input(closure);
  closure->add_flag("--no-shortcuts", no_shortcuts, "search even for symmetric, regular and rank-2 inputs");
  closure->add_flag("--generators", print_gens, "print closure generators");

  std::string perm;
  auto* membership = app.add_subcommand("membership", "test one permutation against the orbital partition");
  input(membership);
  membership->add_option("--perm", perm, "1-indexed cycles, e.g. \"(1 2)(3 4)\"")->required();

  std::string subgroup;
  unsigned max_c = 3, cval = 2;
  bool reference = false;
  auto* basesize = app.add_subcommand("basesize", "exact base size, two-point stabilizer gcd, qhat bound");
  input(basesize);
  basesize->add_option("--subgroup", subgroup, "point stabilizer for the qhat bound");
  basesize->add_option("--max-c", max_c);
  basesize->add_flag("--reference", reference, "show the embedded reference table");

  auto* qh = app.add_subcommand("qhat", "the qhat sum as an exact rational");
  input(qh);
  qh->add_option("--subgroup", subgroup)->required();
  qh->add_option("--c", cval)->check(CLI::PositiveNumber);

  std::string block;
  std::size_t system = 1;
  bool oracle = false;
  auto* reduce = app.add_subcommand("reduce", "imprimitive reduction for one block system");
  input(reduce);
  reduce->add_option("--block", block, "points that must share a block (1-indexed)");
  reduce->add_option("--system", system, "index into the list printed by analyze");
  reduce->add_flag("--oracle", oracle, "compare with the brute-force closure");

  std::string gamma;
  auto* dissect = app.add_subcommand("dissect", "dissection condition for an orbit split");
  input(dissect);
  dissect->add_option("--gamma", gamma, "union of orbits, 1-indexed")->required();

  std::size_t max_actions = 1000000, max_degree = 0;
  bool no_dedupe = false;
  std::string frontier_out, witness_out;
  auto* totality = app.add_subcommand("totality", "decide total 2-closure");
  input(totality);
  totality->add_option("--max-actions", max_actions);
  totality->add_option("--max-degree", max_degree, "cap on total degree (0: none)");
  totality->add_flag("--no-dedupe", no_dedupe, "also try repeated and regular orbits (needs --max-degree)");
  totality->add_flag("--no-shortcuts", no_shortcuts, "sweep only");
  totality->add_option("--frontier-out", frontier_out);
  totality->add_option("--witness-out", witness_out, "write the witness action as a group file");

  std::size_t oracle_degree = 9;
  auto* orc = app.add_subcommand("oracle", "brute-force 2-closure (small degree)");
  input(orc);
  orc->add_option("--max-degree", oracle_degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }
  set_default_seed(c.seed);

  try {
    if (*analyze) return cmd_analyze(c);
    if (*closure) return cmd_closure(c, !no_shortcuts, print_gens);
    if (*membership) return cmd_membership(c, perm);
    if (*basesize) return cmd_basesize(c, subgroup, max_c, reference);
    if (*qh) return cmd_qhat(c, subgroup, cval);
    if (*reduce) return cmd_reduce(c, block, system, oracle);
    if (*dissect) return cmd_dissect(c, gamma);
    if (*totality)
      return cmd_totality(c, max_actions, max_degree, no_dedupe, no_shortcuts, frontier_out, witness_out);
    if (*orc) return cmd_oracle(c, oracle_degree);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
