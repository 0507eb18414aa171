#include "tc/class_data.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tc/search.hpp"

namespace tc {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// p if every nontrivial cycle of g has the same prime length p, else 0
unsigned prime_order_of(const Permutation& g, std::vector<char>& seen) {
  const std::size_t n = g.degree();
  seen.assign(n, 0);
  unsigned len = 0;
  for (Point x = 0; x < n; ++x) {
    if (seen[x] || g[x] == x) continue;
    unsigned l = 0;
    for (Point y = x; !seen[y]; y = g[y]) {
      seen[y] = 1;
      ++l;
    }
    if (len == 0) {
      if (!is_prime(l)) return 0;
      len = l;
    } else if (l != len) {
      return 0;
    }
  }
  return len;
}

}  // namespace

Permutation element_from_base_images(const PermGroup& G, std::span<const Point> images) {
  const std::size_t k = G.chain_length();
  if (images.size() != k) throw PreconditionError("one image per base point required");
  std::vector<Point> cs(images.begin(), images.end());
  Permutation g = G.identity();
  for (std::size_t l = 0; l < k; ++l) {
    if (!G.levels()[l].in_orbit(cs[l])) throw PreconditionError("images do not come from an element");
    Permutation u = G.transversal(l, cs[l]);
    Permutation ui = G.transversal_inverse(l, cs[l]);
    g = u * g;
    for (std::size_t m = l + 1; m < k; ++m) cs[m] = ui[cs[m]];
  }
  return g;
}

ClassData prime_order_classes(const PermGroup& G, const Integer& max_elements) {
  if (G.order() > max_elements)
    throw BudgetExceeded("group order exceeds the element budget; supply ingested class data");
  auto index = std::make_shared<ClassData::Index>();
  const std::vector<Point> base = G.base();
  const std::size_t k = base.size();
  index->keys = BaseImageIndex(base);
  std::vector<unsigned> primes;
  std::vector<char> seen;
  std::vector<Point> img(k);
  G.for_each_element([&](const Permutation& g) {
    unsigned p = prime_order_of(g, seen);
    if (p) {
      for (std::size_t t = 0; t < k; ++t) img[t] = g[base[t]];
      index->keys.insert(img);
      primes.push_back(p);
    }
    return true;
  }, max_elements);
  const auto none = static_cast<std::uint32_t>(-1);
  index->class_id.assign(index->keys.size(), none);
  ClassData data;
  std::vector<Permutation> ginv;
  for (const auto& s : G.generators()) ginv.push_back(s.inverse());
  for (std::uint32_t e = 0; e < index->keys.size(); ++e) {
    if (index->class_id[e] != none) continue;
    auto cid = static_cast<std::uint32_t>(data.classes.size());
    Permutation rep = element_from_base_images(G, index->keys.images(e));
    index->class_id[e] = cid;
    std::vector<Permutation> queue{rep};
    std::size_t count = 1;
    while (!queue.empty()) {
      Permutation x = std::move(queue.back());
      queue.pop_back();
      for (std::size_t i = 0; i < G.generators().size(); ++i) {
        const auto& s = G.generators()[i];
        const auto& si = ginv[i];
        // base images of s^-1 x s without forming it
        for (std::size_t t = 0; t < k; ++t) img[t] = s[x[si[base[t]]]];
        std::int64_t j = index->keys.find(img);
        if (j < 0) throw Error("conjugate of a prime-order element was not enumerated");
        if (index->class_id[static_cast<std::size_t>(j)] == none) {
          index->class_id[static_cast<std::size_t>(j)] = cid;
          ++count;
          queue.push_back(x.conjugate(s));
        }
      }
    }
    data.classes.push_back({rep, primes[e], Integer(static_cast<unsigned long>(count))});
  }
  data.provenance = ClassProvenance::Computed;
  data.index = index;
  return data;
}

std::optional<std::size_t> ClassData::class_of(const PermGroup& G, const Permutation& x) const {
  std::vector<char> seen;
  unsigned p = prime_order_of(x, seen);
  if (!p) return std::nullopt;
  if (index) {
    std::int64_t j = index->keys.find(x);
    if (j < 0) throw PreconditionError("element is not in the group of the class data");
    return index->class_id[static_cast<std::size_t>(j)];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].prime != p) continue;
    if (conjugating_element(G, classes[c].representative, x)) return c;
  }
  throw PreconditionError("class data does not cover this element");
}

ClassData parse_class_data(const PermGroup& G, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("class data: ") + e.what(), 1, e.byte);
  }
  if (!j.is_array()) throw ParseError("class data must be a JSON list", 1, 1);
  ClassData data;
  data.provenance = ClassProvenance::Ingested;
  std::size_t row = 0;
  std::vector<char> seen;
  for (const auto& e : j) {
    ++row;
    auto where = " (entry " + std::to_string(row) + ")";
    if (!e.is_object() || !e.contains("order") || !e.contains("representative") ||
        !e.contains("class_size"))
      throw ParseError("class entry needs order, representative, class_size" + where, row, 1);
    PrimeClass c;
    c.prime = e.at("order").get<unsigned>();
    c.representative = Permutation::parse_cycles(G.degree(), e.at("representative").get<std::string>());
    const auto& sz = e.at("class_size");
    c.size = Integer(sz.is_string() ? sz.get<std::string>() : std::to_string(sz.get<unsigned long long>()));
    if (!is_prime(c.prime)) throw ParseError("order is not prime" + where, row, 1);
    if (prime_order_of(c.representative, seen) != c.prime)
      throw ParseError("representative does not have the stated order" + where, row, 1);
    data.classes.push_back(std::move(c));
  }
  return data;
}

ClassData load_class_data(const PermGroup& G, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_class_data(G, ss.str());
}

std::string class_data_to_json(const ClassData& data) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : data.classes)
    j.push_back({{"order", c.prime},
                 {"representative", c.representative.to_string()},
                 {"class_size", c.size.get_str()}});
  return j.dump(2);
}

}  // namespace tc
