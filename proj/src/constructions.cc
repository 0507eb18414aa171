#include "tc/constructions.hpp"

#include <numeric>

#include "tc/small_group.hpp"

namespace tc {

namespace {

Permutation from_function(std::size_t n, const std::function<std::size_t(std::size_t)>& f) {
  std::vector<Point> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(f(x));
  return Permutation(std::move(img));
}

unsigned primitive_root(unsigned p) {
  for (unsigned r = 2; r < p; ++r) {
    unsigned x = 1, k = 0;
    do {
      x = x * r % p;
      ++k;
    } while (x != 1);
    if (k == p - 1) return r;
  }
  return 1;
}

unsigned inverse_mod(unsigned a, unsigned p) {
  unsigned r = 1;
  for (unsigned e = p - 2, b = a % p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Moebius maps on the projective line {0..p-1, inf = p}.
Permutation affine(unsigned p, unsigned a, unsigned b) {  // x -> a x + b
  return from_function(p + 1, [=](std::size_t x) -> std::size_t {
    return x == p ? p : (a * x + b) % p;
  });
}

Permutation negative_inverse(unsigned p) {  // x -> -1/x
  return from_function(p + 1, [=](std::size_t x) -> std::size_t {
    if (x == p) return 0;
    if (x == 0) return p;
    return (p - inverse_mod(static_cast<unsigned>(x), p)) % p;
  });
}

}  // namespace

PermGroup cyclic(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic group needs n >= 1");
  return PermGroup(n, {from_function(n, [=](std::size_t x) { return (x + 1) % n; })});
}

PermGroup dihedral(std::size_t n) {
  if (n < 3) throw PreconditionError("dihedral group on n points needs n >= 3");
  return PermGroup(n, {from_function(n, [=](std::size_t x) { return (x + 1) % n; }),
                       from_function(n, [=](std::size_t x) { return (n - x) % n; })});
}

PermGroup regular_from_table(std::size_t size,
                             const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                             const std::vector<std::size_t>& generators) {
  std::vector<Permutation> gens;
  for (std::size_t g : generators)
    gens.push_back(from_function(size, [&](std::size_t x) { return mul(x, g); }));
  ChainOptions opt;
  opt.known_order = static_cast<unsigned long>(size);
  return PermGroup(size, gens, opt);
}

PermGroup dicyclic(std::size_t order) {
  if (order < 8 || order % 4) throw PreconditionError("dicyclic order must be a multiple of 4, at least 8");
  // a^i b^j stored as i + m*j, with a^m = 1, b^2 = a^(m/2), b^-1 a b = a^-1
  const std::size_t m = order / 2;
  auto mul = [m](std::size_t x, std::size_t y) -> std::size_t {
    std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
    if (j == 0) return (i + k) % m + m * l;
    if (l == 0) return (i + m - k) % m + m;
    return (i + m - k + m / 2) % m;
  };
  return regular_from_table(order, mul, {1, m});
}

PermGroup abelian(const std::vector<std::size_t>& factors) {
  std::size_t size = 1;
  for (std::size_t f : factors) size *= f;
  auto mul = [&](std::size_t x, std::size_t y) {
    std::size_t r = 0, scale = 1;
    for (std::size_t f : factors) {
      r += ((x / scale % f + y / scale % f) % f) * scale;
      scale *= f;
    }
    return r;
  };
  std::vector<std::size_t> gens;
  std::size_t scale = 1;
  for (std::size_t f : factors) {
    gens.push_back(scale);
    scale *= f;
  }
  return regular_from_table(size, mul, gens);
}

PermGroup regular_representation(const PermGroup& G, std::size_t max_order) {
  if (G.order() > static_cast<unsigned long>(max_order))
    throw BudgetExceeded("group too large for a regular representation");
  auto elems = G.elements();
  BaseImageIndex idx(G.base());
  std::vector<Point> img(G.base().size());
  for (const auto& e : elems) {
    for (std::size_t t = 0; t < img.size(); ++t) img[t] = e[G.base()[t]];
    idx.insert(img);
  }
  std::vector<Permutation> gens;
  for (const auto& g : G.generators()) {
    std::vector<Point> p(elems.size());
    for (std::size_t x = 0; x < elems.size(); ++x) p[x] = static_cast<Point>(idx.find(elems[x] * g));
    gens.emplace_back(std::move(p));
  }
  ChainOptions opt;
  opt.known_order = G.order();
  return PermGroup(elems.size(), gens, opt);
}

PermGroup direct_product_regular(const PermGroup& A, const PermGroup& B) {
  const std::size_t a = A.degree(), b = B.degree();
  std::vector<Permutation> gens;
  for (const auto& g : A.generators())
    gens.push_back(from_function(a * b, [&](std::size_t x) { return g[x % a] + a * (x / a); }));
  for (const auto& h : B.generators())
    gens.push_back(from_function(a * b, [&](std::size_t x) { return x % a + a * h[x / a]; }));
  ChainOptions opt;
  opt.known_order = A.order() * B.order();
  return PermGroup(a * b, gens, opt);
}

PermGroup frobenius20() { return PermGroup(5, {cyclic(5).generators()[0],
                                               from_function(5, [](std::size_t x) { return 2 * x % 5; })}); }

PermGroup gamma_l1_16() {
  // point i is x^i for a root x of t^4 + t + 1, which generates GF(16)^*;
  // multiplication by x adds 1 to the exponent and the Frobenius map doubles it
  return PermGroup(15, {from_function(15, [](std::size_t i) { return (i + 1) % 15; }),
                        from_function(15, [](std::size_t i) { return 2 * i % 15; })});
}

PermGroup psl2(unsigned p) {
  if (p < 5) throw PreconditionError("psl2 needs a prime p >= 5");
  unsigned r = primitive_root(p);
  return PermGroup(p + 1, {affine(p, 1, 1), affine(p, r * r % p, 0), negative_inverse(p)});
}

PermGroup pgl2(unsigned p) {
  if (p < 3) throw PreconditionError("pgl2 needs an odd prime");
  unsigned r = primitive_root(p);
  return PermGroup(p + 1, {affine(p, 1, 1), affine(p, r, 0), negative_inverse(p)});
}

PermGroup mathieu11() {
  return PermGroup(11, {Permutation::parse_cycles(11, "(1 2 3 4 5 6 7 8 9 10 11)"),
                        Permutation::parse_cycles(11, "(3 7 11 8)(4 10 5 6)")});
}

PermGroup sym3_on_five() {
  return PermGroup(5, {Permutation::parse_cycles(5, "(1 2 3)"), Permutation::parse_cycles(5, "(1 2)(4 5)")});
}

std::vector<NamedGroup> builtin_groups() {
  std::vector<NamedGroup> out;
  for (std::size_t n = 1; n <= 32; ++n) out.push_back({"C" + std::to_string(n), cyclic(n), true});
  auto ab = [&](const std::string& name, std::vector<std::size_t> f) {
    out.push_back({name, abelian(f), true});
  };
  ab("C2xC2", {2, 2});
  ab("C2xC4", {2, 4});
  ab("C2xC2xC2", {2, 2, 2});
  ab("C3xC3", {3, 3});
  ab("C2xC6", {2, 6});
  ab("C2xC8", {2, 8});
  ab("C4xC4", {4, 4});
  ab("C2xC2xC4", {2, 2, 4});
  out.push_back({"D8", dihedral(4), true});
  out.push_back({"D16", dihedral(8), true});
  out.push_back({"D32", dihedral(16), true});
  out.push_back({"Q8", dicyclic(8), true});
  out.push_back({"Q16", dicyclic(16), true});
  out.push_back({"Q8xC3", direct_product_regular(dicyclic(8), cyclic(3)), true});
  out.push_back({"Q8xC5", direct_product_regular(dicyclic(8), cyclic(5)), true});
  out.push_back({"S3", PermGroup::symmetric(3), false});
  out.push_back({"D10", dihedral(5), false});
  out.push_back({"A4", PermGroup::alternating(4), false});
  out.push_back({"D12", dihedral(6), false});
  out.push_back({"Dic12", dicyclic(12), false});
  out.push_back({"S4", PermGroup::symmetric(4), false});
  out.push_back({"F20", frobenius20(), false});
  out.push_back({"A5", PermGroup::alternating(5), false});
  return out;
}

PermGroup builtin_group(const std::string& name) {
  for (auto& g : builtin_groups())
    if (g.name == name) return std::move(g.group);
  if (name == "S5") return PermGroup::symmetric(5);
  if (name == "A6") return PermGroup::alternating(6);
  if (name == "M11") return mathieu11();
  if (name == "L2(7)") return psl2(7);
  if (name == "PGL2(7)") return pgl2(7);
  if (name == "L2(11)") return psl2(11);
  if (name == "GammaL1(16)") return gamma_l1_16();
  throw PreconditionError("unknown built-in group: " + name);
}

}  // namespace tc
