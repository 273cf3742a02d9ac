#pragma once

#include <algorithm>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "hopf.hpp"
#include "parallel.hpp"
#include "rmatrix.hpp"
#include "solver.hpp"

namespace hopfz2 {

// K: G = Z_2n x Z_2 = <a> x <b>, a<|x = ab, b<|x = b.
// A: G = Z_4n = <a>, a<|x = a^{2n+1}.
enum class Family { K, A };

inline std::string family_name(Family f) { return f == Family::K ? "K" : "A"; }

struct FamilySpec {
  Family family = Family::K;
  int n = 1;
  std::vector<RootOfUnity> sigma_table;  // indexed by Elem of family_group
  std::vector<RootOfUnity> tau_table;    // |G|^2, row-major
};

struct FamilyGroup {
  FiniteAbelianGroup G;
  Involution x;
  Elem a = 0, b = 0;
};

inline FamilyGroup family_group(Family f, int n) {
  if (n < 1) throw std::invalid_argument("family parameter n must be positive");
  FamilyGroup fg;
  if (f == Family::K) {
    fg.G = FiniteAbelianGroup({2 * n, 2});
    fg.x = Involution(fg.G, {{1, 1}, {0, 1}});
    fg.a = fg.G.index({1, 0});
    fg.b = fg.G.index({0, 1});
  } else {
    fg.G = FiniteAbelianGroup({4 * n});
    fg.x = Involution(fg.G, {{2 * n + 1}});
    fg.a = fg.G.index({1});
    fg.b = fg.G.index({2 * n});
  }
  return fg;
}

// sigma = 1, tau = 1.
inline FamilySpec untwisted_spec(Family f, int n) {
  const int size = family_group(f, n).G.size();
  return {f, n, std::vector<RootOfUnity>(size), std::vector<RootOfUnity>(static_cast<std::size_t>(size) * size)};
}

// K family: sigma(a^i b^j) = (-1)^{(i-j)j}, tau(a^i b^j, a^k b^l) = (-1)^{j(k-l)}.
inline FamilySpec kp_spec(int n) {
  FamilySpec s = untwisted_spec(Family::K, n);
  const auto G = family_group(Family::K, n).G;
  auto sgn = [](long e) { return (e % 2 + 2) % 2 ? RootOfUnity::minus_one() : RootOfUnity::one(); };
  for (Elem g = 0; g < G.size(); ++g) {
    const int i = G.coord(g, 0), j = G.coord(g, 1);
    s.sigma_table[g] = sgn(static_cast<long>(i - j) * j);
    for (Elem h = 0; h < G.size(); ++h)
      s.tau_table[static_cast<std::size_t>(g) * G.size() + h] = sgn(static_cast<long>(j) * (G.coord(h, 0) - G.coord(h, 1)));
  }
  return s;
}

// A family: sigma = 1, tau(a^i, a^j) = (-1)^{ij}.
inline FamilySpec a_paper_spec(int n) {
  FamilySpec s = untwisted_spec(Family::A, n);
  const int size = 4 * n;
  for (Elem g = 0; g < size; ++g)
    for (Elem h = 0; h < size; ++h)
      s.tau_table[static_cast<std::size_t>(g) * size + h] = (g * h) % 2 ? RootOfUnity::minus_one() : RootOfUnity::one();
  return s;
}

// Presentation pinned to s = (a^2, b) with a = (1,0) for K, s = (a^2) with a = a for A.
inline ExtensionData pin_family_presentation(const ExtensionData& d, Family f, int n) {
  const FamilyGroup fg = family_group(f, n);
  const Elem a2 = fg.G.mul(fg.a, fg.a);
  if (f == Family::K) return d.with_presentation(fg.a, std::vector<Elem>{a2, fg.b});
  return d.with_presentation(fg.a, std::vector<Elem>{a2});
}

// Throws std::invalid_argument carrying the validation report when the tables are not a valid datum.
inline ExtensionData make_family(const FamilySpec& spec) {
  FamilyGroup fg = family_group(spec.family, spec.n);
  ExtensionData d(fg.G, fg.x, spec.sigma_table, spec.tau_table);
  Report r = validate(d);
  if (!r.ok()) throw std::invalid_argument("make_family: invalid data\n" + r.str());
  return pin_family_presentation(d, spec.family, spec.n);
}

inline ExtensionData make_kac_paljutkin() { return make_family(kp_spec(1)); }

// Which family d belongs to (exact group and action match), with its n.
inline std::optional<std::pair<Family, int>> detect_family(const ExtensionData& d) {
  const auto& ord = d.group().factor_orders();
  std::optional<std::pair<Family, int>> cand;
  if (ord.size() == 2 && ord[1] == 2 && ord[0] % 2 == 0) cand = {Family::K, ord[0] / 2};
  if (ord.size() == 1 && ord[0] % 4 == 0) cand = {Family::A, ord[0] / 4};
  if (!cand) return std::nullopt;
  if (family_group(cand->first, cand->second).x.table() != d.action().table()) return std::nullopt;
  return cand;
}

struct Preset {
  std::string name;
  Family family;
  int n;
  ExtensionData data;
};

// "kac-paljutkin", "K8n:n=<k>:untwisted", "K8n:n=<k>:kp", "A8n:n=<k>:paper", "A8n:n=<k>:untwisted".
inline Preset make_preset(const std::string& name) {
  if (name == "kac-paljutkin") return {name, Family::K, 1, make_kac_paljutkin()};
  static const std::regex re(R"(([KA])8n:n=([0-9]{1,4}):([a-z]+))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown preset: " + name);
  const Family f = m[1] == "K" ? Family::K : Family::A;
  const int n = std::stoi(m[2]);
  const std::string kind = m[3];
  if (n < 1) throw std::invalid_argument("preset n must be positive: " + name);
  if (kind == "untwisted") return {name, f, n, make_family(untwisted_spec(f, n))};
  if (f == Family::K && kind == "kp") return {name, f, n, make_family(kp_spec(n))};
  if (f == Family::A && kind == "paper") return {name, f, n, make_family(a_paper_spec(n))};
  throw std::invalid_argument("unknown preset: " + name);
}

inline std::vector<std::string> preset_examples() {
  return {"kac-paljutkin", "K8n:n=<k>:untwisted", "K8n:n=<k>:kp", "A8n:n=<k>:paper", "A8n:n=<k>:untwisted"};
}

// One classified structure: params = (beta1, beta2, delta) for K, (beta, delta) for A.
struct Classified {
  std::vector<RootOfUnity> params;
  SolutionTuple tuple;
  RMatrix R;
};

inline ExtensionData require_family(const ExtensionData& d, Family f) {
  auto fam = detect_family(d);
  if (!fam || fam->first != f)
    throw std::invalid_argument("classify_" + family_name(f) + ": data is not from the " + family_name(f) + " family");
  return pin_family_presentation(d, f, fam->second);
}

// beta1^n = P_{s1^n}, beta2^2 = P_{s2^2}, delta^2 = tau(a,a)tau(b,a)/(tau(b,b)sigma(a)) beta1 beta2.
inline std::vector<Classified> classify_K(const ExtensionData& data) {
  const ExtensionData d = require_family(data, Family::K);
  const Presentation& P = d.presentation();
  const Elem a = P.a, b = P.b, s1 = P.s[0], s2 = P.s[1];
  const int n = P.k[0];
  const RootOfUnity c = d.tau(a, a) * d.tau(b, a) / (d.tau(b, b) * d.sigma(a));
  std::vector<Classified> out;
  for (const auto& b1 : nth_roots(p_power(d, s1, n), n))
    for (const auto& b2 : nth_roots(p_power(d, s2, 2), 2))
      for (const auto& delta : nth_roots(c * b1 * b2, 2)) {
        SolutionTuple t;
        t.kind = TupleKind::special;
        t.alpha = {{b1.pow(2) * d.sigma(s1), RootOfUnity()}, {RootOfUnity(), d.eta(a, s2)}};
        t.beta = {b1, b2};
        t.gamma = {b1 * d.eta(a, s1), b2 * d.eta(a, s2)};
        t.delta = delta;
        out.push_back({{b1, b2, delta}, t, RMatrix{}});
      }
  parallel_for(out.size(), [&](std::size_t i) { out[i].R = tuple_to_rmatrix_special(d, P, out[i].tuple); });
  return out;
}

// beta^{2n} = P_{s^{2n}}, delta^2 = tau(a,a)tau(b,a)/(tau(b,b)sigma(a)) P_{s^n}^{-1} beta^{1+n}.
// The inverse on P_{s^n} is what verifies when P_{s^n}^2 != 1; both forms agree when P_{s^n} = +-1.
inline std::vector<Classified> classify_A(const ExtensionData& data) {
  const ExtensionData d = require_family(data, Family::A);
  const Presentation& P = d.presentation();
  const Elem a = P.a, b = P.b, s = P.s[0];
  const int k = P.k[0], n = k / 2;
  const RootOfUnity c = d.tau(a, a) * d.tau(b, a) / (d.tau(b, b) * d.sigma(a) * p_power(d, s, n));
  std::vector<Classified> out;
  for (const auto& beta : nth_roots(p_power(d, s, k), k))
    for (const auto& delta : nth_roots(c * beta.pow(1 + n), 2)) {
      SolutionTuple t;
      t.kind = TupleKind::special;
      t.alpha = {{beta.pow(2) * d.sigma(s)}};
      t.beta = {beta};
      t.gamma = {beta};
      t.delta = delta;
      out.push_back({{beta, delta}, t, RMatrix{}});
    }
  parallel_for(out.size(), [&](std::size_t i) { out[i].R = tuple_to_rmatrix_special(d, P, out[i].tuple); });
  return out;
}

inline std::vector<Classified> classify(const ExtensionData& d) {
  auto fam = detect_family(d);
  if (!fam) throw std::invalid_argument("classify: data is not from the K or A family");
  return fam->first == Family::K ? classify_K(d) : classify_A(d);
}

// psi: k^G #_{sigma,tau} kZ_2 -> k^H #_{sigma,tau} kZ_2, e_h x^e -> e_h x^e for h in H, 0 otherwise.
struct QuotientMap {
  ExtensionData source, target;
  std::vector<Elem> embed;  // target Elem -> source Elem
  std::vector<int> image;   // source basis index -> target basis index, -1 for 0
  Report verification{"quotient map"};

  // Image of a tensor of any arity; terms with a dropped slot vanish.
  TensorElement apply(const TensorElement& u) const {
    TensorElement out(u.arity(), 2 * target.size());
    for (const auto& [key, c] : u.terms()) {
      Slots s = u.unpack(key), r{0, 0, 0};
      bool keep = true;
      for (int i = 0; i < u.arity() && keep; ++i) keep = (r[i] = image[s[i]]) >= 0;
      if (keep) out.add(r, c);
    }
    return out;
  }
};

namespace detail {

inline std::vector<Elem> subgroup_closure(const FiniteAbelianGroup& G, const std::vector<Elem>& gens) {
  std::vector<char> in(G.size(), 0);
  std::vector<Elem> out{G.identity()};
  in[G.identity()] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem g : gens) {
      Elem h = G.mul(out[i], g);
      if (!in[h]) {
        in[h] = 1;
        out.push_back(h);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Report verify_quotient(const QuotientMap& q) {
  Report r("quotient map");
  const HopfAlgebra Hs(q.source), Ht(q.target, q.source.field_order());
  const int D = Hs.dim();
  auto wit = [&](int i, int j) { return Hs.basis_str(i) + (j >= 0 ? ", " + Hs.basis_str(j) : std::string()); };
  r.record("unit", q.apply(Hs.unit(1)) == Ht.unit(1), "psi(1)");
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      TensorElement lhs = q.apply(Hs.multiply(Hs.basis(BasisElement::from_index(i)), Hs.basis(BasisElement::from_index(j))));
      TensorElement rhs =
          Ht.multiply(q.apply(Hs.basis(BasisElement::from_index(i))), q.apply(Hs.basis(BasisElement::from_index(j))));
      if (!(lhs == rhs)) r.fail("multiplicative", wit(i, j));
    }
  r.pass("multiplicative");
  for (int i = 0; i < D; ++i) {
    TensorElement bi = Hs.basis(BasisElement::from_index(i));
    TensorElement pi = q.apply(bi);
    if (!(q.apply(Hs.coproduct(bi)) == Ht.coproduct(pi))) r.fail("comultiplicative", wit(i, -1));
    if (Hs.counit(bi) != Ht.counit(pi)) r.fail("counit", wit(i, -1));
    if (!(q.apply(Hs.antipode(bi)) == Ht.antipode(pi))) r.fail("antipode", wit(i, -1));
  }
  r.pass("comultiplicative");
  r.pass("counit");
  r.pass("antipode");
  return r;
}

}  // namespace detail

// H given as a direct product <gens[0]> x ... with the stated orders; the target
// group is Z_{orders[0]} x ..., generator i sent to gens[i].
inline QuotientMap quotient_map(const ExtensionData& d, const std::vector<Elem>& gens, const std::vector<int>& orders) {
  const auto& G = d.group();
  if (gens.size() != orders.size()) throw std::invalid_argument("quotient_map: one order per generator");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (G.order_of(gens[i]) != orders[i]) throw std::invalid_argument("quotient_map: generator order mismatch");
  FiniteAbelianGroup Gt(orders);
  std::vector<Elem> embed(Gt.size());
  std::vector<int> back(G.size(), -1);
  for (Elem t = 0; t < Gt.size(); ++t) {
    Elem g = G.identity();
    for (int i = 0; i < Gt.rank(); ++i) g = G.mul(g, G.pow(gens[i], Gt.coord(t, i)));
    if (back[g] >= 0) throw std::invalid_argument("quotient_map: generators are not independent");
    embed[t] = g;
    back[g] = t;
  }
  for (Elem t = 0; t < Gt.size(); ++t)
    if (back[d.act(embed[t])] < 0) throw std::invalid_argument("quotient_map: subgroup is not stable under x");
  std::vector<GroupElement> images;
  for (int i = 0; i < Gt.rank(); ++i) images.push_back(Gt.element(back[d.act(gens[i])]));
  std::vector<RootOfUnity> sigma(Gt.size()), tau(static_cast<std::size_t>(Gt.size()) * Gt.size());
  for (Elem u = 0; u < Gt.size(); ++u) {
    sigma[u] = d.sigma(embed[u]);
    for (Elem v = 0; v < Gt.size(); ++v) tau[static_cast<std::size_t>(u) * Gt.size() + v] = d.tau(embed[u], embed[v]);
  }
  QuotientMap q{d, ExtensionData(Gt, Involution(Gt, images), sigma, tau), embed, std::vector<int>(2 * G.size(), -1), {}};
  for (Elem g = 0; g < G.size(); ++g)
    if (back[g] >= 0) {
      q.image[2 * g] = 2 * back[g];
      q.image[2 * g + 1] = 2 * back[g] + 1;
    }
  q.verification = detail::verify_quotient(q);
  return q;
}

// H given by its elements; decomposed into cyclic factors (standard generators when H = G).
inline QuotientMap quotient_map(const ExtensionData& d, std::vector<Elem> H) {
  const auto& G = d.group();
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  if (H.empty() || H.front() != G.identity() || detail::subgroup_closure(G, H) != H)
    throw std::invalid_argument("quotient_map: not a subgroup");
  for (Elem h : H)
    if (!std::binary_search(H.begin(), H.end(), d.act(h)))
      throw std::invalid_argument("quotient_map: subgroup is not stable under x");
  std::vector<Elem> gens;
  std::vector<int> orders;
  if (static_cast<int>(H.size()) == G.size()) {
    for (int i = 0; i < G.rank(); ++i) {
      gens.push_back(G.generator(i));
      orders.push_back(G.factor_orders()[i]);
    }
  } else {
    for (Elem g : detail::decompose_subgroup(G, H)) {
      gens.push_back(g);
      orders.push_back(G.order_of(g));
    }
  }
  return quotient_map(d, gens, orders);
}

struct QuotientFamily {
  Family family;
  int n;
  QuotientMap map;  // map.target is the restricted datum on H = <a, b>
};

// a = first element of T, H = <a, b>: K-shape when b is outside <a>, A-shape otherwise.
inline QuotientFamily find_quotient_family(const ExtensionData& d) {
  Report pre = check_necessary(d);
  if (!pre.ok()) throw std::invalid_argument("find_quotient_family: necessary conditions fail\n" + pre.str());
  const auto& G = d.group();
  const Elem a = d.T().at(0), b = *d.b();
  const int o = G.order_of(a);
  bool b_in_a = false;
  for (int i = 0; i < o; ++i) b_in_a = b_in_a || G.pow(a, i) == b;
  if (b_in_a) return {Family::A, o / 4, quotient_map(d, {a}, {o})};
  return {Family::K, o / 2, quotient_map(d, {a, b}, {o, 2})};
}

}  // namespace hopfz2
