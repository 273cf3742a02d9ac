#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfz2 {

using GroupElement = std::vector<int>;  // exponent vector
using Elem = int;                        // dense index into the enumeration

// Z_{d_1} x ... x Z_{d_m}. Elements are enumerated lexicographically in their
// exponent vectors (last coordinate fastest); Elem is the position in that list.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<int>{}) {}
  explicit FiniteAbelianGroup(std::vector<int> factor_orders) : orders_(std::move(factor_orders)) {
    size_ = 1;
    for (int d : orders_) {
      if (d < 1) throw std::invalid_argument("factor orders must be positive");
      size_ *= d;
      if (size_ > (1 << 20)) throw std::invalid_argument("group too large");
    }
    stride_.assign(orders_.size(), 1);
    for (int i = static_cast<int>(orders_.size()) - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * orders_[i + 1];
  }

  int size() const { return size_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  const std::vector<int>& factor_orders() const { return orders_; }
  Elem identity() const { return 0; }

  Elem index(const GroupElement& g) const {
    if (g.size() != orders_.size()) throw std::invalid_argument("group element has wrong length");
    int id = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int e = g[i] % orders_[i];
      if (e < 0) e += orders_[i];
      id += e * stride_[i];
    }
    return id;
  }
  GroupElement element(Elem id) const {
    GroupElement g(orders_.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (id / stride_[i]) % orders_[i];
    return g;
  }
  int coord(Elem id, int i) const { return (id / stride_[i]) % orders_[i]; }

  Elem mul(Elem a, Elem b) const {
    int id = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) id += ((coord(a, i) + coord(b, i)) % orders_[i]) * stride_[i];
    return id;
  }
  Elem inv(Elem a) const {
    int id = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) id += ((orders_[i] - coord(a, i)) % orders_[i]) * stride_[i];
    return id;
  }
  Elem pow(Elem a, long k) const {
    int id = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      long e = (static_cast<long>(coord(a, i)) * k) % orders_[i];
      if (e < 0) e += orders_[i];
      id += static_cast<int>(e) * stride_[i];
    }
    return id;
  }
  int order_of(Elem a) const {
    int o = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], coord(a, i)));
    return o;
  }
  int exponent() const {
    int e = 1;
    for (int d : orders_) e = std::lcm(e, d);
    return e;
  }
  std::vector<Elem> enumerate() const {
    std::vector<Elem> v(size_);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }
  // Standard generator i as an Elem.
  Elem generator(int i) const { return orders_[i] == 1 ? 0 : stride_[i]; }

  std::string str(Elem id) const {
    std::string s = "(";
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coord(id, i));
    }
    return s + ")";
  }

  bool operator==(const FiniteAbelianGroup& o) const { return orders_ == o.orders_; }

 private:
  std::vector<int> orders_;
  std::vector<int> stride_;
  int size_ = 1;
};

// g |-> g<|x given by images of the standard generators. The table is computed
// from exponent representatives; check() reports whether it is a well-defined
// non-identity involutive automorphism.
class Involution {
 public:
  Involution() = default;
  Involution(const FiniteAbelianGroup& G, std::vector<GroupElement> images) : images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != G.rank()) throw std::invalid_argument("action needs one image per generator");
    std::vector<Elem> img(G.rank());
    for (int i = 0; i < G.rank(); ++i) img[i] = G.index(images_[i]);
    table_.resize(G.size());
    for (Elem g = 0; g < G.size(); ++g) {
      Elem r = G.identity();
      for (int i = 0; i < G.rank(); ++i) r = G.mul(r, G.pow(img[i], G.coord(g, i)));
      table_[g] = r;
    }
  }

  Elem operator()(Elem g) const { return table_[g]; }
  const std::vector<GroupElement>& images() const { return images_; }
  const std::vector<Elem>& table() const { return table_; }

  struct Issues {
    std::optional<std::string> not_well_defined, not_automorphism, not_involution, identity;
  };
  Issues check(const FiniteAbelianGroup& G) const {
    Issues out;
    for (int i = 0; i < G.rank(); ++i) {
      Elem img = G.index(images_[i]);
      if (G.pow(img, G.factor_orders()[i]) != G.identity()) {
        out.not_well_defined = "image of generator " + std::to_string(i) + " has order not dividing " +
                               std::to_string(G.factor_orders()[i]);
        break;
      }
    }
    std::vector<char> hit(G.size(), 0);
    for (Elem g = 0; g < G.size() && !out.not_automorphism; ++g) {
      if (hit[table_[g]]) out.not_automorphism = "not injective at " + G.str(g);
      hit[table_[g]] = 1;
    }
    for (Elem g = 0; g < G.size(); ++g)
      if (table_[table_[g]] != g) {
        out.not_involution = "(g<|x)<|x != g at g=" + G.str(g);
        break;
      }
    bool id = true;
    for (Elem g = 0; g < G.size(); ++g) id = id && table_[g] == g;
    if (id) out.identity = "action is the identity";
    return out;
  }

 private:
  std::vector<GroupElement> images_;
  std::vector<Elem> table_;
};

struct FixedSplit {
  std::vector<Elem> S, T;
};

inline FixedSplit split_fixed(const FiniteAbelianGroup& G, const Involution& x) {
  FixedSplit out;
  for (Elem g = 0; g < G.size(); ++g) (x(g) == g ? out.S : out.T).push_back(g);
  return out;
}

struct BResult {
  std::optional<Elem> b;
  std::vector<std::string> failures;  // which necessary clause fails, if any
};

// b with t<|x = t b for every t in T, b in S, b^2 = 1, provided |S| = |T|.
inline BResult find_b(const FiniteAbelianGroup& G, const Involution& x) {
  BResult out;
  auto [S, T] = split_fixed(G, x);
  if (S.size() != T.size())
    out.failures.push_back("(i) |S|=" + std::to_string(S.size()) + " != |T|=" + std::to_string(T.size()));
  if (T.empty()) {
    out.failures.push_back("(ii) T is empty");
    return out;
  }
  Elem b = G.mul(x(T[0]), G.inv(T[0]));
  for (Elem t : T)
    if (G.mul(t, b) != x(t)) {
      out.failures.push_back("(ii) t<|x = tb fails for a single b: t=" + G.str(t) + " vs t=" + G.str(T[0]));
      return out;
    }
  if (x(b) != b) out.failures.push_back("(ii) b=" + G.str(b) + " not in S");
  if (G.mul(b, b) != G.identity()) out.failures.push_back("(ii) b^2 != 1 for b=" + G.str(b));
  if (out.failures.empty()) out.b = b;
  return out;
}

struct Presentation {
  std::vector<Elem> s;    // generators of S, S = <s_1> x ... x <s_n>
  std::vector<int> k;     // orders of s_i
  Elem a = 0;             // a in T
  Elem b = 0;
  std::vector<int> m;     // a^2 = s^m
  std::vector<int> p;     // b = s^p
  std::vector<int> word_of;     // Elem -> word index, -1 outside S
  std::vector<Elem> word_elem;  // word index -> Elem

  int n() const { return static_cast<int>(s.size()); }
  int s_size() const {
    int r = 1;
    for (int ki : k) r *= ki;
    return r;
  }
  // Mixed-radix index of an exponent vector, last generator fastest.
  int word_index(const std::vector<int>& e) const {
    int id = 0;
    for (int i = 0; i < n(); ++i) id = id * k[i] + e[i];
    return id;
  }
  std::vector<int> exps(Elem s) const {
    if (word_of.at(s) < 0) throw std::invalid_argument("element not in S");
    return word_exps(word_of[s]);
  }
  std::vector<int> word_exps(int id) const {
    std::vector<int> e(n());
    for (int i = n() - 1; i >= 0; --i) {
      e[i] = id % k[i];
      id /= k[i];
    }
    return e;
  }
};

namespace detail {

inline std::vector<Elem> cyclic_closure(const FiniteAbelianGroup& G, const std::vector<Elem>& gens) {
  std::vector<char> in(G.size(), 0);
  std::vector<Elem> cur{G.identity()};
  in[G.identity()] = 1;
  for (Elem g : gens) {
    const std::vector<Elem> base = cur;
    for (Elem p = g; p != G.identity(); p = G.mul(p, g))
      for (Elem c : base) {
        Elem h = G.mul(c, p);
        if (!in[h]) {
          in[h] = 1;
          cur.push_back(h);
        }
      }
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

// Direct-sum decomposition of the subgroup S: repeatedly take the first element
// (enumeration order) whose order equals the maximal order in S/C and whose
// coset has that same order; C grows by a direct summand at each step.
inline std::vector<Elem> decompose_subgroup(const FiniteAbelianGroup& G, const std::vector<Elem>& S) {
  std::vector<Elem> gens;
  std::vector<char> inC(G.size(), 0);
  inC[G.identity()] = 1;
  std::size_t csize = 1;
  while (csize < S.size()) {
    auto coset_order = [&](Elem g) {
      int o = 1;
      Elem h = g;
      while (!inC[h]) {
        h = G.mul(h, g);
        ++o;
      }
      return o;
    };
    int best = 0;
    for (Elem g : S) best = std::max(best, coset_order(g));
    Elem pick = -1;
    for (Elem g : S)
      if (coset_order(g) == best && G.order_of(g) == best) {
        pick = g;
        break;
      }
    if (pick < 0) throw std::logic_error("decompose_subgroup: no lift of maximal order");
    gens.push_back(pick);
    auto C = cyclic_closure(G, gens);
    std::fill(inC.begin(), inC.end(), 0);
    for (Elem c : C) inC[c] = 1;
    csize = C.size();
  }
  return gens;
}

}  // namespace detail

// Presentation of G as <s_1..s_n> x {1,a}. Without s_choice the S-basis is the
// deterministic decomposition above; s_choice pins it (generators of order 1 allowed).
inline Presentation derive_presentation(const FiniteAbelianGroup& G, const Involution& x,
                                        std::optional<Elem> a_choice = std::nullopt,
                                        std::optional<std::vector<Elem>> s_choice = std::nullopt) {
  auto br = find_b(G, x);
  if (!br.b) throw std::invalid_argument("derive_presentation: necessary conditions on the action fail");
  auto [S, T] = split_fixed(G, x);
  Presentation P;
  P.b = *br.b;
  P.s = s_choice ? *s_choice : detail::decompose_subgroup(G, S);
  for (Elem s : P.s) {
    if (x(s) != s) throw std::invalid_argument("derive_presentation: pinned generator not in S");
    P.k.push_back(G.order_of(s));
  }
  const int count = P.s_size();
  if (count != static_cast<int>(S.size()))
    throw std::invalid_argument("derive_presentation: generators do not give a direct decomposition of S");
  P.word_of.assign(G.size(), -1);
  P.word_elem.assign(count, 0);
  for (int w = 0; w < count; ++w) {
    auto e = P.word_exps(w);
    Elem g = G.identity();
    for (int i = 0; i < P.n(); ++i) g = G.mul(g, G.pow(P.s[i], e[i]));
    if (P.word_of[g] >= 0) throw std::invalid_argument("derive_presentation: generators are not independent");
    P.word_of[g] = w;
    P.word_elem[w] = g;
  }
  P.a = a_choice ? *a_choice : T.at(0);
  if (x(P.a) == P.a) throw std::invalid_argument("derive_presentation: a must lie in T");
  P.m = P.exps(G.mul(P.a, P.a));
  P.p = P.exps(P.b);
  return P;
}

}  // namespace hopfz2
