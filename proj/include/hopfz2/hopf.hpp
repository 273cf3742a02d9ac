#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace hopfz2 {

// e_g (eps = 0) or e_g x (eps = 1). Index 2g + eps gives the total order.
struct BasisElement {
  Elem g = 0;
  int eps = 0;
  int index() const { return 2 * g + eps; }
  static BasisElement from_index(int i) { return {i / 2, i % 2}; }
  bool operator==(const BasisElement& o) const { return g == o.g && eps == o.eps; }
};

using Slots = std::array<int, 3>;  // basis indices; unused tail slots are 0

// Sparse element of H^{(x)k}, k = 1, 2, 3. Zero coefficients are never stored.
class TensorElement {
 public:
  using Key = std::uint64_t;

  TensorElement() = default;
  TensorElement(int arity, int dim) : arity_(arity), dim_(dim) {
    if (arity < 1 || arity > 3) throw std::invalid_argument("TensorElement: arity must be 1, 2 or 3");
  }

  int arity() const { return arity_; }
  int dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::map<Key, Cyclotomic>& terms() const { return terms_; }

  Key key(const Slots& s) const {
    Key k = 0;
    for (int i = 0; i < arity_; ++i) k = k * dim_ + s[i];
    return k;
  }
  Slots unpack(Key k) const {
    Slots s{0, 0, 0};
    for (int i = arity_ - 1; i >= 0; --i) {
      s[i] = static_cast<int>(k % dim_);
      k /= dim_;
    }
    return s;
  }

  void add(const Slots& s, const Cyclotomic& c) {
    if (c.is_zero()) return;
    Key k = key(s);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  // Overwrites; zero erases.
  void set(const Slots& s, const Cyclotomic& c) {
    Key k = key(s);
    if (c.is_zero())
      terms_.erase(k);
    else
      terms_[k] = c;
  }
  Cyclotomic coeff(const Slots& s) const {
    auto it = terms_.find(key(s));
    return it == terms_.end() ? Cyclotomic() : it->second;
  }
  const Cyclotomic* find(const Slots& s) const {
    auto it = terms_.find(key(s));
    return it == terms_.end() ? nullptr : &it->second;
  }

  TensorElement& operator+=(const TensorElement& o) {
    same_shape(o);
    for (const auto& [k, c] : o.terms_) add(unpack(k), c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    same_shape(o);
    for (const auto& [k, c] : o.terms_) add(unpack(k), -c);
    return *this;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  TensorElement scaled(const Cyclotomic& c) const {
    TensorElement out(arity_, dim_);
    for (const auto& [k, v] : terms_) out.set(unpack(k), v * c);
    return out;
  }

  bool operator==(const TensorElement& o) const {
    return arity_ == o.arity_ && dim_ == o.dim_ && terms_ == o.terms_;
  }
  bool operator!=(const TensorElement& o) const { return !(*this == o); }

  // First key where the two differ, or nullopt.
  std::optional<Slots> first_difference(const TensorElement& o) const {
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) return unpack(a->first);
      if (a == terms_.end() || b->first < a->first) return o.unpack(b->first);
      if (a->second != b->second) return unpack(a->first);
      ++a;
      ++b;
    }
    return std::nullopt;
  }

 private:
  void same_shape(const TensorElement& o) const {
    if (o.arity_ != arity_ || o.dim_ != dim_) throw std::invalid_argument("TensorElement: shape mismatch");
  }

  int arity_ = 1;
  int dim_ = 2;
  std::map<Key, Cyclotomic> terms_;
};

enum class EmbedSlots { s12, s13, s23 };

// Sparse dual element over {E_g, X_g}; index 2g + eps as for the basis.
using DualElement = std::map<int, Cyclotomic>;

inline DualElement dual_E(Elem g) { return {{2 * g, Cyclotomic(1)}}; }
inline DualElement dual_X(Elem g) { return {{2 * g + 1, Cyclotomic(1)}}; }

// Structure maps of H = k^G #_{sigma,tau} kZ_2 on the basis {e_g, e_g x}.
class HopfAlgebra {
 public:
  // Scalars are kept in Q(zeta_N), N = lcm(field order of d, order); pass the
  // order of any external coefficients to avoid repeated lifting.
  explicit HopfAlgebra(ExtensionData d, int order = 1) : d_(std::move(d)) {
    const int n = d_.size();
    const int N = std::lcm(d_.field_order(), std::max(order, 1));
    order_ = N;
    one_ = Cyclotomic::root(RootOfUnity::one(), N);
    sigma_.reserve(n);
    for (Elem g = 0; g < n; ++g) sigma_.push_back(Cyclotomic::root(d_.sigma(g), N));

    TensorElement dx(2, dim());
    for (Elem g = 0; g < n; ++g)
      for (Elem h = 0; h < n; ++h) dx.add({2 * g + 1, 2 * h + 1}, Cyclotomic::root(d_.tau(g, h), N));
    delta_.resize(dim());
    for (Elem g = 0; g < n; ++g) {
      TensorElement de(2, dim());
      for (Elem h = 0; h < n; ++h) de.add({2 * h, 2 * d_.mul(d_.inv(h), g)}, one_);
      delta_[2 * g] = de;
      delta_[2 * g + 1] = multiply(de, dx);
    }

    TensorElement sx(1, dim());
    for (Elem g = 0; g < n; ++g) {
      RootOfUnity c = (d_.sigma(g) * d_.tau(g, d_.inv(g))).inverse();
      sx.add({2 * d_.act(g) + 1, 0, 0}, Cyclotomic::root(c, N));
    }
    antipode_.resize(dim());
    for (Elem g = 0; g < n; ++g) {
      TensorElement se(1, dim());
      se.add({2 * d_.inv(g), 0, 0}, one_);
      antipode_[2 * g] = se;
      antipode_[2 * g + 1] = multiply(sx, se);  // S(e_g x) = S(x) S(e_g)
    }
  }

  const ExtensionData& data() const { return d_; }
  int dim() const { return 2 * d_.size(); }
  int scalar_order() const { return order_; }
  const Cyclotomic& one() const { return one_; }
  // c written in the working field; c.order() must divide scalar_order().
  Cyclotomic lift(const Cyclotomic& c) const { return c.lift(order_); }
  Cyclotomic scalar(const RootOfUnity& r) const { return Cyclotomic::root(r, order_); }

  TensorElement zero(int arity) const { return TensorElement(arity, dim()); }
  TensorElement basis(BasisElement b) const {
    TensorElement t(1, dim());
    t.add({b.index(), 0, 0}, one_);
    return t;
  }
  TensorElement basis(const Slots& s, int arity) const {
    TensorElement t(arity, dim());
    t.add(s, one_);
    return t;
  }
  TensorElement unit(int arity) const {
    TensorElement t(arity, dim());
    const int n = d_.size();
    for (Elem g = 0; g < n; ++g)
      for (Elem h = 0; h < (arity > 1 ? n : 1); ++h)
        for (Elem k = 0; k < (arity > 2 ? n : 1); ++k) t.add({2 * g, 2 * h, 2 * k}, one_);
    return t;
  }
  TensorElement x() const {
    TensorElement t(1, dim());
    for (Elem g = 0; g < d_.size(); ++g) t.add({2 * g + 1, 0, 0}, one_);
    return t;
  }

  // Slotwise product; a term (g,a) pairs only with v-terms at h = g<|x^a.
  TensorElement multiply(const TensorElement& u, const TensorElement& v) const {
    if (u.arity() != v.arity() || u.dim() != dim() || v.dim() != dim())
      throw std::invalid_argument("multiply: shape mismatch");
    const int k = u.arity();
    TensorElement out(k, dim());
    for (const auto& [key, cu] : u.terms()) {
      Slots s = u.unpack(key);
      Slots h{0, 0, 0};
      for (int i = 0; i < k; ++i) {
        Elem g = s[i] / 2;
        h[i] = 2 * ((s[i] & 1) ? d_.act(g) : g);
      }
      for (int mask = 0; mask < (1 << k); ++mask) {
        Slots hv = h;
        for (int i = 0; i < k; ++i) hv[i] += (mask >> i) & 1;
        const Cyclotomic* cv = v.find(hv);
        if (!cv) continue;
        Cyclotomic c = cu * *cv;
        Slots r{0, 0, 0};
        for (int i = 0; i < k; ++i) {
          int a = s[i] & 1, b = (mask >> i) & 1;
          r[i] = (s[i] & ~1) | (a ^ b);
          if (a && b) c *= sigma_[s[i] / 2];
        }
        out.add(r, c);
      }
    }
    return out;
  }

  // (e_g x^a)(e_h x^b) for basis indices i, j: the product index and its scalar, or nullopt for 0.
  std::optional<std::pair<int, Cyclotomic>> basis_product(int i, int j) const {
    Elem g = i / 2, h = j / 2;
    int a = i & 1, b = j & 1;
    if (h != (a ? d_.act(g) : g)) return std::nullopt;
    return std::make_pair(2 * g + (a ^ b), (a && b) ? sigma_[g] : one_);
  }

  const TensorElement& coproduct_basis(int index) const { return delta_[index]; }
  const TensorElement& antipode_basis(int index) const { return antipode_[index]; }
  Cyclotomic counit_basis(int index) const { return index / 2 == 0 ? one_ : Cyclotomic(); }

  TensorElement coproduct(const TensorElement& u) const { return apply_coproduct(u, 0); }
  TensorElement coproduct_op(const TensorElement& u) const { return flip(coproduct(u)); }
  Cyclotomic counit(const TensorElement& u) const {
    need_arity(u, 1);
    Cyclotomic c;
    for (const auto& [key, v] : u.terms())
      if (u.unpack(key)[0] / 2 == 0) c += v;
    return c;
  }
  TensorElement antipode(const TensorElement& u) const {
    need_arity(u, 1);
    TensorElement out(1, dim());
    for (const auto& [key, v] : u.terms()) out += antipode_[u.unpack(key)[0]].scaled(v);
    return out;
  }

  // Applies Delta to one slot: arity k -> k + 1.
  TensorElement apply_coproduct(const TensorElement& u, int slot) const {
    if (u.arity() >= 3 || slot >= u.arity()) throw std::invalid_argument("apply_coproduct: bad slot");
    TensorElement out(u.arity() + 1, dim());
    for (const auto& [key, c] : u.terms()) {
      Slots s = u.unpack(key);
      for (const auto& [dk, dc] : delta_[s[slot]].terms()) {
        Slots ds = delta_[s[slot]].unpack(dk);
        Slots r{0, 0, 0};
        int j = 0;
        for (int i = 0; i < u.arity(); ++i) {
          if (i == slot) {
            r[j++] = ds[0];
            r[j++] = ds[1];
          } else {
            r[j++] = s[i];
          }
        }
        out.add(r, c * dc);
      }
    }
    return out;
  }
  // Applies epsilon to one slot: arity k -> k - 1.
  TensorElement apply_counit(const TensorElement& u, int slot) const {
    if (u.arity() < 2) throw std::invalid_argument("apply_counit: arity must be >= 2");
    TensorElement out(u.arity() - 1, dim());
    for (const auto& [key, c] : u.terms()) {
      Slots s = u.unpack(key);
      if (s[slot] / 2 != 0) continue;
      Slots r{0, 0, 0};
      int j = 0;
      for (int i = 0; i < u.arity(); ++i)
        if (i != slot) r[j++] = s[i];
      out.add(r, c);
    }
    return out;
  }

  TensorElement flip(const TensorElement& u) const {
    need_arity(u, 2);
    TensorElement out(2, dim());
    for (const auto& [key, c] : u.terms()) {
      Slots s = u.unpack(key);
      out.add({s[1], s[0], 0}, c);
    }
    return out;
  }

  // Inserts the unit sum_g e_g in the omitted slot.
  TensorElement embed(const TensorElement& u, EmbedSlots where) const {
    need_arity(u, 2);
    TensorElement out(3, dim());
    for (const auto& [key, c] : u.terms()) {
      Slots s = u.unpack(key);
      for (Elem g = 0; g < d_.size(); ++g) {
        Slots r;
        switch (where) {
          case EmbedSlots::s12: r = {s[0], s[1], 2 * g}; break;
          case EmbedSlots::s13: r = {s[0], 2 * g, s[1]}; break;
          case EmbedSlots::s23: r = {2 * g, s[0], s[1]}; break;
        }
        out.add(r, c);
      }
    }
    return out;
  }

  // m o (S (x) id) o Delta (left = true) or m o (id (x) S) o Delta.
  TensorElement antipode_contraction(int index, bool left) const {
    TensorElement out(1, dim());
    const auto& D = delta_[index];
    for (const auto& [key, c] : D.terms()) {
      Slots s = D.unpack(key);
      TensorElement a = left ? antipode_[s[0]] : basis(BasisElement::from_index(s[0]));
      TensorElement b = left ? basis(BasisElement::from_index(s[1])) : antipode_[s[1]];
      out += multiply(a, b).scaled(c);
    }
    return out;
  }

  // Products in H^* from the relations E_g E_h = E_{gh}, E X = X E = 0, X_g X_h = tau(g,h) X_{gh}.
  DualElement dual_multiply(const DualElement& f, const DualElement& h) const {
    DualElement out;
    for (const auto& [i, a] : f)
      for (const auto& [j, b] : h) {
        if ((i & 1) != (j & 1)) continue;
        Elem g = i / 2, k = j / 2;
        Cyclotomic c = a * b;
        if (i & 1) c *= Cyclotomic::root(d_.tau(g, k), order_);
        int idx = 2 * d_.mul(g, k) + (i & 1);
        auto it = out.find(idx);
        if (it == out.end())
          out.emplace(idx, c);
        else
          it->second += c;
      }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  std::string basis_str(int index) const {
    return "e" + d_.group().str(index / 2) + ((index & 1) ? "x" : "");
  }
  std::string slots_str(const Slots& s, int arity) const {
    std::string out;
    for (int i = 0; i < arity; ++i) {
      if (i) out += " (x) ";
      out += basis_str(s[i]);
    }
    return out;
  }

 private:
  static void need_arity(const TensorElement& u, int k) {
    if (u.arity() != k) throw std::invalid_argument("wrong arity");
  }

  ExtensionData d_;
  int order_ = 4;
  Cyclotomic one_;
  std::vector<Cyclotomic> sigma_;
  std::vector<TensorElement> delta_;
  std::vector<TensorElement> antipode_;
};

inline Report verify_hopf_axioms(const ExtensionData& d) {
  Report r("Hopf axioms");
  HopfAlgebra H(d);
  const int D = H.dim();
  auto wit = [&](const TensorElement& a, const TensorElement& b, const std::string& ctx) {
    auto diff = a.first_difference(b);
    return ctx + (diff ? " at " + H.slots_str(*diff, a.arity()) : "");
  };

  std::vector<TensorElement> B;
  for (int i = 0; i < D; ++i) B.push_back(H.basis(BasisElement::from_index(i)));
  TensorElement one = H.unit(1);

  for (int i = 0; i < D; ++i) {
    if (H.multiply(one, B[i]) != B[i] || H.multiply(B[i], one) != B[i]) r.fail("unit", H.basis_str(i));
  }
  r.pass("unit");

  // products of basis elements are single terms; cache them
  std::vector<TensorElement> prod(static_cast<std::size_t>(D) * D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) prod[static_cast<std::size_t>(i) * D + j] = H.multiply(B[i], B[j]);
  bool assoc = true;
  for (int i = 0; i < D && assoc; ++i)
    for (int j = 0; j < D && assoc; ++j)
      for (int k = 0; k < D && assoc; ++k) {
        TensorElement lhs = H.multiply(prod[static_cast<std::size_t>(i) * D + j], B[k]);
        TensorElement rhs = H.multiply(B[i], prod[static_cast<std::size_t>(j) * D + k]);
        if (lhs != rhs) {
          r.fail("associativity", H.basis_str(i) + " " + H.basis_str(j) + " " + H.basis_str(k));
          assoc = false;
        }
      }
  r.pass("associativity");

  for (int i = 0; i < D; ++i) {
    const TensorElement& Di = H.coproduct_basis(i);
    TensorElement l = H.apply_coproduct(Di, 0), rr = H.apply_coproduct(Di, 1);
    if (l != rr) r.fail("coassociativity", wit(l, rr, H.basis_str(i)));
    if (H.apply_counit(Di, 0) != B[i]) r.fail("counit (eps (x) id)", H.basis_str(i));
    if (H.apply_counit(Di, 1) != B[i]) r.fail("counit (id (x) eps)", H.basis_str(i));
  }
  r.pass("coassociativity");
  r.pass("counit (eps (x) id)");
  r.pass("counit (id (x) eps)");

  if (H.coproduct(one) != H.unit(2)) r.fail("Delta(1) = 1 (x) 1", wit(H.coproduct(one), H.unit(2), "Delta(1)"));
  r.pass("Delta(1) = 1 (x) 1");
  {
    TensorElement X = H.x();
    TensorElement lhs = H.coproduct(H.multiply(X, X));
    TensorElement dX = H.coproduct(X);
    TensorElement rhs = H.multiply(dX, dX);
    if (lhs != rhs) r.fail("Delta(x*x) = Delta(x)*Delta(x)", wit(lhs, rhs, "Delta(x*x) != Delta(x)*Delta(x)"));
    r.pass("Delta(x*x) = Delta(x)*Delta(x)");
  }
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const TensorElement& p = prod[static_cast<std::size_t>(i) * D + j];
      TensorElement lhs = H.coproduct(p);
      TensorElement rhs = H.multiply(H.coproduct_basis(i), H.coproduct_basis(j));
      if (lhs != rhs)
        r.fail("Delta multiplicative", wit(lhs, rhs, "Delta(" + H.basis_str(i) + "*" + H.basis_str(j) + ")"));
      if (H.counit(p) != H.counit_basis(i) * H.counit_basis(j))
        r.fail("counit multiplicative", H.basis_str(i) + "*" + H.basis_str(j));
    }
  r.pass("Delta multiplicative");
  r.pass("counit multiplicative");

  for (int i = 0; i < D; ++i) {
    TensorElement expect = one.scaled(H.counit_basis(i));
    if (H.antipode_contraction(i, true) != expect) r.fail("antipode m(S (x) id)Delta = eps", H.basis_str(i));
    if (H.antipode_contraction(i, false) != expect) r.fail("antipode m(id (x) S)Delta = eps", H.basis_str(i));
  }
  r.pass("antipode m(S (x) id)Delta = eps");
  r.pass("antipode m(id (x) S)Delta = eps");
  return r;
}

}  // namespace hopfz2
