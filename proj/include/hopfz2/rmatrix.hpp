#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cocycle.hpp"
#include "hopf.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace hopfz2 {

// Coefficient tables of R in one of the two admissible shapes.
//   trivial:     R = sum w1(g,h) e_g (x) e_h, w1 is |G| x |G| indexed by Elem.
//   non-trivial: R = sum w1(s,s') e_s (x) e_s' + w2(s,t) e_s x (x) e_t
//                  + w3(t,s) e_t (x) e_s x + w4(t,t') e_t x (x) e_t' x,
//                tables indexed by S/T positions (ExtensionData::s_pos, t_pos).
// All stored entries are nonzero for a well-formed R.
struct RMatrix {
  bool nontrivial = false;
  int nS = 0, nT = 0, nG = 0;
  std::vector<Cyclotomic> w1, w2, w3, w4;

  using Fn = std::function<Cyclotomic(Elem, Elem)>;

  static RMatrix make_trivial(const ExtensionData& d, const Fn& f) {
    RMatrix R;
    R.nG = d.size();
    R.w1.reserve(static_cast<std::size_t>(R.nG) * R.nG);
    for (Elem g = 0; g < R.nG; ++g)
      for (Elem h = 0; h < R.nG; ++h) R.w1.push_back(f(g, h));
    return R;
  }
  static RMatrix make_nontrivial(const ExtensionData& d, const Fn& f1, const Fn& f2, const Fn& f3, const Fn& f4) {
    RMatrix R;
    R.nontrivial = true;
    R.nG = d.size();
    R.nS = static_cast<int>(d.S().size());
    R.nT = static_cast<int>(d.T().size());
    for (Elem s1 : d.S())
      for (Elem s2 : d.S()) R.w1.push_back(f1(s1, s2));
    for (Elem s : d.S())
      for (Elem t : d.T()) R.w2.push_back(f2(s, t));
    for (Elem t : d.T())
      for (Elem s : d.S()) R.w3.push_back(f3(t, s));
    for (Elem t1 : d.T())
      for (Elem t2 : d.T()) R.w4.push_back(f4(t1, t2));
    return R;
  }
  static RMatrix identity(const ExtensionData& d) {
    return make_trivial(d, [](Elem, Elem) { return Cyclotomic(1); });
  }
  static RMatrix all_ones_nontrivial(const ExtensionData& d) {
    auto one = [](Elem, Elem) { return Cyclotomic(1); };
    return make_nontrivial(d, one, one, one, one);
  }

  // Element-indexed access; arguments must lie in the right halves.
  const Cyclotomic& at1(const ExtensionData& d, Elem a, Elem b) const {
    return nontrivial ? w1[idx(d.s_pos(a), nS, d.s_pos(b))] : w1[idx(a, nG, b)];
  }
  const Cyclotomic& at2(const ExtensionData& d, Elem s, Elem t) const { return w2[idx(d.s_pos(s), nT, d.t_pos(t))]; }
  const Cyclotomic& at3(const ExtensionData& d, Elem t, Elem s) const { return w3[idx(d.t_pos(t), nS, d.s_pos(s))]; }
  const Cyclotomic& at4(const ExtensionData& d, Elem t1, Elem t2) const {
    return w4[idx(d.t_pos(t1), nT, d.t_pos(t2))];
  }

  template <class F>
  void for_each_entry(F&& f) {
    for (auto* t : {&w1, &w2, &w3, &w4})
      for (auto& c : *t) f(c);
  }
  template <class F>
  void for_each_entry(F&& f) const {
    for (const auto* t : {&w1, &w2, &w3, &w4})
      for (const auto& c : *t) f(c);
  }

  // lcm of the orders of the stored entries.
  int order() const {
    int o = 1;
    for_each_entry([&](const Cyclotomic& c) { o = std::lcm(o, c.order()); });
    return o;
  }
  RMatrix lifted(int N) const {
    RMatrix R = *this;
    R.for_each_entry([&](Cyclotomic& c) { c = c.lift(N); });
    return R;
  }

  bool operator==(const RMatrix& o) const {
    return nontrivial == o.nontrivial && nS == o.nS && nT == o.nT && nG == o.nG && w1 == o.w1 && w2 == o.w2 &&
           w3 == o.w3 && w4 == o.w4;
  }
  bool operator!=(const RMatrix& o) const { return !(*this == o); }

  // Canonical serialization at a fixed field order; equal keys <=> equal R.
  std::string key(int at_order) const {
    std::string s = nontrivial ? "N|" : "T|";
    for (const auto* t : {&w1, &w2, &w3, &w4}) {
      for (const auto& c : *t) s += c.key(at_order) + ";";
      s += "|";
    }
    return s;
  }

  static std::size_t idx(int i, int cols, int j) { return static_cast<std::size_t>(i) * cols + j; }
};

// Checks table sizes against d and that every entry is nonzero.
inline Report check_well_formed(const ExtensionData& d, const RMatrix& R) {
  Report r("R shape");
  const std::size_t nS = d.S().size(), nT = d.T().size(), nG = d.size();
  bool sizes = R.nontrivial ? (R.w1.size() == nS * nS && R.w2.size() == nS * nT && R.w3.size() == nT * nS &&
                               R.w4.size() == nT * nT)
                            : (R.w1.size() == nG * nG && R.w2.empty() && R.w3.empty() && R.w4.empty());
  r.record("table sizes", sizes, "tables do not match |S|=" + std::to_string(nS) + ", |T|=" + std::to_string(nT));
  bool nonzero = true;
  R.for_each_entry([&](const Cyclotomic& c) { nonzero = nonzero && !c.is_zero(); });
  r.record("entries nonzero", nonzero, "a stored coefficient is zero");
  return r;
}

inline TensorElement to_tensor(const HopfAlgebra& H, const RMatrix& R) {
  const auto& d = H.data();
  TensorElement t(2, H.dim());
  if (!R.nontrivial) {
    for (Elem g = 0; g < d.size(); ++g)
      for (Elem h = 0; h < d.size(); ++h) t.add({2 * g, 2 * h, 0}, H.lift(R.at1(d, g, h)));
    return t;
  }
  for (Elem s1 : d.S())
    for (Elem s2 : d.S()) t.add({2 * s1, 2 * s2, 0}, H.lift(R.at1(d, s1, s2)));
  for (Elem s : d.S())
    for (Elem tt : d.T()) {
      t.add({2 * s + 1, 2 * tt, 0}, H.lift(R.at2(d, s, tt)));
      t.add({2 * tt, 2 * s + 1, 0}, H.lift(R.at3(d, tt, s)));
    }
  for (Elem t1 : d.T())
    for (Elem t2 : d.T()) t.add({2 * t1 + 1, 2 * t2 + 1, 0}, H.lift(R.at4(d, t1, t2)));
  return t;
}

// Inverse of to_tensor: nullopt unless the support is exactly one of the two shapes.
inline std::optional<RMatrix> from_tensor(const ExtensionData& d, const TensorElement& t) {
  if (t.arity() != 2) return std::nullopt;
  auto coeff = [&](int i, int j) -> std::optional<Cyclotomic> {
    const Cyclotomic* c = t.find({i, j, 0});
    if (!c) return std::nullopt;
    return *c;
  };
  const std::size_t nG = d.size();
  bool failed = false;
  auto take = [&](int i, int j) {
    auto c = coeff(i, j);
    if (!c) {
      failed = true;
      return Cyclotomic(1);
    }
    return *c;
  };
  if (t.size() == nG * nG) {
    RMatrix R = RMatrix::make_trivial(d, [&](Elem g, Elem h) { return take(2 * g, 2 * h); });
    if (!failed) return R;
    failed = false;
  }
  const std::size_t nS = d.S().size(), nT = d.T().size();
  if (t.size() != nS * nS + 2 * nS * nT + nT * nT) return std::nullopt;
  RMatrix R = RMatrix::make_nontrivial(
      d, [&](Elem a, Elem b) { return take(2 * a, 2 * b); }, [&](Elem s, Elem u) { return take(2 * s + 1, 2 * u); },
      [&](Elem u, Elem s) { return take(2 * u, 2 * s + 1); }, [&](Elem a, Elem b) { return take(2 * a + 1, 2 * b + 1); });
  if (failed) return std::nullopt;
  return R;
}

// l(f) = (f (x) id)(R) and r(f) = (id (x) f)(R) for a dual element f.
inline TensorElement contract(const HopfAlgebra& H, const TensorElement& R, const DualElement& f, int slot) {
  TensorElement out(1, H.dim());
  for (const auto& [key, c] : R.terms()) {
    Slots s = R.unpack(key);
    auto it = f.find(s[slot]);
    if (it == f.end()) continue;
    out.add({s[1 - slot], 0, 0}, c * it->second);
  }
  return out;
}
inline TensorElement l_map(const HopfAlgebra& H, const TensorElement& R, const DualElement& f) {
  return contract(H, R, f, 0);
}
inline TensorElement r_map(const HopfAlgebra& H, const TensorElement& R, const DualElement& f) {
  return contract(H, R, f, 1);
}

namespace detail {

// Gaussian elimination on a small dense system; free variables are set to 0.
inline std::optional<std::vector<Cyclotomic>> solve_dense(std::vector<std::vector<Cyclotomic>> A,
                                                          std::vector<Cyclotomic> rhs) {
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && A[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(rhs[p], rhs[r]);
    Cyclotomic inv = A[r][c].inv();
    for (std::size_t k = c; k < cols; ++k) A[r][k] *= inv;
    rhs[r] *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || A[q][c].is_zero()) continue;
      Cyclotomic f = A[q][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!A[r][k].is_zero()) A[q][k] -= f * A[r][k];
      rhs[q] -= f * rhs[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t q = r; q < rows; ++q)
    if (!rhs[q].is_zero()) return std::nullopt;
  std::vector<Cyclotomic> x(cols);
  for (std::size_t q = 0; q < r; ++q) x[pivot_col[q]] = rhs[q];
  return x;
}

}  // namespace detail

// Solves R X = 1 (x) 1 by splitting left multiplication by R into its
// connected blocks; returns X only if additionally X R = 1 (x) 1.
inline std::optional<TensorElement> invert(const HopfAlgebra& H, const TensorElement& R) {
  const int D = H.dim();
  const auto& d = H.data();
  // columns: unknown X coefficients at basis pairs (i, j); rows: output pairs.
  struct Entry {
    long row, col;
    Cyclotomic v;
  };
  std::vector<Entry> entries;
  for (const auto& [key, c] : R.terms()) {
    Slots s = R.unpack(key);
    Elem h0 = (s[0] & 1) ? d.act(s[0] / 2) : s[0] / 2;
    Elem h1 = (s[1] & 1) ? d.act(s[1] / 2) : s[1] / 2;
    for (int b0 = 0; b0 < 2; ++b0)
      for (int b1 = 0; b1 < 2; ++b1) {
        int i = 2 * h0 + b0, j = 2 * h1 + b1;
        auto p0 = H.basis_product(s[0], i);
        auto p1 = H.basis_product(s[1], j);
        if (!p0 || !p1) continue;
        entries.push_back({static_cast<long>(p0->first) * D + p1->first, static_cast<long>(i) * D + j,
                           c * p0->second * p1->second});
      }
  }
  // union-find over rows (ids 0..D^2-1) and columns (D^2..2D^2-1)
  const long N = static_cast<long>(D) * D;
  std::vector<long> parent(2 * N);
  std::iota(parent.begin(), parent.end(), 0L);
  std::function<long(long)> find = [&](long v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : entries) {
    long a = find(e.row), b = find(N + e.col);
    if (a != b) parent[a] = b;
  }
  std::vector<char> touched(2 * N, 0);
  for (const auto& e : entries) touched[e.row] = touched[N + e.col] = 1;
  // rhs rows e_g (x) e_h must be reachable
  for (Elem g = 0; g < d.size(); ++g)
    for (Elem h = 0; h < d.size(); ++h)
      if (!touched[static_cast<long>(2 * g) * D + 2 * h]) return std::nullopt;

  std::unordered_map<long, std::vector<std::size_t>> comp_entries;
  for (std::size_t k = 0; k < entries.size(); ++k) comp_entries[find(entries[k].row)].push_back(k);

  TensorElement X(2, D);
  for (auto& [root, ks] : comp_entries) {
    std::unordered_map<long, int> row_id, col_id;
    std::vector<long> cols;
    for (std::size_t k : ks) {
      row_id.emplace(entries[k].row, static_cast<int>(row_id.size()));
      if (col_id.emplace(entries[k].col, static_cast<int>(col_id.size())).second) cols.push_back(entries[k].col);
    }
    std::vector<std::vector<Cyclotomic>> A(row_id.size(), std::vector<Cyclotomic>(col_id.size()));
    std::vector<Cyclotomic> rhs(row_id.size());
    bool any_rhs = false;
    for (const auto& [row, id] : row_id) {
      int i = static_cast<int>(row / D), j = static_cast<int>(row % D);
      if (!(i & 1) && !(j & 1)) {
        rhs[id] = H.one();
        any_rhs = true;
      }
    }
    for (std::size_t k : ks) A[row_id[entries[k].row]][col_id[entries[k].col]] += entries[k].v;
    if (!any_rhs) continue;
    auto sol = detail::solve_dense(std::move(A), std::move(rhs));
    if (!sol) return std::nullopt;
    for (std::size_t c = 0; c < cols.size(); ++c)
      X.add({static_cast<int>(cols[c] / D), static_cast<int>(cols[c] % D), 0}, (*sol)[c]);
  }
  TensorElement one = H.unit(2);
  if (H.multiply(R, X) != one || H.multiply(X, R) != one) return std::nullopt;
  return X;
}

struct VerifyOptions {
  bool full_basis = false;     // commutation on every basis element, not only generators
  bool antipode_check = true;  // (S (x) id)(R) = R^{-1}, asserted after the solve
};

inline std::string tensor_witness(const HopfAlgebra& H, const TensorElement& a, const TensorElement& b) {
  auto diff = a.first_difference(b);
  if (!diff) return "";
  return "at " + H.slots_str(*diff, a.arity()) + ": " + a.coeff(*diff).str() + " vs " + b.coeff(*diff).str();
}

// Quasitriangularity of an arbitrary R in H (x) H, by direct computation.
inline Report verify_quasitriangular(const HopfAlgebra& H, const TensorElement& R, VerifyOptions opts = {}) {
  Report rep("quasitriangularity");
  auto inverse = invert(H, R);
  rep.record("invertible", inverse.has_value(), "R (x) X = 1 (x) 1 has no two-sided solution");

  {
    TensorElement lhs = H.apply_coproduct(R, 0);
    TensorElement rhs = H.multiply(H.embed(R, EmbedSlots::s13), H.embed(R, EmbedSlots::s23));
    rep.record("(Delta (x) id)(R) = R13 R23", lhs == rhs, tensor_witness(H, lhs, rhs));
  }
  {
    TensorElement lhs = H.apply_coproduct(R, 1);
    TensorElement rhs = H.multiply(H.embed(R, EmbedSlots::s13), H.embed(R, EmbedSlots::s12));
    rep.record("(id (x) Delta)(R) = R13 R12", lhs == rhs, tensor_witness(H, lhs, rhs));
  }

  std::vector<std::pair<std::string, TensorElement>> gens;
  if (opts.full_basis) {
    for (int i = 0; i < H.dim(); ++i) gens.emplace_back(H.basis_str(i), H.basis(BasisElement::from_index(i)));
  } else {
    for (Elem g = 0; g < H.data().size(); ++g) gens.emplace_back(H.basis_str(2 * g), H.basis(BasisElement{g, 0}));
    gens.emplace_back("x", H.x());
  }
  const std::string comm = "Delta^op(h) R = R Delta(h)";
  rep.pass(comm);
  for (const auto& [name, h] : gens) {
    TensorElement lhs = H.multiply(H.coproduct_op(h), R);
    TensorElement rhs = H.multiply(R, H.coproduct(h));
    if (lhs != rhs) rep.fail(comm, "h=" + name + " " + tensor_witness(H, lhs, rhs));
  }

  if (opts.antipode_check && inverse) {
    TensorElement sr(2, H.dim());
    for (const auto& [key, c] : R.terms()) {
      Slots s = R.unpack(key);
      for (const auto& [k2, c2] : H.antipode_basis(s[0]).terms())
        sr.add({H.antipode_basis(s[0]).unpack(k2)[0], s[1], 0}, c * c2);
    }
    rep.record("(S (x) id)(R) = R^-1", sr == *inverse, tensor_witness(H, sr, *inverse));
  }
  return rep;
}

inline Report verify_quasitriangular(const ExtensionData& d, const RMatrix& R, VerifyOptions opts = {}) {
  Report shape = check_well_formed(d, R);
  if (!shape.ok()) return shape;
  HopfAlgebra H(d, R.order());
  return verify_quasitriangular(H, to_tensor(H, R), opts);
}

inline Report verify_qybe(const HopfAlgebra& H, const TensorElement& R) {
  Report rep("quantum Yang-Baxter equation");
  TensorElement R12 = H.embed(R, EmbedSlots::s12), R13 = H.embed(R, EmbedSlots::s13),
                R23 = H.embed(R, EmbedSlots::s23);
  TensorElement lhs = H.multiply(H.multiply(R12, R13), R23);
  TensorElement rhs = H.multiply(H.multiply(R23, R13), R12);
  rep.record("R12 R13 R23 = R23 R13 R12", lhs == rhs, tensor_witness(H, lhs, rhs));
  return rep;
}

inline Report verify_qybe(const ExtensionData& d, const RMatrix& R) {
  Report shape = check_well_formed(d, R);
  if (!shape.ok()) return shape;
  HopfAlgebra H(d, R.order());
  return verify_qybe(H, to_tensor(H, R));
}

// R_phi = (phi (x) phi)(R_21) with phi(e_g) = e_{g<|x}, phi(e_g x) = e_g x.
inline RMatrix phi_transform(const ExtensionData& d, const RMatrix& R) {
  if (!R.nontrivial)
    return RMatrix::make_trivial(d, [&](Elem u, Elem v) { return R.at1(d, d.act(v), d.act(u)); });
  return RMatrix::make_nontrivial(
      d, [&](Elem s1, Elem s2) { return R.at1(d, s2, s1); },
      [&](Elem s, Elem t) { return R.at3(d, d.act(t), s); }, [&](Elem t, Elem s) { return R.at2(d, s, d.act(t)); },
      [&](Elem t1, Elem t2) { return R.at4(d, t2, t1); });
}

inline bool is_phi_symmetric(const ExtensionData& d, const RMatrix& R) { return phi_transform(d, R) == R; }

// The three equations equivalent to Delta^op(h) R = R Delta(h) for non-trivial R.
inline Report check_commutation_equations(const ExtensionData& d, const RMatrix& R) {
  Report rep("commutation equations");
  if (!R.nontrivial) {
    rep.fail("non-trivial form", "R is trivial");
    return rep;
  }
  const int N = std::lcm(R.order(), d.field_order());
  auto C = [&](const RootOfUnity& r) { return Cyclotomic::root(r, N); };
  const auto& G = d.group();
  for (Elem s : d.S())
    for (Elem t : d.T()) {
      if (R.at2(d, s, d.act(t)) != R.at2(d, s, t) * C(d.eta(s, t)))
        rep.fail("w2(s,t<|x) = w2(s,t) eta(s,t)", "s=" + G.str(s) + " t=" + G.str(t));
      if (R.at3(d, d.act(t), s) != R.at3(d, t, s) * C(d.eta(t, s)))
        rep.fail("w3(t<|x,s) = w3(t,s) eta(t,s)", "s=" + G.str(s) + " t=" + G.str(t));
    }
  rep.pass("w2(s,t<|x) = w2(s,t) eta(s,t)");
  rep.pass("w3(t<|x,s) = w3(t,s) eta(t,s)");
  for (Elem t1 : d.T())
    for (Elem t2 : d.T()) {
      Elem u1 = d.act(t1), u2 = d.act(t2);
      if (C(d.tau(t2, t1)) * R.at4(d, u1, u2) != C(d.tau(u1, u2)) * R.at4(d, t1, t2))
        rep.fail("tau(t2,t1) w4(t1<|x,t2<|x) = tau(t1<|x,t2<|x) w4(t1,t2)", "t1=" + G.str(t1) + " t2=" + G.str(t2));
    }
  rep.pass("tau(t2,t1) w4(t1<|x,t2<|x) = tau(t1<|x,t2<|x) w4(t1,t2)");
  return rep;
}

// w : T x T -> k^x, indexed by T positions.
struct QTFunction {
  std::vector<Cyclotomic> w;
  int nT = 0;
  const Cyclotomic& at(const ExtensionData& d, Elem t1, Elem t2) const {
    return w[static_cast<std::size_t>(d.t_pos(t1)) * nT + d.t_pos(t2)];
  }
  int order() const {
    int o = 1;
    for (const auto& c : w) o = std::lcm(o, c.order());
    return o;
  }
  bool operator==(const QTFunction& o) const { return nT == o.nT && w == o.w; }
};

inline QTFunction extract_w4(const RMatrix& R) {
  if (!R.nontrivial) throw std::invalid_argument("extract_w4: R is trivial");
  return QTFunction{R.w4, R.nT};
}

struct QTReport {
  Report definition{"quasitriangular function: conditions (i)-(v)"};
  Report reduced{"quasitriangular function: reduced criterion"};
  bool agree = true;
  bool ok() const { return definition.ok(); }
};

namespace detail {

struct Rebuilt23 {
  std::vector<Cyclotomic> w2, w3;  // S x T and T x S position tables
};

// w2(s,t) = tau(s,t0) w(st0,t)/w(t0,t), w3(t,s) = tau(s,t0) w(t<|x,st0)/w(t<|x,t0).
inline Rebuilt23 rebuild_w23(const ExtensionData& d, const QTFunction& w, Elem t0, int N) {
  Rebuilt23 out;
  auto C = [&](const RootOfUnity& r) { return Cyclotomic::root(r, N); };
  for (Elem s : d.S())
    for (Elem t : d.T())
      out.w2.push_back(C(d.tau(s, t0)) * w.at(d, d.mul(s, t0), t) / w.at(d, t0, t));
  for (Elem t : d.T())
    for (Elem s : d.S()) {
      Elem tx = d.act(t);
      out.w3.push_back(C(d.tau(s, t0)) * w.at(d, tx, d.mul(s, t0)) / w.at(d, tx, t0));
    }
  return out;
}

inline Cyclotomic rebuild_w1(const ExtensionData& d, const QTFunction& w, Elem s1, Elem s2, Elem t1, Elem t2) {
  Elem u1 = d.mul(s1, t1), u2 = d.mul(s2, t2);
  return w.at(d, u1, u2) * w.at(d, t1, t2) / (w.at(d, u1, t2) * w.at(d, t1, u2));
}

}  // namespace detail

// Conditions (i)-(v) checked exhaustively, plus the reduced criterion: l_w a
// homomorphism and r_w an anti-homomorphism on span{X_g}, w1(s,b) = w1(b,s) =
// eta(t0,s) and the t0 instance of (v).
inline QTReport is_qt_function(const ExtensionData& d, const QTFunction& w, std::optional<Elem> t0_opt = std::nullopt) {
  QTReport out;
  auto& def = out.definition;
  auto& red = out.reduced;
  const auto& G = d.group();
  const auto& S = d.S();
  const auto& T = d.T();
  if (T.empty() || static_cast<int>(T.size()) != w.nT || w.w.size() != T.size() * T.size()) {
    def.fail("shape", "w must be a |T| x |T| table");
    red.fail("shape", "w must be a |T| x |T| table");
    return out;
  }
  bool nonzero = true;
  for (const auto& c : w.w) nonzero = nonzero && !c.is_zero();
  def.record("values nonzero", nonzero, "w has a zero value");
  red.record("values nonzero", nonzero, "w has a zero value");
  if (!nonzero) return out;

  const int N = std::lcm(w.order(), d.field_order());
  auto C = [&](const RootOfUnity& r) { return Cyclotomic::root(r, N); };
  auto W = [&](Elem a, Elem b) -> const Cyclotomic& { return w.at(d, a, b); };
  const Elem r0 = T[0];

  // (i), (ii): compare each t1 against the reference t1 = r0 by cross-multiplication.
  for (Elem s : S)
    for (Elem t : T)
      for (Elem t1 : T) {
        if (C(d.tau(s, t1)) * W(d.mul(s, t1), t) * W(r0, t) != C(d.tau(s, r0)) * W(d.mul(s, r0), t) * W(t1, t))
          def.fail("(i)", "s=" + G.str(s) + " t=" + G.str(t) + " t1=" + G.str(t1));
        if (C(d.tau(s, t1)) * W(t, d.mul(s, t1)) * W(t, r0) != C(d.tau(s, r0)) * W(t, d.mul(s, r0)) * W(t, t1))
          def.fail("(ii)", "s=" + G.str(s) + " t=" + G.str(t) + " t1=" + G.str(t1));
      }
  def.pass("(i)");
  def.pass("(ii)");
  for (Elem t : T)
    for (Elem t1 : T) {
      Elem ti = d.inv(t);
      Cyclotomic rhs = C(d.tau(t, ti));
      if (W(t, t1) * W(ti, d.act(t1)) * C(d.sigma(t1)) != rhs)
        def.fail("(iii)", "t=" + G.str(t) + " t1=" + G.str(t1));
      if (W(t1, t) * W(d.act(t1), ti) * C(d.sigma(t1)) != rhs)
        def.fail("(iv)", "t=" + G.str(t) + " t1=" + G.str(t1));
    }
  def.pass("(iii)");
  def.pass("(iv)");
  for (Elem t1 : T)
    for (Elem t2 : T) {
      Elem u1 = d.act(t1), u2 = d.act(t2);
      if (W(u1, u2) * C(d.tau(t2, t1)) != C(d.tau(u1, u2)) * W(t1, t2))
        def.fail("(v)", "t1=" + G.str(t1) + " t2=" + G.str(t2));
    }
  def.pass("(v)");

  // reduced criterion
  const Elem t0 = t0_opt.value_or(T[0]);
  if (d.in_S(t0)) throw std::invalid_argument("is_qt_function: t0 must lie in T");
  HopfAlgebra H(d, N);
  auto w23 = detail::rebuild_w23(d, w, t0, N);
  const std::size_t nS = S.size(), nT = T.size();
  std::vector<TensorElement> lw(d.size(), TensorElement(1, H.dim())), rw(d.size(), TensorElement(1, H.dim()));
  for (Elem s : S)
    for (Elem t : T) {
      lw[s].add({2 * t, 0, 0}, w23.w2[d.s_pos(s) * nT + d.t_pos(t)]);
      rw[s].add({2 * t, 0, 0}, w23.w3[d.t_pos(t) * nS + d.s_pos(s)]);
    }
  for (Elem t : T)
    for (Elem t2 : T) {
      lw[t].add({2 * t2 + 1, 0, 0}, W(t, t2));
      rw[t].add({2 * t2 + 1, 0, 0}, W(t2, t));
    }
  const std::string lhom = "l_w homomorphism on span{X_g}", ranti = "r_w anti-homomorphism on span{X_g}";
  red.pass(lhom);
  red.pass(ranti);
  for (Elem g = 0; g < d.size(); ++g)
    for (Elem h = 0; h < d.size(); ++h) {
      // X_g X_h = tau(g,h) X_{gh}
      if (H.multiply(lw[g], lw[h]) != lw[d.mul(g, h)].scaled(C(d.tau(g, h))))
        red.fail(lhom, "g=" + G.str(g) + " h=" + G.str(h));
      if (H.multiply(rw[g], rw[h]) != rw[d.mul(h, g)].scaled(C(d.tau(h, g))))
        red.fail(ranti, "g=" + G.str(g) + " h=" + G.str(h));
    }
  auto b = d.b();
  if (!b) {
    red.fail("w1(s,b) = w1(b,s) = eta(t0,s)", "no element b");
  } else {
    for (Elem s : S) {
      Cyclotomic e = C(d.eta(t0, s));
      if (detail::rebuild_w1(d, w, s, *b, t0, t0) != e || detail::rebuild_w1(d, w, *b, s, t0, t0) != e)
        red.fail("w1(s,b) = w1(b,s) = eta(t0,s)", "s=" + G.str(s));
    }
    red.pass("w1(s,b) = w1(b,s) = eta(t0,s)");
  }
  Elem t0x = d.act(t0);
  red.record("w(t0<|x,t0<|x) = tau(t0<|x,t0<|x)/tau(t0,t0) w(t0,t0)",
             W(t0x, t0x) * C(d.tau(t0, t0)) == C(d.tau(t0x, t0x)) * W(t0, t0), "t0=" + G.str(t0));
  out.agree = def.ok() == red.ok();
  return out;
}

// The unique non-trivial R with w4 = w; t0 enters w2, w3 and (t1, t2) enter w1.
// Throws std::invalid_argument when w is not a quasitriangular function.
inline RMatrix rebuild_from_w4(const ExtensionData& d, const QTFunction& w, Elem t0, Elem t1, Elem t2) {
  for (Elem t : {t0, t1, t2})
    if (d.in_S(t)) throw std::invalid_argument("rebuild_from_w4: auxiliary elements must lie in T");
  QTReport q = is_qt_function(d, w, t0);
  if (!q.definition.ok()) {
    const Check* c = q.definition.first_failure();
    throw std::invalid_argument("rebuild_from_w4: not a quasitriangular function: " + c->name + " " + c->witness);
  }
  const int N = std::lcm(w.order(), d.field_order());
  auto w23 = detail::rebuild_w23(d, w, t0, N);
  const std::size_t nS = d.S().size(), nT = d.T().size();
  return RMatrix::make_nontrivial(
      d, [&](Elem s1, Elem s2) { return detail::rebuild_w1(d, w, s1, s2, t1, t2); },
      [&](Elem s, Elem t) { return w23.w2[d.s_pos(s) * nT + d.t_pos(t)]; },
      [&](Elem t, Elem s) { return w23.w3[d.t_pos(t) * nS + d.s_pos(s)]; },
      [&](Elem a, Elem c) { return w.at(d, a, c); });
}

}  // namespace hopfz2
