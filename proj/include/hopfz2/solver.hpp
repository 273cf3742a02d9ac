#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "rmatrix.hpp"
#include "scalar.hpp"

namespace hopfz2 {

// Refusal of oversized work; the CLI maps this to exit status 2.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Budget {
  long max_group = 4096;           // |G|
  long max_candidates = 2000000;   // size of any generate-and-filter search space
};

inline void require_budget(const Budget& b, long group, long candidates, const std::string& what) {
  if (group > b.max_group)
    throw BudgetExceeded(what + ": |G|=" + std::to_string(group) + " exceeds budget " + std::to_string(b.max_group));
  if (candidates > b.max_candidates)
    throw BudgetExceeded(what + ": search space " + std::to_string(candidates) + " exceeds budget " +
                         std::to_string(b.max_candidates));
}

enum class TupleKind { general, special };

// (alpha_ij, beta_i, gamma_i, delta) for the presentation of the datum.
struct SolutionTuple {
  TupleKind kind = TupleKind::special;
  std::vector<std::vector<RootOfUnity>> alpha;
  std::vector<RootOfUnity> beta, gamma;
  RootOfUnity delta;

  bool operator==(const SolutionTuple& o) const {
    return kind == o.kind && alpha == o.alpha && beta == o.beta && gamma == o.gamma && delta == o.delta;
  }
  std::string str() const {
    std::string s = kind == TupleKind::general ? "general" : "special";
    s += " alpha=[";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i) s += ";";
      for (std::size_t j = 0; j < alpha[i].size(); ++j) s += (j ? "," : "") + alpha[i][j].str();
    }
    s += "] beta=[";
    for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + beta[i].str();
    s += "] gamma=[";
    for (std::size_t i = 0; i < gamma.size(); ++i) s += (i ? "," : "") + gamma[i].str();
    return s + "] delta=" + delta.str();
  }
};

namespace detail {

inline RootOfUnity word_product(const std::vector<RootOfUnity>& v, const std::vector<int>& e) {
  RootOfUnity r;
  for (std::size_t i = 0; i < v.size(); ++i) r *= v[i].pow(e[i]);
  return r;
}
// prod_l alpha_{il}^{e_l} (row) or prod_l alpha_{li}^{e_l} (column).
inline RootOfUnity alpha_row(const std::vector<std::vector<RootOfUnity>>& a, int i, const std::vector<int>& e) {
  RootOfUnity r;
  for (std::size_t l = 0; l < e.size(); ++l) r *= a[i][l].pow(e[l]);
  return r;
}
inline RootOfUnity alpha_col(const std::vector<std::vector<RootOfUnity>>& a, int i, const std::vector<int>& e) {
  RootOfUnity r;
  for (std::size_t l = 0; l < e.size(); ++l) r *= a[l][i].pow(e[l]);
  return r;
}
// prod_{k,l} alpha_kl^{i_k j_l}
inline RootOfUnity alpha_pair(const std::vector<std::vector<RootOfUnity>>& a, const std::vector<int>& i,
                              const std::vector<int>& j) {
  RootOfUnity r;
  for (std::size_t k = 0; k < i.size(); ++k)
    for (std::size_t l = 0; l < j.size(); ++l) r *= a[k][l].pow(static_cast<long>(i[k]) * j[l]);
  return r;
}

// Every alpha matrix with alpha_ij^{gcd(k_i,k_j)} = 1, in lexicographic order.
inline std::vector<std::vector<std::vector<RootOfUnity>>> alpha_candidates(const Presentation& P, bool symmetric) {
  const int n = P.n();
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = symmetric ? i : 0; j < n; ++j) cells.emplace_back(i, j);
  std::vector<std::vector<std::vector<RootOfUnity>>> out;
  std::vector<int> digit(cells.size(), 0);
  for (;;) {
    std::vector<std::vector<RootOfUnity>> a(n, std::vector<RootOfUnity>(n));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto [i, j] = cells[c];
      a[i][j] = RootOfUnity(digit[c], std::gcd(P.k[i], P.k[j]));
      if (symmetric) a[j][i] = a[i][j];
    }
    out.push_back(std::move(a));
    std::size_t c = cells.size();
    while (c > 0) {
      --c;
      auto [i, j] = cells[c];
      if (++digit[c] < std::gcd(P.k[i], P.k[j])) break;
      digit[c] = 0;
      if (c == 0) return out;
    }
    if (cells.empty()) return out;
  }
}

inline long alpha_space(const Presentation& P) {
  long r = 1;
  for (int i = 0; i < P.n(); ++i)
    for (int j = 0; j < P.n(); ++j) r *= std::gcd(P.k[i], P.k[j]);
  return r;
}

// Cartesian product of per-index candidate lists.
inline std::vector<std::vector<RootOfUnity>> product(const std::vector<std::vector<RootOfUnity>>& choices) {
  std::vector<std::vector<RootOfUnity>> out{{}};
  for (const auto& c : choices) {
    std::vector<std::vector<RootOfUnity>> next;
    for (const auto& prefix : out)
      for (const auto& r : c) {
        auto v = prefix;
        v.push_back(r);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

inline int tuple_order(const SolutionTuple& t) {
  long o = 1;
  for (const auto& row : t.alpha)
    for (const auto& r : row) o = std::lcm(o, r.den());
  for (const auto& r : t.beta) o = std::lcm(o, r.den());
  for (const auto& r : t.gamma) o = std::lcm(o, r.den());
  o = std::lcm(o, t.delta.den());
  return static_cast<int>(o);
}

}  // namespace detail

// lambda(i, j) = P_{s^i}^{-1} P_{s^j}^{-1} tau(s^i, a)^{-1} tau(a, s^j)^{-1}.
inline RootOfUnity lambda_value(const ExtensionData& d, const Presentation& P, const std::vector<int>& i,
                                const std::vector<int>& j) {
  Elem si = P.word_elem[P.word_index(i)], sj = P.word_elem[P.word_index(j)];
  return (p_word(d, P, i) * p_word(d, P, j) * d.tau(si, P.a) * d.tau(P.a, sj)).inverse();
}

// Conditions (i)-(v) on a general tuple (a solution on the untwisted algebra).
inline Report check_general_conditions(const Presentation& P, const SolutionTuple& t) {
  Report r("general tuple conditions");
  const int n = P.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!t.alpha[i][j].pow(P.k[i]).is_one() || !t.alpha[i][j].pow(P.k[j]).is_one())
        r.fail("(i) alpha orders", "i=" + std::to_string(i) + " j=" + std::to_string(j));
  r.pass("(i) alpha orders");
  for (int i = 0; i < n; ++i) {
    if (!t.beta[i].pow(P.k[i]).is_one() || t.beta[i].pow(2) != detail::alpha_row(t.alpha, i, P.m))
      r.fail("(ii) beta", "i=" + std::to_string(i));
    if (!t.gamma[i].pow(P.k[i]).is_one() || t.gamma[i].pow(2) != detail::alpha_col(t.alpha, i, P.m))
      r.fail("(iii) gamma", "i=" + std::to_string(i));
  }
  r.pass("(ii) beta");
  r.pass("(iii) gamma");
  std::vector<int> mp(n);
  for (int i = 0; i < n; ++i) mp[i] = P.m[i] + P.p[i];
  RootOfUnity d2 = t.delta.pow(2);
  r.record("(iv) delta^2 = beta word", d2 == detail::word_product(t.beta, mp), "delta=" + t.delta.str());
  r.record("(iv) delta^2 = gamma word", d2 == detail::word_product(t.gamma, mp), "delta=" + t.delta.str());
  for (int i = 0; i < n; ++i)
    if (!detail::alpha_col(t.alpha, i, P.p).is_one() || !detail::alpha_row(t.alpha, i, P.p).is_one())
      r.fail("(v) alpha at b", "i=" + std::to_string(i));
  r.pass("(v) alpha at b");
  r.record("(v) beta word = gamma word at b",
           detail::word_product(t.beta, P.p) == detail::word_product(t.gamma, P.p), "");
  return r;
}

// Conditions (i)-(vi) on a special tuple for the twisted datum.
inline Report check_special_conditions(const ExtensionData& d, const Presentation& P, const SolutionTuple& t) {
  Report r("special tuple conditions");
  const int n = P.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!t.alpha[i][j].pow(P.k[i]).is_one() || !t.alpha[i][j].pow(P.k[j]).is_one())
        r.fail("(i) alpha orders", "i=" + std::to_string(i) + " j=" + std::to_string(j));
  r.pass("(i) alpha orders");
  for (int i = 0; i < n; ++i) {
    RootOfUnity pk = p_power(d, P.s[i], P.k[i]);
    if (t.beta[i].pow(P.k[i]) != pk || t.beta[i].pow(2) * d.sigma(P.s[i]) != detail::alpha_row(t.alpha, i, P.m))
      r.fail("(ii) beta", "i=" + std::to_string(i));
    if (t.gamma[i].pow(P.k[i]) != pk || t.gamma[i].pow(2) * d.sigma(P.s[i]) != detail::alpha_col(t.alpha, i, P.m))
      r.fail("(iii) gamma", "i=" + std::to_string(i));
  }
  r.pass("(ii) beta");
  r.pass("(iii) gamma");
  std::vector<int> mp(n);
  for (int i = 0; i < n; ++i) mp[i] = P.m[i] + P.p[i];
  const Elem a = P.a, b = P.b;
  RootOfUnity common = (d.tau(b, b) * d.sigma(a) * p_word(d, P, P.m) * p_word(d, P, P.p)).inverse() * d.tau(a, a);
  RootOfUnity d2 = t.delta.pow(2);
  r.record("(iv) delta^2 from beta", d2 == common * d.tau(b, a) * detail::word_product(t.beta, mp),
           "delta=" + t.delta.str());
  r.record("(v) delta^2 from gamma", d2 == common * d.tau(a, b) * detail::word_product(t.gamma, mp),
           "delta=" + t.delta.str());
  for (int i = 0; i < n; ++i) {
    RootOfUnity e = d.eta(a, P.s[i]);
    if (detail::alpha_col(t.alpha, i, P.p) != e || detail::alpha_row(t.alpha, i, P.p) != e)
      r.fail("(vi) alpha at b", "i=" + std::to_string(i));
  }
  r.pass("(vi) alpha at b");
  r.record("(vi) beta word = gamma word eta(a,b)",
           detail::word_product(t.beta, P.p) == detail::word_product(t.gamma, P.p) * d.eta(a, b), "");
  return r;
}

// Checked construction: throws std::invalid_argument when the conditions of its kind fail.
inline SolutionTuple make_solution_tuple(const ExtensionData& d, const Presentation& P, TupleKind kind,
                                std::vector<std::vector<RootOfUnity>> alpha, std::vector<RootOfUnity> beta,
                                std::vector<RootOfUnity> gamma, RootOfUnity delta) {
  const std::size_t n = P.n();
  if (alpha.size() != n || beta.size() != n || gamma.size() != n)
    throw std::invalid_argument("make_solution_tuple: sizes do not match the presentation");
  for (const auto& row : alpha)
    if (row.size() != n) throw std::invalid_argument("make_solution_tuple: alpha must be n x n");
  SolutionTuple t{kind, std::move(alpha), std::move(beta), std::move(gamma), delta};
  Report r = kind == TupleKind::general ? check_general_conditions(P, t) : check_special_conditions(d, P, t);
  if (!r.ok()) {
    const Check* c = r.first_failure();
    throw std::invalid_argument("make_solution_tuple: " + c->name + " " + c->witness);
  }
  return t;
}

namespace detail {

// Shared builder: twisted = false drops every P, tau and lambda factor.
inline RMatrix tuple_to_rmatrix(const ExtensionData& d, const Presentation& P, const SolutionTuple& t, bool twisted) {
  const int N = std::lcm(d.field_order(), tuple_order(t));
  auto C = [&](const RootOfUnity& r) { return Cyclotomic::root(r, N); };
  const Elem a = P.a;
  const Elem a_inv = d.inv(a);
  auto exps_t = [&](Elem u) { return P.exps(d.mul(u, a_inv)); };  // u = s^j a
  auto pw = [&](const std::vector<int>& e) { return twisted ? p_word(d, P, e) : RootOfUnity(); };
  return RMatrix::make_nontrivial(
      d,
      [&](Elem s1, Elem s2) { return C(alpha_pair(t.alpha, P.exps(s1), P.exps(s2))); },
      [&](Elem s, Elem u) {
        auto i = P.exps(s), j = exps_t(u);
        return C(pw(i).inverse() * word_product(t.beta, i) * alpha_pair(t.alpha, i, j));
      },
      [&](Elem u, Elem s) {
        auto i = exps_t(u), j = P.exps(s);
        return C(pw(j).inverse() * word_product(t.gamma, j) * alpha_pair(t.alpha, i, j));
      },
      [&](Elem u1, Elem u2) {
        auto i = exps_t(u1), j = exps_t(u2);
        RootOfUnity lam = twisted ? lambda_value(d, P, i, j) : RootOfUnity();
        return C(lam * word_product(t.beta, i) * word_product(t.gamma, j) * alpha_pair(t.alpha, i, j) * t.delta);
      });
}

}  // namespace detail

// R on the untwisted algebra built from a general tuple.
inline RMatrix tuple_to_rmatrix_general(const ExtensionData& d, const Presentation& P, const SolutionTuple& t) {
  if (t.kind != TupleKind::general) throw std::invalid_argument("tuple_to_rmatrix_general: tuple is not general");
  return detail::tuple_to_rmatrix(d, P, t, false);
}

// R on the twisted algebra built from a special tuple.
inline RMatrix tuple_to_rmatrix_special(const ExtensionData& d, const Presentation& P, const SolutionTuple& t) {
  if (t.kind != TupleKind::special) throw std::invalid_argument("tuple_to_rmatrix_special: tuple is not special");
  return detail::tuple_to_rmatrix(d, P, t, true);
}

// Reads (alpha, beta, gamma, delta) back off a non-trivial R: w1(s_i,s_j), w2(s_i,a), w3(a,s_i), w4(a,a).
inline std::optional<SolutionTuple> tuple_from_rmatrix(const ExtensionData& d, const Presentation& P, const RMatrix& R,
                                                       TupleKind kind) {
  if (!R.nontrivial) return std::nullopt;
  SolutionTuple t;
  t.kind = kind;
  const int n = P.n();
  t.alpha.assign(n, std::vector<RootOfUnity>(n));
  auto ru = [](const Cyclotomic& c) { return c.as_root_of_unity(); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto v = ru(R.at1(d, P.s[i], P.s[j]));
      if (!v) return std::nullopt;
      t.alpha[i][j] = *v;
    }
  for (int i = 0; i < n; ++i) {
    auto b = ru(R.at2(d, P.s[i], P.a)), g = ru(R.at3(d, P.a, P.s[i]));
    if (!b || !g) return std::nullopt;
    t.beta.push_back(*b);
    t.gamma.push_back(*g);
  }
  auto dl = ru(R.at4(d, P.a, P.a));
  if (!dl) return std::nullopt;
  t.delta = *dl;
  return t;
}

// Gate for non-trivial enumeration: cocycle validity, the necessary conditions and a presentation.
inline Report nontrivial_preconditions(const ExtensionData& d) {
  Report r("non-trivial preconditions");
  r.merge(validate(d));
  r.merge(check_necessary(d));
  r.record("presentation", d.has_presentation(), "no presentation S = <s_1> x ... x <s_n>, T = aS");
  return r;
}

inline long general_search_space(const Presentation& P) {
  long r = detail::alpha_space(P) * 2;
  for (int ki : P.k) r *= static_cast<long>(ki) * ki;
  return r;
}

// Exhaustive generate-and-filter over conditions (i)-(v); deterministic order.
inline std::vector<SolutionTuple> enumerate_general_tuples(const ExtensionData& d, const Budget& budget = {}) {
  const Presentation& P = d.presentation();
  require_budget(budget, d.size(), general_search_space(P), "enumerate_general_tuples");
  const int n = P.n();
  std::vector<int> mp(n);
  for (int i = 0; i < n; ++i) mp[i] = P.m[i] + P.p[i];
  std::vector<SolutionTuple> out;
  for (auto& alpha : detail::alpha_candidates(P, false)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      ok = detail::alpha_col(alpha, i, P.p).is_one() && detail::alpha_row(alpha, i, P.p).is_one();
    if (!ok) continue;
    std::vector<std::vector<RootOfUnity>> bc(n), gc(n);
    for (int i = 0; i < n; ++i)
      for (const auto& r : nth_roots(RootOfUnity(), P.k[i])) {
        if (r.pow(2) == detail::alpha_row(alpha, i, P.m)) bc[i].push_back(r);
        if (r.pow(2) == detail::alpha_col(alpha, i, P.m)) gc[i].push_back(r);
      }
    for (const auto& beta : detail::product(bc))
      for (const auto& gamma : detail::product(gc)) {
        if (detail::word_product(beta, P.p) != detail::word_product(gamma, P.p)) continue;
        RootOfUnity target = detail::word_product(beta, mp);
        if (target != detail::word_product(gamma, mp)) continue;
        for (const auto& delta : nth_roots(target, 2))
          out.push_back(SolutionTuple{TupleKind::general, alpha, beta, gamma, delta});
      }
  }
  return out;
}

inline long special_search_space(const Presentation& P) { return general_search_space(P); }

// Exhaustive generate-and-filter over conditions (i)-(vi); empty when none exist.
inline std::vector<SolutionTuple> enumerate_special_tuples(const ExtensionData& d, const Budget& budget = {}) {
  const Presentation& P = d.presentation();
  require_budget(budget, d.size(), special_search_space(P), "enumerate_special_tuples");
  const int n = P.n();
  std::vector<int> mp(n);
  for (int i = 0; i < n; ++i) mp[i] = P.m[i] + P.p[i];
  const Elem a = P.a, b = P.b;
  const RootOfUnity common =
      (d.tau(b, b) * d.sigma(a) * p_word(d, P, P.m) * p_word(d, P, P.p)).inverse() * d.tau(a, a);
  std::vector<SolutionTuple> out;
  for (auto& alpha : detail::alpha_candidates(P, false)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      RootOfUnity e = d.eta(a, P.s[i]);
      ok = detail::alpha_col(alpha, i, P.p) == e && detail::alpha_row(alpha, i, P.p) == e;
    }
    if (!ok) continue;
    std::vector<std::vector<RootOfUnity>> bc(n), gc(n);
    for (int i = 0; i < n; ++i) {
      RootOfUnity sg = d.sigma(P.s[i]);
      for (const auto& r : nth_roots(p_power(d, P.s[i], P.k[i]), P.k[i])) {
        if (r.pow(2) * sg == detail::alpha_row(alpha, i, P.m)) bc[i].push_back(r);
        if (r.pow(2) * sg == detail::alpha_col(alpha, i, P.m)) gc[i].push_back(r);
      }
    }
    for (const auto& beta : detail::product(bc))
      for (const auto& gamma : detail::product(gc)) {
        if (detail::word_product(beta, P.p) != detail::word_product(gamma, P.p) * d.eta(a, b)) continue;
        RootOfUnity from_beta = common * d.tau(b, a) * detail::word_product(beta, mp);
        RootOfUnity from_gamma = common * d.tau(a, b) * detail::word_product(gamma, mp);
        if (from_beta != from_gamma) continue;
        for (const auto& delta : nth_roots(from_beta, 2))
          out.push_back(SolutionTuple{TupleKind::special, alpha, beta, gamma, delta});
      }
  }
  return out;
}

// Componentwise ratio of two non-trivial R on the same datum.
inline RMatrix pointwise_ratio(const RMatrix& A, const RMatrix& B) {
  if (!A.nontrivial || !B.nontrivial) throw std::invalid_argument("pointwise_ratio: both must be non-trivial");
  RMatrix R = A;
  const std::vector<Cyclotomic>* src[4] = {&B.w1, &B.w2, &B.w3, &B.w4};
  std::vector<Cyclotomic>* dst[4] = {&R.w1, &R.w2, &R.w3, &R.w4};
  for (int k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < dst[k]->size(); ++i) (*dst[k])[i] = (*dst[k])[i] / (*src[k])[i];
  return R;
}
inline RMatrix pointwise_product(const RMatrix& A, const RMatrix& B) {
  if (!A.nontrivial || !B.nontrivial) throw std::invalid_argument("pointwise_product: both must be non-trivial");
  RMatrix R = A;
  const std::vector<Cyclotomic>* src[4] = {&B.w1, &B.w2, &B.w3, &B.w4};
  std::vector<Cyclotomic>* dst[4] = {&R.w1, &R.w2, &R.w3, &R.w4};
  for (int k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < dst[k]->size(); ++i) (*dst[k])[i] = (*dst[k])[i] * (*src[k])[i];
  return R;
}

// Every pairwise ratio reads off a tuple satisfying the general conditions and
// equals the general R built from that tuple.
inline Report check_division_closure(const ExtensionData& d, const std::vector<RMatrix>& rs) {
  Report rep("division closure");
  const Presentation& P = d.presentation();
  const std::string name = "ratios are general solutions";
  rep.pass(name);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < rs.size(); ++j) {
      RMatrix q = pointwise_ratio(rs[i], rs[j]);
      auto t = tuple_from_rmatrix(d, P, q, TupleKind::general);
      std::string wit = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (!t || !check_general_conditions(P, *t).ok() || tuple_to_rmatrix_general(d, P, *t) != q) {
        rep.fail(name, wit);
        return rep;
      }
    }
  return rep;
}

struct NontrivialResult {
  std::vector<RMatrix> rmatrices;
  std::vector<SolutionTuple> tuples;  // tuples[i] generates rmatrices[i]
  Report diagnostics{"non-trivial enumeration"};
};

inline int common_order(const ExtensionData& d, const std::vector<RMatrix>& rs) {
  int N = d.field_order();
  for (const auto& R : rs) N = std::lcm(N, R.order());
  return N;
}

// Sort by canonical key and drop duplicates; keeps a parallel vector aligned.
template <class Extra>
void canonicalize(const ExtensionData& d, std::vector<RMatrix>& rs, std::vector<Extra>& extra) {
  const int N = common_order(d, rs);
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < rs.size(); ++i) keys.emplace_back(rs[i].key(N), i);
  std::sort(keys.begin(), keys.end());
  std::vector<RMatrix> r2;
  std::vector<Extra> e2;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (k && keys[k].first == keys[k - 1].first) continue;
    r2.push_back(std::move(rs[keys[k].second]));
    if (!extra.empty()) e2.push_back(std::move(extra[keys[k].second]));
  }
  rs = std::move(r2);
  extra = std::move(e2);
}

// All non-trivial R: special tuples mapped through the twisted product formulas,
// deduplicated, with the division-closure assertion recorded in diagnostics.
inline NontrivialResult enumerate_all_nontrivial(const ExtensionData& d, const Budget& budget = {}) {
  NontrivialResult res;
  res.diagnostics.merge(nontrivial_preconditions(d));
  if (!res.diagnostics.ok()) return res;
  res.tuples = enumerate_special_tuples(d, budget);
  const Presentation& P = d.presentation();
  res.rmatrices.resize(res.tuples.size());
  parallel_for(res.tuples.size(), [&](std::size_t i) { res.rmatrices[i] = tuple_to_rmatrix_special(d, P, res.tuples[i]); });
  canonicalize(d, res.rmatrices, res.tuples);
  if (res.rmatrices.empty()) res.diagnostics.fail("special tuple exists", "conditions (i)-(vi) have no solution");
  res.diagnostics.merge(check_division_closure(d, res.rmatrices));
  return res;
}

// Bicharacters of G given by values on pairs of standard generators.
inline std::vector<RMatrix> bicharacter_candidates(const ExtensionData& d, const Budget& budget = {}) {
  const auto& G = d.group();
  const auto& ord = G.factor_orders();
  const int r = G.rank();
  long space = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) space *= std::gcd(ord[i], ord[j]);
  require_budget(budget, d.size(), space, "bicharacter search");
  std::vector<std::vector<RootOfUnity>> choices;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const int g = std::gcd(ord[i], ord[j]);
      std::vector<RootOfUnity> c;
      for (int k = 0; k < g; ++k) c.emplace_back(k, g);
      choices.push_back(std::move(c));
    }
  const int N = d.field_order();
  std::vector<RMatrix> out;
  for (const auto& vals : detail::product(choices)) {
    out.push_back(RMatrix::make_trivial(d, [&](Elem g, Elem h) {
      RootOfUnity v;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) v *= vals[i * r + j].pow(static_cast<long>(G.coord(g, i)) * G.coord(h, j));
      return Cyclotomic::root(v, N);
    }));
  }
  return out;
}

// Trivial R: bicharacter candidates filtered through the full verifier.
inline std::vector<RMatrix> enumerate_trivial(const ExtensionData& d, const Budget& budget = {}) {
  auto cands = bicharacter_candidates(d, budget);
  std::vector<char> keep(cands.size(), 0);
  parallel_for(cands.size(), [&](std::size_t i) { keep[i] = verify_quasitriangular(d, cands[i]).ok(); });
  std::vector<RMatrix> out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (keep[i]) out.push_back(std::move(cands[i]));
  std::vector<int> none;
  canonicalize(d, out, none);
  return out;
}

// phi-symmetric R: symmetric bicharacters on S with beta_i^{k_i} = P, w1(s_i,a^2) =
// beta_i^2 sigma(s_i), w1(s_i,b) = eta(a,s_i); gamma_i = beta_i eta(a,s_i); each
// candidate filtered by is_phi_symmetric and the verifier.
inline std::vector<RMatrix> enumerate_phi_symmetric(const ExtensionData& d, const Budget& budget = {}) {
  if (!nontrivial_preconditions(d).ok()) return {};
  const Presentation& P = d.presentation();
  require_budget(budget, d.size(), special_search_space(P), "enumerate_phi_symmetric");
  const int n = P.n();
  const Elem a = P.a, b = P.b;
  std::vector<int> mp(n);
  for (int i = 0; i < n; ++i) mp[i] = P.m[i] + P.p[i];
  const RootOfUnity common =
      (d.tau(b, b) * d.sigma(a) * p_word(d, P, P.m) * p_word(d, P, P.p)).inverse() * d.tau(a, a) * d.tau(b, a);
  std::vector<SolutionTuple> tuples;
  for (auto& alpha : detail::alpha_candidates(P, true)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = detail::alpha_row(alpha, i, P.p) == d.eta(a, P.s[i]);
    if (!ok) continue;
    std::vector<std::vector<RootOfUnity>> bc(n);
    for (int i = 0; i < n; ++i)
      for (const auto& r : nth_roots(p_power(d, P.s[i], P.k[i]), P.k[i]))
        if (r.pow(2) * d.sigma(P.s[i]) == detail::alpha_row(alpha, i, P.m)) bc[i].push_back(r);
    for (const auto& beta : detail::product(bc)) {
      std::vector<RootOfUnity> gamma(n);
      for (int i = 0; i < n; ++i) gamma[i] = beta[i] * d.eta(a, P.s[i]);
      for (const auto& delta : nth_roots(common * detail::word_product(beta, mp), 2))
        tuples.push_back(SolutionTuple{TupleKind::special, alpha, beta, gamma, delta});
    }
  }
  std::vector<RMatrix> rs(tuples.size());
  std::vector<char> keep(tuples.size(), 0);
  parallel_for(tuples.size(), [&](std::size_t i) {
    rs[i] = tuple_to_rmatrix_special(d, P, tuples[i]);
    keep[i] = is_phi_symmetric(d, rs[i]) && verify_quasitriangular(d, rs[i]).ok();
  });
  std::vector<RMatrix> out;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (keep[i]) out.push_back(std::move(rs[i]));
  std::vector<int> none;
  canonicalize(d, out, none);
  return out;
}

// Existence test through a bicharacter w1 on S and a pairing (beta_i, gamma_i):
// beta_i^{k_i} = gamma_i^{k_i} = P_{s_i^{k_i}}; beta-word = gamma-word eta(a,b) at b and
// equal at a^2; w1(s_i,b) = w1(b,s_i) = eta(a,s_i), w1(s_i,a^2) = beta_i^2 sigma(s_i),
// w1(a^2,s_i) = gamma_i^2 sigma(s_i).
inline bool pairing_criterion_holds(const ExtensionData& d, const Budget& budget = {}) {
  if (!nontrivial_preconditions(d).ok()) return false;
  const Presentation& P = d.presentation();
  require_budget(budget, d.size(), special_search_space(P), "pairing criterion");
  const int n = P.n();
  const Elem a = P.a, b = P.b;
  for (auto& alpha : detail::alpha_candidates(P, false)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      RootOfUnity e = d.eta(a, P.s[i]);
      ok = detail::alpha_row(alpha, i, P.p) == e && detail::alpha_col(alpha, i, P.p) == e;
    }
    if (!ok) continue;
    std::vector<std::vector<RootOfUnity>> bc(n), gc(n);
    for (int i = 0; i < n; ++i)
      for (const auto& r : nth_roots(p_power(d, P.s[i], P.k[i]), P.k[i])) {
        if (r.pow(2) * d.sigma(P.s[i]) == detail::alpha_row(alpha, i, P.m)) bc[i].push_back(r);
        if (r.pow(2) * d.sigma(P.s[i]) == detail::alpha_col(alpha, i, P.m)) gc[i].push_back(r);
      }
    for (const auto& beta : detail::product(bc))
      for (const auto& gamma : detail::product(gc))
        if (detail::word_product(beta, P.p) == detail::word_product(gamma, P.p) * d.eta(a, b) &&
            detail::word_product(beta, P.m) == detail::word_product(gamma, P.m))
          return true;
  }
  return false;
}

}  // namespace hopfz2
