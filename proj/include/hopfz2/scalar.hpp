#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfz2 {

using Rational = mpq_class;

// exp(2*pi*i*num/den), stored in lowest terms with 0 <= num < den.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(long num, long den) {
    if (den <= 0) throw std::invalid_argument("RootOfUnity: denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    long g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static RootOfUnity one() { return {}; }
  static RootOfUnity minus_one() { return {1, 2}; }

  long num() const { return num_; }
  long den() const { return den_; }
  long order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const {
    long l = std::lcm(den_, o.den_);
    return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
  }
  RootOfUnity inverse() const { return {den_ - num_, den_}; }
  RootOfUnity operator/(const RootOfUnity& o) const { return *this * o.inverse(); }
  RootOfUnity& operator*=(const RootOfUnity& o) { return *this = *this * o; }
  RootOfUnity& operator/=(const RootOfUnity& o) { return *this = *this / o; }
  RootOfUnity pow(long e) const {
    // num*e may be large; reduce first.
    long r = static_cast<long>((static_cast<__int128>(num_) * e) % den_);
    return {r, den_};
  }

  bool operator==(const RootOfUnity& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
  // Orders by angle in [0, 2*pi).
  bool operator<(const RootOfUnity& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
  }

  std::complex<double> to_complex() const {
    double t = 2.0 * M_PI * static_cast<double>(num_) / static_cast<double>(den_);
    return {std::cos(t), std::sin(t)};
  }

  std::string str() const {
    if (num_ == 0) return "1";
    if (den_ == 2) return "-1";
    return "z" + std::to_string(den_) + "^" + std::to_string(num_);
  }

 private:
  long num_ = 0;
  long den_ = 1;
};

// All n values x with x^n = c, ascending by angle.
inline std::vector<RootOfUnity> nth_roots(const RootOfUnity& c, long n) {
  if (n < 1) throw std::invalid_argument("nth_roots: n must be positive");
  std::vector<RootOfUnity> out;
  out.reserve(n);
  for (long j = 0; j < n; ++j) out.emplace_back(c.num() + j * c.den(), n * c.den());
  std::sort(out.begin(), out.end());
  return out;
}

// Coefficients low degree first.
using IntPoly = std::vector<long>;

namespace detail {

inline IntPoly poly_exact_div(IntPoly num, const IntPoly& den) {
  int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
  if (dd < 0 || den.back() == 0) throw std::logic_error("poly_exact_div: bad divisor");
  IntPoly q(std::max(dn - dd + 1, 1), 0);
  for (int i = dn; i >= dd; --i) {
    long c = num[i];
    if (c == 0) continue;
    if (c % den.back() != 0) throw std::logic_error("poly_exact_div: not exact");
    long f = c / den.back();
    q[i - dd] = f;
    for (int k = 0; k <= dd; ++k) num[i - dd + k] -= f * den[k];
  }
  for (int i = 0; i < dd; ++i)
    if (num[i] != 0) throw std::logic_error("poly_exact_div: nonzero remainder");
  return q;
}

}  // namespace detail

// Phi_n via (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline IntPoly cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  static std::mutex mu;
  static std::map<int, IntPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = detail::poly_exact_div(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(n, p);
  return p;
}

namespace detail {

struct CycloContext {
  int order = 1;
  int degree = 1;
  IntPoly phi;                            // monic, degree + 1 coefficients
  std::vector<std::vector<long>> mono;    // x^k mod Phi_order for 0 <= k < order
};

inline const CycloContext& cyclo_context(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloContext>> registry;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(order);
    if (it != registry.end()) return *it->second;
  }
  auto ctx = std::make_unique<CycloContext>();
  ctx->order = order;
  ctx->phi = cyclotomic_polynomial(order);
  ctx->degree = static_cast<int>(ctx->phi.size()) - 1;
  const int d = ctx->degree;
  std::vector<long> cur(d, 0);
  cur[0] = 1;
  ctx->mono.reserve(order);
  for (int k = 0; k < order; ++k) {
    ctx->mono.push_back(cur);
    // cur <- x * cur mod phi
    long top = cur[d - 1];
    for (int i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < d; ++i) cur[i] -= top * ctx->phi[i];
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = registry.emplace(order, std::move(ctx));
  return *it->second;
}

using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// p mod phi where phi is monic of degree d; result has exactly d coefficients.
inline void reduce_mod(QPoly& p, const CycloContext& ctx) {
  const int d = ctx.degree;
  for (int i = static_cast<int>(p.size()) - 1; i >= d; --i) {
    if (sgn(p[i]) == 0) continue;
    Rational c = p[i];
    for (int k = 0; k < d; ++k)
      if (ctx.phi[k] != 0) p[i - d + k] -= c * ctx.phi[k];
    p[i] = 0;
  }
  p.resize(d);
}

}  // namespace detail

// Exact element of Q(zeta_N): sum_k c_k zeta_N^k with c reduced modulo Phi_N.
class Cyclotomic {
 public:
  Cyclotomic() : ctx_(&detail::cyclo_context(1)), c_(1) {}
  Cyclotomic(long v) : ctx_(&detail::cyclo_context(1)), c_(1, Rational(v)) {}
  Cyclotomic(const Rational& v) : ctx_(&detail::cyclo_context(1)), c_(1, v) {}
  Cyclotomic(const RootOfUnity& r) : Cyclotomic(root(r, r.den())) {}

  // zeta_den^num written in Q(zeta_order); order must be a multiple of r.den().
  static Cyclotomic root(const RootOfUnity& r, int order) {
    if (order % r.den() != 0) throw std::invalid_argument("Cyclotomic::root: order not divisible by den");
    Cyclotomic out;
    out.ctx_ = &detail::cyclo_context(order);
    long k = r.num() * (order / r.den());
    const auto& m = out.ctx_->mono[k];
    out.c_.assign(m.begin(), m.end());
    return out;
  }

  // Any coefficient vector of length <= order; reduced on construction.
  static Cyclotomic from_coeffs(int order, const std::vector<Rational>& coeffs) {
    Cyclotomic out;
    out.ctx_ = &detail::cyclo_context(order);
    const auto& ctx = *out.ctx_;
    detail::QPoly p(std::max<std::size_t>(coeffs.size(), ctx.degree));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Rational q = coeffs[i];
      q.canonicalize();
      p[i % order] += q;
    }
    detail::reduce_mod(p, ctx);
    out.c_ = std::move(p);
    return out;
  }

  int order() const { return ctx_->order; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }
  bool is_one() const {
    if (sgn(c_[0] - 1) != 0) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }

  Cyclotomic lift(int order) const {
    if (order == ctx_->order) return *this;
    if (order % ctx_->order != 0) throw std::invalid_argument("Cyclotomic::lift: order must be a multiple");
    Cyclotomic out;
    out.ctx_ = &detail::cyclo_context(order);
    const int d = out.ctx_->degree;
    out.c_.assign(d, Rational(0));
    const int step = order / ctx_->order;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      const auto& m = out.ctx_->mono[k * step];
      for (int i = 0; i < d; ++i)
        if (m[i] != 0) out.c_[i] += c_[k] * m[i];
    }
    return out;
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& q : out.c_) q = -q;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    if (o.ctx_ != ctx_) {
      if (o.is_zero()) return *this;
      int l = std::lcm(order(), o.order());
      if (l != order()) *this = lift(l);
      if (l != o.order()) return *this += o.lift(l);
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.ctx_ != b.ctx_) {
      int l = std::lcm(a.order(), b.order());
      if (l != a.order()) return a.lift(l) * b;
      return a * b.lift(l);
    }
    const auto& ctx = *a.ctx_;
    const int d = ctx.degree;
    if (d == 1) {
      Cyclotomic out = a;
      out.c_[0] *= b.c_[0];
      return out;
    }
    detail::QPoly p(2 * d - 1);
    for (int i = 0; i < d; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (int j = 0; j < d; ++j)
        if (sgn(b.c_[j]) != 0) p[i + j] += a.c_[i] * b.c_[j];
    }
    detail::reduce_mod(p, ctx);
    Cyclotomic out;
    out.ctx_ = a.ctx_;
    out.c_ = std::move(p);
    return out;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  // Extended Euclid of the coefficient polynomial against Phi_N.
  Cyclotomic inv() const {
    if (is_zero()) throw std::domain_error("Cyclotomic::inv: division by zero");
    using detail::QPoly;
    const auto& ctx = *ctx_;
    QPoly r0(ctx.phi.begin(), ctx.phi.end()), r1 = c_;
    QPoly s0{Rational(0)}, s1{Rational(1)};
    detail::qpoly_trim(r1);
    while (!(r1.size() == 1)) {
      // r0 = q*r1 + r
      QPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1);
      QPoly r = r0;
      while (r.size() >= r1.size() && !r.empty()) {
        std::size_t shift = r.size() - r1.size();
        Rational f = r.back() / r1.back();
        q[shift] = f;
        for (std::size_t k = 0; k < r1.size(); ++k) r[shift + k] -= f * r1[k];
        r.pop_back();
        detail::qpoly_trim(r);
      }
      QPoly s(std::max(s0.size(), q.size() + s1.size() - 1));
      for (std::size_t i = 0; i < s0.size(); ++i) s[i] += s0[i];
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
      detail::qpoly_trim(s);
      if (s.empty()) s.push_back(0);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
      if (r1.empty()) throw std::logic_error("Cyclotomic::inv: non-unit (Phi_N reducible?)");
    }
    Rational c = r1[0];
    for (auto& q : s1) q /= c;
    Cyclotomic out;
    out.ctx_ = ctx_;
    detail::reduce_mod(s1, ctx);
    out.c_ = std::move(s1);
    return out;
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inv(); }

  Cyclotomic pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclotomic result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.ctx_ == b.ctx_) return a.c_ == b.c_;
    int l = std::lcm(a.order(), b.order());
    return a.lift(l).c_ == b.lift(l).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Returns r with value == r when the value is a root of unity.
  std::optional<RootOfUnity> as_root_of_unity() const {
    const int n = order() % 2 ? 2 * order() : order();
    Cyclotomic v = lift(n);
    const auto& ctx = *v.ctx_;
    for (int k = 0; k < n; ++k) {
      const auto& m = ctx.mono[k];
      bool eq = true;
      for (int i = 0; i < ctx.degree && eq; ++i) eq = (v.c_[i] == m[i]);
      if (eq) return RootOfUnity(k, n);
    }
    return std::nullopt;
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      double t = 2.0 * M_PI * static_cast<double>(k) / order();
      z += c_[k].get_d() * std::complex<double>(std::cos(t), std::sin(t));
    }
    return z;
  }

  // Canonical coefficient string at a fixed order; used as a hashing/dedup key.
  std::string key(int at_order) const {
    Cyclotomic v = lift(at_order);
    std::string s;
    for (const auto& q : v.c_) {
      s += q.get_str();
      s += ',';
    }
    return s;
  }

  std::string str() const {
    if (auto r = as_root_of_unity()) return r->str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << c_[k].get_str();
      if (k > 0) os << "*z" << order() << "^" << k;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  const detail::CycloContext* ctx_;
  std::vector<Rational> c_;
};

}  // namespace hopfz2
