#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace hopfz2 {

// The datum (G, <|, sigma, tau). Values are roots of unity; tau is row-major |G| x |G|.
// Construction never throws on mathematically invalid tables; run validate().
class ExtensionData {
 public:
  ExtensionData() = default;
  ExtensionData(FiniteAbelianGroup G, Involution x, std::vector<RootOfUnity> sigma, std::vector<RootOfUnity> tau)
      : G_(std::move(G)), x_(std::move(x)), sigma_(std::move(sigma)), tau_(std::move(tau)) {
    const int n = G_.size();
    if (static_cast<int>(sigma_.size()) != n) throw std::invalid_argument("sigma table must have |G| entries");
    if (static_cast<int>(tau_.size()) != n * n) throw std::invalid_argument("tau table must have |G|^2 entries");
    split_ = split_fixed(G_, x_);
    s_pos_.assign(n, -1);
    t_pos_.assign(n, -1);
    for (std::size_t i = 0; i < split_.S.size(); ++i) s_pos_[split_.S[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < split_.T.size(); ++i) t_pos_[split_.T[i]] = static_cast<int>(i);
    b_ = find_b(G_, x_);
    field_order_ = std::lcm(G_.exponent(), 4);
    for (const auto& r : sigma_) field_order_ = std::lcm<long>(field_order_, r.den());
    for (const auto& r : tau_) field_order_ = std::lcm<long>(field_order_, r.den());
    if (b_.b) {
      try {
        presentation_ = derive_presentation(G_, x_);
      } catch (const std::invalid_argument&) {
        presentation_.reset();
      }
    }
    sigma_c_.reserve(n);
    for (const auto& r : sigma_) sigma_c_.push_back(Cyclotomic::root(r, field_order_));
  }

  const FiniteAbelianGroup& group() const { return G_; }
  const Involution& action() const { return x_; }
  int size() const { return G_.size(); }
  Elem act(Elem g) const { return x_(g); }
  Elem mul(Elem g, Elem h) const { return G_.mul(g, h); }
  Elem inv(Elem g) const { return G_.inv(g); }

  RootOfUnity sigma(Elem g) const { return sigma_[g]; }
  RootOfUnity tau(Elem g, Elem h) const { return tau_[static_cast<std::size_t>(g) * G_.size() + h]; }
  RootOfUnity eta(Elem g, Elem h) const { return tau(g, h) / tau(h, g); }
  const std::vector<RootOfUnity>& sigma_table() const { return sigma_; }
  const std::vector<RootOfUnity>& tau_table() const { return tau_; }

  const Cyclotomic& sigma_c(Elem g) const { return sigma_c_[g]; }
  Cyclotomic tau_c(Elem g, Elem h) const { return Cyclotomic::root(tau(g, h), field_order_); }

  const std::vector<Elem>& S() const { return split_.S; }
  const std::vector<Elem>& T() const { return split_.T; }
  int s_pos(Elem g) const { return s_pos_[g]; }
  int t_pos(Elem g) const { return t_pos_[g]; }
  bool in_S(Elem g) const { return s_pos_[g] >= 0; }

  std::optional<Elem> b() const { return b_.b; }
  const std::vector<std::string>& b_failures() const { return b_.failures; }

  bool has_presentation() const { return presentation_.has_value(); }
  const Presentation& presentation() const {
    if (!presentation_) throw std::invalid_argument("datum has no presentation (necessary conditions fail)");
    return *presentation_;
  }
  // Copy with a pinned presentation (see derive_presentation).
  ExtensionData with_presentation(std::optional<Elem> a_choice, std::optional<std::vector<Elem>> s_choice) const {
    ExtensionData d = *this;
    d.presentation_ = derive_presentation(G_, x_, a_choice, std::move(s_choice));
    return d;
  }

  // Same group and action with sigma = 1 and tau = 1.
  ExtensionData untwisted() const {
    ExtensionData d(G_, x_, std::vector<RootOfUnity>(sigma_.size()), std::vector<RootOfUnity>(tau_.size()));
    d.presentation_ = presentation_;
    return d;
  }

  int field_order() const { return static_cast<int>(field_order_); }

 private:
  FiniteAbelianGroup G_;
  Involution x_;
  std::vector<RootOfUnity> sigma_, tau_;
  FixedSplit split_;
  std::vector<int> s_pos_, t_pos_;
  BResult b_;
  std::optional<Presentation> presentation_;
  long field_order_ = 4;
  std::vector<Cyclotomic> sigma_c_;
};

inline RootOfUnity eta(const ExtensionData& d, Elem g, Elem h) { return d.eta(g, h); }

// P for the word g_1 g_2 ... g_r: X_{g_1}...X_{g_r} = P X_{g_1...g_r}.
inline RootOfUnity p_constant(const ExtensionData& d, const std::vector<Elem>& letters) {
  RootOfUnity acc;
  Elem cur = d.group().identity();
  for (Elem g : letters) {
    acc *= d.tau(cur, g);
    cur = d.mul(cur, g);
  }
  return acc;
}

// P_{s_1^{j_1} ... s_n^{j_n}} in the canonical order.
inline RootOfUnity p_word(const ExtensionData& d, const Presentation& P, const std::vector<int>& j) {
  std::vector<Elem> letters;
  for (int i = 0; i < P.n(); ++i)
    for (int r = 0; r < j[i]; ++r) letters.push_back(P.s[i]);
  return p_constant(d, letters);
}

// P for a single generator power s_i^e.
inline RootOfUnity p_power(const ExtensionData& d, Elem s, int e) {
  return p_constant(d, std::vector<Elem>(e, s));
}

inline Report validate(const ExtensionData& d) {
  Report r("datum");
  const auto& G = d.group();
  const int n = G.size();
  auto issues = d.action().check(G);
  r.record("action well-defined", !issues.not_well_defined, issues.not_well_defined.value_or(""));
  r.record("action automorphism", !issues.not_automorphism, issues.not_automorphism.value_or(""));
  r.record("action involutive", !issues.not_involution, issues.not_involution.value_or(""));
  r.record("action non-identity", !issues.identity, issues.identity.value_or(""));

  r.record("sigma(1)=1", d.sigma(0).is_one(), "sigma(1)=" + d.sigma(0).str());
  for (Elem g = 0; g < n; ++g)
    if (d.sigma(d.act(g)) != d.sigma(g)) {
      r.fail("sigma x-invariant", "g=" + G.str(g));
      break;
    }
  r.pass("sigma x-invariant");

  for (Elem g = 0; g < n; ++g)
    if (!d.tau(0, g).is_one() || !d.tau(g, 0).is_one()) {
      r.fail("tau unital", "(1," + G.str(g) + ")");
      break;
    }
  r.pass("tau unital");

  bool done = false;
  for (Elem g = 0; g < n && !done; ++g)
    for (Elem h = 0; h < n && !done; ++h)
      for (Elem k = 0; k < n && !done; ++k)
        if (d.tau(g, h) * d.tau(G.mul(g, h), k) != d.tau(h, k) * d.tau(g, G.mul(h, k))) {
          r.fail("tau 2-cocycle", "(" + G.str(g) + "," + G.str(h) + "," + G.str(k) + ")");
          done = true;
        }
  r.pass("tau 2-cocycle");

  done = false;
  for (Elem g = 0; g < n && !done; ++g)
    for (Elem h = 0; h < n && !done; ++h)
      if (d.sigma(G.mul(g, h)) / (d.sigma(g) * d.sigma(h)) != d.tau(g, h) * d.tau(d.act(g), d.act(h))) {
        r.fail("sigma/tau compatibility", "(" + G.str(g) + "," + G.str(h) + ")");
        done = true;
      }
  r.pass("sigma/tau compatibility");
  return r;
}

// Necessary conditions for a non-trivial R: |S| = |T|, the element b, tau symmetric on S.
inline Report check_necessary(const ExtensionData& d) {
  Report r("necessary conditions");
  const auto& G = d.group();
  std::string size_fail, b_fail;
  for (const auto& f : d.b_failures()) {
    if (f.rfind("(i)", 0) == 0) size_fail = f;
    if (f.rfind("(ii)", 0) == 0 && b_fail.empty()) b_fail = f;
  }
  if (d.S().size() != d.T().size() && b_fail.empty()) b_fail = "(ii) no b since |S| != |T|";
  r.record("(i) |S|=|T|", size_fail.empty(), size_fail);
  r.record("(ii) b exists", b_fail.empty() && d.b().has_value(), b_fail);
  std::string wit;
  for (Elem s1 : d.S()) {
    for (Elem s2 : d.S())
      if (d.tau(s1, s2) != d.tau(s2, s1)) {
        wit = "(iii) tau(" + G.str(s1) + "," + G.str(s2) + ") != tau(" + G.str(s2) + "," + G.str(s1) + ")";
        break;
      }
    if (!wit.empty()) break;
  }
  r.record("(iii) tau symmetric on S", wit.empty(), wit);
  return r;
}

// P^2 * prod sigma(s_k)^{j_k} = sigma(s^j) for every exponent vector.
inline Report check_p_constant_identity(const ExtensionData& d, const Presentation& P) {
  Report r("P-constant identity");
  for (int w = 0; w < P.s_size(); ++w) {
    auto j = P.word_exps(w);
    RootOfUnity lhs = p_word(d, P, j).pow(2);
    for (int k = 0; k < P.n(); ++k) lhs *= d.sigma(P.s[k]).pow(j[k]);
    if (lhs != d.sigma(P.word_elem[w])) {
      r.fail("P^2 prod sigma = sigma", "word index " + std::to_string(w));
      return r;
    }
  }
  r.pass("P^2 prod sigma = sigma");
  return r;
}

// The eta/tau identity relating tau at (s1 t0, s2 t0) and its x-image, for all s1, s2 in S.
inline Report check_twist_identity(const ExtensionData& d, Elem t0) {
  Report r("eta/tau twist identity");
  const auto& G = d.group();
  const Elem t0x = d.act(t0);
  for (Elem s1 : d.S())
    for (Elem s2 : d.S()) {
      RootOfUnity lhs = d.eta(s1, G.mul(s2, t0)) / d.eta(t0, s2) * d.tau(t0x, t0x) / d.tau(t0, t0) *
                        d.tau(s1, t0) * d.tau(s2, t0) / (d.tau(s1, t0x) * d.tau(s2, t0x));
      RootOfUnity rhs = d.tau(G.mul(s1, t0x), G.mul(s2, t0x)) / d.tau(G.mul(s2, t0), G.mul(s1, t0));
      if (lhs != rhs) {
        r.fail("twist identity", "s1=" + G.str(s1) + " s2=" + G.str(s2) + " t0=" + G.str(t0));
        return r;
      }
    }
  r.pass("twist identity");
  return r;
}

// eta is a bicharacter with eta(g,h) eta(h,g) = 1.
inline Report check_eta_bicharacter(const ExtensionData& d) {
  Report r("eta");
  const auto& G = d.group();
  const int n = G.size();
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h) {
      if (!(d.eta(g, h) * d.eta(h, g)).is_one()) r.fail("eta antisymmetric", G.str(g) + "," + G.str(h));
      for (Elem k = 0; k < n; ++k) {
        if (d.eta(G.mul(g, h), k) != d.eta(g, k) * d.eta(h, k))
          r.fail("eta bicharacter", G.str(g) + "," + G.str(h) + "," + G.str(k));
      }
    }
  r.pass("eta antisymmetric");
  r.pass("eta bicharacter");
  return r;
}

}  // namespace hopfz2
