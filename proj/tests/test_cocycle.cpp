#include <gtest/gtest.h>

#include "hopfz2/families.hpp"
#include "oracles.hpp"

using namespace hopfz2;

namespace {

const std::vector<std::string> kValidPresets{"kac-paljutkin",      "K8n:n=2:kp",        "K8n:n=3:kp",
                                             "K8n:n=1:untwisted",  "K8n:n=2:untwisted", "A8n:n=1:paper",
                                             "A8n:n=2:paper",      "A8n:n=1:untwisted", "A8n:n=3:untwisted"};

ExtensionData with_sigma(const ExtensionData& d, Elem g, RootOfUnity v) {
  auto s = d.sigma_table();
  s[g] = v;
  return ExtensionData(d.group(), d.action(), s, d.tau_table());
}

}  // namespace

TEST(Validate, PresetsAreValid) {
  for (const auto& name : kValidPresets) {
    auto p = make_preset(name);
    EXPECT_TRUE(validate(p.data).ok()) << name << "\n" << validate(p.data).str();
    EXPECT_TRUE(check_necessary(p.data).ok()) << name;
  }
}

TEST(Validate, BrokenUnitality) {
  auto d = make_kac_paljutkin();
  auto tau = d.tau_table();
  tau[1] = RootOfUnity(1, 2);
  tau[d.size()] = RootOfUnity(1, 2);
  ExtensionData bad(d.group(), d.action(), d.sigma_table(), tau);
  Report r = validate(bad);
  EXPECT_FALSE(r.ok());
  ASSERT_NE(r.find("tau unital"), nullptr);
  EXPECT_TRUE(r.failed("tau unital"));
}

TEST(Validate, BrokenCompatibility) {
  auto d = make_kac_paljutkin();
  Elem b = d.group().index({0, 1});
  ExtensionData bad = with_sigma(d, b, d.sigma(b) * RootOfUnity::minus_one());
  Report r = validate(bad);
  EXPECT_TRUE(r.failed("sigma/tau compatibility"));
  EXPECT_TRUE(r.passed("tau 2-cocycle"));
  EXPECT_TRUE(r.passed("sigma x-invariant"));
}

TEST(Validate, BrokenInvariance) {
  auto d = make_kac_paljutkin();
  // sigma(a) != sigma(a<|x)
  Report r = validate(with_sigma(d, d.group().index({1, 0}), RootOfUnity(1, 4)));
  EXPECT_TRUE(r.failed("sigma x-invariant"));
}

TEST(Validate, BrokenAction) {
  FiniteAbelianGroup G({4, 2});
  ExtensionData d(G, Involution(G, {{1, 0}, {0, 1}}), std::vector<RootOfUnity>(8), std::vector<RootOfUnity>(64));
  EXPECT_TRUE(validate(d).failed("action non-identity"));
  FiniteAbelianGroup Z8({8});
  ExtensionData e(Z8, Involution(Z8, {{2}}), std::vector<RootOfUnity>(8), std::vector<RootOfUnity>(64));
  EXPECT_FALSE(validate(e).ok());
}

TEST(Validate, NonCocycle) {
  auto d = make_family(untwisted_spec(Family::K, 1));
  auto tau = d.tau_table();
  Elem a = d.group().index({1, 0}), b = d.group().index({0, 1});
  tau[a * d.size() + b] = RootOfUnity(1, 4);
  Report r = validate(ExtensionData(d.group(), d.action(), d.sigma_table(), tau));
  EXPECT_TRUE(r.failed("tau 2-cocycle"));
}

TEST(Eta, KacPaljutkinValues) {
  auto d = make_kac_paljutkin();
  Elem a = d.group().index({1, 0}), b = d.group().index({0, 1});
  // tau(a,b) = 1, tau(b,a) = -1
  EXPECT_EQ(d.eta(a, b), RootOfUnity::minus_one());
  EXPECT_EQ(d.eta(b, a), RootOfUnity::minus_one());
  EXPECT_TRUE(d.eta(a, a).is_one());
  // P_{b^2} = tau(1,b) tau(b,b) = -1
  EXPECT_EQ(p_power(d, b, 2), RootOfUnity::minus_one());
  EXPECT_TRUE(check_eta_bicharacter(d).ok());
}

TEST(Eta, BicharacterOnPresets) {
  for (const auto& name : kValidPresets) EXPECT_TRUE(check_eta_bicharacter(make_preset(name).data).ok()) << name;
}

TEST(PConstant, WordProduct) {
  auto d = make_preset("A8n:n=1:paper").data;
  // tau(a^i,a^j) = (-1)^{ij}: P for the word (a,a,a) is tau(1,a) tau(a,a) tau(a^2,a) = -1
  Elem a = 1;
  EXPECT_EQ(p_constant(d, {a, a, a}), RootOfUnity::minus_one());
  EXPECT_EQ(p_constant(d, {a, a}), RootOfUnity::minus_one());
  EXPECT_TRUE(p_constant(d, {}).is_one());
}

TEST(Identities, PConstantAndTwistOnPresets) {
  for (const auto& name : kValidPresets) {
    auto d = make_preset(name).data;
    EXPECT_TRUE(check_p_constant_identity(d, d.presentation()).ok()) << name;
    for (Elem t0 : d.T()) EXPECT_TRUE(check_twist_identity(d, t0).ok()) << name << " t0=" << t0;
  }
}

TEST(Necessary, Z3InversionFailsSizeAndB) {
  auto d = oracle::z3_inversion();
  EXPECT_TRUE(validate(d).ok());
  Report r = check_necessary(d);
  EXPECT_TRUE(r.failed("(i) |S|=|T|"));
  EXPECT_TRUE(r.failed("(ii) b exists"));
  EXPECT_TRUE(r.passed("(iii) tau symmetric on S"));
}

TEST(Necessary, AsymmetricTauFailsOnlyIii) {
  auto d = oracle::z2_4_asymmetric();
  EXPECT_TRUE(validate(d).ok()) << validate(d).str();
  Report r = check_necessary(d);
  EXPECT_TRUE(r.passed("(i) |S|=|T|"));
  EXPECT_TRUE(r.passed("(ii) b exists"));
  EXPECT_TRUE(r.failed("(iii) tau symmetric on S"));
  EXPECT_NE(r.find("(iii) tau symmetric on S")->witness.find("tau("), std::string::npos);
}
