#include <gtest/gtest.h>

#include "hopfz2/families.hpp"
#include "hopfz2/solver.hpp"
#include "oracles.hpp"

using namespace hopfz2;

namespace {

std::vector<RMatrix> kp_structures() {
  std::vector<RMatrix> out;
  for (const auto& c : classify_K(make_kac_paljutkin())) out.push_back(c.R);
  return out;
}

}  // namespace

// 1 (x) 1 is quasitriangular exactly when H is cocommutative, i.e. tau is symmetric.
TEST(RMatrix, IdentityNeedsCocommutativity) {
  for (const char* name : {"A8n:n=1:paper", "K8n:n=1:untwisted", "A8n:n=2:paper"}) {
    auto d = make_preset(name).data;
    auto R = RMatrix::identity(d);
    EXPECT_TRUE(verify_quasitriangular(d, R).ok()) << name;
    EXPECT_TRUE(verify_qybe(d, R).ok()) << name;
    EXPECT_TRUE(is_phi_symmetric(d, R)) << name;
  }
  auto kp = make_kac_paljutkin();
  Report r = verify_quasitriangular(kp, RMatrix::identity(kp));
  EXPECT_TRUE(r.failed("Delta^op(h) R = R Delta(h)")) << r.str();
  EXPECT_TRUE(r.passed("(Delta (x) id)(R) = R13 R23"));
}

TEST(RMatrix, WellFormedRejectsZeroAndBadShape) {
  auto d = make_kac_paljutkin();
  auto R = RMatrix::all_ones_nontrivial(d);
  R.w3[0] = Cyclotomic();
  EXPECT_TRUE(check_well_formed(d, R).failed("entries nonzero"));
  auto Q = RMatrix::all_ones_nontrivial(d);
  Q.w4.pop_back();
  EXPECT_TRUE(check_well_formed(d, Q).failed("table sizes"));
  EXPECT_FALSE(verify_quasitriangular(d, Q).ok());
}

TEST(RMatrix, TensorRoundTrip) {
  auto d = make_kac_paljutkin();
  for (const auto& R : kp_structures()) {
    HopfAlgebra H(d, R.order());
    auto back = from_tensor(d, to_tensor(H, R));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->key(H.scalar_order()), R.key(H.scalar_order()));
  }
}

TEST(RMatrix, KacPaljutkinStructuresVerify) {
  auto d = make_kac_paljutkin();
  auto rs = kp_structures();
  ASSERT_EQ(rs.size(), 4u);
  for (const auto& R : rs) {
    EXPECT_TRUE(verify_quasitriangular(d, R, {.full_basis = true}).ok());
    EXPECT_TRUE(verify_qybe(d, R).ok());
    EXPECT_TRUE(check_commutation_equations(d, R).ok());
  }
}

TEST(RMatrix, SingleMutationsCaught) {
  auto d = make_kac_paljutkin();
  for (const auto& R : kp_structures())
    for (const auto& [what, m] : oracle::single_mutations(R)) {
      Report r = verify_quasitriangular(d, m);
      ASSERT_FALSE(r.ok()) << what;
      EXPECT_FALSE(r.first_failure()->witness.empty()) << what;
    }
}

TEST(RMatrix, MutationsOfIdentityCaught) {
  auto d = make_preset("A8n:n=1:paper").data;
  for (const auto& [what, m] : oracle::single_mutations(RMatrix::identity(d)))
    EXPECT_FALSE(verify_quasitriangular(d, m).ok()) << what;
}

TEST(RMatrix, AllOnesDependsOnTwist) {
  auto kp = make_kac_paljutkin();
  EXPECT_FALSE(verify_quasitriangular(kp, RMatrix::all_ones_nontrivial(kp)).ok());
  auto un = make_preset("K8n:n=1:untwisted").data;
  EXPECT_TRUE(verify_quasitriangular(un, RMatrix::all_ones_nontrivial(un)).ok());
}

TEST(PhiTransform, Involution) {
  auto d = make_kac_paljutkin();
  for (const auto& R : kp_structures()) EXPECT_EQ(phi_transform(d, phi_transform(d, R)), R);
  for (const auto& [what, m] : oracle::single_mutations(kp_structures()[0]))
    EXPECT_EQ(phi_transform(d, phi_transform(d, m)), m) << what;
  auto T = RMatrix::make_trivial(d, [](Elem g, Elem h) { return Cyclotomic(RootOfUnity(g + 3 * h, 24)); });
  EXPECT_EQ(phi_transform(d, phi_transform(d, T)), T);
}

TEST(PhiTransform, PreservesVerification) {
  auto d = make_preset("A8n:n=1:paper").data;
  for (const auto& c : classify_A(d)) {
    EXPECT_TRUE(verify_quasitriangular(d, phi_transform(d, c.R)).ok());
    for (const auto& [what, m] : oracle::single_mutations(c.R))
      EXPECT_EQ(verify_quasitriangular(d, m).ok(), verify_quasitriangular(d, phi_transform(d, m)).ok()) << what;
  }
}

TEST(QTFunction, BijectionOnKacPaljutkin) {
  auto d = make_kac_paljutkin();
  for (const auto& R : kp_structures()) {
    QTFunction w = extract_w4(R);
    QTReport q = is_qt_function(d, w);
    EXPECT_TRUE(q.definition.ok()) << q.definition.str();
    EXPECT_TRUE(q.reduced.ok()) << q.reduced.str();
    EXPECT_TRUE(q.agree);
    for (Elem t0 : d.T())
      for (Elem t1 : d.T())
        for (Elem t2 : d.T()) EXPECT_EQ(rebuild_from_w4(d, w, t0, t1, t2), R);
  }
}

TEST(QTFunction, ConstantOne) {
  auto kp = make_kac_paljutkin();
  QTFunction one{std::vector<Cyclotomic>(4, Cyclotomic(1)), 2};
  QTReport bad = is_qt_function(kp, one);
  EXPECT_FALSE(bad.definition.ok());
  EXPECT_FALSE(bad.reduced.ok());
  EXPECT_THROW(rebuild_from_w4(kp, one, kp.T()[0], kp.T()[0], kp.T()[0]), std::invalid_argument);

  auto un = make_preset("K8n:n=1:untwisted").data;
  QTReport good = is_qt_function(un, one);
  EXPECT_TRUE(good.definition.ok());
  EXPECT_TRUE(good.reduced.ok());
  EXPECT_EQ(rebuild_from_w4(un, one, un.T()[0], un.T()[1], un.T()[0]), RMatrix::all_ones_nontrivial(un));
}

TEST(QTFunction, MutatedFunctionsRejectedByBothCriteria) {
  auto d = make_kac_paljutkin();
  for (const auto& R : kp_structures()) {
    QTFunction w = extract_w4(R);
    for (std::size_t i = 0; i < w.w.size(); ++i) {
      QTFunction m = w;
      m.w[i] = -m.w[i];
      QTReport q = is_qt_function(d, m);
      EXPECT_FALSE(q.definition.ok()) << i;
      EXPECT_TRUE(q.agree) << i;
    }
  }
}

TEST(QTFunction, RejectsAuxiliaryInS) {
  auto d = make_kac_paljutkin();
  auto w = extract_w4(kp_structures()[0]);
  EXPECT_THROW(rebuild_from_w4(d, w, d.S()[0], d.T()[0], d.T()[0]), std::invalid_argument);
  EXPECT_THROW(extract_w4(RMatrix::identity(d)), std::invalid_argument);
}

// l(f) l(h) = l(fh) and r(f) r(h) = r(hf) on dual basis elements.
TEST(LRMaps, MultiplicativityForValidR) {
  auto d = make_kac_paljutkin();
  for (const auto& R : kp_structures()) {
    HopfAlgebra H(d, R.order());
    TensorElement t = to_tensor(H, R);
    for (int i = 0; i < H.dim(); ++i)
      for (int j = 0; j < H.dim(); ++j) {
        DualElement f{{i, H.one()}}, h{{j, H.one()}};
        EXPECT_EQ(H.multiply(l_map(H, t, f), l_map(H, t, h)), l_map(H, t, H.dual_multiply(f, h))) << i << "," << j;
        EXPECT_EQ(H.multiply(r_map(H, t, f), r_map(H, t, h)), r_map(H, t, H.dual_multiply(h, f))) << i << "," << j;
      }
  }
}

TEST(LRMaps, RowsAndColumns) {
  auto d = make_kac_paljutkin();
  auto R = kp_structures()[1];
  HopfAlgebra H(d, R.order());
  TensorElement t = to_tensor(H, R);
  for (int k = 0; k < H.dim(); ++k) {
    TensorElement row(1, H.dim()), col(1, H.dim());
    for (const auto& [key, c] : t.terms()) {
      Slots s = t.unpack(key);
      if (s[0] == k) row.add({s[1], 0, 0}, c);
      if (s[1] == k) col.add({s[0], 0, 0}, c);
    }
    EXPECT_EQ(l_map(H, t, {{k, H.one()}}), row);
    EXPECT_EQ(r_map(H, t, {{k, H.one()}}), col);
  }
}

// Entry relations every non-trivial structure satisfies: counit normalization and
// the eta/tau twisting of w2, w3, w4 under the action.
TEST(EntryRelations, HoldOnEnumeratedStructures) {
  for (const char* name : {"kac-paljutkin", "A8n:n=1:paper", "K8n:n=2:kp"}) {
    auto d = make_preset(name).data;
    auto res = enumerate_all_nontrivial(d);
    ASSERT_FALSE(res.rmatrices.empty());
    const Elem one = d.group().identity();
    for (const auto& R : res.rmatrices) {
      EXPECT_TRUE(check_commutation_equations(d, R).ok()) << name;
      for (Elem s : d.S()) {
        EXPECT_TRUE(R.at1(d, one, s).is_one());
        EXPECT_TRUE(R.at1(d, s, one).is_one());
      }
      for (Elem t : d.T()) {
        EXPECT_TRUE(R.at2(d, one, t).is_one());
        EXPECT_TRUE(R.at3(d, t, one).is_one());
      }
    }
  }
}
