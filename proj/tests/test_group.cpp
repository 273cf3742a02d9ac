#include <gtest/gtest.h>

#include "hopfz2/families.hpp"
#include "hopfz2/group.hpp"

using namespace hopfz2;

TEST(FiniteAbelianGroup, Arithmetic) {
  FiniteAbelianGroup G({4, 2});
  EXPECT_EQ(G.size(), 8);
  EXPECT_EQ(G.mul(G.index({3, 1}), G.index({1, 1})), G.identity());
  EXPECT_EQ(G.element(G.inv(G.index({1, 0}))), (GroupElement{3, 0}));
  EXPECT_EQ(G.order_of(G.index({1, 1})), 4);
  EXPECT_EQ(G.exponent(), 4);
}

TEST(FiniteAbelianGroup, EnumerationIsLexicographic) {
  FiniteAbelianGroup Z2({2});
  auto e = Z2.enumerate();
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(Z2.element(e[0]), (GroupElement{0}));
  EXPECT_EQ(Z2.element(e[1]), (GroupElement{1}));

  FiniteAbelianGroup G({3, 2});
  std::vector<GroupElement> expect{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  auto all = G.enumerate();
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(G.element(all[i]), expect[i]);
}

TEST(FiniteAbelianGroup, RejectsBadOrders) { EXPECT_THROW(FiniteAbelianGroup({0}), std::invalid_argument); }

TEST(Involution, Checks) {
  FiniteAbelianGroup G({4});
  EXPECT_FALSE(Involution(G, {{3}}).check(G).not_involution);
  EXPECT_TRUE(Involution(G, {{1}}).check(G).identity);
  // a -> a^2 is not an automorphism of Z_4
  EXPECT_TRUE(Involution(G, {{2}}).check(G).not_automorphism);
  FiniteAbelianGroup Z8({8});
  // a -> a^3 on Z_8 is an involution; a -> a^5 too; a -> a^7 is inversion
  for (int k : {3, 5, 7}) EXPECT_FALSE(Involution(Z8, {{k}}).check(Z8).not_involution) << k;
}

TEST(SplitFixed, K8) {
  auto fg = family_group(Family::K, 1);
  auto [S, T] = split_fixed(fg.G, fg.x);
  std::vector<Elem> expectS{fg.G.index({0, 0}), fg.G.index({0, 1})};
  std::vector<Elem> expectT{fg.G.index({1, 0}), fg.G.index({1, 1})};
  EXPECT_EQ(S, expectS);
  EXPECT_EQ(T, expectT);
}

TEST(SplitFixed, A8) {
  auto fg = family_group(Family::A, 1);
  auto [S, T] = split_fixed(fg.G, fg.x);
  EXPECT_EQ(S, (std::vector<Elem>{0, 2}));
  EXPECT_EQ(T, (std::vector<Elem>{1, 3}));
}

TEST(SplitFixed, SubgroupProperties) {
  for (int n = 1; n <= 4; ++n)
    for (Family f : {Family::K, Family::A}) {
      auto fg = family_group(f, n);
      auto [S, T] = split_fixed(fg.G, fg.x);
      EXPECT_EQ(S.size() + T.size(), static_cast<std::size_t>(fg.G.size()));
      EXPECT_EQ(S.front(), fg.G.identity());
      for (Elem a : S) {
        EXPECT_EQ(fg.x(fg.G.inv(a)), fg.G.inv(a));
        for (Elem b : S) EXPECT_EQ(fg.x(fg.G.mul(a, b)), fg.G.mul(a, b));
      }
      // T = T^{-1}
      for (Elem t : T) EXPECT_NE(fg.x(fg.G.inv(t)), fg.G.inv(t));
    }
}

TEST(FindB, Families) {
  for (int n = 1; n <= 3; ++n) {
    auto k = family_group(Family::K, n);
    auto bk = find_b(k.G, k.x);
    ASSERT_TRUE(bk.b.has_value());
    EXPECT_EQ(*bk.b, k.b);
    auto a = family_group(Family::A, n);
    auto ba = find_b(a.G, a.x);
    ASSERT_TRUE(ba.b.has_value());
    EXPECT_EQ(a.G.element(*ba.b), (GroupElement{2 * n}));
  }
}

TEST(FindB, PropertiesWhenPresent) {
  auto fg = family_group(Family::K, 3);
  auto b = *find_b(fg.G, fg.x).b;
  auto [S, T] = split_fixed(fg.G, fg.x);
  EXPECT_EQ(fg.G.mul(b, b), fg.G.identity());
  EXPECT_EQ(fg.x(b), b);
  for (Elem t : T) EXPECT_EQ(fg.x(t), fg.G.mul(t, b));
}

TEST(FindB, AbsentWithDiagnostic) {
  // Z_3 with inversion: |S| = 1, |T| = 2
  FiniteAbelianGroup G({3});
  auto r = find_b(G, Involution(G, {{2}}));
  EXPECT_FALSE(r.b.has_value());
  ASSERT_FALSE(r.failures.empty());
  EXPECT_EQ(r.failures[0].rfind("(i)", 0), 0u);
  // Z_2^3 swapping two generators and fixing the third: |S| = |T| = 4 and b = uv
  FiniteAbelianGroup H({2, 2, 2});
  auto s = find_b(H, Involution(H, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  ASSERT_TRUE(s.b.has_value());
  EXPECT_EQ(H.element(*s.b), (GroupElement{1, 1, 0}));
}

TEST(Presentation, PinnedFamilies) {
  for (int n = 1; n <= 3; ++n) {
    auto k = family_group(Family::K, n);
    Elem a2 = k.G.mul(k.a, k.a);
    auto P = derive_presentation(k.G, k.x, k.a, std::vector<Elem>{a2, k.b});
    EXPECT_EQ(P.a, k.a);
    EXPECT_EQ(P.m, (std::vector<int>{1 % n, 0}));  // s_1 = a^2 has order n
    EXPECT_EQ(P.p, (std::vector<int>{0, 1}));
    EXPECT_EQ(P.k, (std::vector<int>{n, 2}));

    auto a = family_group(Family::A, n);
    auto Q = derive_presentation(a.G, a.x, a.a, std::vector<Elem>{a.G.mul(a.a, a.a)});
    EXPECT_EQ(Q.m, (std::vector<int>{1}));
    EXPECT_EQ(Q.p, (std::vector<int>{n}));
    EXPECT_EQ(Q.k, (std::vector<int>{2 * n}));
  }
}

TEST(Presentation, DefaultReconstructsEveryElementOnce) {
  for (int n = 1; n <= 4; ++n)
    for (Family f : {Family::K, Family::A}) {
      auto fg = family_group(f, n);
      auto P = derive_presentation(fg.G, fg.x);
      std::vector<int> hits(fg.G.size(), 0);
      for (int w = 0; w < P.s_size(); ++w)
        for (int eps = 0; eps < 2; ++eps) {
          Elem g = P.word_elem[w];
          if (eps) g = fg.G.mul(g, P.a);
          ++hits[g];
        }
      for (int h : hits) EXPECT_EQ(h, 1);
      EXPECT_EQ(2 * P.s_size(), fg.G.size());
      EXPECT_EQ(P.word_elem[P.word_index(P.m)], fg.G.mul(P.a, P.a));
      Elem b = P.word_elem[P.word_index(P.p)];
      EXPECT_EQ(fg.G.mul(b, b), fg.G.identity());
      EXPECT_EQ(b, fg.b);
    }
}

TEST(Presentation, RejectsBadPins) {
  auto k = family_group(Family::K, 2);
  EXPECT_THROW(derive_presentation(k.G, k.x, k.G.identity()), std::invalid_argument);
  EXPECT_THROW(derive_presentation(k.G, k.x, k.a, std::vector<Elem>{k.b}), std::invalid_argument);
  EXPECT_THROW(derive_presentation(k.G, k.x, k.a, std::vector<Elem>{k.a}), std::invalid_argument);
}
