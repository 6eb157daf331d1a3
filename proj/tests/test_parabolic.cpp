#include <gtest/gtest.h>

#include <algorithm>

#include "whittaker/error.hpp"
#include "whittaker/parabolic.hpp"

using namespace whittaker;

namespace {

ZWeight zw(std::initializer_list<Rational> c) { return ZWeight{std::vector<Rational>(c)}; }

}  // namespace

TEST(Parabolic, ZeroCharacterGivesCartanLevi) {
  auto a2 = build_root_system("A", 2);
  const auto p = parabolic_data(WhittakerCharacter::zero(2), *a2);
  EXPECT_TRUE(p.support.empty());
  EXPECT_TRUE(p.levi_roots.empty());
  EXPECT_EQ(p.m_roots, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(p.centre_dim(), 2);
  EXPECT_EQ(p.levi_dim(2), 2);
}

TEST(Parabolic, Sl3SingularSupport) {
  auto a2 = build_root_system("A", 2);
  const auto p = parabolic_data({{Rational(1), Rational(0)}}, *a2);
  EXPECT_EQ(p.support, (std::vector<int>{0}));
  EXPECT_EQ(p.levi_roots, (std::vector<int>{0}));
  EXPECT_EQ(p.m_roots, (std::vector<int>{1, 2}));
  // α1(a h1 + b h2) = 2a - b = 0.
  ASSERT_EQ(p.centre_dim(), 1);
  EXPECT_EQ(p.centre_basis[0], (std::vector<Rational>{1, 2}));
  // ᾱ2 = α2(h1 + 2 h2) = -1 + 4.
  ASSERT_EQ(p.generators.size(), 1u);
  EXPECT_EQ(p.generators[0], zw({3}));
  EXPECT_TRUE(p.order_is_partial);
}

TEST(Parabolic, NonSingularSl2) {
  auto a1 = build_root_system("A", 1);
  const auto p = parabolic_data({{Rational(1)}}, *a1);
  EXPECT_EQ(p.support, (std::vector<int>{0}));
  EXPECT_TRUE(p.m_roots.empty());
  EXPECT_EQ(p.centre_dim(), 0);
  EXPECT_EQ(p.levi_dim(1), 3);
}

TEST(Parabolic, StructuralInvariants) {
  struct Case {
    const char* type;
    int rank;
    std::vector<int> support;
  };
  const std::vector<Case> cases = {{"A", 2, {}},   {"A", 2, {1}},  {"A", 3, {0, 2}}, {"B", 2, {0}}, {"B", 2, {1}},
                                   {"G", 2, {0}},  {"C", 3, {0}},  {"A", 3, {1}},    {"B", 3, {0, 2}}, {"D", 4, {0, 2, 3}}};
  for (const auto& c : cases) {
    auto rs = build_root_system(c.type, c.rank);
    const auto p = levi_data(*rs, c.support);
    // dim g = |m̄| + dim l + |m|.
    EXPECT_EQ(2 * static_cast<int>(p.m_roots.size()) + p.levi_dim(c.rank), rs->dim());
    EXPECT_EQ(p.centre_dim(), c.rank - static_cast<int>(c.support.size()));
    for (int a : p.support) {
      RootVector simple(c.rank, 0);
      simple[a] = 1;
      for (auto x : restrict_to_centre(*rs, p, simple).coords) EXPECT_EQ(x, 0);
    }
    // [l, m] ⊆ m: brackets of Levi root vectors and h with m root vectors stay in m.
    std::vector<Symbol> levi;
    for (int i = 0; i < c.rank; ++i) levi.push_back(rs->h_symbol(i));
    for (int k : p.levi_roots) {
      levi.push_back(rs->e_symbol(k));
      levi.push_back(rs->f_symbol(k));
    }
    for (Symbol x : levi) {
      for (int k : p.m_roots) {
        for (const auto& [s, n] : rs->bracket_symbols(x, rs->e_symbol(k))) {
          ASSERT_TRUE(rs->is_e(s));
          const int idx = rs->symbol_index(s);
          EXPECT_NE(std::find(p.m_roots.begin(), p.m_roots.end(), idx), p.m_roots.end()) << rs->label();
        }
      }
    }
    EXPECT_TRUE(p.order_is_partial);
  }
}

TEST(Parabolic, ZWeightOrder) {
  auto a2 = build_root_system("A", 2);
  const auto p = parabolic_data({{Rational(1), Rational(0)}}, *a2);
  const auto mu = zw({Rational(7, 2)});
  EXPECT_TRUE(zweight_leq(mu, mu, p));
  EXPECT_TRUE(zweight_leq(mu - zw({3}), mu, p));
  EXPECT_TRUE(zweight_leq(mu - zw({12}), mu, p));
  EXPECT_FALSE(zweight_leq(mu - zw({1}), mu, p));
  EXPECT_FALSE(zweight_leq(mu + zw({3}), mu, p));
  EXPECT_FALSE(zweight_leq(mu - zw({Rational(3, 2)}), mu, p));
  EXPECT_THROW(zweight_leq(zw({1, 2}), mu, p), Error);

  // Verma case: z = h, generators α1, α2 restricted to h = Cartan columns.
  const auto v = parabolic_data(WhittakerCharacter::zero(2), *a2);
  const auto lam = zw({2, 5});
  EXPECT_TRUE(zweight_leq(lam - zw({2, -1}), lam, v));   // λ - α1
  EXPECT_TRUE(zweight_leq(lam - zw({1, 1}), lam, v));    // λ - α1 - α2
  EXPECT_FALSE(zweight_leq(lam - zw({1, 0}), lam, v));   // not in the root lattice cone
  EXPECT_FALSE(zweight_leq(lam + zw({2, -1}), lam, v));  // λ + α1
}

TEST(Parabolic, ZWeightOrderIsAntisymmetricOnSupportedInstances) {
  auto a3 = build_root_system("A", 3);
  const auto p = levi_data(*a3, {1});
  ASSERT_EQ(p.centre_dim(), 2);
  const std::vector<ZWeight> samples = {zw({0, 0}), p.generators[0], p.generators[1], p.generators[0] + p.generators[1],
                                        zw({1, 0}), zw({Rational(1, 2), 3})};
  for (const auto& a : samples) {
    for (const auto& b : samples) {
      if (zweight_leq(a, b, p) && zweight_leq(b, a, p)) EXPECT_EQ(a, b);
    }
  }
}
