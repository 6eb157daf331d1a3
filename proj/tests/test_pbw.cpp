#include <gtest/gtest.h>
#include <omp.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "random_elements.hpp"
#include "whittaker/error.hpp"
#include "whittaker/pbw.hpp"

using namespace whittaker;

namespace {

UEAElement from_words(const RootSystemPtr& rs, const std::map<oracle::Word, Rational>& words) {
  UEAElement u(rs);
  for (const auto& [w, c] : words) {
    Monomial m(rs->dim(), 0);
    for (int s : w) ++m[s];
    accumulate(u.mutable_terms(), m, c);
  }
  return u;
}

UEAElement oracle_product(const RootSystemPtr& rs, const std::vector<int>& word) {
  return from_words(rs, oracle::naive_straighten(*rs, {{word, Rational(1)}}));
}

UEAElement sym(const RootSystemPtr& rs, Symbol s) { return UEAElement::symbol(rs, s); }

// Top-degree homogeneous part.
Terms leading(const UEAElement& u) {
  Terms out;
  const int d = u.degree();
  for (const auto& [m, c] : u.terms()) {
    if (degree(m) == d) out[m] = c;
  }
  return out;
}

struct Sl2 {
  RootSystemPtr rs = build_root_system("A", 1);
  PbwAlgebra alg{rs};
  UEAElement e = sym(rs, rs->e_symbol(0));
  UEAElement f = sym(rs, rs->f_symbol(0));
  UEAElement h = sym(rs, rs->h_symbol(0));
};

}  // namespace

TEST(Pbw, Sl2Products) {
  Sl2 s;
  EXPECT_EQ(s.alg.multiply(s.e, s.f), s.alg.multiply(s.f, s.e) + s.h);
  // f e is already in normal form.
  EXPECT_EQ(s.alg.multiply(s.f, s.e).terms().size(), 1u);

  const auto f2 = s.alg.multiply(s.f, s.f);
  const auto ef2 = s.alg.multiply(s.e, f2);
  const auto expected = s.alg.multiply(f2, s.e) + Rational(2) * s.alg.multiply(s.f, s.h) - Rational(2) * s.f;
  EXPECT_EQ(ef2, expected);
  const Symbol e = s.rs->e_symbol(0), f = s.rs->f_symbol(0);
  EXPECT_EQ(ef2, oracle_product(s.rs, {e, f, f}));
}

TEST(Pbw, StraightenExamples) {
  Sl2 s;
  const Symbol e = s.rs->e_symbol(0), f = s.rs->f_symbol(0), h = s.rs->h_symbol(0);
  EXPECT_EQ(s.alg.straighten({e, f}), s.alg.multiply(s.f, s.e) + s.h);
  EXPECT_EQ(s.alg.straighten({h, f}), s.alg.multiply(s.f, s.h) - Rational(2) * s.f);

  auto a2 = build_root_system("A", 2);
  PbwAlgebra alg(a2);
  const Symbol e2 = a2->e_symbol(1), f12 = a2->f_symbol(2);
  const auto got = alg.straighten({e2, f12});
  EXPECT_EQ(got, oracle_product(a2, {e2, f12}));
  // e_{α2} f_{α1+α2} = f_{α1+α2} e_{α2} + N f_{α1}, N = ±1.
  Monomial lone(a2->dim(), 0);
  lone[a2->f_symbol(0)] = 1;
  ASSERT_TRUE(got.terms().count(lone));
  EXPECT_EQ(abs(got.terms().at(lone)), 1);
  EXPECT_EQ(got.terms().size(), 2u);
}

TEST(Pbw, AgreesWithNaiveRewritingOnRandomWords) {
  std::mt19937_64 rng(7);
  for (const char* t : {"A", "B", "G"}) {
    auto rs = build_root_system(t, 2);
    PbwAlgebra alg(rs);
    for (int trial = 0; trial < 60; ++trial) {
      const auto w = testgen::random_word(rng, rs->dim(), 5);
      const auto expected = oracle_product(rs, w);
      EXPECT_EQ(alg.straighten(w, Association::RightToLeft), expected);
      EXPECT_EQ(alg.straighten(w, Association::LeftToRight), expected);
    }
  }
}

TEST(Pbw, IdentityIsNeutral) {
  std::mt19937_64 rng(11);
  auto rs = build_root_system("A", 2);
  PbwAlgebra alg(rs);
  const auto one = UEAElement::identity(rs);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testgen::random_uea(rng, rs, 4);
    EXPECT_EQ(alg.multiply(one, x), x);
    EXPECT_EQ(alg.multiply(x, one), x);
  }
}

TEST(Pbw, Associativity) {
  std::mt19937_64 rng(2024);
  auto rs = build_root_system("A", 2);
  PbwAlgebra alg(rs);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testgen::random_uea(rng, rs, 4);
    const auto b = testgen::random_uea(rng, rs, 4);
    const auto c = testgen::random_uea(rng, rs, 4);
    ASSERT_EQ(alg.multiply(alg.multiply(a, b), c), alg.multiply(a, alg.multiply(b, c))) << "trial " << trial;
  }
}

TEST(Pbw, CommutatorMatchesBracket) {
  for (const auto& [t, r] : std::vector<std::pair<const char*, int>>{{"A", 1}, {"A", 2}, {"B", 2}, {"G", 2}, {"A", 3}}) {
    auto rs = build_root_system(t, r);
    PbwAlgebra alg(rs);
    for (Symbol x = 0; x < rs->dim(); ++x) {
      for (Symbol y = 0; y < rs->dim(); ++y) {
        const auto lhs = alg.multiply(sym(rs, x), sym(rs, y)) - alg.multiply(sym(rs, y), sym(rs, x));
        const auto br = bracket(LieElement::basis(rs, x), LieElement::basis(rs, y));
        ASSERT_EQ(lhs, UEAElement::from_lie(br)) << rs->label() << " " << x << " " << y;
      }
    }
  }
}

TEST(Pbw, DegreeFiltrationAndCommutativeSymbol) {
  std::mt19937_64 rng(99);
  auto rs = build_root_system("B", 2);
  PbwAlgebra alg(rs);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = testgen::random_uea(rng, rs, 3);
    const auto b = testgen::random_uea(rng, rs, 3);
    const auto ab = alg.multiply(a, b);
    const auto ba = alg.multiply(b, a);
    EXPECT_EQ(ab.degree(), a.degree() + b.degree());
    EXPECT_EQ(leading(ab), leading(ba));
  }
}

TEST(Pbw, CasimirNormalFormAndCentrality) {
  Sl2 s;
  const auto cas = s.alg.casimir_sl2(0);
  const auto expected = Rational(2) * s.alg.multiply(s.f, s.e) + s.h + Rational(1, 2) * s.alg.multiply(s.h, s.h);
  EXPECT_EQ(cas, expected);

  for (const auto& [t, r] : std::vector<std::pair<const char*, int>>{{"A", 1}, {"A", 2}, {"B", 2}, {"G", 2}, {"C", 3}}) {
    auto rs = build_root_system(t, r);
    PbwAlgebra alg(rs);
    for (int i = 0; i < rs->rank(); ++i) {
      const auto c = alg.casimir_sl2(i);
      for (Symbol x : {rs->e_symbol(i), rs->f_symbol(i), rs->h_symbol(i)}) {
        EXPECT_TRUE((alg.multiply(c, sym(rs, x)) - alg.multiply(sym(rs, x), c)).is_zero()) << rs->label();
      }
    }
  }
  EXPECT_THROW(s.alg.casimir_sl2(1), Error);
  auto a2 = build_root_system("A", 2);
  PbwAlgebra alg2(a2);
  EXPECT_THROW(alg2.casimir_sl2(RootVector{1, 1}), Error);
  EXPECT_NO_THROW(alg2.casimir_sl2(RootVector{0, 1}));
}

TEST(Pbw, MixedRootSystemRejected) {
  auto a2 = build_root_system("A", 2);
  auto b2 = build_root_system("B", 2);
  PbwAlgebra alg(a2);
  EXPECT_THROW(alg.multiply(UEAElement::identity(a2), UEAElement::identity(b2)), Error);
}

TEST(Pbw, CachePersistsAndRejectsStaleFingerprint) {
  const auto dir = std::filesystem::temp_directory_path() / "whittaker_pbw_cache_test";
  std::filesystem::remove_all(dir);
  auto rs = build_root_system("A", 2);
  const auto file = dir / "cache.json";

  std::mt19937_64 rng(5);
  std::vector<UEAElement> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(testgen::random_uea(rng, rs, 3));

  PbwAlgebra cold(rs);
  std::vector<UEAElement> expected;
  for (int i = 0; i + 1 < 10; ++i) expected.push_back(cold.multiply(xs[i], xs[i + 1]));
  ASSERT_GT(cold.cache_stats().entries, 0u);
  cold.save_cache(file);

  PbwAlgebra warm(rs);
  ASSERT_TRUE(warm.load_cache(file));
  EXPECT_EQ(warm.cache_stats().entries, cold.cache_stats().entries);
  for (int i = 0; i + 1 < 10; ++i) EXPECT_EQ(warm.multiply(xs[i], xs[i + 1]), expected[i]);
  EXPECT_EQ(warm.cache_stats().misses, 0u);

  PbwAlgebra other(build_root_system("B", 2));
  EXPECT_FALSE(other.load_cache(file));
  EXPECT_EQ(other.cache_stats().entries, 0u);

  {
    std::ofstream junk(dir / "junk.json");
    junk << "{not json";
  }
  EXPECT_FALSE(warm.load_cache(dir / "junk.json"));
  EXPECT_FALSE(warm.load_cache(dir / "missing.json"));
  std::filesystem::remove_all(dir);
}

TEST(Pbw, ConcurrentUseMatchesSerial) {
  auto rs = build_root_system("A", 3);
  std::mt19937_64 rng(17);
  std::vector<UEAElement> xs;
  for (int i = 0; i < 24; ++i) xs.push_back(testgen::random_uea(rng, rs, 3));

  PbwAlgebra serial(rs);
  std::vector<UEAElement> expected;
  for (int i = 0; i + 1 < 24; ++i) expected.push_back(serial.multiply(xs[i], xs[i + 1]));

  PbwAlgebra shared(rs);
  std::vector<UEAElement> got(expected.size(), UEAElement(rs));
#pragma omp parallel for schedule(dynamic) num_threads(4)
  for (int i = 0; i < static_cast<int>(expected.size()); ++i) got[i] = shared.multiply(xs[i], xs[i + 1]);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(got[i], expected[i]);
}
