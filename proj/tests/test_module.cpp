#include <gtest/gtest.h>

#include <omp.h>

#include <random>

#include "oracles.hpp"
#include "random_elements.hpp"
#include "whittaker/error.hpp"
#include "whittaker/module.hpp"

using namespace whittaker;

namespace {

PbwAlgebraPtr algebra(const char* type, int rank) {
  return std::make_shared<PbwAlgebra>(build_root_system(type, rank));
}

ModuleDescriptor verma(std::vector<Rational> lambda) {
  ModuleDescriptor d;
  d.family = Family::Verma;
  d.lambda = std::move(lambda);
  return d;
}

ModuleDescriptor mcdowell(std::vector<Rational> psi, std::vector<Rational> omega, std::vector<Rational> casimir) {
  ModuleDescriptor d;
  d.family = Family::McDowell;
  d.psi = std::move(psi);
  d.omega = std::move(omega);
  d.casimir = std::move(casimir);
  return d;
}

ModuleDescriptor universal(Rational eta, Rational c) {
  ModuleDescriptor d;
  d.family = Family::UniversalSl2;
  d.psi = {eta};
  d.casimir = {c};
  return d;
}

ModuleDescriptor direct_sum(std::vector<ModuleDescriptor> parts) {
  ModuleDescriptor d;
  d.family = Family::DirectSum;
  d.summands = std::move(parts);
  return d;
}

ModuleElement single(const ModuleMonomial& m, const Rational& c = 1) {
  ModuleElement w;
  w.add(m, c);
  return w;
}

ModuleMonomial sl2_f(const ModulePresentation& p, int k) {
  auto m = p.cyclic_monomial();
  m.mbar[0] = static_cast<std::uint16_t>(k);
  return m;
}

ModuleMonomial factor(const ModulePresentation& p, int a, int eps) {
  auto m = p.cyclic_monomial();
  m.a[0] = static_cast<std::uint16_t>(a);
  m.eps[0] = static_cast<std::uint8_t>(eps);
  return m;
}

struct Family_ {
  const char* name;
  PbwAlgebraPtr pbw;
  ModuleDescriptor desc;
};

std::vector<Family_> module_zoo() {
  return {
      {"verma_A1", algebra("A", 1), verma({Rational(3, 2)})},
      {"verma_A2", algebra("A", 2), verma({1, -2})},
      {"mcdowell_A2", algebra("A", 2), mcdowell({1, 0}, {Rational(1, 3)}, {2})},
      {"mcdowell_A3", algebra("A", 3), mcdowell({1, 0, -2}, {Rational(5, 2)}, {1, Rational(-1, 2)})},
      {"mcdowell_B2", algebra("B", 2), mcdowell({0, 3}, {2}, {Rational(7, 4)})},
      {"mcdowell_G2", algebra("G", 2), mcdowell({1, 0}, {-1}, {3})},
      {"mcdowell_A1", algebra("A", 1), mcdowell({2}, {}, {Rational(1, 5)})},
      {"universal", algebra("A", 1), universal(1, Rational(17, 3))},
      {"universal_eta0", algebra("A", 1), universal(0, 2)},
      {"direct_sum", algebra("A", 1), direct_sum({verma({-1}), verma({2})})},
  };
}

}  // namespace

TEST(Module, VermaMatchesClosedForm) {
  auto pbw = algebra("A", 1);
  const Symbol e = pbw->roots().e_symbol(0);
  for (Rational lambda : {Rational(1), Rational(2), Rational(-1), Rational(1, 2), Rational(-3, 2)}) {
    auto p = build_module(verma({lambda}), pbw);
    for (int k = 0; k <= 9; ++k) {
      ModuleElement expected;
      if (k > 0) expected.add(sl2_f(*p, k - 1), oracle::verma_e_coefficient(lambda, k));
      EXPECT_EQ(p->act(e, single(sl2_f(*p, k))), expected) << "λ=" << lambda << " k=" << k;
    }
  }
}

TEST(Module, WorkedExamples) {
  auto a1 = algebra("A", 1);
  const auto& rs = a1->roots();
  auto v1 = build_module(verma({1}), a1);
  EXPECT_TRUE(v1->act(rs.e_symbol(0), single(sl2_f(*v1, 2))).is_zero());
  EXPECT_EQ(v1->act(rs.f_symbol(0), single(sl2_f(*v1, 1))), single(sl2_f(*v1, 2)));
  EXPECT_EQ(v1->act(rs.h_symbol(0), v1->cyclic_vector()), v1->cyclic_vector());

  const Rational c(5, 7);
  auto u = build_module(universal(1, c), a1);
  ModuleElement expected;
  expected.add(factor(*u, 0, 0), 2 * c);
  expected.add(factor(*u, 0, 1), -2);
  expected.add(factor(*u, 1, 0), -4);
  EXPECT_EQ(u->act(rs.h_symbol(0), single(factor(*u, 0, 1))), expected);
  EXPECT_EQ(u->act(rs.e_symbol(0), u->cyclic_vector()), u->cyclic_vector());
}

TEST(Module, CasimirActsByItsScalarOnUniversal) {
  auto a1 = algebra("A", 1);
  const auto cas = a1->casimir_sl2(0);
  for (Rational eta : {Rational(1), Rational(0), Rational(-2, 3)}) {
    for (Rational c : {Rational(0), Rational(1, 2), Rational(17, 3)}) {
      auto u = build_module(universal(eta, c), a1);
      for (int a = 0; a <= 6; ++a) {
        for (int e = 0; e <= 1; ++e) {
          EXPECT_EQ(u->act(cas, single(factor(*u, a, e))), single(factor(*u, a, e), c));
        }
      }
    }
  }
}

TEST(Module, CyclicVectorRelations) {
  auto a3 = algebra("A", 3);
  const auto& rs = a3->roots();
  auto p = build_module(mcdowell({1, 0, -2}, {Rational(5, 2)}, {1, Rational(-1, 2)}), a3);
  const auto& s = p->summand(0);
  const auto v = p->cyclic_vector();
  for (int k : s.parabolic.m_roots) EXPECT_TRUE(p->act(rs.e_symbol(k), v).is_zero()) << rs.root_name(k);
  for (int i : s.parabolic.support) {
    EXPECT_EQ(p->act(rs.e_symbol(i), v), p->character().values[i] * v);
  }
  for (int k = 0; k < s.parabolic.centre_dim(); ++k) {
    LieElement z(a3->system());
    for (int j = 0; j < rs.rank(); ++j) z.add(rs.h_symbol(j), s.parabolic.centre_basis[k][j]);
    EXPECT_EQ(p->act(z, v), s.central.centre_weight[k] * v);
  }
  // Cas_α acts on Y by c_α.
  for (std::size_t j = 0; j < s.factors.size(); ++j) {
    const auto cas = a3->casimir_sl2(s.factors[j]);
    std::mt19937_64 rng(j);
    for (int t = 0; t < 10; ++t) {
      auto m = p->cyclic_monomial();
      for (auto& a : m.a) a = static_cast<std::uint16_t>(rng() % 4);
      for (auto& e : m.eps) e = static_cast<std::uint8_t>(rng() % 2);
      EXPECT_EQ(p->act(cas, single(m)), single(m, s.central.casimir_scalars[j]));
    }
  }
}

TEST(Module, ModuleAxiomOnRandomTriples) {
  for (const auto& fam : module_zoo()) {
    auto p = build_module(fam.desc, fam.pbw);
    std::mt19937_64 rng(std::hash<std::string>{}(fam.name) % 1000);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = testgen::random_uea(rng, fam.pbw->system(), 3);
      const auto b = testgen::random_uea(rng, fam.pbw->system(), 3);
      const auto w = testgen::random_module_element(rng, *p);
      ASSERT_EQ(p->act(fam.pbw->multiply(a, b), w), p->act(a, p->act(b, w))) << fam.name << " trial " << trial;
    }
  }
}

TEST(Module, ConfluenceOfRewriteOrders) {
  // Letter-by-letter action against the action of the straightened word.
  for (const auto& fam : module_zoo()) {
    auto p = build_module(fam.desc, fam.pbw);
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
      const auto word = testgen::random_word(rng, fam.pbw->roots().dim(), 4);
      const auto w = testgen::random_module_element(rng, *p);
      ModuleElement direct = w;
      for (auto it = word.rbegin(); it != word.rend(); ++it) direct = p->act(*it, direct);
      EXPECT_EQ(p->act(fam.pbw->straighten(word, Association::RightToLeft), w), direct) << fam.name;
      EXPECT_EQ(p->act(fam.pbw->straighten(word, Association::LeftToRight), w), direct) << fam.name;
    }
  }
}

TEST(Module, ZWeights) {
  auto a2 = algebra("A", 2);
  auto p = build_module(mcdowell({1, 0}, {Rational(1, 2)}, {3}), a2);
  const ZWeight omega{{Rational(1, 2)}};
  auto v = p->cyclic_monomial();
  EXPECT_EQ(p->z_weight_of(v), omega);
  auto f2 = v;
  f2.mbar[0] = 1;  // f_{α2}
  EXPECT_EQ(p->z_weight_of(f2), omega - ZWeight{{3}});
  auto fh = v;
  fh.a[0] = 1;
  fh.eps[0] = 1;
  EXPECT_EQ(p->z_weight_of(fh), omega);

  auto u = build_module(universal(1, 0), algebra("A", 1));
  EXPECT_THROW(u->z_weight_of(u->cyclic_monomial()), Error);
  try {
    u->z_weight_of(u->cyclic_monomial());
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGraded);
  }
}

TEST(Module, GradingShift) {
  for (const auto& fam : module_zoo()) {
    auto p = build_module(fam.desc, fam.pbw);
    const auto& rs = fam.pbw->roots();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const auto m = testgen::random_module_monomial(rng, *p);
      const auto& s = p->summand(m.summand);
      if (!s.graded) continue;
      const ZWeight mu = p->z_weight_of(m);
      for (Symbol x = 0; x < rs.dim(); ++x) {
        ZWeight shift{std::vector<Rational>(s.parabolic.centre_dim(), 0)};
        if (!rs.is_h(x)) {
          shift = restrict_to_centre(rs, s.parabolic, rs.positive_root(rs.symbol_index(x)));
          if (rs.is_f(x)) shift = ZWeight{std::vector<Rational>(shift.coords.size(), 0)} - shift;
        }
        for (const auto& [r, c] : p->act_symbol(x, m).terms) {
          EXPECT_EQ(p->z_weight_of(r), mu + shift) << fam.name << " " << rs.symbol_name(x);
        }
      }
    }
  }
}

TEST(Module, BulletOperation) {
  auto a1 = algebra("A", 1);
  const auto& rs = a1->roots();
  auto p = build_module(verma({2}), a1);
  const auto e = LieElement::basis(a1->system(), rs.e_symbol(0));
  EXPECT_EQ(p->bullet_depth(p->cyclic_vector(), 5), 0);
  EXPECT_EQ(p->bullet_depth(single(sl2_f(*p, 1)), 5), 1);
  EXPECT_EQ(p->bullet_depth(single(sl2_f(*p, 3)), 5), 0);
  EXPECT_EQ(p->bullet_depth(single(sl2_f(*p, 5)), 0), std::nullopt);
  const auto w = single(sl2_f(*p, 2), Rational(2, 3));
  EXPECT_EQ(p->bullet(e, w), p->act(e, w));

  auto u = build_module(universal(3, 1), a1);
  EXPECT_TRUE(u->bullet(e, u->cyclic_vector()).is_zero());
  EXPECT_EQ(u->bullet_depth(single(factor(*u, 1, 0)), 4), 2);
  try {
    p->bullet(LieElement::basis(a1->system(), rs.h_symbol(0)), w);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotInNilradical);
  }
}

TEST(Module, InvalidDescriptors) {
  auto a2 = algebra("A", 2);
  auto kind_of = [&](const ModuleDescriptor& d, PbwAlgebraPtr pbw) {
    try {
      build_module(d, pbw);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidConfig;
  };
  EXPECT_EQ(kind_of(mcdowell({1, 1}, {}, {0, 0}), a2), ErrorKind::NonOrthogonalSupport);
  EXPECT_EQ(kind_of(mcdowell({1, 0}, {}, {0}), a2), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of(mcdowell({1, 0}, {1}, {}), a2), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of(verma({1}), a2), ErrorKind::InvalidParams);
  auto bad_verma = verma({1, 1});
  bad_verma.psi = {1, 0};
  EXPECT_EQ(kind_of(bad_verma, a2), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of(universal(1, 0), a2), ErrorKind::InvalidParams);
  auto a1 = algebra("A", 1);
  EXPECT_EQ(kind_of(direct_sum({verma({1}), universal(1, 0)}), a1), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of(direct_sum({}), a1), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of(direct_sum({direct_sum({verma({1})})}), a1), ErrorKind::InvalidParams);
  // Zero character with zero central data is legal.
  EXPECT_NO_THROW(build_module(mcdowell({0, 0}, {0, 0}, {}), a2));
}

TEST(Module, KnownLengths) {
  auto a1 = build_root_system("A", 1);
  auto a2 = build_root_system("A", 2);
  EXPECT_EQ(known_length(verma({0}), *a1), 2);
  EXPECT_EQ(known_length(verma({3}), *a1), 2);
  EXPECT_EQ(known_length(verma({-1}), *a1), 1);
  EXPECT_EQ(known_length(verma({Rational(1, 2)}), *a1), 1);
  EXPECT_EQ(known_length(universal(1, 4), *a1), 1);
  EXPECT_EQ(known_length(universal(0, 4), *a1), std::nullopt);
  EXPECT_EQ(known_length(direct_sum({verma({-1}), verma({1}), universal(0, 0)}), *a1), std::nullopt);
  EXPECT_EQ(known_length(direct_sum({verma({-1}), verma({Rational(-1, 2)}), verma({-3})}), *a1), 3);
  EXPECT_EQ(known_length(mcdowell({1, 0}, {0}, {0}), *a2), std::nullopt);
}

TEST(Module, ConcurrentActionMatchesSerial) {
  auto a2 = algebra("A", 2);
  auto serial = build_module(mcdowell({1, 0}, {2}, {Rational(1, 3)}), a2);
  auto parallel = build_module(mcdowell({1, 0}, {2}, {Rational(1, 3)}), a2);
  std::mt19937_64 rng(9);
  std::vector<ModuleElement> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(testgen::random_module_element(rng, *serial, 3, 3));
  const Symbol e2 = a2->roots().e_symbol(1);
  std::vector<ModuleElement> expected, got(inputs.size());
  for (const auto& w : inputs) expected.push_back(serial->act(e2, w));
#pragma omp parallel for num_threads(4) schedule(dynamic)
  for (int i = 0; i < static_cast<int>(inputs.size()); ++i) got[i] = parallel->act(e2, inputs[i]);
  EXPECT_EQ(got, expected);
}
