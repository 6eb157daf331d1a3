#include "whittaker/parabolic.hpp"

#include <algorithm>
#include <functional>

#include "whittaker/error.hpp"
#include "whittaker/linalg.hpp"

namespace whittaker {

std::vector<int> WhittakerCharacter::support() const {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (values[i] != 0) s.push_back(i);
  }
  return s;
}

bool WhittakerCharacter::non_singular() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v != 0; });
}

ZWeight& ZWeight::operator+=(const ZWeight& o) {
  if (coords.size() != o.coords.size()) throw Error(ErrorKind::DimensionMismatch, "z-weight sizes differ");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

ZWeight& ZWeight::operator-=(const ZWeight& o) {
  if (coords.size() != o.coords.size()) throw Error(ErrorKind::DimensionMismatch, "z-weight sizes differ");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

bool ParabolicData::in_support(int simple) const {
  return std::find(support.begin(), support.end(), simple) != support.end();
}

ZWeight restrict_to_centre(const RootSystem& rs, const ParabolicData& p, const RootVector& root) {
  ZWeight w;
  for (const auto& z : p.centre_basis) {
    Rational s = 0;
    for (int j = 0; j < rs.rank(); ++j) s += z[j] * rs.evaluate(root, j);
    w.coords.push_back(s);
  }
  return w;
}

ParabolicData levi_data(const RootSystem& rs, std::vector<int> support) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (int s : support) {
    if (s < 0 || s >= rs.rank()) throw Error(ErrorKind::NotSimpleRoot, "support index " + std::to_string(s));
  }
  ParabolicData p;
  p.support = support;
  for (int i = 0; i < rs.rank(); ++i) {
    if (!p.in_support(i)) p.non_support.push_back(i);
  }
  for (int k = 0; k < rs.num_positive(); ++k) {
    const auto& r = rs.positive_root(k);
    bool levi = true;
    for (int i : p.non_support) levi &= r[i] == 0;
    (levi ? p.levi_roots : p.m_roots).push_back(k);
  }

  std::vector<linalg::SparseRow> rows;
  for (int a : support) {
    linalg::SparseRow row;
    for (int j = 0; j < rs.rank(); ++j) {
      if (rs.cartan(j, a) != 0) row.emplace_back(j, Rational(rs.cartan(j, a)));
    }
    rows.push_back(std::move(row));
  }
  for (auto& v : linalg::nullspace(rows, rs.rank()).basis) p.centre_basis.push_back(linalg::primitive(std::move(v)));

  for (int b : p.non_support) {
    RootVector simple(rs.rank(), 0);
    simple[b] = 1;
    p.generators.push_back(restrict_to_centre(rs, p, simple));
  }
  // Independence of the generators: kernel of the centre_dim x |generators| matrix.
  std::vector<linalg::SparseRow> gen_rows(p.centre_dim());
  for (int k = 0; k < static_cast<int>(p.generators.size()); ++k) {
    for (int i = 0; i < p.centre_dim(); ++i) {
      if (p.generators[k].coords[i] != 0) gen_rows[i].emplace_back(k, p.generators[k].coords[i]);
    }
  }
  p.order_is_partial = linalg::nullspace(gen_rows, static_cast<int>(p.generators.size())).basis.empty();
  return p;
}

ParabolicData parabolic_data(const WhittakerCharacter& psi, const RootSystem& rs) {
  if (static_cast<int>(psi.values.size()) != rs.rank()) {
    throw Error(ErrorKind::DimensionMismatch, "character has " + std::to_string(psi.values.size()) +
                                                  " values for rank " + std::to_string(rs.rank()));
  }
  return levi_data(rs, psi.support());
}

bool zweight_leq(const ZWeight& eta, const ZWeight& mu, const ParabolicData& p) {
  const int c = p.centre_dim();
  if (static_cast<int>(eta.coords.size()) != c || static_cast<int>(mu.coords.size()) != c) {
    throw Error(ErrorKind::DimensionMismatch, "z-weights must have " + std::to_string(c) + " coordinates");
  }
  const ZWeight diff = mu - eta;
  const int g = static_cast<int>(p.generators.size());

  if (p.order_is_partial) {
    // Unique rational solution of Σ x_k ᾱ_k = μ - η, if any; columns x_0..x_{g-1}, t.
    std::vector<linalg::SparseRow> rows(c);
    for (int i = 0; i < c; ++i) {
      for (int k = 0; k < g; ++k) {
        if (p.generators[k].coords[i] != 0) rows[i].emplace_back(k, p.generators[k].coords[i]);
      }
      if (diff.coords[i] != 0) rows[i].emplace_back(g, -diff.coords[i]);
    }
    const auto ker = linalg::nullspace(rows, g + 1);
    for (const auto& v : ker.basis) {
      if (v[g] == 0) continue;
      for (int k = 0; k < g; ++k) {
        const Rational x = v[k] / v[g];
        if (!is_integer(x) || x < 0) return false;
      }
      return true;
    }
    return false;
  }

  // Dependent generators: bounded search over small coefficients.
  constexpr int kBound = 16;
  std::vector<int> x(g, 0);
  std::function<bool(int, ZWeight)> search = [&](int k, ZWeight rest) -> bool {
    if (k == g) {
      return std::all_of(rest.coords.begin(), rest.coords.end(), [](const Rational& r) { return r == 0; });
    }
    for (int n = 0; n <= kBound; ++n) {
      if (search(k + 1, rest)) return true;
      rest -= p.generators[k];
    }
    return false;
  };
  return search(0, diff);
}

}  // namespace whittaker
