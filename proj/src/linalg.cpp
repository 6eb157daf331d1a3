#include "whittaker/linalg.hpp"

#include <algorithm>
#include <map>

namespace whittaker::linalg {

namespace {

using IntRow = std::vector<std::pair<int, Integer>>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  const bool flip = row.front().second < 0;
  if (g == 1 && !flip) return;
  if (flip) g = -g;
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_integer_row(const SparseRow& row) {
  Integer l = 1;
  for (const auto& [c, v] : row) {
    if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (v == 0) continue;
    Integer n = v.get_num() * (l / v.get_den());
    out.emplace_back(c, std::move(n));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  make_primitive(out);
  return out;
}

// ka * a - kb * b
IntRow combine(const IntRow& a, const Integer& ka, const IntRow& b, const Integer& kb) {
  IntRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, ka * a[i].second);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -kb * b[j].second);
      ++j;
    } else {
      Integer v = ka * a[i].second - kb * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Integer* entry(const IntRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& p, int c) { return p.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

// Eliminates `col` from `target` using `pivot`, whose leading column is col.
void eliminate(IntRow& target, const IntRow& pivot, const Integer& value) {
  const Integer& lead = pivot.front().second;
  Integer g;
  mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), value.get_mpz_t());
  target = combine(target, lead / g, pivot, value / g);
  make_primitive(target);
}

}  // namespace

Kernel nullspace(std::span<const SparseRow> rows, int ncols) {
  std::map<int, IntRow> pivots;
  for (const auto& input : rows) {
    IntRow row = to_integer_row(input);
    while (!row.empty()) {
      const int lead = row.front().first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(row));
        break;
      }
      const Integer value = row.front().second;
      eliminate(row, it->second, value);
    }
  }

  // Back-substitution to reduced echelon form, last pivot first.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const int col = it->first;
    for (auto& [other_col, other] : pivots) {
      if (other_col >= col) break;
      if (const Integer* v = entry(other, col)) {
        const Integer value = *v;
        eliminate(other, it->second, value);
      }
    }
  }

  Kernel k;
  k.rank = static_cast<int>(pivots.size());
  for (const auto& [c, row] : pivots) k.pivots.push_back(c);
  for (int j = 0; j < ncols; ++j) {
    if (pivots.count(j)) continue;
    std::vector<Rational> v(ncols, 0);
    v[j] = 1;
    for (const auto& [c, row] : pivots) {
      if (const Integer* x = entry(row, j)) {
        v[c] = Rational(-*x, row.front().second);
        v[c].canonicalize();
      }
    }
    k.basis.push_back(std::move(v));
  }
  return k;
}

std::vector<Rational> primitive(std::vector<Rational> v) {
  Integer l = 1;
  for (const auto& x : v) {
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  Integer g = 0;
  for (auto& x : v) {
    x *= l;
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g == 0) return v;
  for (const auto& x : v) {
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  }
  for (auto& x : v) {
    x /= g;
    x.canonicalize();
  }
  return v;
}

Kernel nullspace_dense(const std::vector<std::vector<Rational>>& rows, int ncols) {
  std::vector<SparseRow> sparse;
  sparse.reserve(rows.size());
  for (const auto& r : rows) {
    SparseRow s;
    for (int j = 0; j < ncols; ++j) {
      if (r[j] != 0) s.emplace_back(j, r[j]);
    }
    sparse.push_back(std::move(s));
  }
  return nullspace(sparse, ncols);
}

}  // namespace whittaker::linalg
