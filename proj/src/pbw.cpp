#include "whittaker/pbw.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include <json.hpp>

#include "whittaker/error.hpp"

namespace whittaker {

int degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

void accumulate(Terms& terms, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

UEAElement UEAElement::identity(RootSystemPtr rs) {
  UEAElement u(rs);
  u.terms_[Monomial(rs->dim(), 0)] = 1;
  return u;
}

UEAElement UEAElement::symbol(RootSystemPtr rs, Symbol s, const Rational& c) {
  UEAElement u(rs);
  Monomial m(rs->dim(), 0);
  m[s] = 1;
  accumulate(u.terms_, m, c);
  return u;
}

UEAElement UEAElement::from_lie(const LieElement& x) {
  UEAElement u(x.system());
  for (const auto& [s, c] : x.coefficients()) {
    Monomial m(x.system()->dim(), 0);
    m[s] = 1;
    accumulate(u.terms_, m, c);
  }
  return u;
}

int UEAElement::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, whittaker::degree(m));
  return d;
}

UEAElement& UEAElement::operator+=(const UEAElement& other) {
  if (!same_system(*rs_, *other.rs_)) throw Error(ErrorKind::MixedRootSystem, "adding elements of different algebras");
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& other) {
  if (!same_system(*rs_, *other.rs_)) throw Error(ErrorKind::MixedRootSystem, "subtracting elements of different algebras");
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  return *this;
}

UEAElement& UEAElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::size_t PbwAlgebra::KeyHash::operator()(const std::pair<Symbol, Monomial>& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.first) * 0x9e3779b97f4a7c15ULL;
  for (auto e : k.second) h = (h ^ e) * 0x100000001b3ULL;
  return h;
}

PbwAlgebra::PbwAlgebra(RootSystemPtr rs) : rs_(std::move(rs)) {}

Terms PbwAlgebra::left_multiply(Symbol x, const Monomial& m) const {
  Symbol first = 0;
  const Symbol d = static_cast<Symbol>(m.size());
  while (first < d && m[first] == 0) ++first;
  if (x <= first) {
    Monomial r = m;
    ++r[x];
    return Terms{{std::move(r), Rational(1)}};
  }

  auto key = std::make_pair(x, m);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  ++misses_;

  // x y t = y (x t) + [x, y] t, with y the leading letter of m.
  const Symbol y = first;
  Monomial tail = m;
  --tail[y];
  Terms out;
  for (const auto& [mono, c] : left_multiply(x, tail)) {
    for (const auto& [m2, c2] : left_multiply(y, mono)) accumulate(out, m2, c * c2);
  }
  for (const auto& [z, n] : rs_->bracket_symbols(x, y)) {
    for (const auto& [m2, c2] : left_multiply(z, tail)) accumulate(out, m2, c2 * n);
  }

  std::unique_lock lock(mutex_);
  memo_.emplace(std::move(key), out);
  return out;
}

Terms PbwAlgebra::left_multiply(Symbol x, const Terms& t) const {
  Terms out;
  for (const auto& [m, c] : t) {
    for (const auto& [m2, c2] : left_multiply(x, m)) accumulate(out, m2, c * c2);
  }
  return out;
}

UEAElement PbwAlgebra::multiply(const UEAElement& a, const UEAElement& b) const {
  if (!same_system(*a.system(), *b.system()) || !same_system(*a.system(), *rs_)) {
    throw Error(ErrorKind::MixedRootSystem, "multiply across different algebras");
  }
  UEAElement out(rs_);
  const int d = rs_->dim();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Terms current{{mb, Rational(1)}};
      for (Symbol s = d - 1; s >= 0; --s) {
        for (int k = 0; k < ma[s]; ++k) current = left_multiply(s, current);
      }
      const Rational c = ca * cb;
      for (const auto& [m, v] : current) accumulate(out.mutable_terms(), m, c * v);
    }
  }
  return out;
}

UEAElement PbwAlgebra::straighten(const std::vector<Symbol>& word, Association how) const {
  if (how == Association::RightToLeft) {
    Terms current{{unit(), Rational(1)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) current = left_multiply(*it, current);
    UEAElement out(rs_);
    out.mutable_terms() = std::move(current);
    return out;
  }
  UEAElement acc = UEAElement::identity(rs_);
  for (Symbol s : word) acc = multiply(acc, UEAElement::symbol(rs_, s));
  return acc;
}

UEAElement PbwAlgebra::casimir_sl2(int simple) const {
  if (simple < 0 || simple >= rs_->rank()) {
    throw Error(ErrorKind::NotSimpleRoot, "simple root index " + std::to_string(simple));
  }
  const auto e = UEAElement::symbol(rs_, rs_->e_symbol(simple));
  const auto f = UEAElement::symbol(rs_, rs_->f_symbol(simple));
  const auto h = UEAElement::symbol(rs_, rs_->h_symbol(simple));
  return multiply(e, f) + multiply(f, e) + Rational(1, 2) * multiply(h, h);
}

UEAElement PbwAlgebra::casimir_sl2(const RootVector& gamma) const {
  auto r = rs_->find_root(gamma);
  if (!r || rs_->simple_of(*r) < 0 || *r >= rs_->num_positive()) {
    throw Error(ErrorKind::NotSimpleRoot, "casimir requested for a non-simple root");
  }
  return casimir_sl2(rs_->simple_of(*r));
}

CacheStats PbwAlgebra::cache_stats() const {
  std::shared_lock lock(mutex_);
  return {memo_.size(), hits_.load(), misses_.load()};
}

void PbwAlgebra::clear_cache() {
  std::unique_lock lock(mutex_);
  memo_.clear();
}

namespace {

nlohmann::json sparse_monomial(const Monomial& m) {
  auto out = nlohmann::json::array();
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (m[s]) out.push_back({s, m[s]});
  }
  return out;
}

Monomial dense_monomial(const nlohmann::json& j, int dim) {
  Monomial m(dim, 0);
  for (const auto& pair : j) {
    const int s = pair.at(0).get<int>();
    if (s < 0 || s >= dim) throw std::out_of_range("symbol");
    m[s] = pair.at(1).get<std::uint16_t>();
  }
  return m;
}

}  // namespace

bool PbwAlgebra::load_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return false;
  try {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.at("schema_version").get<int>() != kCacheSchemaVersion) return false;
    if (doc.at("fingerprint").get<std::string>() != rs_->fingerprint()) return false;
    const int dim = rs_->dim();
    std::vector<std::pair<std::pair<Symbol, Monomial>, Terms>> loaded;
    for (const auto& e : doc.at("entries")) {
      const Symbol x = e.at("x").get<int>();
      if (x < 0 || x >= dim) return false;
      Terms t;
      for (const auto& term : e.at("r")) {
        accumulate(t, dense_monomial(term.at(0), dim), parse_rational(term.at(1).get<std::string>()));
      }
      loaded.emplace_back(std::make_pair(x, dense_monomial(e.at("m"), dim)), std::move(t));
    }
    std::unique_lock lock(mutex_);
    for (auto& [k, t] : loaded) memo_.emplace(std::move(k), std::move(t));
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void PbwAlgebra::save_cache(const std::filesystem::path& file) const {
  std::map<std::pair<Symbol, Monomial>, Terms> ordered;
  {
    std::shared_lock lock(mutex_);
    ordered.insert(memo_.begin(), memo_.end());
  }
  nlohmann::json doc;
  doc["schema_version"] = kCacheSchemaVersion;
  doc["fingerprint"] = rs_->fingerprint();
  auto entries = nlohmann::json::array();
  for (const auto& [k, t] : ordered) {
    auto r = nlohmann::json::array();
    for (const auto& [m, c] : t) r.push_back({sparse_monomial(m), format_rational(c)});
    entries.push_back({{"x", k.first}, {"m", sparse_monomial(k.second)}, {"r", std::move(r)}});
  }
  doc["entries"] = std::move(entries);

  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump() << '\n';
  }
  std::filesystem::rename(tmp, file);
}

UEAElement multiply(const PbwAlgebra& algebra, const UEAElement& a, const UEAElement& b) {
  return algebra.multiply(a, b);
}

UEAElement straighten(const PbwAlgebra& algebra, const std::vector<Symbol>& word, Association how) {
  return algebra.straighten(word, how);
}

}  // namespace whittaker
