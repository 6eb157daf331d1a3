#include "whittaker/root_system.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "whittaker/error.hpp"

namespace whittaker {

namespace {

RootVector negate(RootVector v) {
  for (auto& c : v) c = -c;
  return v;
}

RootVector add(const RootVector& a, const RootVector& b, int scale = 1) {
  RootVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + scale * b[i];
  return out;
}

bool is_positive(const RootVector& v) {
  return std::any_of(v.begin(), v.end(), [](int c) { return c > 0; });
}

int height_of(const RootVector& v) {
  int h = 0;
  for (int c : v) h += c;
  return h;
}

// Height first, then larger leading coordinates first. This is a lex order
// on (ht, -c_1, ..., -c_n), hence compatible with addition.
bool root_less(const RootVector& a, const RootVector& b) {
  const int ha = height_of(a), hb = height_of(b);
  if (ha != hb) return ha < hb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

char type_letter(RootType type) {
  switch (type) {
    case RootType::A: return 'A';
    case RootType::B: return 'B';
    case RootType::C: return 'C';
    case RootType::D: return 'D';
    case RootType::G: return 'G';
  }
  return '?';
}

RootType parse_root_type(std::string_view letter) {
  if (letter == "A") return RootType::A;
  if (letter == "B") return RootType::B;
  if (letter == "C") return RootType::C;
  if (letter == "D") return RootType::D;
  if (letter == "G") return RootType::G;
  throw Error(ErrorKind::UnsupportedType, "root system type '" + std::string(letter) + "'");
}

std::string RootSystem::label() const { return std::string(1, type_letter(type_)) + std::to_string(rank_); }

int RootSystem::height(int k) const { return height_of(positive_[k]); }

int RootSystem::simple_of(int k) const { return k < rank_ ? k : -1; }

RootVector RootSystem::root(int r) const {
  const int p = num_positive();
  return r < p ? positive_[r] : negate(positive_[r - p]);
}

std::optional<int> RootSystem::find_root(const RootVector& v) const {
  if (static_cast<int>(v.size()) != rank_) return std::nullopt;
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::inner_product(const RootVector& a, const RootVector& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += a[i] * b[j] * lengths_[i] * cartan_[i][j];
  }
  return s;
}

int RootSystem::evaluate(const RootVector& beta, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += beta[j] * cartan_[i][j];
  return s;
}

int RootSystem::pairing(const RootVector& beta, const RootVector& alpha) const {
  return 2 * inner_product(beta, alpha) / inner_product(alpha, alpha);
}

std::vector<int> RootSystem::coroot(const RootVector& alpha) const {
  const int half = inner_product(alpha, alpha) / 2;
  std::vector<int> out(rank_);
  for (int j = 0; j < rank_; ++j) out[j] = alpha[j] * lengths_[j] / half;
  return out;
}

int RootSystem::structure_constant(int a, int b) const {
  auto it = constants_.find({a, b});
  return it == constants_.end() ? 0 : it->second;
}

int RootSystem::symbol_index(Symbol s) const {
  const int p = num_positive();
  if (s < p) return s;
  if (s < p + rank_) return s - p;
  return s - p - rank_;
}

int RootSystem::symbol_root(Symbol s) const {
  const int p = num_positive();
  if (is_e(s)) return s - p - rank_;
  if (is_f(s)) return s + p;
  throw Error(ErrorKind::InvalidParams, "symbol " + std::to_string(s) + " is not a root vector");
}

Symbol RootSystem::root_symbol(int r) const {
  const int p = num_positive();
  return r < p ? e_symbol(r) : f_symbol(r - p);
}

std::string RootSystem::root_name(int k) const {
  if (simple_of(k) >= 0) return std::to_string(k + 1);
  std::string s = "(";
  for (int i = 0; i < rank_; ++i) {
    if (i) s += ",";
    s += std::to_string(positive_[k][i]);
  }
  return s + ")";
}

std::string RootSystem::symbol_name(Symbol s) const {
  if (is_h(s)) return "h" + std::to_string(symbol_index(s) + 1);
  return (is_f(s) ? "f" : "e") + root_name(symbol_index(s));
}

void RootSystem::enumerate_roots() {
  std::vector<RootVector> roots;
  std::map<RootVector, bool> known;
  for (int i = 0; i < rank_; ++i) {
    RootVector v(rank_, 0);
    v[i] = 1;
    roots.push_back(v);
    known[v] = true;
  }
  // Roots of height h+1 are exactly the β + α_i with q > 0, β of height h.
  std::size_t begin = 0;
  while (begin < roots.size()) {
    const std::size_t end = roots.size();
    for (std::size_t k = begin; k < end; ++k) {
      const RootVector beta = roots[k];
      for (int i = 0; i < rank_; ++i) {
        RootVector alpha(rank_, 0);
        alpha[i] = 1;
        if (beta == alpha) continue;
        int p = 0;
        while (known.count(add(beta, alpha, -(p + 1)))) ++p;
        const int q = p - evaluate(beta, i);
        if (q <= 0) continue;
        RootVector next = add(beta, alpha);
        if (!known.count(next)) {
          known[next] = true;
          roots.push_back(next);
        }
      }
    }
    begin = end;
  }
  std::sort(roots.begin(), roots.end(), root_less);
  positive_ = roots;
  const int p = num_positive();
  for (int k = 0; k < p; ++k) {
    index_[positive_[k]] = k;
    index_[negate(positive_[k])] = p + k;
  }
}

void RootSystem::compute_constants() {
  const int p = num_positive();
  std::map<std::pair<int, int>, int> pos;  // positive pairs

  auto pos_n = [&](int a, int b) -> int {
    auto it = pos.find({a, b});
    if (it == pos.end()) throw Error(ErrorKind::InvalidParams, "internal: structure constant requested out of order");
    return it->second;
  };

  // N for arbitrary roots, using only positive pairs of smaller total height.
  auto any_n = [&](const RootVector& a, const RootVector& b) -> Rational {
    const RootVector s = add(a, b);
    auto si = find_root(s);
    if (!si) return 0;
    const bool pa = is_positive(a), pb = is_positive(b);
    auto idx = [&](const RootVector& v) { return *find_root(v); };
    auto mixed = [&](const RootVector& x, const RootVector& y) -> Rational {
      // x positive, y negative, x + y = s
      const RootVector sum = add(x, y);
      if (is_positive(sum)) {
        const RootVector g = negate(sum);
        return ratio(inner_product(g, g), inner_product(x, x)) * -pos_n(idx(negate(y)), idx(sum));
      }
      const RootVector g = negate(sum);
      return ratio(inner_product(g, g), inner_product(y, y)) * pos_n(idx(g), idx(x));
    };
    if (pa && pb) return pos_n(idx(a), idx(b));
    if (!pa && !pb) return -pos_n(idx(negate(a)), idx(negate(b)));
    if (pa) return mixed(a, b);
    return -mixed(b, a);
  };

  for (int x = rank_; x < p; ++x) {
    const RootVector& xi = positive_[x];
    int a0 = -1;
    for (int k = 0; k < x && a0 < 0; ++k) {
      auto r = find_root(add(xi, positive_[k], -1));
      if (r && *r < p) a0 = k;
    }
    const RootVector alpha0 = positive_[a0];
    const RootVector beta0 = add(xi, alpha0, -1);
    const int b0 = *find_root(beta0);
    const int n0 = root_string(*this, alpha0, beta0).first + 1;
    pos[{a0, b0}] = n0;
    pos[{b0, a0}] = -n0;

    for (int a = a0 + 1; a < x; ++a) {
      auto br = find_root(add(xi, positive_[a], -1));
      if (!br || *br >= p || *br <= a) continue;
      const RootVector& alpha = positive_[a];
      const RootVector beta = positive_[*br];
      Rational sum = 0;
      const RootVector d1 = add(beta, alpha0, -1);
      if (is_root(d1)) {
        sum += any_n(beta, negate(alpha0)) * any_n(alpha, negate(beta0)) / inner_product(d1, d1);
      }
      const RootVector d2 = add(alpha, alpha0, -1);
      if (is_root(d2)) {
        sum += any_n(negate(alpha0), alpha) * any_n(beta, negate(beta0)) / inner_product(d2, d2);
      }
      Rational n = Rational(inner_product(xi, xi)) * sum / n0;
      n.canonicalize();
      if (!is_integer(n)) throw Error(ErrorKind::InvalidParams, "internal: non-integral structure constant");
      const int v = static_cast<int>(n.get_num().get_si());
      pos[{a, *br}] = v;
      pos[{*br, a}] = -v;
    }
  }

  for (int a = 0; a < num_roots(); ++a) {
    for (int b = 0; b < num_roots(); ++b) {
      const RootVector ra = root(a), rb = root(b);
      if (!is_root(add(ra, rb))) continue;
      Rational n = any_n(ra, rb);
      n.canonicalize();
      if (!is_integer(n) || n == 0) throw Error(ErrorKind::InvalidParams, "internal: bad structure constant");
      constants_[{a, b}] = static_cast<int>(n.get_num().get_si());
    }
  }
}

void RootSystem::build_table() {
  const int d = dim();
  table_.assign(static_cast<std::size_t>(d) * d, {});
  for (Symbol x = 0; x < d; ++x) {
    for (Symbol y = 0; y < d; ++y) {
      SymbolCombination out;
      if (is_h(x) && is_h(y)) {
        // abelian
      } else if (is_h(x)) {
        const int c = evaluate(root(symbol_root(y)), symbol_index(x));
        if (c != 0) out.push_back({y, c});
      } else if (is_h(y)) {
        const int c = -evaluate(root(symbol_root(x)), symbol_index(y));
        if (c != 0) out.push_back({x, c});
      } else {
        const int ra = symbol_root(x), rb = symbol_root(y);
        const RootVector a = root(ra), b = root(rb);
        if (a == negate(b)) {
          const auto h = coroot(a);
          for (int i = 0; i < rank_; ++i) {
            if (h[i] != 0) out.push_back({h_symbol(i), h[i]});
          }
        } else if (auto s = find_root(add(a, b))) {
          out.push_back({root_symbol(*s), structure_constant(ra, rb)});
        }
      }
      std::sort(out.begin(), out.end());
      table_[static_cast<std::size_t>(x) * d + y] = std::move(out);
    }
  }
}

RootSystemPtr build_root_system(RootType type, int rank) {
  bool ok = false;
  switch (type) {
    case RootType::A: ok = rank >= 1 && rank <= 4; break;
    case RootType::B:
    case RootType::C: ok = rank >= 2 && rank <= 4; break;
    case RootType::D: ok = rank == 4; break;
    case RootType::G: ok = rank == 2; break;
  }
  if (!ok) {
    throw Error(ErrorKind::UnsupportedType,
                std::string(1, type_letter(type)) + std::to_string(rank) + " is outside the supported envelope");
  }

  std::shared_ptr<RootSystem> rs(new RootSystem());
  rs->type_ = type;
  rs->rank_ = rank;
  rs->cartan_.assign(rank, std::vector<int>(rank, 0));
  rs->lengths_.assign(rank, 1);
  auto& a = rs->cartan_;
  for (int i = 0; i < rank; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (type) {
    case RootType::A:
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      break;
    case RootType::B:
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      a[rank - 1][rank - 2] = -2;
      for (int i = 0; i + 1 < rank; ++i) rs->lengths_[i] = 2;
      break;
    case RootType::C:
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      a[rank - 2][rank - 1] = -2;
      rs->lengths_[rank - 1] = 2;
      break;
    case RootType::D:
      link(0, 1);
      link(1, 2);
      link(1, 3);
      break;
    case RootType::G:
      a[0][1] = -3;
      a[1][0] = -1;
      rs->lengths_[1] = 3;
      break;
  }

  rs->enumerate_roots();
  rs->compute_constants();
  rs->build_table();

  std::ostringstream desc;
  desc << rs->label() << '|';
  for (const auto& r : rs->positive_) {
    for (int c : r) desc << c << ',';
    desc << ';';
  }
  for (const auto& [k, n] : rs->constants_) desc << k.first << ' ' << k.second << ' ' << n << ';';
  std::ostringstream fp;
  fp << rs->label() << '-' << std::hex << fnv1a(desc.str());
  rs->fingerprint_ = fp.str();
  return rs;
}

RootSystemPtr build_root_system(std::string_view letter, int rank) {
  return build_root_system(parse_root_type(letter), rank);
}

bool same_system(const RootSystem& a, const RootSystem& b) {
  return &a == &b || a.fingerprint() == b.fingerprint();
}

std::pair<int, int> root_string(const RootSystem& rs, const RootVector& alpha, const RootVector& beta) {
  if (!rs.is_root(alpha)) throw Error(ErrorKind::NotARoot, "alpha is not a root");
  if (!rs.is_root(beta)) throw Error(ErrorKind::NotARoot, "beta is not a root");
  if (alpha == beta || alpha == negate(beta)) {
    throw Error(ErrorKind::InvalidParams, "root string requires beta != +-alpha");
  }
  int p = 0, q = 0;
  while (rs.is_root(add(beta, alpha, -(p + 1)))) ++p;
  while (rs.is_root(add(beta, alpha, q + 1))) ++q;
  return {p, q};
}

LieElement LieElement::basis(RootSystemPtr rs, Symbol s, const Rational& c) {
  LieElement x(std::move(rs));
  x.add(s, c);
  return x;
}

Rational LieElement::coefficient(Symbol s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LieElement::add(Symbol s, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& other) {
  if (!same_system(*rs_, *other.rs_)) throw Error(ErrorKind::MixedRootSystem, "adding elements of different algebras");
  for (const auto& [s, c] : other.coeffs_) add(s, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& other) {
  if (!same_system(*rs_, *other.rs_)) throw Error(ErrorKind::MixedRootSystem, "subtracting elements of different algebras");
  for (const auto& [s, c] : other.coeffs_) add(s, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [s, v] : coeffs_) v *= c;
  return *this;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  if (!same_system(*x.system(), *y.system())) {
    throw Error(ErrorKind::MixedRootSystem, x.system()->label() + " vs " + y.system()->label());
  }
  LieElement out(x.system());
  const RootSystem& rs = *x.system();
  for (const auto& [a, ca] : x.coefficients()) {
    for (const auto& [b, cb] : y.coefficients()) {
      for (const auto& [s, n] : rs.bracket_symbols(a, b)) out.add(s, ca * cb * n);
    }
  }
  return out;
}

}  // namespace whittaker
