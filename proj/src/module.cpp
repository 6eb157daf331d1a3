#include "whittaker/module.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "whittaker/error.hpp"
#include "whittaker/linalg.hpp"

namespace whittaker {

namespace {

// Recursion budget for a single act_symbol call tree.
constexpr int kReductionBudget = 4096;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidParams, what); }

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Coordinates of target in the span of the given (independent) vectors.
std::vector<Rational> coordinates_in(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target) {
  const int k = static_cast<int>(basis.size());
  if (k == 0) return {};
  std::vector<linalg::SparseRow> rows(target.size());
  for (std::size_t j = 0; j < target.size(); ++j) {
    for (int b = 0; b < k; ++b) {
      if (basis[b][j] != 0) rows[j].emplace_back(b, basis[b][j]);
    }
    if (target[j] != 0) rows[j].emplace_back(k, -target[j]);
  }
  for (const auto& v : linalg::nullspace(rows, k + 1).basis) {
    if (v[k] == 0) continue;
    std::vector<Rational> y(k);
    for (int b = 0; b < k; ++b) {
      y[b] = v[b] / v[k];
      y[b].canonicalize();
    }
    return y;
  }
  throw Error(ErrorKind::DimensionMismatch, "vector is not in the span of the centre basis");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Verma: return "verma";
    case Family::McDowell: return "mcdowell";
    case Family::UniversalSl2: return "universal_sl2";
    case Family::DirectSum: return "direct_sum";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::Verma, Family::McDowell, Family::UniversalSl2, Family::DirectSum}) {
    if (family_name(f) == name) return f;
  }
  invalid("unknown module family '" + std::string(name) + "'");
}

std::size_t ModuleMonomialHash::operator()(const ModuleMonomial& m) const noexcept {
  std::size_t h = m.summand;
  for (auto b : m.mbar) h = mix(h, b);
  for (auto a : m.a) h = mix(h, a);
  for (auto e : m.eps) h = mix(h, e);
  return h;
}

std::size_t ModulePresentation::KeyHash::operator()(const std::pair<Symbol, ModuleMonomial>& k) const noexcept {
  return mix(ModuleMonomialHash{}(k.second), static_cast<std::size_t>(k.first));
}

void ModuleElement::add(const ModuleMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Rational ModuleElement::coefficient(const ModuleMonomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? Rational(0) : it->second;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& o) {
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

ModuleElement& ModuleElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, x] : terms) x *= c;
  return *this;
}

ModulePresentation::ModulePresentation(ModuleDescriptor desc, PbwAlgebraPtr pbw)
    : desc_(std::move(desc)), pbw_(std::move(pbw)) {
  if (desc_.family == Family::DirectSum) {
    if (desc_.summands.empty()) invalid("direct_sum needs at least one summand");
    for (std::size_t i = 0; i < desc_.summands.size(); ++i) {
      const auto& s = desc_.summands[i];
      if (s.family == Family::DirectSum) invalid("summands[" + std::to_string(i) + "] is itself a direct sum");
      add_summand(s);
      if (i > 0 && !(psi_ == character_of_last_)) {
        invalid("summands[" + std::to_string(i) + "] has a different character");
      }
    }
  } else {
    if (!desc_.summands.empty()) invalid("summands given for a non-sum family");
    add_summand(desc_);
  }
}

void ModulePresentation::add_summand(const ModuleDescriptor& d) {
  const RootSystem& rs = roots();
  const int n = rs.rank();
  SummandData s;
  s.family = d.family;
  WhittakerCharacter psi;

  switch (d.family) {
    case Family::Verma: {
      if (!d.psi.empty() && (static_cast<int>(d.psi.size()) != n || !all_zero(d.psi))) {
        invalid("psi: a Verma module has the zero character");
      }
      if (static_cast<int>(d.lambda.size()) != n) invalid("lambda: expected " + std::to_string(n) + " values");
      if (!d.omega.empty() || !d.casimir.empty()) invalid("omega/casimir: not used by a Verma module");
      psi = WhittakerCharacter::zero(n);
      s.parabolic = levi_data(rs, {});
      s.central.centre_weight = d.lambda;
      break;
    }
    case Family::McDowell: {
      if (static_cast<int>(d.psi.size()) != n) invalid("psi: expected " + std::to_string(n) + " values");
      if (!d.lambda.empty()) invalid("lambda: not used by a McDowell module");
      psi = WhittakerCharacter{d.psi};
      s.parabolic = parabolic_data(psi, rs);
      const auto& sup = s.parabolic.support;
      for (std::size_t i = 0; i < sup.size(); ++i) {
        for (std::size_t j = i + 1; j < sup.size(); ++j) {
          if (rs.cartan(sup[i], sup[j]) != 0) {
            throw Error(ErrorKind::NonOrthogonalSupport, "simple roots " + std::to_string(sup[i] + 1) + " and " +
                                                             std::to_string(sup[j] + 1) + " are adjacent");
          }
        }
      }
      if (static_cast<int>(d.omega.size()) != s.parabolic.centre_dim()) {
        invalid("omega: expected " + std::to_string(s.parabolic.centre_dim()) + " values");
      }
      if (d.casimir.size() != sup.size()) invalid("casimir: expected " + std::to_string(sup.size()) + " values");
      s.central = {d.omega, d.casimir};
      break;
    }
    case Family::UniversalSl2: {
      if (n != 1) invalid("universal_sl2: only defined for rank 1");
      if (d.psi.size() != 1) invalid("psi: expected 1 value");
      if (d.casimir.size() != 1) invalid("casimir: expected 1 value");
      if (!d.omega.empty() || !d.lambda.empty()) invalid("omega/lambda: not used by universal_sl2");
      psi = WhittakerCharacter{d.psi};
      s.parabolic = levi_data(rs, {0});
      s.central = {{}, d.casimir};
      break;
    }
    case Family::DirectSum:
      invalid("nested direct sum");
  }

  s.factors = s.parabolic.support;
  for (int f : s.factors) s.factor_psi.push_back(psi.values[f]);
  s.graded = d.family != Family::UniversalSl2 && s.parabolic.centre_dim() > 0;

  // h_i = z_i + Σ_α (α(h_i)/2) h_α with z_i ∈ 𝔷; z_i acts by Ω̄(z_i).
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> z(n, 0);
    z[i] = 1;
    for (int f : s.factors) z[f] -= ratio(rs.cartan(i, f), 2);
    Rational val = 0;
    if (s.parabolic.centre_dim() > 0) {
      const auto y = coordinates_in(s.parabolic.centre_basis, z);
      for (std::size_t k = 0; k < y.size(); ++k) val += y[k] * s.central.centre_weight[k];
    }
    s.h_scalar.push_back(val);
  }

  std::vector<int> mpos(rs.num_positive(), -1), fpos(rs.num_positive(), -1);
  for (std::size_t p = 0; p < s.parabolic.m_roots.size(); ++p) {
    const int k = s.parabolic.m_roots[p];
    mpos[k] = static_cast<int>(p);
    s.mbar_weights.push_back(restrict_to_centre(rs, s.parabolic, rs.positive_root(k)));
    int dep = 0;
    for (int j : s.parabolic.non_support) dep += rs.positive_root(k)[j];
    s.mbar_depth.push_back(dep);
  }
  for (std::size_t j = 0; j < s.factors.size(); ++j) fpos[rs.simple_root_index(s.factors[j])] = static_cast<int>(j);

  if (summands_.empty()) psi_ = psi;
  character_of_last_ = psi;
  summands_.push_back(std::move(s));
  mbar_pos_.push_back(std::move(mpos));
  factor_pos_.push_back(std::move(fpos));
}

ModuleMonomial ModulePresentation::cyclic_monomial(int summand) const {
  const auto& s = summands_.at(summand);
  ModuleMonomial m;
  m.summand = static_cast<std::uint16_t>(summand);
  m.mbar.assign(s.parabolic.m_roots.size(), 0);
  m.a.assign(s.factors.size(), 0);
  m.eps.assign(s.factors.size(), 0);
  return m;
}

ModuleElement ModulePresentation::cyclic_vector(int summand) const {
  ModuleElement w;
  w.add(cyclic_monomial(summand), 1);
  return w;
}

ModuleElement ModulePresentation::multiply_mbar(Symbol x, const ModuleMonomial& m) const {
  const auto& s = summands_[m.summand];
  Monomial pm = pbw_->unit();
  for (std::size_t p = 0; p < m.mbar.size(); ++p) pm[roots().f_symbol(s.parabolic.m_roots[p])] = m.mbar[p];
  ModuleElement out;
  for (const auto& [mono, c] : pbw_->left_multiply(x, pm)) {
    ModuleMonomial r = m;
    r.mbar.assign(m.mbar.size(), 0);
    for (Symbol t = 0; t < static_cast<Symbol>(mono.size()); ++t) {
      if (mono[t] == 0) continue;
      const int p = roots().is_f(t) ? mbar_pos_[m.summand][roots().symbol_index(t)] : -1;
      if (p < 0) throw Error(ErrorKind::ReductionDivergence, "product left the nilradical m̄");
      r.mbar[p] = mono[t];
    }
    out.add(r, c);
  }
  return out;
}

ModuleElement ModulePresentation::act_h(int i, const ModuleMonomial& m) const {
  const RootSystem& rs = roots();
  const auto& s = summands_[m.summand];
  Rational scalar = s.h_scalar[i];
  for (std::size_t p = 0; p < m.mbar.size(); ++p) {
    if (m.mbar[p]) scalar -= m.mbar[p] * rs.evaluate(rs.positive_root(s.parabolic.m_roots[p]), i);
  }
  ModuleElement out;
  out.add(m, scalar);
  for (std::size_t j = 0; j < s.factors.size(); ++j) {
    const int t2 = rs.cartan(i, s.factors[j]);
    if (t2 == 0) continue;
    const Rational t = ratio(t2, 2);
    const int a = m.a[j];
    ModuleMonomial r = m;
    if (m.eps[j] == 0) {
      r.eps[j] = 1;
      out.add(r, t);
      out.add(m, t * (-2 * a));
    } else {
      const Rational& c = s.central.casimir_scalars[j];
      r.eps[j] = 0;
      out.add(r, t * 2 * c);
      out.add(m, t * (-2 - 2 * a));
      r.a[j] = static_cast<std::uint16_t>(a + 1);
      out.add(r, t * (-4) * s.factor_psi[j]);
    }
  }
  return out;
}

// x acting on y v, where m has no m̄ part and x is neither h nor in m̄.
ModuleElement ModulePresentation::act_on_factors(Symbol x, const ModuleMonomial& m) const {
  const RootSystem& rs = roots();
  const auto& s = summands_[m.summand];
  const int k = rs.symbol_index(x);
  ModuleElement out;
  if (rs.is_e(x) && mbar_pos_[m.summand][k] >= 0) return out;
  const int j = factor_pos_[m.summand][k];
  if (j < 0) throw Error(ErrorKind::ReductionDivergence, "no rule for " + rs.symbol_name(x));
  const int a = m.a[j];
  ModuleMonomial r = m;
  if (rs.is_f(x)) {
    r.a[j] = static_cast<std::uint16_t>(a + 1);
    out.add(r, 1);
    return out;
  }
  const Rational& psi = s.factor_psi[j];
  const Rational& c = s.central.casimir_scalars[j];
  if (m.eps[j] == 0) {
    out.add(m, psi);
    if (a >= 1) {
      r.a[j] = static_cast<std::uint16_t>(a - 1);
      r.eps[j] = 1;
      out.add(r, a);
      r.eps[j] = 0;
      out.add(r, Rational(-a * (a - 1)));
    }
  } else {
    out.add(m, psi);
    r.eps[j] = 0;
    out.add(r, -2 * psi - 4 * a * psi);
    if (a >= 1) {
      r.a[j] = static_cast<std::uint16_t>(a - 1);
      out.add(r, 2 * a * c);
      r.eps[j] = 1;
      out.add(r, Rational(-a * (a + 1)));
    }
  }
  return out;
}

ModuleElement ModulePresentation::act_symbol(Symbol x, const ModuleMonomial& m) const {
  return act_symbol_impl(x, m, kReductionBudget);
}

ModuleElement ModulePresentation::act_symbol_impl(Symbol x, const ModuleMonomial& m, int budget) const {
  if (budget <= 0) throw Error(ErrorKind::ReductionDivergence, "step budget exhausted at " + roots().symbol_name(x));
  if (m.summand >= summands_.size()) throw Error(ErrorKind::InvalidParams, "monomial summand out of range");
  const RootSystem& rs = roots();
  if (rs.is_f(x) && mbar_pos_[m.summand][rs.symbol_index(x)] >= 0) return multiply_mbar(x, m);
  if (rs.is_h(x)) return act_h(rs.symbol_index(x), m);

  const auto key = std::make_pair(x, m);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }

  ModuleElement out;
  auto first = std::find_if(m.mbar.begin(), m.mbar.end(), [](auto b) { return b != 0; });
  if (first == m.mbar.end()) {
    out = act_on_factors(x, m);
  } else {
    // x (f1 rest) = f1 (x rest) + [x, f1] rest.
    const int p = static_cast<int>(first - m.mbar.begin());
    const Symbol f1 = rs.f_symbol(summands_[m.summand].parabolic.m_roots[p]);
    ModuleMonomial rest = m;
    --rest.mbar[p];
    out = act_impl(f1, act_symbol_impl(x, rest, budget - 1), budget - 1);
    for (const auto& [sym, n] : rs.bracket_symbols(x, f1)) {
      ModuleElement t = act_symbol_impl(sym, rest, budget - 1);
      t *= n;
      out += t;
    }
  }

  std::unique_lock lock(mutex_);
  memo_.emplace(key, out);
  return out;
}

ModuleElement ModulePresentation::act_impl(Symbol x, const ModuleElement& w, int budget) const {
  ModuleElement out;
  for (const auto& [m, c] : w.terms) {
    for (const auto& [r, d] : act_symbol_impl(x, m, budget).terms) out.add(r, c * d);
  }
  return out;
}

ModuleElement ModulePresentation::act(Symbol x, const ModuleElement& w) const {
  return act_impl(x, w, kReductionBudget);
}

ModuleElement ModulePresentation::act(const LieElement& x, const ModuleElement& w) const {
  if (!same_system(*x.system(), roots())) throw Error(ErrorKind::MixedRootSystem, "act: element of another algebra");
  ModuleElement out;
  for (const auto& [s, c] : x.coefficients()) {
    ModuleElement t = act(s, w);
    t *= c;
    out += t;
  }
  return out;
}

ModuleElement ModulePresentation::act(const UEAElement& u, const ModuleElement& w) const {
  if (!same_system(*u.system(), roots())) throw Error(ErrorKind::MixedRootSystem, "act: element of another algebra");
  ModuleElement out;
  for (const auto& [mono, c] : u.terms()) {
    ModuleElement t = w;
    for (Symbol s = static_cast<Symbol>(mono.size()) - 1; s >= 0; --s) {
      for (int k = 0; k < mono[s]; ++k) t = act(s, t);
    }
    t *= c;
    out += t;
  }
  return out;
}

ZWeight ModulePresentation::weight_offset(const ModuleMonomial& m) const {
  const auto& s = summands_.at(m.summand);
  ZWeight w;
  if (!s.graded) return w;
  w.coords.assign(s.parabolic.centre_dim(), 0);
  for (std::size_t p = 0; p < m.mbar.size(); ++p) {
    if (!m.mbar[p]) continue;
    for (std::size_t k = 0; k < w.coords.size(); ++k) w.coords[k] += m.mbar[p] * s.mbar_weights[p].coords[k];
  }
  return w;
}

ZWeight ModulePresentation::z_weight_of(const ModuleMonomial& m) const {
  const auto& s = summands_.at(m.summand);
  if (!s.graded) throw Error(ErrorKind::NotGraded, family_name(s.family) + " summand has no centre");
  return ZWeight{s.central.centre_weight} - weight_offset(m);
}

int ModulePresentation::depth(const ModuleMonomial& m) const {
  const auto& s = summands_.at(m.summand);
  int d = 0;
  for (std::size_t p = 0; p < m.mbar.size(); ++p) d += m.mbar[p] * s.mbar_depth[p];
  return d;
}

int ModulePresentation::factor_degree(const ModuleMonomial& m) const {
  int k = 0;
  for (auto a : m.a) k = std::max<int>(k, a);
  return k;
}

ModuleElement ModulePresentation::bullet(const LieElement& x, const ModuleElement& w) const {
  const RootSystem& rs = roots();
  Rational psi = 0;
  for (const auto& [s, c] : x.coefficients()) {
    if (!rs.is_e(s)) throw Error(ErrorKind::NotInNilradical, rs.symbol_name(s) + " is not in n");
    const int k = rs.symbol_index(s);
    if (k < rs.rank()) psi += c * psi_.values[k];
  }
  ModuleElement out = act(x, w);
  ModuleElement shift = w;
  shift *= psi;
  return out -= shift;
}

ModuleElement ModulePresentation::bullet_simple(int i, const ModuleElement& w) const {
  ModuleElement out = act(roots().e_symbol(roots().simple_root_index(i)), w);
  ModuleElement shift = w;
  shift *= psi_.values.at(i);
  return out -= shift;
}

std::optional<int> ModulePresentation::bullet_depth(const ModuleElement& w, int k_max) const {
  std::vector<ModuleElement> level;
  if (!w.is_zero()) level.push_back(w);
  for (int k = 0; k <= k_max; ++k) {
    std::vector<ModuleElement> next;
    for (const auto& u : level) {
      for (int i = 0; i < roots().rank(); ++i) {
        ModuleElement b = bullet_simple(i, u);
        if (!b.is_zero() && std::find(next.begin(), next.end(), b) == next.end()) next.push_back(std::move(b));
      }
    }
    if (next.empty()) return k;
    level = std::move(next);
  }
  return std::nullopt;
}

std::string ModulePresentation::format_monomial(const ModuleMonomial& m) const {
  const RootSystem& rs = roots();
  const auto& s = summands_.at(m.summand);
  std::ostringstream os;
  auto power = [&](const std::string& name, int e) {
    os << name;
    if (e > 1) os << '^' << e;
    os << ' ';
  };
  for (std::size_t p = 0; p < m.mbar.size(); ++p) {
    if (m.mbar[p]) power(rs.symbol_name(rs.f_symbol(s.parabolic.m_roots[p])), m.mbar[p]);
  }
  for (std::size_t j = 0; j < s.factors.size(); ++j) {
    if (m.a[j]) power(rs.symbol_name(rs.f_symbol(s.factors[j])), m.a[j]);
    if (m.eps[j]) power(rs.symbol_name(rs.h_symbol(s.factors[j])), 1);
  }
  os << 'v';
  if (summands_.size() > 1) os << '[' << m.summand << ']';
  return os.str();
}

std::string ModulePresentation::format_element(const ModuleElement& w) const {
  if (w.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : w.terms) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += "(" + format_rational(c) + ") ";
    out += format_monomial(m);
  }
  return out;
}

std::size_t ModulePresentation::cache_entries() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

ModulePresentationPtr build_module(const ModuleDescriptor& desc, PbwAlgebraPtr pbw) {
  return std::make_shared<const ModulePresentation>(desc, std::move(pbw));
}

std::optional<int> known_length(const ModuleDescriptor& desc, const RootSystem& rs) {
  auto verma_rank1 = [](const Rational& lambda) { return is_integer(lambda) && lambda >= 0 ? 2 : 1; };
  switch (desc.family) {
    case Family::DirectSum: {
      int total = 0;
      for (const auto& s : desc.summands) {
        auto l = known_length(s, rs);
        if (!l) return std::nullopt;
        total += *l;
      }
      return total;
    }
    case Family::Verma:
      if (rs.rank() != 1 || desc.lambda.size() != 1) return std::nullopt;
      return verma_rank1(desc.lambda[0]);
    case Family::McDowell:
      if (rs.rank() != 1 || desc.psi.size() != 1) return std::nullopt;
      if (desc.psi[0] != 0) return 1;
      if (desc.omega.size() != 1) return std::nullopt;
      return verma_rank1(desc.omega[0]);
    case Family::UniversalSl2:
      if (desc.psi.size() != 1 || desc.psi[0] == 0) return std::nullopt;
      return 1;
  }
  return std::nullopt;
}

}  // namespace whittaker
