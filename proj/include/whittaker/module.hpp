#ifndef WHITTAKER_MODULE_HPP
#define WHITTAKER_MODULE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "whittaker/parabolic.hpp"
#include "whittaker/pbw.hpp"

namespace whittaker {

enum class Family { Verma, McDowell, UniversalSl2, DirectSum };

std::string family_name(Family f);
Family parse_family(std::string_view name);

/// Parameters of a module family.
///   Verma:        lambda = λ(h_i); psi must be zero (or empty).
///   McDowell:     psi per simple root; omega = Ω̄ on the centre basis;
///                 casimir = c_α per support root, ascending.
///   UniversalSl2: rank 1 only; psi = {η}, casimir = {c}; η may be 0.
///   DirectSum:    summands, all with the same ψ, none of them sums.
struct ModuleDescriptor {
  Family family = Family::Verma;
  std::vector<Rational> psi;
  std::vector<Rational> lambda;
  std::vector<Rational> omega;
  std::vector<Rational> casimir;
  std::vector<ModuleDescriptor> summands;

  bool operator==(const ModuleDescriptor&) const = default;
};

/// Ω̄ on the centre basis and one Casimir scalar per support factor.
struct CentralCharacter {
  std::vector<Rational> centre_weight;
  std::vector<Rational> casimir_scalars;
  bool operator==(const CentralCharacter&) const = default;
};

/// Basis vector  ∏ f_γ^{b_γ} · ∏ f_α^{a_α} h_α^{ε_α} · v  of one summand.
/// mbar holds b over the summand's m_roots (ascending root order); a and eps
/// are indexed by support factor.
struct ModuleMonomial {
  std::uint16_t summand = 0;
  std::vector<std::uint16_t> mbar;
  std::vector<std::uint16_t> a;
  std::vector<std::uint8_t> eps;

  auto operator<=>(const ModuleMonomial&) const = default;
  bool operator==(const ModuleMonomial&) const = default;
};

struct ModuleMonomialHash {
  std::size_t operator()(const ModuleMonomial& m) const noexcept;
};

/// Finite linear combination of basis monomials; zero coefficients are never stored.
struct ModuleElement {
  std::map<ModuleMonomial, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const ModuleMonomial& m, const Rational& c);
  Rational coefficient(const ModuleMonomial& m) const;

  ModuleElement& operator+=(const ModuleElement& o);
  ModuleElement& operator-=(const ModuleElement& o);
  ModuleElement& operator*=(const Rational& c);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const Rational& c, ModuleElement a) { return a *= c; }
  bool operator==(const ModuleElement&) const = default;
};

/// One indecomposable piece of a presentation.
struct SummandData {
  Family family = Family::Verma;
  ParabolicData parabolic;
  /// Support roots carrying an sl2 factor, ascending.
  std::vector<int> factors;
  std::vector<Rational> factor_psi;
  CentralCharacter central;
  /// Scalar by which the 𝔷-component of h_i acts.
  std::vector<Rational> h_scalar;
  /// γ̄ for each m root, and the depth of f_γ (sum of its non-support coordinates).
  std::vector<ZWeight> mbar_weights;
  std::vector<int> mbar_depth;
  bool graded = true;
};

/// A module family realized on its normal-form basis, with the exact
/// U(g)-action. Immutable apart from an internal, thread-safe memo of
/// act_symbol; concurrent calls are safe.
class ModulePresentation {
 public:
  ModulePresentation(ModuleDescriptor desc, PbwAlgebraPtr pbw);

  const ModuleDescriptor& descriptor() const { return desc_; }
  Family family() const { return desc_.family; }
  const RootSystem& roots() const { return pbw_->roots(); }
  const RootSystemPtr& system() const { return pbw_->system(); }
  const PbwAlgebra& algebra() const { return *pbw_; }
  const WhittakerCharacter& character() const { return psi_; }

  int num_summands() const { return static_cast<int>(summands_.size()); }
  const SummandData& summand(int i) const { return summands_[i]; }

  /// The cyclic vector v of a summand.
  ModuleMonomial cyclic_monomial(int summand = 0) const;
  ModuleElement cyclic_vector(int summand = 0) const;

  /// x · m for a basis symbol x and a basis monomial m.
  ModuleElement act_symbol(Symbol x, const ModuleMonomial& m) const;
  ModuleElement act(Symbol x, const ModuleElement& w) const;
  ModuleElement act(const LieElement& x, const ModuleElement& w) const;
  ModuleElement act(const UEAElement& u, const ModuleElement& w) const;

  /// Ω̄ - Σ b_γ γ̄. Throws Error(NotGraded) when the summand has no 𝔷.
  ZWeight z_weight_of(const ModuleMonomial& m) const;
  /// Σ b_γ γ̄ (empty when ungraded); the grading key used by the solver.
  ZWeight weight_offset(const ModuleMonomial& m) const;
  int depth(const ModuleMonomial& m) const;
  /// Largest support-factor f-exponent.
  int factor_degree(const ModuleMonomial& m) const;

  /// x • w = x w - ψ(x) w. Throws Error(NotInNilradical).
  ModuleElement bullet(const LieElement& x, const ModuleElement& w) const;
  /// (e_{α_i} - ψ(e_{α_i})) w.
  ModuleElement bullet_simple(int i, const ModuleElement& w) const;
  /// Least k <= k_max such that every bullet word of length k + 1 in the
  /// simple root vectors kills w; nullopt when none is found.
  std::optional<int> bullet_depth(const ModuleElement& w, int k_max) const;

  std::string format_monomial(const ModuleMonomial& m) const;
  std::string format_element(const ModuleElement& w) const;

  std::size_t cache_entries() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<Symbol, ModuleMonomial>& k) const noexcept;
  };

  ModuleElement act_symbol_impl(Symbol x, const ModuleMonomial& m, int budget) const;
  ModuleElement act_impl(Symbol x, const ModuleElement& w, int budget) const;
  ModuleElement act_on_factors(Symbol x, const ModuleMonomial& m) const;
  ModuleElement act_h(int i, const ModuleMonomial& m) const;
  ModuleElement multiply_mbar(Symbol x, const ModuleMonomial& m) const;
  void add_summand(const ModuleDescriptor& d);

  ModuleDescriptor desc_;
  PbwAlgebraPtr pbw_;
  WhittakerCharacter psi_;
  WhittakerCharacter character_of_last_;
  std::vector<SummandData> summands_;
  /// Per summand: root index -> position in m_roots, or -1.
  std::vector<std::vector<int>> mbar_pos_;
  /// Per summand: root index -> factor index, or -1.
  std::vector<std::vector<int>> factor_pos_;

  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::pair<Symbol, ModuleMonomial>, ModuleElement, KeyHash> memo_;
};

using ModulePresentationPtr = std::shared_ptr<const ModulePresentation>;

/// Validates the descriptor and builds the presentation.
/// Throws Error(InvalidParams | NonOrthogonalSupport | DimensionMismatch).
ModulePresentationPtr build_module(const ModuleDescriptor& desc, PbwAlgebraPtr pbw);

/// Known composition length, or nullopt when no certified value exists:
/// rank-1 Verma (2 iff λ ∈ ℤ≥0), rank-1 McDowell and universal modules with
/// nonzero character (1), and sums of those.
std::optional<int> known_length(const ModuleDescriptor& desc, const RootSystem& rs);

}  // namespace whittaker

#endif  // WHITTAKER_MODULE_HPP
