#ifndef WHITTAKER_PARABOLIC_HPP
#define WHITTAKER_PARABOLIC_HPP

#include <vector>

#include "whittaker/rational.hpp"
#include "whittaker/root_system.hpp"

namespace whittaker {

/// ψ(e_α) for each simple root α. ψ vanishes on non-simple root spaces.
struct WhittakerCharacter {
  std::vector<Rational> values;

  static WhittakerCharacter zero(int rank) { return {std::vector<Rational>(rank, 0)}; }
  /// Simple root indices with ψ(e_α) != 0, ascending.
  std::vector<int> support() const;
  bool non_singular() const;
  bool operator==(const WhittakerCharacter&) const = default;
};

/// Coordinates of an element of z* on the centre basis.
struct ZWeight {
  std::vector<Rational> coords;

  ZWeight& operator+=(const ZWeight& o);
  ZWeight& operator-=(const ZWeight& o);
  friend ZWeight operator+(ZWeight a, const ZWeight& b) { return a += b; }
  friend ZWeight operator-(ZWeight a, const ZWeight& b) { return a -= b; }
  auto operator<=>(const ZWeight&) const = default;
  bool operator==(const ZWeight&) const = default;
};

/// The decomposition g = m̄ ⊕ l ⊕ m determined by a set of simple roots.
struct ParabolicData {
  /// Simple root indices spanning the Levi factor (Δ_ψ).
  std::vector<int> support;
  /// Remaining simple roots Δ \ Δ_ψ.
  std::vector<int> non_support;
  /// Positive root indices in the span of the support (Φ_l+).
  std::vector<int> levi_roots;
  /// Positive root indices of m; m̄ is spanned by the matching f symbols.
  std::vector<int> m_roots;
  /// Basis of z = {h : α(h) = 0 for α in the support}, as primitive integer
  /// vectors on h_1..h_n.
  std::vector<std::vector<Rational>> centre_basis;
  /// Restriction to z of each non-support simple root, in centre-basis
  /// coordinates; these generate the cone defining the order on z*.
  std::vector<ZWeight> generators;
  /// True when the generators are linearly independent, so the order on z*
  /// is antisymmetric. Otherwise it is only a preorder.
  bool order_is_partial = true;

  int centre_dim() const { return static_cast<int>(centre_basis.size()); }
  std::vector<int> mbar_roots() const { return m_roots; }
  int levi_dim(int rank) const { return rank + 2 * static_cast<int>(levi_roots.size()); }
  bool in_support(int simple) const;
};

/// Parabolic data for the Levi subalgebra spanned by the given simple roots.
ParabolicData levi_data(const RootSystem& rs, std::vector<int> support);
ParabolicData parabolic_data(const WhittakerCharacter& psi, const RootSystem& rs);

/// Restriction of a root (in simple-root coordinates) to z.
ZWeight restrict_to_centre(const RootSystem& rs, const ParabolicData& p, const RootVector& root);

/// η ⪯ μ iff μ - η restricts from a non-negative integer combination of the
/// non-support simple roots. Throws Error(DimensionMismatch).
bool zweight_leq(const ZWeight& eta, const ZWeight& mu, const ParabolicData& p);

}  // namespace whittaker

#endif  // WHITTAKER_PARABOLIC_HPP
