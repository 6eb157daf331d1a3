#ifndef WHITTAKER_ROOT_SYSTEM_HPP
#define WHITTAKER_ROOT_SYSTEM_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whittaker/rational.hpp"

namespace whittaker {

enum class RootType { A, B, C, D, G };

char type_letter(RootType type);
RootType parse_root_type(std::string_view letter);

/// Integer coordinates of a root in the basis of simple roots.
using RootVector = std::vector<int>;

/// Index of a basis element of g, in PBW order:
///   [0, P)          f_γ for the positive roots γ in root order
///   [P, P + n)      h_1 .. h_n (simple coroots)
///   [P + n, 2P + n) e_γ for the positive roots γ in root order
using Symbol = int;

/// Sparse integer combination of basis symbols; the value of a basis bracket.
using SymbolCombination = std::vector<std::pair<Symbol, int>>;

/// Cartan data, root enumeration and Chevalley structure constants of a
/// simple Lie algebra. Immutable after construction.
///
/// Conventions:
///   cartan(i, j) = <α_j, α_i^∨> = α_j(h_i);
///   B_n has α_n short, C_n has α_n long, G_2 has α_1 short;
///   roots are ordered by height, then by coordinates with larger leading
///   coordinates first (α_1 < α_2 < α_1+α_2 in A_2);
///   [e_α, e_{-α}] = h_α, N_{-α,-β} = -N_{α,β}, and N_{α,β} = +(p+1) on
///   every extraspecial pair.
class RootSystem {
 public:
  RootType type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const;
  /// Type, rank, and a hash of the ordered root list and constant table.
  const std::string& fingerprint() const { return fingerprint_; }

  int cartan(int i, int j) const { return cartan_[i][j]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  /// Half squared length of α_i in an integral normalization.
  int simple_length(int i) const { return lengths_[i]; }

  int num_positive() const { return static_cast<int>(positive_.size()); }
  const std::vector<RootVector>& positive_roots() const { return positive_; }
  const RootVector& positive_root(int k) const { return positive_[k]; }
  int height(int k) const;
  /// Positive root index of α_i.
  int simple_root_index(int i) const { return i; }
  /// Simple index of a positive root, or -1.
  int simple_of(int k) const;

  /// All roots: positive roots first, then their negatives in the same order.
  int num_roots() const { return 2 * num_positive(); }
  RootVector root(int r) const;
  /// Index into the all-roots list, or nullopt.
  std::optional<int> find_root(const RootVector& v) const;
  bool is_root(const RootVector& v) const { return find_root(v).has_value(); }

  /// (α, β) in the integral normalization matching simple_length.
  int inner_product(const RootVector& a, const RootVector& b) const;
  /// β(h_i).
  int evaluate(const RootVector& beta, int i) const;
  /// <β, α^∨>.
  int pairing(const RootVector& beta, const RootVector& alpha) const;
  /// Coroot h_α in the h_1..h_n basis.
  std::vector<int> coroot(const RootVector& alpha) const;

  /// N_{α,β} over all-roots indices; zero when α+β is not a root.
  int structure_constant(int a, int b) const;
  /// Stored (a, b, N) triples over all-roots indices with a+b a root.
  const std::map<std::pair<int, int>, int>& structure_constants() const { return constants_; }

  // Symbol layout.
  int dim() const { return 2 * num_positive() + rank_; }
  Symbol f_symbol(int k) const { return k; }
  Symbol h_symbol(int i) const { return num_positive() + i; }
  Symbol e_symbol(int k) const { return num_positive() + rank_ + k; }
  bool is_f(Symbol s) const { return s < num_positive(); }
  bool is_h(Symbol s) const { return s >= num_positive() && s < num_positive() + rank_; }
  bool is_e(Symbol s) const { return s >= num_positive() + rank_; }
  /// Positive root index behind an e or f symbol; h index behind an h symbol.
  int symbol_index(Symbol s) const;
  /// All-roots index of an e or f symbol.
  int symbol_root(Symbol s) const;
  Symbol root_symbol(int r) const;
  std::string symbol_name(Symbol s) const;
  std::string root_name(int k) const;

  /// Bracket of two basis symbols.
  const SymbolCombination& bracket_symbols(Symbol x, Symbol y) const { return table_[x * dim() + y]; }

  friend std::shared_ptr<const RootSystem> build_root_system(RootType type, int rank);

 private:
  RootSystem() = default;
  void enumerate_roots();
  void compute_constants();
  void build_table();

  RootType type_ = RootType::A;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> lengths_;
  std::vector<RootVector> positive_;
  std::map<RootVector, int> index_;
  std::map<std::pair<int, int>, int> constants_;
  std::vector<SymbolCombination> table_;
  std::string fingerprint_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Supported envelope: A_1..A_4, B_2..B_4, C_2..C_4, D_4, G_2.
/// Throws Error(UnsupportedType) otherwise.
RootSystemPtr build_root_system(RootType type, int rank);
RootSystemPtr build_root_system(std::string_view type_letter, int rank);

bool same_system(const RootSystem& a, const RootSystem& b);

/// p = max{k : β - kα ∈ Φ}, q = max{k : β + kα ∈ Φ}.
std::pair<int, int> root_string(const RootSystem& rs, const RootVector& alpha, const RootVector& beta);

/// Element of g with exact rational coefficients on the basis symbols.
class LieElement {
 public:
  explicit LieElement(RootSystemPtr rs) : rs_(std::move(rs)) {}
  static LieElement basis(RootSystemPtr rs, Symbol s, const Rational& c = 1);

  const RootSystemPtr& system() const { return rs_; }
  const std::map<Symbol, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(Symbol s) const;
  bool is_zero() const { return coeffs_.empty(); }

  void add(Symbol s, const Rational& c);
  LieElement& operator+=(const LieElement& other);
  LieElement& operator-=(const LieElement& other);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  bool operator==(const LieElement& other) const { return coeffs_ == other.coeffs_; }

 private:
  RootSystemPtr rs_;
  std::map<Symbol, Rational> coeffs_;
};

LieElement bracket(const LieElement& x, const LieElement& y);

}  // namespace whittaker

#endif  // WHITTAKER_ROOT_SYSTEM_HPP
