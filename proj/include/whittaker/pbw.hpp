#ifndef WHITTAKER_PBW_HPP
#define WHITTAKER_PBW_HPP

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "whittaker/rational.hpp"
#include "whittaker/root_system.hpp"

namespace whittaker {

/// Ordered PBW monomial: exponent per basis symbol, read as the product
/// f-block (root order), then h_1..h_n, then e-block (root order).
using Monomial = std::vector<std::uint16_t>;
using Terms = std::map<Monomial, Rational>;

int degree(const Monomial& m);
/// Adds c * m into terms, dropping zeros.
void accumulate(Terms& terms, const Monomial& m, const Rational& c);

/// Element of U(g) in PBW normal form.
class UEAElement {
 public:
  explicit UEAElement(RootSystemPtr rs) : rs_(std::move(rs)) {}
  static UEAElement identity(RootSystemPtr rs);
  static UEAElement symbol(RootSystemPtr rs, Symbol s, const Rational& c = 1);
  static UEAElement from_lie(const LieElement& x);

  const RootSystemPtr& system() const { return rs_; }
  const Terms& terms() const { return terms_; }
  Terms& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Filtration degree; -1 for zero.
  int degree() const;

  UEAElement& operator+=(const UEAElement& other);
  UEAElement& operator-=(const UEAElement& other);
  UEAElement& operator*=(const Rational& c);
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const Rational& c, UEAElement a) { return a *= c; }
  bool operator==(const UEAElement& other) const { return terms_ == other.terms_; }

 private:
  RootSystemPtr rs_;
  Terms terms_;
};

enum class Association { RightToLeft, LeftToRight };

struct CacheStats {
  std::size_t entries = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
};

/// Straightening engine for U(g). The only mutable state is the memo of
/// single-symbol products x * m, shared by all threads: lookups take a shared
/// lock, inserts an exclusive one. Results never depend on the memo state.
class PbwAlgebra {
 public:
  explicit PbwAlgebra(RootSystemPtr rs);

  const RootSystemPtr& system() const { return rs_; }
  const RootSystem& roots() const { return *rs_; }

  /// Normal form of x * m for a basis symbol x and a normal-form monomial m.
  Terms left_multiply(Symbol x, const Monomial& m) const;
  /// Left multiplication of every term by the symbol x.
  Terms left_multiply(Symbol x, const Terms& t) const;

  UEAElement multiply(const UEAElement& a, const UEAElement& b) const;
  UEAElement straighten(const std::vector<Symbol>& word, Association how = Association::RightToLeft) const;

  /// Casimir of the sl2-triple at the simple root α_i:
  ///   e f + f e + h^2 / 2 = 2 f e + h + h^2 / 2.
  UEAElement casimir_sl2(int simple) const;
  UEAElement casimir_sl2(const RootVector& gamma) const;

  Monomial unit() const { return Monomial(roots().dim(), 0); }

  CacheStats cache_stats() const;
  void clear_cache();
  /// Versioned JSON: {schema_version, fingerprint, entries}. Returns false
  /// (and keeps the memo untouched) when the file is absent, unreadable or
  /// carries a different root-system fingerprint.
  bool load_cache(const std::filesystem::path& file);
  void save_cache(const std::filesystem::path& file) const;

  static constexpr int kCacheSchemaVersion = 1;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<Symbol, Monomial>& k) const noexcept;
  };

  RootSystemPtr rs_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::pair<Symbol, Monomial>, Terms, KeyHash> memo_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

using PbwAlgebraPtr = std::shared_ptr<PbwAlgebra>;

/// Free-function spellings used by the rest of the library.
UEAElement multiply(const PbwAlgebra& algebra, const UEAElement& a, const UEAElement& b);
UEAElement straighten(const PbwAlgebra& algebra, const std::vector<Symbol>& word,
                      Association how = Association::RightToLeft);

}  // namespace whittaker

#endif  // WHITTAKER_PBW_HPP
