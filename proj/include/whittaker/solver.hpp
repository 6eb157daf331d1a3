#ifndef WHITTAKER_SOLVER_HPP
#define WHITTAKER_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "whittaker/module.hpp"

namespace whittaker {

/// Finite piece of a presentation: m̄-depth at most `depth`, and at depth d
/// support-factor f-exponents at most factor_degree + (depth - d).
struct Truncation {
  int depth = 8;
  int factor_degree = 8;
  /// Number of nested shrinkings compared when judging stabilization.
  int window = 3;

  int factor_cap(int d) const { return factor_degree + depth - d; }
  /// (depth - i, factor_degree - i), clamped at 0.
  Truncation shrink(int i) const;
  bool operator==(const Truncation&) const = default;
};

/// Basis monomials inside the truncation, in ascending monomial order.
std::vector<ModuleMonomial> truncated_basis(const ModulePresentation& p, const Truncation& t);
bool in_truncation(const ModulePresentation& p, const Truncation& t, const ModuleMonomial& m);

/// Images of the basis under the operators e_{α_i} - ψ_i, column by column.
/// Entry (i, r, c): coefficient of basis[r] in (e_{α_i} - ψ_i) basis[col].
struct OperatorColumns {
  std::vector<std::vector<std::tuple<int, int, Rational>>> columns;
};

/// Throws Error(TruncationNotClosed) if an image leaves the basis.
OperatorColumns assemble_operator(const ModulePresentation& p, const std::vector<ModuleMonomial>& basis,
                                  bool parallel);

enum class Verdict { SimpleUpTo, NotSimple, Inconclusive };
std::string verdict_name(Verdict v);

struct WeightBlock {
  int summand = 0;
  /// z-weight of the block; empty for ungraded summands.
  std::vector<Rational> weight;
  int depth = 0;
  int dim = 0;
};

struct WhittakerReport {
  ModulePresentationPtr module;
  Truncation truncation;
  std::size_t basis_size = 0;
  /// Canonical basis of the computed Whittaker vectors, block by block.
  std::vector<ModuleElement> exact_vectors;
  int dim_lower_bound = 0;
  /// dim at truncation.shrink(0), shrink(1), ... for every distinct level.
  std::vector<int> level_dims;
  bool stabilized = false;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<ModuleElement> witness;
  /// Blocks carrying at least one Whittaker vector.
  std::vector<WeightBlock> per_weight;
};

struct SolverOptions {
  bool parallel = true;
  /// Also solve the unblocked system and compare dimensions.
  bool cross_check = false;
};

/// Whittaker vectors of type ψ in the truncation, per z-weight block, each
/// re-verified with the exact action. Throws Error(TruncationNotClosed).
WhittakerReport whittaker_vectors(const ModulePresentationPtr& p, const Truncation& t, const SolverOptions& opt = {});

/// Same computation; the verdict lives in the report.
inline WhittakerReport certify_simplicity(const ModulePresentationPtr& p, const Truncation& t,
                                          const SolverOptions& opt = {}) {
  return whittaker_vectors(p, t, opt);
}

/// Kernel of the full (unblocked) system at the top level.
std::vector<ModuleElement> whittaker_vectors_unblocked(const ModulePresentation& p, const Truncation& t);

enum class LengthStatus { Pass, Fail, Skipped };
std::string length_status_name(LengthStatus s);

struct LengthRow {
  std::string name;
  std::optional<int> length;
  int dim = 0;
  LengthStatus status = LengthStatus::Skipped;
  bool equality = false;
  std::string note;
};

struct LengthInstance {
  std::string name;
  ModulePresentationPtr module;
  Truncation truncation;
};

/// dim Wh ≤ length on every instance with a known length; others are skipped.
std::vector<LengthRow> length_bound_check(const std::vector<LengthInstance>& instances,
                                          const SolverOptions& opt = {});

struct SweepPoint {
  /// Parameter values in display order, e.g. {"lambda", "3"}.
  std::vector<std::pair<std::string, std::string>> params;
  ModuleDescriptor module;
};

struct SweepRow {
  SweepPoint point;
  std::optional<WhittakerReport> report;
  std::string error;
};

/// One report per point, in input order; per-point errors are recorded.
std::vector<SweepRow> sweep(const std::vector<SweepPoint>& points, const PbwAlgebraPtr& pbw, const Truncation& t,
                            const SolverOptions& opt = {});

}  // namespace whittaker

#endif  // WHITTAKER_SOLVER_HPP
