#include "whittaker/solver.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <tuple>
#include <unordered_map>

#include "whittaker/error.hpp"
#include "whittaker/linalg.hpp"

namespace whittaker {

namespace {

// Collects the first exception thrown inside an OpenMP loop body.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& body) {
    try {
      body();
    } catch (...) {
#pragma omp critical(whittaker_error_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

struct Block {
  int summand = 0;
  int depth = 0;
  std::vector<Rational> offset;
  std::vector<int> cols;
};

struct BlockResult {
  std::vector<int> level_dims;
  std::vector<ModuleElement> vectors;
};

// Kernel of the operator restricted to the given columns (ascending).
std::vector<std::vector<Rational>> restricted_kernel(const OperatorColumns& op, const std::vector<int>& cols,
                                                     std::size_t nbasis) {
  std::map<long, linalg::SparseRow> rows;
  for (int local = 0; local < static_cast<int>(cols.size()); ++local) {
    for (const auto& [i, r, c] : op.columns[cols[local]]) {
      rows[static_cast<long>(i) * static_cast<long>(nbasis) + r].emplace_back(local, c);
    }
  }
  std::vector<linalg::SparseRow> list;
  list.reserve(rows.size());
  for (auto& [k, row] : rows) list.push_back(std::move(row));
  return linalg::nullspace(list, static_cast<int>(cols.size())).basis;
}

ModuleElement to_element(const std::vector<Rational>& v, const std::vector<int>& cols,
                         const std::vector<ModuleMonomial>& basis) {
  ModuleElement w;
  for (std::size_t k = 0; k < v.size(); ++k) w.add(basis[cols[k]], v[k]);
  return w;
}

bool is_whittaker(const ModulePresentation& p, const ModuleElement& w) {
  for (int i = 0; i < p.roots().rank(); ++i) {
    if (!p.bullet_simple(i, w).is_zero()) return false;
  }
  return true;
}

int rank_of(const std::vector<ModuleElement>& vectors) {
  std::map<ModuleMonomial, int> index;
  for (const auto& w : vectors) {
    for (const auto& [m, c] : w.terms) index.emplace(m, 0);
  }
  int k = 0;
  for (auto& [m, i] : index) i = k++;
  std::vector<linalg::SparseRow> rows;
  for (const auto& w : vectors) {
    linalg::SparseRow row;
    for (const auto& [m, c] : w.terms) row.emplace_back(index[m], c);
    rows.push_back(std::move(row));
  }
  return linalg::nullspace(rows, k).rank;
}

}  // namespace

Truncation Truncation::shrink(int i) const {
  Truncation t = *this;
  t.depth = std::max(0, depth - i);
  t.factor_degree = std::max(0, factor_degree - i);
  return t;
}

bool in_truncation(const ModulePresentation& p, const Truncation& t, const ModuleMonomial& m) {
  const int d = p.depth(m);
  return d <= t.depth && p.factor_degree(m) <= t.factor_cap(d);
}

std::vector<ModuleMonomial> truncated_basis(const ModulePresentation& p, const Truncation& t) {
  std::vector<ModuleMonomial> out;
  for (int s = 0; s < p.num_summands(); ++s) {
    const auto& data = p.summand(s);
    ModuleMonomial m = p.cyclic_monomial(s);
    const std::size_t nf = data.factors.size();

    std::function<void(std::size_t, int)> factors = [&](std::size_t j, int cap) {
      if (j == nf) {
        out.push_back(m);
        return;
      }
      for (int a = 0; a <= cap; ++a) {
        for (int e = 0; e <= 1; ++e) {
          m.a[j] = static_cast<std::uint16_t>(a);
          m.eps[j] = static_cast<std::uint8_t>(e);
          factors(j + 1, cap);
        }
      }
      m.a[j] = 0;
      m.eps[j] = 0;
    };
    std::function<void(std::size_t, int)> mbar = [&](std::size_t q, int used) {
      if (q == m.mbar.size()) {
        factors(0, t.factor_cap(used));
        return;
      }
      for (int b = 0; used + b * data.mbar_depth[q] <= t.depth; ++b) {
        m.mbar[q] = static_cast<std::uint16_t>(b);
        mbar(q + 1, used + b * data.mbar_depth[q]);
      }
      m.mbar[q] = 0;
    };
    mbar(0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OperatorColumns assemble_operator(const ModulePresentation& p, const std::vector<ModuleMonomial>& basis,
                                  bool parallel) {
  std::unordered_map<ModuleMonomial, int, ModuleMonomialHash> index;
  index.reserve(basis.size());
  for (int r = 0; r < static_cast<int>(basis.size()); ++r) index.emplace(basis[r], r);

  OperatorColumns op;
  op.columns.resize(basis.size());
  const int rank = p.roots().rank();
  ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
    errors.run([&] {
      ModuleElement w;
      w.add(basis[col], 1);
      auto& entries = op.columns[col];
      for (int i = 0; i < rank; ++i) {
        for (const auto& [m, c] : p.bullet_simple(i, w).terms) {
          auto it = index.find(m);
          if (it == index.end()) {
            throw Error(ErrorKind::TruncationNotClosed,
                        "e" + std::to_string(i + 1) + " maps " + p.format_monomial(basis[col]) + " to " +
                            p.format_monomial(m) + ", outside the truncation; enlarge the factor degree");
          }
          entries.emplace_back(i, it->second, c);
        }
      }
    });
  }
  errors.rethrow();
  return op;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::SimpleUpTo: return "SIMPLE_UPTO";
    case Verdict::NotSimple: return "NOT_SIMPLE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

WhittakerReport whittaker_vectors(const ModulePresentationPtr& pp, const Truncation& t, const SolverOptions& opt) {
  const ModulePresentation& p = *pp;
  if (t.depth < 0 || t.factor_degree < 0 || t.window < 0) {
    throw Error(ErrorKind::InvalidParams, "truncation bounds must be non-negative");
  }
  const auto basis = truncated_basis(p, t);
  const auto op = assemble_operator(p, basis, opt.parallel);

  // Genuinely distinct nested levels.
  std::vector<Truncation> levels{t};
  std::vector<std::size_t> sizes{basis.size()};
  for (int i = 1; i <= t.window; ++i) {
    const Truncation s = t.shrink(i);
    const auto n = static_cast<std::size_t>(
        std::count_if(basis.begin(), basis.end(), [&](const auto& m) { return in_truncation(p, s, m); }));
    if (n >= sizes.back()) break;
    levels.push_back(s);
    sizes.push_back(n);
  }

  std::map<std::pair<int, std::vector<Rational>>, Block> grouped;
  for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
    const auto& m = basis[col];
    auto& b = grouped[{m.summand, p.weight_offset(m).coords}];
    if (b.cols.empty()) {
      b.summand = m.summand;
      b.depth = p.depth(m);
      b.offset = p.weight_offset(m).coords;
    }
    b.depth = std::min(b.depth, p.depth(m));
    b.cols.push_back(col);
  }
  std::vector<Block> blocks;
  for (auto& [k, b] : grouped) blocks.push_back(std::move(b));
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
    return std::tie(x.summand, x.depth, x.offset) < std::tie(y.summand, y.depth, y.offset);
  });

  std::vector<BlockResult> results(blocks.size());
  ErrorSlot errors;
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
    errors.run([&] {
      const Block& b = blocks[bi];
      auto& res = results[bi];
      for (std::size_t l = 0; l < levels.size(); ++l) {
        std::vector<int> cols;
        for (int c : b.cols) {
          if (l == 0 || in_truncation(p, levels[l], basis[c])) cols.push_back(c);
        }
        const auto ker = restricted_kernel(op, cols, basis.size());
        res.level_dims.push_back(static_cast<int>(ker.size()));
        if (l == 0) {
          for (const auto& v : ker) res.vectors.push_back(to_element(v, cols, basis));
        }
      }
    });
  }
  errors.rethrow();

  WhittakerReport rep;
  rep.module = pp;
  rep.truncation = t;
  rep.basis_size = basis.size();
  rep.level_dims.assign(levels.size(), 0);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (std::size_t l = 0; l < levels.size(); ++l) rep.level_dims[l] += results[bi].level_dims[l];
    const int found = static_cast<int>(results[bi].vectors.size());
    for (auto& w : results[bi].vectors) {
      if (!is_whittaker(p, w)) {
        throw Error(ErrorKind::ReductionDivergence, "kernel vector failed exact re-verification: " + p.format_element(w));
      }
      rep.exact_vectors.push_back(std::move(w));
    }
    if (found > 0) {
      WeightBlock wb;
      wb.summand = blocks[bi].summand;
      wb.depth = blocks[bi].depth;
      if (p.summand(wb.summand).graded) {
        wb.weight = (ZWeight{p.summand(wb.summand).central.centre_weight} - ZWeight{blocks[bi].offset}).coords;
      }
      wb.dim = found;
      rep.per_weight.push_back(std::move(wb));
    }
  }
  rep.dim_lower_bound = rank_of(rep.exact_vectors);
  if (rep.dim_lower_bound != static_cast<int>(rep.exact_vectors.size())) {
    throw Error(ErrorKind::ReductionDivergence, "block kernels are not independent");
  }
  if (opt.cross_check) {
    const auto full = whittaker_vectors_unblocked(p, t);
    if (static_cast<int>(full.size()) != rep.dim_lower_bound) {
      throw Error(ErrorKind::ReductionDivergence, "blocked and unblocked kernels differ in dimension");
    }
  }

  rep.stabilized = static_cast<int>(rep.level_dims.size()) == t.window + 1 &&
                   std::all_of(rep.level_dims.begin(), rep.level_dims.end(),
                               [&](int d) { return d == rep.level_dims.front(); });
  if (rep.dim_lower_bound >= 2) {
    rep.verdict = Verdict::NotSimple;
    // First vector outside the block of the cyclic vector, else the second one.
    const std::size_t top = results.front().vectors.size();
    rep.witness = rep.exact_vectors[top < rep.exact_vectors.size() ? top : 1];
  } else if (rep.dim_lower_bound == 1 && rep.stabilized) {
    rep.verdict = Verdict::SimpleUpTo;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

std::vector<ModuleElement> whittaker_vectors_unblocked(const ModulePresentation& p, const Truncation& t) {
  const auto basis = truncated_basis(p, t);
  const auto op = assemble_operator(p, basis, false);
  std::vector<int> cols(basis.size());
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) cols[c] = c;
  std::vector<ModuleElement> out;
  for (const auto& v : restricted_kernel(op, cols, basis.size())) out.push_back(to_element(v, cols, basis));
  return out;
}

std::string length_status_name(LengthStatus s) {
  switch (s) {
    case LengthStatus::Pass: return "PASS";
    case LengthStatus::Fail: return "FAIL";
    case LengthStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

std::vector<LengthRow> length_bound_check(const std::vector<LengthInstance>& instances, const SolverOptions& opt) {
  std::vector<LengthRow> rows(instances.size());
  ErrorSlot errors;
  SolverOptions inner = opt;
  inner.parallel = false;
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int k = 0; k < static_cast<int>(instances.size()); ++k) {
    errors.run([&] {
      const auto& inst = instances[k];
      auto& row = rows[k];
      row.name = inst.name;
      row.length = known_length(inst.module->descriptor(), inst.module->roots());
      if (!row.length) {
        row.status = LengthStatus::Skipped;
        row.note = std::string(to_string(ErrorKind::UnknownLength)) + ": no certified length for this family";
        return;
      }
      const auto rep = whittaker_vectors(inst.module, inst.truncation, inner);
      row.dim = rep.dim_lower_bound;
      row.status = row.dim <= *row.length ? LengthStatus::Pass : LengthStatus::Fail;
      row.equality = row.dim == *row.length;
    });
  }
  errors.rethrow();
  return rows;
}

std::vector<SweepRow> sweep(const std::vector<SweepPoint>& points, const PbwAlgebraPtr& pbw, const Truncation& t,
                            const SolverOptions& opt) {
  std::vector<SweepRow> rows(points.size());
  SolverOptions inner = opt;
  inner.parallel = false;
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int k = 0; k < static_cast<int>(points.size()); ++k) {
    rows[k].point = points[k];
    try {
      rows[k].report = whittaker_vectors(build_module(points[k].module, pbw), t, inner);
    } catch (const std::exception& e) {
      rows[k].error = e.what();
    }
  }
  return rows;
}

}  // namespace whittaker
