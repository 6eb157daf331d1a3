#include "whittaker/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <map>

#include "whittaker/error.hpp"
#include "whittaker/io.hpp"

namespace whittaker {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Overrides {
  std::string config;
  std::string format;
  std::string out;
  std::optional<int> depth;
  std::optional<int> factor_degree;
  std::optional<std::uint64_t> seed;
};

// One algebra per root system, backed by the on-disk cache.
class AlgebraPool {
 public:
  explicit AlgebraPool(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  PbwAlgebraPtr get(const io::RootSpec& spec) {
    auto rs = build_root_system(spec.type, spec.rank);
    auto& slot = pool_[rs->fingerprint()];
    if (!slot) {
      slot = std::make_shared<PbwAlgebra>(rs);
      if (dir_) slot->load_cache(*dir_ / (rs->fingerprint() + ".json"));
    }
    return slot;
  }

  void save() const {
    if (!dir_) return;
    for (const auto& [fp, a] : pool_) {
      try {
        a->save_cache(*dir_ / (fp + ".json"));
      } catch (const std::exception&) {
        // The cache is an optimisation; an unwritable directory is not an error.
      }
    }
  }

 private:
  std::optional<std::filesystem::path> dir_;
  std::map<std::string, PbwAlgebraPtr> pool_;
};

io::ExperimentConfig load(const Overrides& o, bool required) {
  io::ExperimentConfig c;
  if (!o.config.empty()) {
    c = io::load_config(o.config);
  } else if (required) {
    throw Error(ErrorKind::InvalidConfig, "--config: required");
  }
  if (o.depth) c.truncation.depth = *o.depth;
  if (o.factor_degree) c.truncation.factor_degree = *o.factor_degree;
  if (o.seed) c.seed = *o.seed;
  if (!o.format.empty()) c.format = o.format;
  if (!o.out.empty()) c.output_path = o.out;
  return c;
}

void emit(const io::ExperimentConfig& c, const std::string& body, const std::string& summary, std::ostream& out,
          std::ostream& err) {
  if (c.output_path.empty()) {
    out << body;
    if (!body.empty() && body.back() != '\n') out << '\n';
    err << summary << '\n';
  } else {
    io::atomic_write(c.output_path, body);
    out << summary << '\n';
  }
}

int cmd_roots(const std::string& type, int rank, const std::string& format, std::ostream& out) {
  const auto rs = build_root_system(type, rank);
  if (format == "csv") {
    out << "index,height,coords\n";
    for (int k = 0; k < rs->num_positive(); ++k) {
      std::string coords;
      for (int x : rs->positive_root(k)) coords += (coords.empty() ? "" : " ") + std::to_string(x);
      out << k << ',' << rs->height(k) << ',' << coords << '\n';
    }
  } else {
    out << io::root_system_json(*rs).dump(2) << '\n';
  }
  return kOk;
}

int cmd_certify(const Overrides& o, AlgebraPool& pool, std::ostream& out, std::ostream& err) {
  const auto c = load(o, true);
  if (!c.module) throw Error(ErrorKind::InvalidConfig, "module: required for certify");
  if (c.has_grid) throw Error(ErrorKind::InvalidConfig, "grid: use the sweep command");
  auto pbw = pool.get(c.root_system);
  auto desc = *c.module;
  io::fill_generic_parameters(desc, pbw->roots(), c.seed);
  ModulePresentationPtr p;
  try {
    p = build_module(desc, pbw);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("module: ") + e.what());
  }
  try {
    const auto report = whittaker_vectors(p, c.truncation);
    pool.save();
    const std::string body = c.format == "csv" ? io::report_csv(report) : io::report_json(report).dump(2) + "\n";
    emit(c, body, io::summary_line(report), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

int cmd_sweep(const Overrides& o, AlgebraPool& pool, std::ostream& out, std::ostream& err) {
  const auto c = load(o, true);
  if (!c.has_grid) throw Error(ErrorKind::InvalidConfig, "grid: required for sweep");
  auto pbw = pool.get(c.root_system);
  const auto points = io::expand_grid(c);
  const auto rows = sweep(points, pbw, c.truncation);
  pool.save();
  std::vector<std::string> axes;
  for (const auto& [axis, values] : c.grid) axes.push_back(axis);
  int errors = 0;
  int locus = 0;
  for (const auto& r : rows) {
    errors += !r.report;
    locus += r.report && r.report->dim_lower_bound >= 2;
  }
  const std::string body = c.format == "csv" ? io::sweep_csv(axes, rows)
                                             : io::sweep_json(pbw->roots(), c.truncation, rows).dump(2) + "\n";
  emit(c, body,
       "points=" + std::to_string(rows.size()) + " not_simple=" + std::to_string(locus) +
           " errors=" + std::to_string(errors),
       out, err);
  return errors ? kFailure : kOk;
}

int cmd_corollary(const Overrides& o, AlgebraPool& pool, std::ostream& out, std::ostream& err) {
  auto c = o.config.empty() ? io::parse_config(io::default_corollary_suite()) : io::load_config(o.config);
  if (c.instances.empty()) throw Error(ErrorKind::InvalidConfig, "instances: required for corollary");
  if (!o.out.empty()) c.output_path = o.out;
  std::vector<LengthInstance> instances;
  for (auto& s : c.instances) {
    if (o.depth) s.truncation.depth = *o.depth;
    if (o.factor_degree) s.truncation.factor_degree = *o.factor_degree;
    auto pbw = pool.get(s.root_system);
    io::fill_generic_parameters(s.module, pbw->roots(), o.seed.value_or(c.seed));
    instances.push_back({s.name, build_module(s.module, pbw), s.truncation});
  }
  const auto rows = length_bound_check(instances);
  pool.save();
  bool violated = false;
  int equalities = 0;
  for (const auto& r : rows) {
    violated |= r.status == LengthStatus::Fail;
    equalities += r.equality;
  }
  const std::string body = io::corollary_json(rows).dump(2) + "\n";
  if (!c.output_path.empty()) io::atomic_write(c.output_path, body);
  out << (o.format == "json" && c.output_path.empty() ? body : io::corollary_text(rows));
  err << (violated ? "VIOLATED" : "HOLDS") << " equality_rows=" << equalities << '\n';
  return violated ? kFailure : kOk;
}

int cmd_cache(const std::string& action, std::ostream& out) {
  const auto dir = cache_directory();
  if (!dir) {
    out << "cache disabled\n";
    return kOk;
  }
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  if (std::filesystem::is_directory(*dir, ec)) {
    for (const auto& e : std::filesystem::directory_iterator(*dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (action == "clear") {
    for (const auto& f : files) std::filesystem::remove(f);
    out << "removed " << files.size() << " file(s) from " << dir->string() << '\n';
    return kOk;
  }
  out << "directory " << dir->string() << '\n';
  std::size_t total = 0;
  for (const auto& f : files) {
    std::size_t entries = 0;
    std::string system = "?";
    try {
      std::ifstream in(f);
      const auto j = nlohmann::json::parse(in);
      entries = j.at("entries").size();
      system = j.value("fingerprint", "?");
    } catch (const std::exception&) {
      system = "unreadable";
    }
    total += entries;
    out << f.filename().string() << ' ' << system << " entries=" << entries << '\n';
  }
  out << "files=" << files.size() << " entries=" << total << '\n';
  return kOk;
}

}  // namespace

std::optional<std::filesystem::path> cache_directory() {
  if (const char* env = std::getenv("WHITTAKER_CACHE_DIR")) {
    if (*env == '\0') return std::nullopt;
    return std::filesystem::path(env);
  }
  const char* home = std::getenv("HOME");
  if (!home || !*home) return std::nullopt;
  return std::filesystem::path(home) / ".cache" / "whittaker";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Whittaker vectors of modules over semisimple Lie algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "whittaker 0.1.0");
  Overrides o;
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "experiment file (JSON)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "output file (written atomically)");
    sub->add_option("--depth", o.depth, "m̄-depth of the truncation")->check(CLI::NonNegativeNumber);
    sub->add_option("--factor-deg", o.factor_degree, "factor degree of the truncation")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "seed for generic parameters");
  };

  std::string type;
  int rank = 0;
  std::string roots_format = "json";
  auto* roots = app.add_subcommand("roots", "print the positive roots and Cartan matrix");
  roots->add_option("--type,type", type, "Cartan type (A, B, C, D, G)")->required();
  roots->add_option("--rank,rank", rank, "rank")->required()->check(CLI::PositiveNumber);
  roots->add_option("--format", roots_format, "output format")->check(CLI::IsMember({"json", "csv"}));

  auto* certify = app.add_subcommand("certify", "Whittaker vectors and simplicity verdict for one module");
  add_common(certify);
  auto* sweep_cmd = app.add_subcommand("sweep", "certify over a parameter grid");
  add_common(sweep_cmd);
  auto* corollary = app.add_subcommand("corollary", "check dim Wh ≤ length on a suite of modules");
  add_common(corollary);

  std::string action;
  auto* cache = app.add_subcommand("cache", "inspect or clear the straightening cache");
  cache->add_option("action", action, "stats or clear")->required()->check(CLI::IsMember({"stats", "clear"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  AlgebraPool pool(cache_directory());
  try {
    if (*roots) return cmd_roots(type, rank, roots_format, out);
    if (*certify) return cmd_certify(o, pool, out, err);
    if (*sweep_cmd) return cmd_sweep(o, pool, out, err);
    if (*corollary) return cmd_corollary(o, pool, out, err);
    if (*cache) return cmd_cache(action, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidConfig || e.kind() == ErrorKind::UnsupportedType ||
                   e.kind() == ErrorKind::InvalidParams || e.kind() == ErrorKind::NonOrthogonalSupport ||
                   e.kind() == ErrorKind::DimensionMismatch
               ? kUsage
               : kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace whittaker
