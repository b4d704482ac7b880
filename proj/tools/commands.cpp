#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <utility>

#include "adembed/analysis.hpp"
#include "adembed/bench_ann.hpp"
#include "adembed/bench_classifier.hpp"
#include "adembed/bitcode.hpp"
#include "adembed/errors.hpp"
#include "adembed/montecarlo.hpp"
#include "adembed/parallel.hpp"
#include "adembed/special.hpp"

namespace adembed::cli {

namespace {

// Confidence level reported in the chernoff_eps column.
constexpr double kChernoffDelta = 0.05;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Grid k * step for k = 0, 1, ... while the value stays <= upper (inclusive,
// with slack for accumulated rounding) and < 1 when exclude_one is set.
std::vector<double> grid_points(double step, double upper, bool exclude_one) {
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double x = static_cast<double>(k) * step;
    if (x > upper + 1e-9) break;
    if (exclude_one && x > 1.0 - 1e-9) break;
    out.push_back(std::min(x, upper));
  }
  return out;
}

ProjectionSpec curve_spec(const RunConfig& cfg) { return ProjectionSpec{cfg.seed, *cfg.n, *cfg.m_pool, cfg.sigma}; }

}  // namespace

void RunConfig::resolve() {
  auto set_default = [](auto& field, auto value) {
    if (!field) field = value;
  };
  if (command == "curve" || command == "curve3") {
    set_default(n, std::size_t{512});
    set_default(m, std::size_t{800});
    set_default(m_pool, std::size_t{5000});
    set_default(trials, command == "curve" ? std::size_t{2000} : std::size_t{10000});
    set_default(grid, command == "curve" ? 0.05 : 0.2);
  } else if (command == "roc") {
    set_default(n, std::size_t{2048});
    set_default(m_pool, std::size_t{2048});
    set_default(m, std::size_t{256});
    set_default(rho, 0.07);
    set_default(delta, 2.0);
  } else if (command == "classify" || command == "synth") {
    set_default(n, std::size_t{1024});
    set_default(m_pool, *n);
    set_default(m, std::size_t{32});
    set_default(delta, 2.0);
    set_default(count, std::size_t{5000});
  } else if (command == "verify") {
    set_default(trials, std::size_t{2000});
  }
  if (!(sigma > 0.0)) throw DomainError("--sigma must be > 0");
  if (m && m_pool && (*m < 1 || *m > *m_pool)) throw DomainError("--m must lie in [1, --mpool]");
  if (n && *n < 1) throw DomainError("--n must be >= 1");
  if (trials && *trials < 1) throw DomainError("--trials must be >= 1");
  if (rho && !(*rho > 0.0 && *rho < 1.0)) throw DomainError("--rho must lie in (0, 1)");
  if (delta && !(*delta > 0.0)) throw DomainError("--delta must be > 0");
  if (grid && !(*grid > 0.0 && *grid <= 1.0)) throw DomainError("--grid must lie in (0, 1]");
  if (reference != "entry" && reference != "query") throw DomainError("--reference must be query or entry");
  if (command == "roc" && !ann::parse_method(method)) {
    throw DomainError("unknown --method " + method);
  }
  if ((command == "classify" || command == "synth") && k < 2) throw DomainError("--k must be >= 2");
}

std::string config_header(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# adembed " << ADEMBED_VERSION << "\n";
  os << "# command=" << cfg.command << "\n";
  auto opt = [&](const char* key, const auto& value) {
    if (value) os << "# " << key << "=" << num(static_cast<double>(*value)) << "\n";
  };
  opt("n", cfg.n);
  opt("m", cfg.m);
  opt("mpool", cfg.m_pool);
  os << "# sigma=" << num(cfg.sigma) << "\n";
  os << "# seed=" << cfg.seed << "\n";
  opt("trials", cfg.trials);
  opt("rho", cfg.rho);
  opt("delta", cfg.delta);
  opt("grid", cfg.grid);
  if (cfg.command == "roc") {
    os << "# reference=" << cfg.reference << "\n";
    os << "# method=" << cfg.method << "\n";
    os << "# ntrue=" << cfg.n_true << "\n";
    os << "# nfalse=" << cfg.n_false << "\n";
  }
  if (cfg.command == "classify" || cfg.command == "synth") {
    os << "# k=" << cfg.k << "\n";
    opt("count", cfg.count);
    os << "# margin=" << num(cfg.margin) << "\n";
    if (!cfg.features_path.empty()) os << "# features=" << cfg.features_path << "\n";
    if (!cfg.model_path.empty()) os << "# model=" << cfg.model_path << "\n";
  }
  return os.str();
}

std::string cmd_curve(const RunConfig& cfg) {
  const ProjectionSpec spec = curve_spec(cfg);
  const std::vector<double> dots = grid_points(*cfg.grid, 1.0, true);
  const ReferenceFixture fixture = make_reference_fixture(spec, *cfg.m);
  const std::vector<double> empirical = empirical_pair_distance(fixture, dots, *cfg.trials, cfg.seed);

  std::ostringstream os;
  os << config_header(cfg);
  os << "# unit-norm reference and test signals; chernoff_eps is the relative deviation bounded at "
     << num(1.0 - kChernoffDelta) << " confidence\n";
  os << "dot_uv,adaptive_analytic,adaptive_empirical,nonadaptive_analytic,thm2_bound,chernoff_eps\n";
  for (std::size_t i = 0; i < dots.size(); ++i) {
    const PairGeometry geom = PairGeometry::unit(dots[i]);
    const double analytic = expected_dh_adaptive(fixture.embedder, geom);
    const double bound = expected_dh_upper_bound(*cfg.m, *cfg.m_pool, geom, cfg.sigma);
    const double eps = analytic > 0.0 ? chernoff_eps_for(analytic, *cfg.m, kChernoffDelta) : std::nan("");
    os << num(dots[i]) << "," << num(analytic) << "," << num(empirical[i]) << "," << num(sign_rp_expected_dh(geom))
       << "," << num(bound) << "," << num(eps) << "\n";
  }
  return os.str();
}

std::string cmd_curve3(const RunConfig& cfg) {
  const ProjectionSpec spec = curve_spec(cfg);
  const std::vector<double> axis = grid_points(*cfg.grid, 0.8, false);
  std::vector<std::pair<double, double>> points;
  for (double vw : axis) {
    for (double uw : axis) points.emplace_back(vw, uw);
  }
  const ReferenceFixture fixture = make_reference_fixture(spec, *cfg.m);
  const std::vector<double> empirical = empirical_three_party_distance(fixture, points, *cfg.trials, cfg.seed);

  std::ostringstream os;
  os << config_header(cfg);
  os << "# unit-norm signals; v = (v.w) w + noise orthogonal to u and w, so u.v = (u.w)(v.w)\n";
  os << "dot_vw,dot_uw,dot_uv,adaptive_analytic,adaptive_empirical,nonadaptive_analytic\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [vw, uw] = points[i];
    const TripleGeometry geom = TripleGeometry::unit(vw * uw, uw, vw);
    os << num(vw) << "," << num(uw) << "," << num(vw * uw) << "," << num(expected_dh_three_party(fixture.embedder, geom))
       << "," << num(empirical[i]) << "," << num(sign_rp_expected_dh(PairGeometry::unit(vw))) << "\n";
  }
  return os.str();
}

std::string cmd_roc(const RunConfig& cfg) {
  ann::AnnConfig acfg;
  acfg.n = *cfg.n;
  acfg.m_pool = *cfg.m_pool;
  acfg.m = *cfg.m;
  acfg.rho_true = *cfg.rho;
  acfg.delta_universal = *cfg.delta;
  acfg.sigma = cfg.sigma;
  acfg.seed = cfg.seed;
  acfg.n_true = cfg.n_true;
  acfg.n_false = cfg.n_false;
  acfg.reference = cfg.reference == "query" ? ann::Reference::query : ann::Reference::entry;
  const ann::AnnExperiment experiment(acfg);
  const ann::Method selected = ann::parse_method(cfg.method).value();

  std::ostringstream os;
  os << config_header(cfg);
  const ann::RocResult main = experiment.run(selected);
  os << "threshold,p_detect,p_false_alarm\n";
  for (const auto& p : main.points) {
    os << num(p.threshold) << "," << num(p.p_detect) << "," << num(p.p_false_alarm) << "\n";
  }
  const auto& data = experiment.dataset();
  os << "# contrast=" << num(ann::contrast(data.query, data.entries, data.is_true)) << "\n";
  for (ann::Method method : {ann::Method::uncompressed, ann::Method::adaptive, ann::Method::sign_rp_eq_storage,
                             ann::Method::sign_rp_eq_complexity, ann::Method::universal}) {
    const ann::RocResult r = method == selected ? main : experiment.run(method);
    os << "# summary method=" << ann::to_string(method) << " auc=" << num(r.auc) << " code_bits=" << r.code_length
       << " storage_bits=" << num(r.storage_bits) << "\n";
  }
  return os.str();
}

std::string cmd_classify(const RunConfig& cfg) {
  clf::LinearModel model;
  clf::FeatureSet features;
  if (!cfg.features_path.empty() || !cfg.model_path.empty()) {
    if (cfg.features_path.empty() || cfg.model_path.empty()) {
      throw DomainError("--features and --model must be given together");
    }
    model = clf::load_model(cfg.model_path);
    std::size_t k = 0;
    features = clf::load_features(cfg.features_path, &k);
    if (k != model.k || features.n != model.n) throw ShapeError("feature file does not match model");
  } else {
    auto task = clf::generate_synthetic_task(cfg.k, *cfg.n, *cfg.count, cfg.margin, cfg.seed);
    model = std::move(task.model);
    features = std::move(task.features);
  }
  const std::size_t m_pool = cfg.m_pool.value_or(model.n);
  const std::size_t m = *cfg.m;
  if (m > m_pool) throw DomainError("--m must not exceed --mpool");
  const ProjectionSpec spec{cfg.seed, model.n, m_pool, cfg.sigma};
  const std::size_t m_storage = equal_storage_length(m, m_pool);
  const std::size_t rows = std::max(m_pool, m_storage);
  const ProjectionSpec wide = spec.with_pool(rows);
  const std::vector<double> proj = project_batch(wide, features.features, rows);

  std::ostringstream os;
  os << config_header(cfg);
  os << "method,code_bits,storage_bits,accuracy\n";
  os << "uncompressed," << model.n * 32 << "," << num(32.0 * static_cast<double>(model.n)) << ","
     << num(clf::evaluate(model, features)) << "\n";
  struct Row {
    const char* name;
    clf::Mode mode;
    std::size_t length;
    const ProjectionSpec* spec;
  };
  const Row table[] = {
      {"adaptive", clf::Mode::adaptive, m, &spec},
      {"signrp-complexity", clf::Mode::sign_rp, m, &wide},
      {"signrp-storage", clf::Mode::sign_rp, m_storage, &wide},
      {"universal-complexity", clf::Mode::universal, m, &wide},
      {"universal-storage", clf::Mode::universal, m_storage, &wide},
  };
  for (const Row& row : table) {
    const clf::CompressedModel cm = clf::compress_model(model, row.mode, row.length, *row.spec, *cfg.delta);
    os << row.name << "," << row.length << "," << num(cm.storage_bits_per_class()) << ","
       << num(clf::evaluate_projected(cm, proj, rows, features.labels)) << "\n";
  }
  return os.str();
}

std::string cmd_synth(const RunConfig& cfg) {
  if (cfg.features_path.empty() || cfg.model_path.empty()) {
    throw DomainError("synth needs --features and --model output paths");
  }
  const auto task = clf::generate_synthetic_task(cfg.k, *cfg.n, *cfg.count, cfg.margin, cfg.seed);
  clf::save_model(cfg.model_path, task.model);
  clf::save_features(cfg.features_path, task.features, task.model.k);
  std::ostringstream os;
  os << config_header(cfg);
  os << "# wrote " << task.features.size() << " features and " << task.model.k << " weight vectors\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive binary embeddings from order statistics of random projections"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "signal dimension");
    sub->add_option("--m", cfg.m, "bits per code");
    sub->add_option("--mpool", cfg.m_pool, "projection pool size");
    sub->add_option("--sigma", cfg.sigma, "projection entry standard deviation");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads (overrides ADEMBED_THREADS)");
  };

  auto* curve = app.add_subcommand(
      "curve",
      "Expected Hamming distance vs u.v for the adaptive embedding. Columns: dot_uv, adaptive_analytic "
      "(exact predictor), adaptive_empirical (Monte Carlo), nonadaptive_analytic (theta/pi), thm2_bound "
      "(reference-free bound), chernoff_eps (95% relative deviation)");
  add_common(curve);
  curve->add_option("--trials", cfg.trials, "Monte Carlo test signals");
  curve->add_option("--grid", cfg.grid, "step of the u.v grid on [0, 1)");

  auto* curve3 = app.add_subcommand(
      "curve3",
      "Expected Hamming distance between two test signals over a (v.w, u.w) grid on [0, 0.8]^2. Columns: "
      "dot_vw, dot_uw, dot_uv, adaptive_analytic, adaptive_empirical, nonadaptive_analytic");
  add_common(curve3);
  curve3->add_option("--trials", cfg.trials, "Monte Carlo signal pairs");
  curve3->add_option("--grid", cfg.grid, "grid step");

  auto* roc = app.add_subcommand(
      "roc", "Low-contrast nearest-neighbour ROC. Columns: threshold, p_detect, p_false_alarm; trailing "
             "'# summary' lines give AUC and storage per method");
  add_common(roc);
  roc->add_option("--rho", cfg.rho, "expected correlation of true neighbours");
  roc->add_option("--delta", cfg.delta, "universal embedding quantization step");
  roc->add_option("--reference", cfg.reference, "which side adapts the embedding")
      ->check(CLI::IsMember({"query", "entry"}));
  roc->add_option("--method", cfg.method, "method for the ROC rows")
      ->check(CLI::IsMember({"adaptive", "signrp-storage", "signrp-complexity", "universal", "uncompressed"}));
  roc->add_option("--ntrue", cfg.n_true, "true neighbours in the database");
  roc->add_option("--nfalse", cfg.n_false, "disturbers in the database");

  auto* classify = app.add_subcommand(
      "classify", "Compressed linear classification accuracy. Columns: method, code_bits, storage_bits, accuracy");
  add_common(classify);
  classify->add_option("--delta", cfg.delta, "universal embedding quantization step");
  classify->add_option("--k", cfg.k, "classes (synthetic task)");
  classify->add_option("--count", cfg.count, "feature vectors (synthetic task)");
  classify->add_option("--margin", cfg.margin, "class margin (synthetic task)");
  classify->add_option("--features", cfg.features_path, "AEF1 feature file");
  classify->add_option("--model", cfg.model_path, "AEW1 model file");

  auto* synth = app.add_subcommand("synth", "Write a synthetic task as AEF1/AEW1 files");
  add_common(synth);
  synth->add_option("--k", cfg.k, "classes");
  synth->add_option("--count", cfg.count, "feature vectors");
  synth->add_option("--margin", cfg.margin, "class margin");
  synth->add_option("--features", cfg.features_path, "feature file to write")->required();
  synth->add_option("--model", cfg.model_path, "model file to write")->required();

  auto* verify = app.add_subcommand("verify", "Run every registered invariant check; exit 1 on any failure");
  add_common(verify);
  verify->add_option("--trials", cfg.trials, "Monte Carlo trials for statistical checks");
  verify->add_option("--inject-fault", cfg.inject_fault, "corrupt a primitive to exercise the checks")
      ->check(CLI::IsMember({"erf"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    cfg.resolve();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (cfg.threads > 0) set_thread_count(cfg.threads);

  std::string text;
  int code = kExitOk;
  try {
    if (cfg.command == "curve") {
      text = cmd_curve(cfg);
    } else if (cfg.command == "curve3") {
      text = cmd_curve3(cfg);
    } else if (cfg.command == "roc") {
      text = cmd_roc(cfg);
    } else if (cfg.command == "classify") {
      text = cmd_classify(cfg);
    } else if (cfg.command == "synth") {
      text = cmd_synth(cfg);
    } else if (cfg.command == "verify") {
      const auto results = cmd_verify(cfg);
      text = format_verify_report(results);
      const bool ok = std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
      code = ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.out << "\n";
      return kExitUsage;
    }
    file << text;
  }
  return code;
}

}  // namespace adembed::cli
