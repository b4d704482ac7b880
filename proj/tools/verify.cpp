#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "adembed/analysis.hpp"
#include "adembed/bench_ann.hpp"
#include "adembed/bench_classifier.hpp"
#include "adembed/bitcode.hpp"
#include "adembed/linalg.hpp"
#include "adembed/montecarlo.hpp"
#include "adembed/parallel.hpp"
#include "adembed/rng.hpp"
#include "adembed/special.hpp"
#include "commands.hpp"

namespace adembed::cli {

namespace {

// Operating point shared by the analytic checks.
constexpr std::size_t kCurveN = 512;
constexpr std::size_t kCurveM = 800;
constexpr std::size_t kCurvePool = 5000;

using Check = std::function<PropertyResult(const RunConfig&)>;

PropertyResult at_most(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  CounterStream s(seed, StreamDomain::trial, index);
  std::vector<double> v(n);
  for (double& x : v) x = s.gaussian();
  return v;
}

PackedCode random_code(std::size_t length, CounterStream& s) {
  PackedCode c(length);
  for (std::size_t j = 0; j < length; ++j) c.set(j, s.next_u64() & 1u);
  return c;
}

// ---- projgen ----

PropertyResult projgen_determinism(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 64, 256, 1.0};
  const auto u = gaussian_vector(spec.n, cfg.seed, 0);
  const auto all = project_leading(spec, u, spec.m_pool);
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.m_pool; i += 17) {
    const std::size_t rows[] = {i};
    worst = std::max(worst, std::abs(project(spec, u, rows)[0] - all[i]));
  }
  return at_most("projgen.row_determinism", worst, 0.0, "max |single-row - full| projection");
}

PropertyResult projgen_scale(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 64, 128, 1.0};
  const auto u = gaussian_vector(spec.n, cfg.seed, 1);
  const auto base = project_leading(spec, u, spec.m_pool);
  double worst = 0.0;
  for (double alpha : {-3.5, 0.25, 7.0, 1e6}) {
    const auto scaled_proj = project_leading(spec, scaled(u, alpha), spec.m_pool);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double ref = alpha * base[i];
      worst = std::max(worst, std::abs(scaled_proj[i] - ref) / std::max(1e-300, std::abs(ref) + norm(u) * std::abs(alpha)));
    }
  }
  return at_most("projgen.scale_equivariance", worst, 1e-12, "max relative deviation");
}

PropertyResult projgen_ks(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 16, 100000, 1.0};
  const auto u = random_unit_vector(spec.n, cfg.seed, StreamDomain::reference, 7);
  auto y = project_leading(spec, u, spec.m_pool);
  std::sort(y.begin(), y.end());
  double d = 0.0;
  const double count = static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f = special::normal_cdf(y[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / count), std::abs(static_cast<double>(i + 1) / count - f)});
  }
  // Asymptotic KS critical value at significance 1e-3.
  const double critical = std::sqrt(-std::log(0.5e-3) / 2.0) / std::sqrt(count);
  return at_most("projgen.ks_normality", d, critical, "KS statistic of y/sigma, 1e5 rows");
}

// ---- bitcode ----

PropertyResult bitcode_metric(const RunConfig& cfg) {
  CounterStream s(cfg.seed, StreamDomain::trial, 100);
  double violations = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t len = 1 + s.next_u64() % 257;
    const auto a = random_code(len, s), b = random_code(len, s), c = random_code(len, s);
    const auto ab = hamming_raw(a, b), ba = hamming_raw(b, a), bc = hamming_raw(b, c), ac = hamming_raw(a, c);
    violations += (ab != ba) + (ac > ab + bc) + (hamming_raw(a, a) != 0) + ((ab == 0) != (a == b));
  }
  return at_most("bitcode.hamming_metric", violations, 0.0, "symmetry/identity/triangle violations");
}

PropertyResult bitcode_popcount(const RunConfig& cfg) {
  CounterStream s(cfg.seed, StreamDomain::trial, 101);
  double mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t len = 1 + static_cast<std::size_t>(t) % 257;
    const auto a = random_code(len, s), b = random_code(len, s);
    std::size_t loop = 0;
    for (std::size_t j = 0; j < len; ++j) loop += a.bit(j) != b.bit(j);
    mismatch += loop != hamming_raw(a, b);
  }
  return at_most("bitcode.popcount_vs_loop", mismatch, 0.0, "pairs where popcount != bit loop");
}

PropertyResult bitcode_storage(const RunConfig&) {
  double bad = 0;
  for (std::size_t pool = 1; pool <= 64; ++pool) {
    for (std::size_t m = 0; m <= pool; ++m) {
      const double bits = storage_bits(m, pool);
      const bool equal = bits == static_cast<double>(m);
      bad += bits < static_cast<double>(m) || equal != (m == 0 || m == pool);
    }
  }
  return at_most("bitcode.storage_lower_bound", bad, 0.0, "(m, m_pool) pairs violating bits >= m");
}

// ---- embedder ----

PropertyResult embedder_scale(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 48, 300, 1.0};
  double bad = 0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto u = gaussian_vector(spec.n, cfg.seed, 200 + t);
    const auto v = gaussian_vector(spec.n, cfg.seed, 300 + t);
    const auto e = build_adaptive(spec, u, 40);
    for (double alpha : {0.5, 3.0, 1024.0}) {
      const auto sv = scaled(v, alpha);
      bad += embed(e, sv) != embed(e, v);
      bad += sign_rp_embed(spec, 40, sv) != sign_rp_embed(spec, 40, v);
    }
  }
  return at_most("embedder.scale_invariance", bad, 0.0, "codes changed by positive scaling");
}

PropertyResult embedder_self(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 48, 300, 1.0};
  double worst = 0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto u = gaussian_vector(spec.n, cfg.seed, 400 + t);
    const auto e = build_adaptive(spec, u, 1 + t * 29);
    worst = std::max(worst, static_cast<double>(hamming_raw(embed(e, u), e.ref_code)));
  }
  return at_most("embedder.self_distance", worst, 0.0, "max Hamming distance of reference to its own code");
}

PropertyResult embedder_below_signrp(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 128, kCurvePool, 1.0};
  const RowMatrix rows = RowMatrix::leading(spec, spec.m_pool);
  const double rho = 0.3;
  const std::size_t trials = 50;
  std::vector<double> adaptive(trials), baseline(trials);
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto u = random_unit_vector(spec.n, cfg.seed, StreamDomain::reference, 1000 + t);
      auto g = random_unit_vector(spec.n, cfg.seed, StreamDomain::trial, 1000 + t);
      const double c = dot(g, u);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= c * u[i];
      const double gn = norm(g);
      std::vector<double> v(spec.n);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = rho * u[i] + std::sqrt(1 - rho * rho) * g[i] / gn;
      const auto yu = rows.apply(u), yv = rows.apply(v);
      const auto e = build_adaptive_from_projections(spec, yu, kCurveM);
      adaptive[t] = hamming(e.ref_code, embed_projections(e, yv)).normalized;
      baseline[t] = hamming(sign_rp_from_projections(kCurveM, yu), sign_rp_from_projections(kCurveM, yv)).normalized;
    }
  });
  const double a = std::accumulate(adaptive.begin(), adaptive.end(), 0.0) / trials;
  const double b = std::accumulate(baseline.begin(), baseline.end(), 0.0) / trials;
  return {"embedder.adaptive_below_signrp", a < b, a - b, 0.0, "mean adaptive - sign-RP distance at rho=0.3 (< 0)"};
}

// ---- analysis ----

PropertyResult analysis_pair_law(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, kCurveN, kCurvePool, 1.0};
  const auto fixture = make_reference_fixture(spec, kCurveM);
  const std::vector<double> dots = {0.1, 0.3, 0.5};
  const auto empirical = empirical_pair_distance(fixture, dots, cfg.trials.value_or(2000), cfg.seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < dots.size(); ++i) {
    worst = std::max(worst, std::abs(empirical[i] - expected_dh_adaptive(fixture.embedder, PairGeometry::unit(dots[i]))));
  }
  return at_most("analysis.pair_law_monte_carlo", worst, 0.01, "max |empirical - predicted| over u.v in {.1,.3,.5}");
}

PropertyResult analysis_dominance(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 64, 1000, 1.0};
  const RowMatrix rows = RowMatrix::leading(spec, spec.m_pool);
  double worst = -1.0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto u = random_unit_vector(spec.n, cfg.seed, StreamDomain::reference, 2000 + t);
    const auto e = build_adaptive_from_projections(spec, rows.apply(u), 100);
    for (int k = 1; k < 20; ++k) {
      const auto geom = PairGeometry::unit(0.05 * k);
      worst = std::max(worst, expected_dh_adaptive(e, geom) - sign_rp_expected_dh(geom));
    }
  }
  return {"analysis.dominance", worst < 0.0, worst, 0.0, "max adaptive - theta/pi over 20 embedders (< 0)"};
}

PropertyResult analysis_limit(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, 64, 200, 1.0};
  const RowMatrix rows = RowMatrix::leading(spec, spec.m_pool);
  const std::vector<double> dots = {0.2, 0.5, 0.8};
  std::vector<double> mean(dots.size(), 0.0);
  const std::size_t refs = 200;
  for (std::uint64_t t = 0; t < refs; ++t) {
    const auto u = random_unit_vector(spec.n, cfg.seed, StreamDomain::reference, 3000 + t);
    const auto e = build_adaptive_from_projections(spec, rows.apply(u), spec.m_pool);
    for (std::size_t i = 0; i < dots.size(); ++i) mean[i] += expected_dh_adaptive(e, PairGeometry::unit(dots[i])) / refs;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < dots.size(); ++i) {
    worst = std::max(worst, std::abs(mean[i] - sign_rp_expected_dh(PairGeometry::unit(dots[i]))));
  }
  return at_most("analysis.limit_recovery", worst, 0.01, "m = m_pool, 200 references, max |mean - theta/pi|");
}

PropertyResult analysis_pool_monotone(const RunConfig& cfg) {
  const std::size_t m = 50;
  const std::vector<std::size_t> pools = {100, 200, 400, 800};
  const ProjectionSpec base{cfg.seed, 64, pools.back(), 1.0};
  const RowMatrix rows = RowMatrix::leading(base, base.m_pool);
  std::vector<double> mean(pools.size(), 0.0);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto u = random_unit_vector(base.n, cfg.seed, StreamDomain::reference, 4000 + t);
    const auto y = rows.apply(u);
    for (std::size_t p = 0; p < pools.size(); ++p) {
      const auto e = build_adaptive_from_projections(base.with_pool(pools[p]), std::span(y).first(pools[p]), m);
      mean[p] += expected_dh_adaptive(e, PairGeometry::unit(0.3)) / 20.0;
    }
  }
  double worst_increase = -1.0;
  for (std::size_t p = 1; p < pools.size(); ++p) worst_increase = std::max(worst_increase, mean[p] - mean[p - 1]);
  return {"analysis.pool_monotonicity", worst_increase <= 0.0, worst_increase, 0.0,
          "max increase of mean predicted distance as m_pool grows"};
}

PropertyResult analysis_upper_bound(const RunConfig& cfg) {
  const ProjectionSpec spec{cfg.seed, kCurveN, kCurvePool, 1.0};
  const auto u = random_unit_vector(spec.n, cfg.seed, StreamDomain::reference, 0);
  const auto e = build_adaptive(spec, u, kCurveM);
  double worst = -1.0;
  for (int k = 0; k < 20; ++k) {
    const auto geom = PairGeometry::unit(0.05 * k);
    worst = std::max(worst, expected_dh_adaptive(e, geom) - expected_dh_upper_bound(kCurveM, kCurvePool, geom, 1.0));
  }
  return at_most("analysis.upper_bound", worst, 0.01, "max predicted - bound over u.v grid");
}

double mean_order_stat(std::size_t k, std::size_t size, bool half, std::size_t reps, std::uint64_t seed,
                       std::uint64_t offset) {
  std::vector<double> values(reps);
  parallel_for(reps, [&](std::size_t begin, std::size_t end) {
    std::vector<double> sample(size);
    for (std::size_t r = begin; r < end; ++r) {
      CounterStream s(seed, StreamDomain::trial, offset + r);
      for (double& x : sample) x = half ? std::abs(s.gaussian()) : s.gaussian();
      std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(k - 1), sample.end());
      values[r] = sample[k - 1];
    }
  });
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(reps);
}

PropertyResult analysis_half_full(const RunConfig& cfg) {
  const std::size_t k = kCurvePool - kCurveM + 1;
  const double half = mean_order_stat(k, kCurvePool, true, 400, cfg.seed, 50000);
  const double full = mean_order_stat(2 * k, 2 * kCurvePool, false, 400, cfg.seed, 60000);
  char detail[160];
  std::snprintf(detail, sizeof detail, "half-normal %zu-th of %zu = %.4f vs normal %zu-th of %zu = %.4f", k, kCurvePool,
                half, 2 * k, 2 * kCurvePool, full);
  return at_most("analysis.half_full_order_stat_equivalence", std::abs(half - full), 0.01, detail);
}

PropertyResult analysis_bvn(const RunConfig&) {
  double worst = 0.0;
  for (int i = -99; i <= 99; ++i) {
    const double rho = i / 100.0;
    const double exact = 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(special::bivariate_normal_cdf(0.0, 0.0, rho) - exact));
  }
  return at_most("analysis.bvn_origin_arcsin", worst, 1e-7, "max |F(0,0,rho) - (1/4 + asin(rho)/2pi)|");
}

PropertyResult analysis_pb_mean(const RunConfig& cfg) {
  CounterStream s(cfg.seed, StreamDomain::trial, 102);
  std::vector<double> probs(800);
  for (double& p : probs) p = s.uniform();
  const auto pmf = poisson_binomial_pmf(probs);
  double mean = 0.0;
  for (std::size_t j = 0; j < pmf.size(); ++j) mean += static_cast<double>(j) * pmf[j];
  const double expected = std::accumulate(probs.begin(), probs.end(), 0.0);
  return at_most("analysis.poisson_binomial_mean", std::abs(mean - expected) / std::max(1.0, expected), 1e-12,
                 "relative |PMF mean - sum(p)|");
}

// ---- bench_ann ----

struct AnnRun {
  std::vector<ann::RocResult> results;
};

const AnnRun& ann_desk_run(const RunConfig& cfg) {
  static AnnRun cached;
  static std::uint64_t cached_seed = ~std::uint64_t{0};
  if (cached_seed != cfg.seed) {
    ann::AnnConfig acfg;
    acfg.seed = cfg.seed;
    const ann::AnnExperiment experiment(acfg);
    cached.results.clear();
    for (auto method : {ann::Method::uncompressed, ann::Method::adaptive, ann::Method::sign_rp_eq_storage,
                        ann::Method::sign_rp_eq_complexity, ann::Method::universal}) {
      cached.results.push_back(experiment.run(method));
    }
    cached_seed = cfg.seed;
  }
  return cached;
}

PropertyResult ann_monotone(const RunConfig& cfg) {
  double bad = 0;
  for (const auto& r : ann_desk_run(cfg).results) {
    for (std::size_t i = 1; i < r.points.size(); ++i) {
      bad += r.points[i].p_detect < r.points[i - 1].p_detect || r.points[i].p_false_alarm < r.points[i - 1].p_false_alarm;
    }
  }
  return at_most("ann.roc_monotonicity", bad, 0.0, "decreasing steps across all ROC curves");
}

PropertyResult ann_reproducible(const RunConfig& cfg) {
  ann::AnnConfig small;
  small.n = 256;
  small.m_pool = 256;
  small.m = 32;
  small.n_true = 20;
  small.n_false = 100;
  small.seed = cfg.seed;
  const auto a = ann::run_roc(small, ann::Method::adaptive);
  const auto b = ann::run_roc(small, ann::Method::adaptive);
  double diff = a.size() != b.size() ? 1.0 : 0.0;
  for (std::size_t i = 0; diff == 0.0 && i < a.size(); ++i) {
    diff += a[i].p_detect != b[i].p_detect || a[i].p_false_alarm != b[i].p_false_alarm || a[i].threshold != b[i].threshold;
  }
  return at_most("ann.reproducibility", diff, 0.0, "differing ROC points between identical runs");
}

PropertyResult ann_ceiling(const RunConfig& cfg) {
  const auto& r = ann_desk_run(cfg).results;
  double worst = -1.0;
  for (std::size_t i = 1; i < r.size(); ++i) worst = std::max(worst, r[i].auc - r[0].auc);
  return at_most("ann.uncompressed_ceiling", worst, 0.0, "max AUC(embedded) - AUC(uncompressed)");
}

PropertyResult ann_storage_vs_complexity(const RunConfig& cfg) {
  const auto& r = ann_desk_run(cfg).results;
  const double gap = r[2].auc - r[3].auc;
  return {"ann.eq_storage_beats_eq_complexity", gap > 0.0, gap, 0.0, "AUC(eq-storage) - AUC(eq-complexity) (> 0)"};
}

// ---- bench_classifier ----

struct ClassifierGrid {
  std::vector<std::size_t> ms{8, 16, 32, 64};
  std::vector<double> adaptive, signrp, storage;
  std::vector<double> adaptive_se;
};

const ClassifierGrid& classifier_grid(const RunConfig& cfg) {
  static ClassifierGrid grid;
  static std::uint64_t cached_seed = ~std::uint64_t{0};
  if (cached_seed == cfg.seed) return grid;
  const std::size_t seeds = 3, n = 256;
  const std::size_t sizes = grid.ms.size();
  std::vector<std::vector<double>> acc(sizes, std::vector<double>(seeds));
  grid.adaptive.assign(sizes, 0.0);
  grid.signrp.assign(sizes, 0.0);
  grid.storage.assign(sizes, 0.0);
  grid.adaptive_se.assign(sizes, 0.0);
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto task = clf::generate_synthetic_task(10, n, 1000, clf::kDefaultMargin, cfg.seed + s);
    const ProjectionSpec spec{cfg.seed + s, n, n, 1.0};
    const std::size_t rows = std::max(n, equal_storage_length(grid.ms.back(), n));
    const ProjectionSpec wide = spec.with_pool(rows);
    const auto proj = project_batch(wide, task.features.features, rows);
    for (std::size_t i = 0; i < sizes; ++i) {
      const std::size_t m = grid.ms[i];
      const auto eval = [&](clf::Mode mode, std::size_t len, const ProjectionSpec& sp) {
        return clf::evaluate_projected(clf::compress_model(task.model, mode, len, sp), proj, rows,
                                       task.features.labels);
      };
      acc[i][s] = eval(clf::Mode::adaptive, m, spec);
      grid.adaptive[i] += acc[i][s] / seeds;
      grid.signrp[i] += eval(clf::Mode::sign_rp, m, wide) / seeds;
      grid.storage[i] += eval(clf::Mode::sign_rp, equal_storage_length(m, n), wide) / seeds;
    }
  }
  for (std::size_t i = 0; i < sizes; ++i) {
    double var = 0.0;
    for (double a : acc[i]) var += (a - grid.adaptive[i]) * (a - grid.adaptive[i]);
    grid.adaptive_se[i] = std::sqrt(var / (seeds - 1) / seeds);
  }
  cached_seed = cfg.seed;
  return grid;
}

PropertyResult clf_monotone(const RunConfig& cfg) {
  const auto& g = classifier_grid(cfg);
  double worst = -1.0;
  for (std::size_t i = 1; i < g.ms.size(); ++i) {
    worst = std::max(worst, g.adaptive[i - 1] - g.adaptive[i] - std::max(g.adaptive_se[i], g.adaptive_se[i - 1]));
  }
  return at_most("clf.adaptive_monotone_in_m", worst, 0.0, "max accuracy drop beyond one standard error");
}

PropertyResult clf_adaptive_vs_signrp(const RunConfig& cfg) {
  const auto& g = classifier_grid(cfg);
  double worst = -1.0;
  for (std::size_t i = 0; i < g.ms.size(); ++i) worst = std::max(worst, g.signrp[i] - g.adaptive[i]);
  return at_most("clf.adaptive_ge_signrp", worst, 0.0, "max accuracy(sign-RP) - accuracy(adaptive)");
}

PropertyResult clf_storage_gap(const RunConfig& cfg) {
  const auto& g = classifier_grid(cfg);
  double worst = -1.0;
  for (std::size_t i = 0; i < g.ms.size(); ++i) {
    worst = std::max(worst, std::abs(g.adaptive[i] - g.storage[i]) - std::abs(g.adaptive[i] - g.signrp[i]));
  }
  return at_most("clf.eq_storage_narrows_gap", worst, 0.0, "max |adaptive - eq-storage| - |adaptive - eq-complexity|");
}

PropertyResult clf_self(const RunConfig& cfg) {
  const auto task = clf::generate_synthetic_task(6, 128, 1, 1.0, cfg.seed);
  const ProjectionSpec spec{cfg.seed, 128, 256, 1.0};
  const auto cm = clf::compress_model(task.model, clf::Mode::adaptive, 24, spec);
  double bad = 0;
  for (std::size_t j = 0; j < task.model.k; ++j) bad += clf::classify_compressed(cm, task.model.weights[j]) != j;
  return at_most("clf.self_classification", bad, 0.0, "weight vectors not mapped to their own class");
}

// ---- cli ----

PropertyResult cli_determinism(const RunConfig& cfg) {
  RunConfig c;
  c.command = "curve";
  c.seed = cfg.seed;
  c.n = 64;
  c.m = 40;
  c.m_pool = 400;
  c.trials = 200;
  c.grid = 0.25;
  c.resolve();
  const std::size_t saved = thread_count();
  set_thread_count(1);
  const std::string one = cmd_curve(c);
  set_thread_count(3);
  const std::string three = cmd_curve(c);
  set_thread_count(saved);
  return at_most("cli.csv_determinism", one == three ? 0.0 : 1.0, 0.0, "curve CSV differs between 1 and 3 threads");
}

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> checks = {
      {"projgen.row_determinism", projgen_determinism},
      {"projgen.scale_equivariance", projgen_scale},
      {"projgen.ks_normality", projgen_ks},
      {"bitcode.hamming_metric", bitcode_metric},
      {"bitcode.popcount_vs_loop", bitcode_popcount},
      {"bitcode.storage_lower_bound", bitcode_storage},
      {"embedder.scale_invariance", embedder_scale},
      {"embedder.self_distance", embedder_self},
      {"embedder.adaptive_below_signrp", embedder_below_signrp},
      {"analysis.pair_law_monte_carlo", analysis_pair_law},
      {"analysis.dominance", analysis_dominance},
      {"analysis.limit_recovery", analysis_limit},
      {"analysis.pool_monotonicity", analysis_pool_monotone},
      {"analysis.upper_bound", analysis_upper_bound},
      {"analysis.half_full_order_stat_equivalence", analysis_half_full},
      {"analysis.bvn_origin_arcsin", analysis_bvn},
      {"analysis.poisson_binomial_mean", analysis_pb_mean},
      {"ann.roc_monotonicity", ann_monotone},
      {"ann.reproducibility", ann_reproducible},
      {"ann.uncompressed_ceiling", ann_ceiling},
      {"ann.eq_storage_beats_eq_complexity", ann_storage_vs_complexity},
      {"clf.adaptive_monotone_in_m", clf_monotone},
      {"clf.adaptive_ge_signrp", clf_adaptive_vs_signrp},
      {"clf.eq_storage_narrows_gap", clf_storage_gap},
      {"clf.self_classification", clf_self},
      {"cli.csv_determinism", cli_determinism},
  };
  return checks;
}

}  // namespace

std::vector<std::string> verify_property_names() {
  std::vector<std::string> names;
  for (const auto& [name, check] : registry()) names.push_back(name);
  return names;
}

std::vector<PropertyResult> cmd_verify(const RunConfig& cfg) {
  const bool fault = cfg.inject_fault == "erf";
  special::set_erf_fault(fault);
  std::vector<PropertyResult> results;
  for (const auto& [name, check] : registry()) {
    try {
      PropertyResult r = check(cfg);
      r.name = name;
      results.push_back(std::move(r));
    } catch (const std::exception& e) {
      results.push_back({name, false, std::nan(""), 0.0, std::string("threw: ") + e.what()});
    }
  }
  if (fault) special::set_erf_fault(false);
  return results;
}

std::string format_verify_report(const std::vector<PropertyResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " measured=%.6g tolerance=%.6g", r.measured, r.tolerance);
    os << (r.passed ? "PASS " : "FAIL ") << r.name << buf;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace adembed::cli
