// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any failed. Thresholds are pinned here, not configurable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "mips/bench.hpp"
#include "mips/oracle.hpp"

using namespace mips;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool pass,
            const std::string& detail) {
  std::printf("%s  %2d  %-28s %s\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

// ---- criterion 1: correctness at small scale ------------------------------

void criterion_correctness() {
  const std::size_t trials = 500;
  std::size_t correct = 0;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    auto instance = gen_normal_custom(50, 1000, seed);
    SampleLedger naive_ledger;
    auto truth = naive_mips(instance, naive_ledger);
    BanditConfig config;
    config.delta = 1e-3;
    config.sigma = 1.0;
    config.seed = seed;
    SampleLedger ledger;
    if (bandit_mips(instance, config, ledger).result.best() == truth.best()) {
      ++correct;
    }
  }
  report(1, "small-scale correctness", correct * 100 >= trials * 99,
         std::to_string(correct) + "/500 correct (need >= 495)");
}

// ---- criterion 2: delta = 0 reduces to the exact search -------------------

void criterion_delta_zero() {
  bool pass = true;
  std::string detail = "50/50 instances match naive with ledger <= 2nd";
  for (std::uint64_t seed = 0; seed < 50 && pass; ++seed) {
    std::size_t n = 2 + seed % 39;
    std::size_t d = 5 + (seed * 17) % 396;
    MipsInstance instance = seed % 2 == 0
                                ? gen_normal_custom(n, d, seed)
                                : gen_symmetric_normal(n, d, seed);
    SampleLedger naive_ledger;
    auto truth = naive_mips(instance, naive_ledger);
    BanditConfig config;
    config.delta = 0.0;
    config.seed = seed;
    SampleLedger ledger;
    auto outcome = bandit_mips(instance, config, ledger);
    if (outcome.result.best() != truth.best() ||
        ledger.mults() > 2ull * n * d) {
      pass = false;
      detail = "failed at seed " + std::to_string(seed);
    }
  }
  report(2, "delta-zero reduction", pass, detail);
}

// ---- criteria 3 and 4: scaling ---------------------------------------------

double mean_mults_at(const std::vector<bench::TrialRecord>& rows,
                     std::size_t d) {
  std::vector<double> mults;
  for (const auto& row : rows) {
    if (row.d == d) mults.push_back(static_cast<double>(row.mults));
  }
  return mean(mults);
}

void criterion_dimension_free() {
  bool pass = true;
  std::string detail;
  for (const char* dataset :
       {bench::kNormalCustom, bench::kCorrelatedNormalCustom}) {
    for (const char* algo : {bench::kAlgoBandit, bench::kAlgoBanditAlpha}) {
      bench::ScalingSpec spec;
      spec.dataset.tag = dataset;
      spec.n = 100;
      spec.d_list = {10000, 50000, 100000, 500000};
      spec.solver.algo = algo;
      spec.solver.config.delta = 1e-3;
      spec.solver.config.sigma = 1.0;
      spec.num_trials = 10;
      auto rows = bench::run_scaling(spec);
      double ratio =
          mean_mults_at(rows, 500000) / mean_mults_at(rows, 10000);
      char buffer[160];
      std::snprintf(buffer, sizeof(buffer), "%s%s/%s 500k:10k ratio %.2f; ",
                    detail.empty() ? "" : "", dataset, algo, ratio);
      detail += buffer;
      if (!(ratio < 2.0)) pass = false;
    }
  }
  report(3, "dimension-free scaling", pass, detail + "(need < 2.0)");
}

void criterion_adversarial_scaling() {
  bench::ScalingSpec spec;
  spec.dataset.tag = bench::kSymmetricNormal;
  spec.n = 100;
  spec.d_list = {1000, 2000, 4000, 8000};
  spec.solver.algo = bench::kAlgoBandit;
  spec.solver.config.delta = 1e-3;
  spec.num_trials = 10;
  auto rows = bench::run_scaling(spec);
  bool pass = true;
  std::string detail = "per-doubling ratios";
  for (std::size_t i = 1; i < spec.d_list.size(); ++i) {
    double ratio = mean_mults_at(rows, spec.d_list[i]) /
                   mean_mults_at(rows, spec.d_list[i - 1]);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), " %.2f", ratio);
    detail += buffer;
    if (!(ratio >= 1.4 && ratio <= 2.6)) pass = false;
  }
  report(4, "adversarial linear scaling", pass, detail + " (need in [1.4,2.6])");
}

// ---- criterion 5: closed-form weights are the variance minimizer ----------

std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0, tau = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) {
      rho = i + 1;
      tau = candidate;
    }
  }
  (void)rho;
  for (auto& x : v) x = std::max(x - tau, 0.0);
  return v;
}

MipsInstance small_dense_instance(std::size_t n, std::size_t d,
                                  std::uint64_t seed) {
  Rng rng(seed, 9);
  auto entry = [&] {
    double magnitude = 0.5 + 1.5 * rng.uniform01();
    return rng.bounded(2) ? magnitude : -magnitude;
  };
  std::vector<double> values(n * d);
  for (auto& v : values) v = entry();
  std::vector<double> query(d);
  for (auto& q : query) q = entry();
  return MipsInstance(Matrix(n, d, std::move(values)), std::move(query));
}

void criterion_optimal_weights() {
  bool pass = true;
  std::string detail = "20/20 instances: closed form beats 200 simplex points,"
                       " PGD agrees to 1e-6";
  Rng rng(123, 14);
  for (std::uint64_t seed = 0; seed < 20 && pass; ++seed) {
    std::size_t n = 2 + seed % 5;  // <= 6
    std::size_t d = 2 + seed % 4;  // <= 5
    auto instance = small_dense_instance(n, d, seed);
    auto w_star = optimal_weights(instance);
    double best = combined_variance(instance, w_star);

    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> w(d);
      double sum = 0.0;
      for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform01());
        sum += x;
      }
      for (auto& x : w) x /= sum;
      if (best > combined_variance(instance, w) + 1e-9) {
        pass = false;
        detail = "random simplex point beat the closed form at seed " +
                 std::to_string(seed);
      }
    }

    // Projected gradient descent on the combined variance with backtracking.
    std::vector<double> w(d, 1.0 / static_cast<double>(d));
    double value = combined_variance(instance, w);
    for (int iteration = 0; iteration < 200000; ++iteration) {
      std::vector<double> gradient(d, 0.0);
      for (std::size_t j = 0; j < d; ++j) {
        double column_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          double v = instance.atoms()(i, j);
          column_sq += v * v;
        }
        double q = instance.query()[j];
        gradient[j] = -q * q * column_sq /
                      (static_cast<double>(d) * d * w[j] * w[j]);
      }
      double step = 1.0;
      std::vector<double> next;
      double next_value = value;
      for (int backtrack = 0; backtrack < 60; ++backtrack) {
        std::vector<double> candidate(d);
        for (std::size_t j = 0; j < d; ++j) {
          candidate[j] = w[j] - step * gradient[j];
        }
        candidate = project_to_simplex(std::move(candidate));
        double candidate_value = combined_variance(instance, candidate);
        if (candidate_value < value) {
          next = std::move(candidate);
          next_value = candidate_value;
          break;
        }
        step *= 0.5;
      }
      if (next.empty()) break;
      double shift = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        shift = std::max(shift, std::abs(next[j] - w[j]));
      }
      w = std::move(next);
      value = next_value;
      if (shift < 1e-13) break;
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (std::abs(w[j] - w_star[j]) > 1e-6) {
        pass = false;
        detail = "PGD did not reach the closed form at seed " +
                 std::to_string(seed);
      }
    }
  }
  report(5, "variance-optimal weights", pass, detail);
}

// ---- criterion 6: unbiasedness identity ------------------------------------

void criterion_unbiasedness() {
  bool pass = true;
  std::string detail =
      "identity holds to 1e-10 on 100 instances x 5 weight choices";
  for (std::uint64_t seed = 0; seed < 100 && pass; ++seed) {
    std::size_t n = 2 + seed % 6;
    std::size_t d = 2 + seed % 9;
    auto instance = small_dense_instance(n, d, 3000 + seed);
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        sum += instance.atoms()(i, j) * instance.query()[j];
      }
      mu[i] = sum / static_cast<double>(d);
    }
    std::vector<std::vector<double>> weight_sets{optimal_weights(instance)};
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
      weight_sets.push_back(query_only_weights(instance.query(), beta));
    }
    for (const auto& w : weight_sets) {
      auto means = estimator_mean_identity(instance, w);
      for (std::size_t i = 0; i < n; ++i) {
        double scale = std::max(1.0, std::abs(mu[i]));
        if (std::abs(means[i] - mu[i]) > 1e-10 * scale) {
          pass = false;
          detail = "identity violated at seed " + std::to_string(seed);
        }
      }
    }
  }
  report(6, "unbiasedness identity", pass, detail);
}

// ---- criteria 7 and 8: matching pursuit ------------------------------------

void criterion_song_pursuit() {
  BanditConfig config;
  config.delta = 1e-4;
  config.sigma = 2.5;

  // Note recovery at t = 1: G4 C5 E4 E5 C4 as atom indices 2 3 1 4 0.
  const std::vector<std::size_t> expected{2, 3, 1, 4, 0};
  bool order_ok = true;
  {
    SongSpec spec;
    auto instance = gen_simple_song(spec);
    config.seed = 0;
    SampleLedger search;
    auto steps =
        matching_pursuit(instance, 5, PursuitSolver::bandit, config, search);
    std::vector<std::size_t> got;
    for (const auto& step : steps) got.push_back(step.atom_index);
    order_ok = got == expected;
  }

  // Search cost across song lengths, 3 seeds per length.
  std::vector<double> totals;
  for (std::size_t t : {1u, 2u, 4u}) {
    SongSpec spec;
    spec.repetitions = t;
    auto instance = gen_simple_song(spec);
    std::vector<double> per_seed;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      config.seed = seed;
      SampleLedger search;
      matching_pursuit(instance, 5, PursuitSolver::bandit, config, search);
      per_seed.push_back(static_cast<double>(search.mults()));
    }
    totals.push_back(mean(per_seed));
  }
  double spread = *std::max_element(totals.begin(), totals.end()) /
                  *std::min_element(totals.begin(), totals.end());
  char buffer[128];
  std::snprintf(buffer, sizeof(buffer),
                "order %s; ledger spread across t in {1,2,4}: %.2fx (need < 2)",
                order_ok ? "G4,C5,E4,E5,C4" : "WRONG", spread);
  report(7, "pursuit on the song", order_ok && spread < 2.0, buffer);
}

void criterion_projection_identity() {
  bool pass = true;
  std::string detail = "projection identity within 1e-8 on every step";
  auto check_steps = [&](const MipsInstance& instance,
                         const std::vector<PursuitStep>& steps) {
    double previous_sq = 0.0;
    for (double q : instance.query()) previous_sq += q * q;
    for (const auto& step : steps) {
      double norm_sq = 0.0;
      for (std::size_t j = 0; j < instance.dim(); ++j) {
        double v = instance.atoms()(step.atom_index, j);
        norm_sq += v * v;
      }
      double predicted =
          previous_sq - step.coefficient * step.coefficient * norm_sq;
      double actual = step.residual_norm * step.residual_norm;
      if (std::abs(actual - predicted) >
          1e-8 * std::max({1.0, std::abs(actual), previous_sq})) {
        pass = false;
        detail = "projection identity violated";
      }
      previous_sq = actual;
    }
  };

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed, 6);
    std::size_t n = 3 + seed % 10;
    std::size_t d = 16 + (seed * 13) % 200;
    std::vector<double> values(n * d);
    for (auto& v : values) v = rng.gaussian();
    std::vector<double> query(d);
    for (auto& q : query) q = rng.gaussian();
    MipsInstance instance(Matrix(n, d, std::move(values)), std::move(query));
    BanditConfig config;
    config.delta = 1e-3;
    config.seed = seed;
    SampleLedger search;
    check_steps(instance,
                matching_pursuit(instance, 6, PursuitSolver::bandit, config,
                                 search));
  }
  {
    auto instance = gen_simple_song(SongSpec{});
    BanditConfig config;
    config.delta = 1e-4;
    config.sigma = 2.5;
    SampleLedger search;
    check_steps(instance, matching_pursuit(instance, 5, PursuitSolver::naive,
                                           config, search));
  }
  report(8, "residual projection identity", pass, detail);
}

// ---- criterion 9: k-MIPS ----------------------------------------------------

void criterion_topk() {
  bool pass = true;
  std::string detail;
  for (std::size_t k : {5u, 10u}) {
    std::size_t perfect = 0;
    const std::size_t trials = 200;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      auto instance = gen_normal_custom(50, 1000, 9000 + seed);
      BanditConfig config;
      config.delta = 1e-3;
      config.seed = seed;
      SampleLedger ledger;
      CoordinateSampler sampler = make_sampler(instance, config);
      auto outcome = bandit_mips_topk(instance, k, config, sampler, ledger);
      SampleLedger naive_ledger;
      auto truth = naive_mips_topk(instance, k, naive_ledger);
      if (bench::precision_at_k(outcome.result.indices, truth.indices, k) ==
          1.0) {
        ++perfect;
      }
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "k=%zu: %zu/200 perfect; ", k,
                  perfect);
    detail += buffer;
    if (perfect * 100 < trials * 99) pass = false;
  }
  report(9, "k-MIPS precision", pass, detail + "(need >= 198)");
}

// ---- criterion 10: tradeoff direction --------------------------------------

void criterion_tradeoff() {
  bench::TradeoffSpec spec;
  spec.dataset.tag = bench::kNormalCustom;
  spec.n = 100;
  spec.d = 10000;
  spec.solver.algo = bench::kAlgoBandit;
  spec.delta_list = {1e-3};
  spec.num_trials = 10;
  auto result = bench::run_tradeoff(spec);
  const auto& s = result.summary.front();
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer),
                "speedup %.1fx, accuracy %.2f (need > 1 and >= 0.9)", s.speedup,
                s.accuracy);
  report(10, "accuracy/speed tradeoff", s.speedup > 1.0 && s.accuracy >= 0.9,
         buffer);
}

// ---- criterion 11: bucket retention ----------------------------------------

void criterion_bucket() {
  // (a) single-bin equivalence, deterministic across seeds.
  bool equivalence = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto instance = gen_normal_custom(30, 1000, seed);
    BanditConfig config;
    config.delta = 1e-3;
    config.seed = seed;
    SampleLedger norm_ledger;
    auto bins = build_bins(estimate_norms(instance, 32, seed, norm_ledger), 30, 32);
    SampleLedger bucket_ledger, plain_ledger;
    auto bucket = bucket_ae(instance, config, bins, bucket_ledger);
    CoordinateSampler sampler = CoordinateSampler::uniform(instance.dim());
    auto plain = bandit_mips(instance, config, sampler, plain_ledger);
    if (bucket.result.best() != plain.result.best() ||
        bucket_ledger.mults() != plain_ledger.mults()) {
      equivalence = false;
    }
  }

  // (b) scaling retention: query ledger at d=100k within 2x of d=10k.
  auto bucket_mean = [](const char* tag, std::size_t n, std::size_t d,
                        double noise, std::uint64_t data_seed,
                        std::size_t trials) {
    bench::DatasetSpec dataset;
    dataset.tag = tag;
    dataset.noise_sigma = noise;
    auto instance = bench::make_instance(dataset, n, d, data_seed);
    std::vector<double> mults;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      BanditConfig config;
      config.delta = 1e-3;
      config.seed = seed;
      SampleLedger prep;
      auto bins = build_bins(
          estimate_norms(instance, kDefaultNormProbe, seed, prep),
          kDefaultBinSize, kDefaultNormProbe);
      SampleLedger ledger;
      bucket_ae(instance, config, bins, ledger, &prep);
      mults.push_back(static_cast<double>(ledger.mults()));
    }
    return mean(mults);
  };

  double at_10k = bucket_mean(bench::kNormalCustom, 500, 10000, 1.0, 0, 10);
  double at_100k = bucket_mean(bench::kNormalCustom, 500, 100000, 1.0, 0, 10);
  double retention = at_100k / at_10k;
  bool retention_ok = retention < 2.0 && retention > 0.5;

  // (c) sublinearity: d fixed at 2000, n from 500 to 2000.
  double at_n500 =
      bucket_mean(bench::kCorrelatedNormalCustom, 500, 2000, 1.0, 1, 10);
  double at_n2000 =
      bucket_mean(bench::kCorrelatedNormalCustom, 2000, 2000, 1.0, 1, 10);
  double sublinearity = at_n2000 / at_n500;
  bool sublinear_ok = sublinearity < 4.0;

  char buffer[160];
  std::snprintf(buffer, sizeof(buffer),
                "single-bin %s; d-retention %.2fx (need within 2x); n-ratio "
                "%.2f (need < 4)",
                equivalence ? "exact" : "BROKEN", retention, sublinearity);
  report(11, "bucket preprocessing", equivalence && retention_ok && sublinear_ok,
         buffer);
}

}  // namespace

int main() {
  criterion_correctness();
  criterion_delta_zero();
  criterion_dimension_free();
  criterion_adversarial_scaling();
  criterion_optimal_weights();
  criterion_unbiasedness();
  criterion_song_pursuit();
  criterion_projection_identity();
  criterion_topk();
  criterion_tradeoff();
  criterion_bucket();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
