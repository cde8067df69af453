#include "mips/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "mips/matrix_io.hpp"
#include "mips/oracle.hpp"

namespace mips::bench {

namespace {

std::uint64_t now_nanos() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

struct TrialOutcome {
  std::uint64_t mults = 0;
  std::size_t best = 0;
  std::uint64_t wall_nanos = 0;
};

// One solve with per-trial accounting. Preprocessing costs (weight tables,
// norm probes, ||q||) stay out of the query ledger, mirroring query-time
// complexity reporting.
TrialOutcome run_trial(const MipsInstance& instance, const SolverOptions& opts,
                       std::uint64_t seed, SampleLedger* prep) {
  BanditConfig config = opts.config;
  config.seed = seed;
  TrialOutcome trial;
  SampleLedger ledger;
  std::uint64_t start = now_nanos();
  if (opts.algo == kAlgoNaive) {
    trial.best = naive_mips(instance, ledger).best();
  } else if (opts.algo == kAlgoBandit || opts.algo == kAlgoBanditAlpha) {
    if (opts.algo == kAlgoBanditAlpha) config.beta = kInfinity;
    CoordinateSampler sampler = make_sampler(instance, config, prep);
    trial.best = bandit_mips(instance, config, sampler, ledger).result.best();
  } else if (opts.algo == kAlgoBucket) {
    SampleLedger local_prep;
    SampleLedger& pre = prep ? *prep : local_prep;
    auto estimates = estimate_norms(instance, opts.m_probe, config.seed, pre);
    auto bins = build_bins(std::move(estimates), opts.bin_size, opts.m_probe);
    trial.best =
        bucket_ae(instance, config, bins, ledger, &pre).result.best();
  } else {
    throw MipsError(ErrorKind::unknown_tag, "unknown algorithm: " + opts.algo);
  }
  trial.wall_nanos = now_nanos() - start;
  trial.mults = ledger.mults();
  return trial;
}

double record_beta(const SolverOptions& opts) {
  if (opts.algo == kAlgoBanditAlpha) return kInfinity;
  if (opts.algo == kAlgoBandit) return opts.config.beta;
  return 0.0;
}

}  // namespace

std::string csv_header() {
  return "dataset,n,d,algo,delta,beta,seed,mults,correct,wall_nanos";
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.n << ',' << r.d << ',' << r.algo << ','
        << r.delta << ',' << r.beta << ',' << r.seed << ',' << r.mults << ','
        << (r.correct ? 1 : 0) << ',' << r.wall_nanos << '\n';
  }
}

double precision_at_k(std::span<const std::size_t> returned,
                      std::span<const std::size_t> truth, std::size_t k) {
  auto check = [k](std::span<const std::size_t> indices, const char* name) {
    if (indices.size() != k) {
      throw MipsError(ErrorKind::size_mismatch,
                      std::string(name) + " set size must equal k");
    }
    std::unordered_set<std::size_t> unique(indices.begin(), indices.end());
    if (unique.size() != k) {
      throw MipsError(ErrorKind::size_mismatch,
                      std::string(name) + " set has duplicate indices");
    }
    return unique;
  };
  check(returned, "returned");
  auto truth_set = check(truth, "truth");
  std::size_t hits = 0;
  for (std::size_t index : returned) hits += truth_set.count(index);
  return static_cast<double>(hits) / static_cast<double>(k);
}

MipsInstance make_instance(const DatasetSpec& dataset, std::size_t n,
                           std::size_t d, std::uint64_t seed) {
  if (!dataset.path.empty()) {
    Matrix matrix = load_matrix(dataset.path, format_from_path(dataset.path));
    std::size_t query_row =
        dataset.query_row == SIZE_MAX ? matrix.rows() - 1 : dataset.query_row;
    return instance_from_matrix(matrix, query_row);
  }
  if (dataset.tag == kNormalCustom) return gen_normal_custom(n, d, seed);
  if (dataset.tag == kCorrelatedNormalCustom) {
    return gen_correlated_normal_custom(n, d, seed, dataset.noise_sigma);
  }
  if (dataset.tag == kSymmetricNormal) return gen_symmetric_normal(n, d, seed);
  throw MipsError(ErrorKind::unknown_tag, "unknown dataset: " + dataset.tag);
}

std::vector<TrialRecord> run_scaling(const ScalingSpec& spec) {
  if (spec.d_list.empty() ||
      !std::is_sorted(spec.d_list.begin(), spec.d_list.end())) {
    throw MipsError(ErrorKind::invalid_argument, "d list must be ascending");
  }
  // One wide generation; smaller d re-use its prefix (feature subsampling).
  MipsInstance base =
      make_instance(spec.dataset, spec.n, spec.d_list.back(), spec.data_seed);

  std::vector<TrialRecord> rows;
  SampleLedger prep;
  for (std::size_t d : spec.d_list) {
    MipsInstance instance =
        d == base.dim() ? base : base.col_prefix(d);
    SampleLedger oracle_scratch;
    std::size_t truth = naive_mips(instance, oracle_scratch).best();
    for (std::size_t t = 0; t < spec.num_trials; ++t) {
      std::uint64_t seed = spec.seed_base + t;
      TrialOutcome trial = run_trial(instance, spec.solver, seed, &prep);
      rows.push_back(TrialRecord{spec.dataset.path.empty() ? spec.dataset.tag
                                                           : spec.dataset.path,
                                 instance.num_atoms(), d, spec.solver.algo,
                                 spec.solver.config.delta, record_beta(spec.solver),
                                 seed, trial.mults, trial.best == truth,
                                 trial.wall_nanos});
    }
  }
  return rows;
}

TradeoffResult run_tradeoff(const TradeoffSpec& spec) {
  if (spec.delta_list.empty()) {
    throw MipsError(ErrorKind::invalid_argument, "delta list must be nonempty");
  }
  TradeoffResult result;
  SampleLedger prep;
  for (double delta : spec.delta_list) {
    double mults_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t t = 0; t < spec.num_trials; ++t) {
      std::uint64_t seed = spec.seed_base + t;
      // Fresh dataset per trial; delta sweeps see the same instances.
      MipsInstance instance = make_instance(spec.dataset, spec.n, spec.d, seed);
      SampleLedger oracle_scratch;
      std::size_t truth = naive_mips(instance, oracle_scratch).best();
      SolverOptions opts = spec.solver;
      opts.config.delta = delta;
      TrialOutcome trial = run_trial(instance, opts, seed, &prep);
      bool ok = trial.best == truth;
      mults_sum += static_cast<double>(trial.mults);
      correct += ok ? 1 : 0;
      result.rows.push_back(TrialRecord{
          spec.dataset.path.empty() ? spec.dataset.tag : spec.dataset.path,
          instance.num_atoms(), spec.d, spec.solver.algo, delta,
          record_beta(spec.solver), seed, trial.mults, ok, trial.wall_nanos});
    }
    double mean_mults = mults_sum / static_cast<double>(spec.num_trials);
    double speedup =
        static_cast<double>(spec.n) * static_cast<double>(spec.d) / mean_mults;
    result.summary.push_back(TradeoffSummary{
        delta, spec.num_trials, mean_mults,
        static_cast<double>(correct) / static_cast<double>(spec.num_trials),
        speedup});
  }
  return result;
}

void write_summary_csv(std::ostream& out,
                       const std::vector<TradeoffSummary>& summary) {
  out << "delta,trials,mean_mults,accuracy,speedup\n";
  for (const auto& s : summary) {
    out << s.delta << ',' << s.trials << ',' << s.mean_mults << ','
        << s.accuracy << ',' << s.speedup << '\n';
  }
}

std::vector<MpRow> run_mp(const MpSpec& spec) {
  MipsInstance instance =
      spec.use_file
          ? make_instance(spec.dataset, 0, 0, 0)
          : gen_simple_song(spec.song);
  PursuitSolver solver = spec.solver;
  std::vector<MpRow> rows;
  for (std::size_t t = 0; t < spec.num_trials; ++t) {
    BanditConfig config = spec.config;
    config.seed = spec.seed_base + t;
    SampleLedger search;
    SampleLedger projection;
    auto steps = matching_pursuit(instance, spec.iterations, solver, config,
                                  search, &projection);
    for (std::size_t s = 0; s < steps.size(); ++s) {
      MpRow row;
      row.seed = config.seed;
      row.step = s;
      row.atom = steps[s].atom_index;
      row.label = spec.use_file ? "" : spec.song.label(steps[s].atom_index);
      row.coefficient = steps[s].coefficient;
      row.residual_norm = steps[s].residual_norm;
      row.mults = steps[s].ledger_delta;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_mp_csv(std::ostream& out, const std::vector<MpRow>& rows) {
  out << "seed,step,atom,label,coefficient,residual_norm,mults\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << r.step << ',' << r.atom << ',' << r.label << ','
        << r.coefficient << ',' << r.residual_norm << ',' << r.mults << '\n';
  }
}

}  // namespace mips::bench
