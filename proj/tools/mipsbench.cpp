// Experiment driver: scaling sweeps, accuracy/speed tradeoffs, matching
// pursuit runs, one-shot solves, and dataset generation. Rows are CSV with
// the metric being coordinate-wise multiplications; wall time is recorded
// but informational.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mips/bench.hpp"
#include "mips/matrix_io.hpp"
#include "mips/oracle.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct CommonFlags {
  std::string dataset = mips::bench::kNormalCustom;
  std::string input;
  std::size_t query_row = SIZE_MAX;
  std::size_t n = 100;
  std::string algo = mips::bench::kAlgoBandit;
  double delta = 1e-3;
  std::optional<double> sigma;
  double beta = 0.0;
  double noise_sigma = 1.0;
  std::size_t seeds = 10;
  std::uint64_t seed_base = 0;
  std::uint64_t data_seed = 0;
  std::size_t bin_size = mips::kDefaultBinSize;
  std::size_t m_probe = mips::kDefaultNormProbe;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--dataset", flags.dataset,
                  "NORMAL_CUSTOM | CORRELATED_NORMAL_CUSTOM | SYMMETRIC_NORMAL");
  cmd->add_option("--input", flags.input, "matrix file (.csv or .bin)");
  cmd->add_option("--query-row", flags.query_row,
                  "row used as the query for --input (default: last)");
  cmd->add_option("--n", flags.n, "number of atoms");
  cmd->add_option("--algo", flags.algo, "naive | bandit | bandit-alpha | bucket");
  cmd->add_option("--delta", flags.delta, "error probability");
  cmd->add_option("--sigma", flags.sigma,
                  "sub-Gaussian scale (default 1; 25 for loaded matrices)");
  cmd->add_option("--beta", flags.beta,
                  "sampling temperature for --algo bandit (0 = uniform)");
  cmd->add_option("--noise-sigma", flags.noise_sigma,
                  "noise scale of CORRELATED_NORMAL_CUSTOM");
  cmd->add_option("--seeds", flags.seeds, "number of trials");
  cmd->add_option("--seed-base", flags.seed_base, "first trial seed");
  cmd->add_option("--data-seed", flags.data_seed,
                  "dataset seed for scaling sweeps");
  cmd->add_option("--bin-size", flags.bin_size, "bucket bin size");
  cmd->add_option("--m-probe", flags.m_probe,
                  "bucket norm-probe coordinates per atom");
  cmd->add_option("--out", flags.out, "write rows to this path");
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"csv"}));
}

mips::bench::DatasetSpec dataset_spec(const CommonFlags& flags) {
  mips::bench::DatasetSpec spec;
  spec.tag = flags.dataset;
  spec.path = flags.input;
  spec.query_row = flags.query_row;
  spec.noise_sigma = flags.noise_sigma;
  return spec;
}

mips::bench::SolverOptions solver_options(const CommonFlags& flags) {
  mips::bench::SolverOptions opts;
  opts.algo = flags.algo;
  opts.config.delta = flags.delta;
  opts.config.sigma =
      flags.sigma.value_or(flags.input.empty() ? 1.0 : 25.0);
  opts.config.beta = flags.beta;
  opts.bin_size = flags.bin_size;
  opts.m_probe = flags.m_probe;
  return opts;
}

// Rows go to --out when given (summaries then print to stdout), otherwise
// rows go to stdout and summaries to stderr.
template <typename WriteRows, typename WriteSummary>
void emit(const std::string& out, WriteRows&& rows, WriteSummary&& summary) {
  if (out.empty()) {
    rows(std::cout);
    summary(std::cerr);
  } else {
    std::ofstream file(out);
    if (!file) {
      throw mips::MipsError(mips::ErrorKind::parse_error, "cannot open " + out);
    }
    rows(file);
    summary(std::cout);
  }
}

int exit_code_for(const mips::MipsError& err) {
  switch (err.kind()) {
    case mips::ErrorKind::unknown_tag:
    case mips::ErrorKind::invalid_argument:
    case mips::ErrorKind::invalid_k:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive-sampling maximum inner product search benchmarks"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* scaling = app.add_subcommand(
      "scaling", "sample complexity across dimensions, fixed dataset");
  std::vector<std::size_t> d_list{10000};
  add_common(scaling, flags);
  scaling->add_option("--d", d_list, "ascending dimension list")
      ->delimiter(',');

  auto* tradeoff = app.add_subcommand(
      "tradeoff", "accuracy vs speedup across delta, fresh dataset per trial");
  std::size_t tradeoff_d = 10000;
  std::vector<double> delta_list{1e-3};
  add_common(tradeoff, flags);
  tradeoff->add_option("--d", tradeoff_d, "dimension");
  tradeoff->add_option("--delta-list", delta_list, "delta values")
      ->delimiter(',');

  auto* mp = app.add_subcommand("mp", "matching pursuit per-step rows");
  std::size_t mp_t = 1;
  std::size_t mp_iterations = 5;
  std::size_t mp_interval = 44100;
  add_common(mp, flags);
  mp->add_option("--t", mp_t, "song repetitions");
  mp->add_option("--iterations", mp_iterations, "pursuit steps");
  mp->add_option("--interval-samples", mp_interval, "samples per interval");

  auto* solve = app.add_subcommand("solve", "single search, exact comparison");
  std::size_t solve_d = 10000;
  std::size_t solve_k = 1;
  add_common(solve, flags);
  solve->add_option("--d", solve_d, "dimension");
  solve->add_option("--k", solve_k, "return the top k atoms");

  auto* gen = app.add_subcommand(
      "gen", "generate a dataset matrix (query stored as the last row)");
  std::size_t gen_d = 10000;
  std::size_t gen_t = 1;
  add_common(gen, flags);
  gen->add_option("--d", gen_d, "dimension");
  gen->add_option("--t", gen_t, "song repetitions for SIMPLE_SONG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (scaling->parsed()) {
      mips::bench::ScalingSpec spec;
      spec.dataset = dataset_spec(flags);
      spec.n = flags.n;
      spec.d_list = d_list;
      spec.solver = solver_options(flags);
      spec.num_trials = flags.seeds;
      spec.seed_base = flags.seed_base;
      spec.data_seed = flags.data_seed;
      auto rows = mips::bench::run_scaling(spec);
      emit(
          flags.out,
          [&](std::ostream& os) { mips::bench::write_csv(os, rows); },
          [](std::ostream&) {});
    } else if (tradeoff->parsed()) {
      mips::bench::TradeoffSpec spec;
      spec.dataset = dataset_spec(flags);
      spec.n = flags.n;
      spec.d = tradeoff_d;
      spec.solver = solver_options(flags);
      spec.delta_list = delta_list;
      spec.num_trials = flags.seeds;
      spec.seed_base = flags.seed_base;
      auto result = mips::bench::run_tradeoff(spec);
      emit(
          flags.out,
          [&](std::ostream& os) { mips::bench::write_csv(os, result.rows); },
          [&](std::ostream& os) {
            mips::bench::write_summary_csv(os, result.summary);
          });
    } else if (mp->parsed()) {
      mips::bench::MpSpec spec;
      spec.song.repetitions = mp_t;
      spec.song.interval_samples = mp_interval;
      spec.dataset = dataset_spec(flags);
      spec.use_file = !flags.input.empty();
      spec.iterations = mp_iterations;
      if (flags.algo == mips::bench::kAlgoNaive) {
        spec.solver = mips::PursuitSolver::naive;
      } else if (flags.algo == mips::bench::kAlgoBandit) {
        spec.solver = mips::PursuitSolver::bandit;
      } else if (flags.algo == mips::bench::kAlgoBanditAlpha) {
        spec.solver = mips::PursuitSolver::bandit_alpha;
      } else {
        throw mips::MipsError(mips::ErrorKind::unknown_tag,
                              "mp supports naive, bandit, bandit-alpha");
      }
      spec.config.delta = flags.delta;
      spec.config.sigma = flags.sigma.value_or(flags.input.empty() ? 2.5 : 25.0);
      spec.config.beta = flags.beta;
      spec.num_trials = flags.seeds;
      spec.seed_base = flags.seed_base;
      auto rows = mips::bench::run_mp(spec);
      emit(
          flags.out,
          [&](std::ostream& os) { mips::bench::write_mp_csv(os, rows); },
          [](std::ostream&) {});
    } else if (solve->parsed()) {
      auto dataset = dataset_spec(flags);
      auto instance =
          mips::bench::make_instance(dataset, flags.n, solve_d, flags.data_seed);
      auto opts = solver_options(flags);
      opts.config.seed = flags.seed_base;
      mips::SampleLedger ledger;
      mips::MipsResult result;
      if (opts.algo == mips::bench::kAlgoNaive || solve_k > 1) {
        if (opts.algo != mips::bench::kAlgoNaive &&
            opts.algo != mips::bench::kAlgoBandit &&
            opts.algo != mips::bench::kAlgoBanditAlpha) {
          throw mips::MipsError(mips::ErrorKind::unknown_tag,
                                "top-k supports naive, bandit, bandit-alpha");
        }
        if (opts.algo == mips::bench::kAlgoNaive) {
          result = mips::naive_mips_topk(instance, solve_k, ledger);
        } else {
          if (opts.algo == mips::bench::kAlgoBanditAlpha) {
            opts.config.beta = mips::kInfinity;
          }
          auto sampler = mips::make_sampler(instance, opts.config);
          result = mips::bandit_mips_topk(instance, solve_k, opts.config,
                                          sampler, ledger)
                       .result;
        }
      } else {
        if (opts.algo == mips::bench::kAlgoBanditAlpha) {
          opts.config.beta = mips::kInfinity;
        }
        if (opts.algo == mips::bench::kAlgoBucket) {
          mips::SampleLedger prep;
          auto estimates = mips::estimate_norms(instance, opts.m_probe,
                                                opts.config.seed, prep);
          auto bins =
              mips::build_bins(std::move(estimates), opts.bin_size, opts.m_probe);
          result =
              mips::bucket_ae(instance, opts.config, bins, ledger, &prep).result;
        } else {
          auto sampler = mips::make_sampler(instance, opts.config);
          result =
              mips::bandit_mips(instance, opts.config, sampler, ledger).result;
        }
      }
      mips::SampleLedger oracle_ledger;
      auto truth = mips::naive_mips_topk(instance, solve_k, oracle_ledger);
      double precision = mips::bench::precision_at_k(result.indices,
                                                     truth.indices, solve_k);
      std::cout << "indices:";
      for (std::size_t index : result.indices) std::cout << ' ' << index;
      std::cout << "\nmults: " << ledger.mults()
                << "\nnaive_mults: " << oracle_ledger.mults()
                << "\nprecision_at_k: " << precision << '\n';
    } else if (gen->parsed()) {
      if (flags.out.empty()) {
        throw mips::MipsError(mips::ErrorKind::invalid_argument,
                              "gen requires --out");
      }
      mips::MipsInstance instance =
          flags.dataset == "SIMPLE_SONG"
              ? mips::gen_simple_song(mips::SongSpec{gen_t})
              : mips::bench::make_instance(dataset_spec(flags), flags.n, gen_d,
                                           flags.data_seed);
      const std::size_t n = instance.num_atoms();
      const std::size_t d = instance.dim();
      std::vector<double> values((n + 1) * d);
      for (std::size_t i = 0; i < n; ++i) {
        auto row = instance.atoms().row(i);
        std::copy(row.begin(), row.end(), values.data() + i * d);
      }
      std::copy(instance.query().begin(), instance.query().end(),
                values.data() + n * d);
      mips::save_matrix(mips::Matrix(n + 1, d, std::move(values)), flags.out,
                        mips::format_from_path(flags.out));
    }
  } catch (const mips::MipsError& err) {
    std::cerr << "error (" << mips::to_string(err.kind()) << "): " << err.what()
              << '\n';
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitData;
  }
  return 0;
}
