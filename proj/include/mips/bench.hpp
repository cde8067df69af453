#ifndef MIPS_BENCH_HPP
#define MIPS_BENCH_HPP

#include <iosfwd>
#include <string>

#include "mips/bucket.hpp"
#include "mips/pursuit.hpp"

namespace mips::bench {

// Dataset tags accepted by the drivers.
inline constexpr const char* kNormalCustom = "NORMAL_CUSTOM";
inline constexpr const char* kCorrelatedNormalCustom =
    "CORRELATED_NORMAL_CUSTOM";
inline constexpr const char* kSymmetricNormal = "SYMMETRIC_NORMAL";

// Algorithm tags.
inline constexpr const char* kAlgoNaive = "naive";
inline constexpr const char* kAlgoBandit = "bandit";
inline constexpr const char* kAlgoBanditAlpha = "bandit-alpha";
inline constexpr const char* kAlgoBucket = "bucket";

struct TrialRecord {
  std::string dataset;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string algo;
  double delta = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t mults = 0;
  bool correct = false;
  std::uint64_t wall_nanos = 0;
};

// Fixed row schema; the header line must stay bit-identical.
std::string csv_header();
void write_csv(std::ostream& out, const std::vector<TrialRecord>& rows);

// |returned intersect truth| / k. Both sets must have exactly k distinct
// members; throws size_mismatch otherwise.
double precision_at_k(std::span<const std::size_t> returned,
                      std::span<const std::size_t> truth, std::size_t k);

struct DatasetSpec {
  std::string tag = kNormalCustom;  // or a file path when `path` is set
  std::string path;                 // loaded matrix (atoms + query row)
  std::size_t query_row = SIZE_MAX; // default: last row
  double noise_sigma = 1.0;         // correlated model only
};

// Builds the instance for one trial. Generated datasets honor the prefix
// property, so scaling sweeps reuse one wide generation across d values.
MipsInstance make_instance(const DatasetSpec& dataset, std::size_t n,
                           std::size_t d, std::uint64_t seed);

struct SolverOptions {
  std::string algo = kAlgoBandit;
  BanditConfig config;
  std::size_t bin_size = kDefaultBinSize;  // bucket only
  std::size_t m_probe = kDefaultNormProbe; // bucket only
};

// Scaling-with-d sweep. The dataset is generated once per d from
// `data_seed` (the paper-style fixed-instance design: trials vary only the
// solver's coordinate randomness); trial t runs with solver seed
// seed_base + t. Every trial is scored against the exact oracle, whose cost
// stays out of the trial ledgers. Rows come out in (d, seed) order.
struct ScalingSpec {
  DatasetSpec dataset;
  std::size_t n = 100;
  std::vector<std::size_t> d_list;  // ascending
  SolverOptions solver;
  std::size_t num_trials = 10;
  std::uint64_t seed_base = 0;
  std::uint64_t data_seed = 0;
};

std::vector<TrialRecord> run_scaling(const ScalingSpec& spec);

// Accuracy/speed tradeoff at fixed d: for each delta, num_trials independent
// trials; trial t draws a fresh dataset with seed seed_base + t and runs the
// solver with the same seed. Summary per delta: mean speedup
// (n*d) / mean(mults) and the fraction of correct answers.
struct TradeoffSpec {
  DatasetSpec dataset;
  std::size_t n = 100;
  std::size_t d = 10000;
  SolverOptions solver;
  std::vector<double> delta_list;
  std::size_t num_trials = 10;
  std::uint64_t seed_base = 0;
};

struct TradeoffSummary {
  double delta = 0.0;
  std::size_t trials = 0;
  double mean_mults = 0.0;
  double accuracy = 0.0;
  double speedup = 0.0;
};

struct TradeoffResult {
  std::vector<TrialRecord> rows;
  std::vector<TradeoffSummary> summary;
};

TradeoffResult run_tradeoff(const TradeoffSpec& spec);

void write_summary_csv(std::ostream& out,
                       const std::vector<TradeoffSummary>& summary);

// Matching-pursuit driver over the song dataset (or a loaded matrix).
// One row per (seed, step); `mults` is the step's search cost.
struct MpSpec {
  SongSpec song;
  DatasetSpec dataset;      // used instead of the song when `use_file` is set
  bool use_file = false;
  std::size_t iterations = 5;
  PursuitSolver solver = PursuitSolver::bandit;
  BanditConfig config;
  std::size_t num_trials = 1;
  std::uint64_t seed_base = 0;
};

struct MpRow {
  std::uint64_t seed = 0;
  std::size_t step = 0;
  std::size_t atom = 0;
  std::string label;
  double coefficient = 0.0;
  double residual_norm = 0.0;
  std::uint64_t mults = 0;
};

std::vector<MpRow> run_mp(const MpSpec& spec);

void write_mp_csv(std::ostream& out, const std::vector<MpRow>& rows);

}  // namespace mips::bench

#endif  // MIPS_BENCH_HPP
