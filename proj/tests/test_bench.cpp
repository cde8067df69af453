#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mips/bench.hpp"

using namespace mips;
using namespace mips::bench;

TEST_CASE("precision at k on hand examples") {
  std::vector<std::size_t> a{1, 2, 3, 4, 5};
  std::vector<std::size_t> b{5, 4, 3, 2, 1};
  CHECK(precision_at_k(a, b, 5) == 1.0);
  std::vector<std::size_t> disjoint{6, 7, 8, 9, 10};
  CHECK(precision_at_k(a, disjoint, 5) == 0.0);
  std::vector<std::size_t> overlap3{1, 2, 3, 8, 9};
  CHECK(precision_at_k(a, overlap3, 5) == doctest::Approx(0.6));
  CHECK_THROWS_AS(precision_at_k(a, std::vector<std::size_t>{1, 2}, 5),
                  MipsError);
  std::vector<std::size_t> dupes{1, 1, 2, 3, 4};
  CHECK_THROWS_AS(precision_at_k(dupes, b, 5), MipsError);
}

TEST_CASE("csv header is pinned") {
  CHECK(csv_header() == "dataset,n,d,algo,delta,beta,seed,mults,correct,wall_nanos");
  std::ostringstream out;
  write_csv(out, {});
  CHECK(out.str() == "dataset,n,d,algo,delta,beta,seed,mults,correct,wall_nanos\n");
}

TEST_CASE("trial rows serialize all columns in order") {
  TrialRecord row;
  row.dataset = "NORMAL_CUSTOM";
  row.n = 10;
  row.d = 100;
  row.algo = "bandit";
  row.delta = 0.001;
  row.beta = 0.0;
  row.seed = 7;
  row.mults = 1234;
  row.correct = true;
  row.wall_nanos = 999;
  std::ostringstream out;
  write_csv(out, {row});
  CHECK(out.str() ==
        "dataset,n,d,algo,delta,beta,seed,mults,correct,wall_nanos\n"
        "NORMAL_CUSTOM,10,100,bandit,0.001,0,7,1234,1,999\n");
}

TEST_CASE("scaling over one dimension and one seed yields one row") {
  ScalingSpec spec;
  spec.dataset.tag = kNormalCustom;
  spec.n = 10;
  spec.d_list = {100};
  spec.solver.algo = kAlgoBandit;
  spec.num_trials = 1;
  auto rows = run_scaling(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].d == 100);
  CHECK(rows[0].seed == 0);
  CHECK(rows[0].mults > 0);
}

TEST_CASE("scaling rows with the naive algorithm count exactly n*d") {
  ScalingSpec spec;
  spec.dataset.tag = kSymmetricNormal;
  spec.n = 8;
  spec.d_list = {50, 100};
  spec.solver.algo = kAlgoNaive;
  spec.num_trials = 3;
  auto rows = run_scaling(spec);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    CHECK(row.mults == row.n * row.d);
    CHECK(row.correct);
  }
}

TEST_CASE("scaling trials are all correct against the oracle") {
  ScalingSpec spec;
  spec.dataset.tag = kNormalCustom;
  spec.n = 30;
  spec.d_list = {500, 1000};
  spec.solver.algo = kAlgoBandit;
  spec.solver.config.delta = 1e-3;
  spec.num_trials = 10;
  auto rows = run_scaling(spec);
  REQUIRE(rows.size() == 20);
  for (const auto& row : rows) CHECK(row.correct);
}

TEST_CASE("scaling rejects unknown tags and unsorted d lists") {
  ScalingSpec spec;
  spec.dataset.tag = "NOPE";
  spec.d_list = {10};
  CHECK_THROWS_AS(run_scaling(spec), MipsError);
  spec.dataset.tag = kNormalCustom;
  spec.d_list = {100, 10};
  CHECK_THROWS_AS(run_scaling(spec), MipsError);
}

TEST_CASE("tradeoff at delta zero never beats naive and is always correct") {
  TradeoffSpec spec;
  spec.dataset.tag = kNormalCustom;
  spec.n = 12;
  spec.d = 200;
  spec.solver.algo = kAlgoBandit;
  spec.delta_list = {0.0};
  spec.num_trials = 5;
  auto result = run_tradeoff(spec);
  REQUIRE(result.summary.size() == 1);
  CHECK(result.summary[0].accuracy == 1.0);
  CHECK(result.summary[0].speedup <= 1.0);
}

TEST_CASE("summary speedup times mean mults equals n*d") {
  TradeoffSpec spec;
  spec.dataset.tag = kNormalCustom;
  spec.n = 20;
  spec.d = 400;
  spec.solver.algo = kAlgoBandit;
  spec.delta_list = {0.01, 0.001};
  spec.num_trials = 4;
  auto result = run_tradeoff(spec);
  REQUIRE(result.summary.size() == 2);
  for (const auto& s : result.summary) {
    double product = s.speedup * s.mean_mults;
    double target = static_cast<double>(spec.n) * spec.d;
    CHECK(std::abs(product - target) <= 1e-9 * target);
  }
}

TEST_CASE("accuracy does not degrade when delta tightens") {
  TradeoffSpec spec;
  spec.dataset.tag = kNormalCustom;
  spec.n = 50;
  spec.d = 1000;
  spec.solver.algo = kAlgoBandit;
  spec.delta_list = {1e-6, 0.5};
  spec.num_trials = 30;
  auto result = run_tradeoff(spec);
  REQUIRE(result.summary.size() == 2);
  CHECK(result.summary[0].accuracy >= result.summary[1].accuracy);
}

TEST_CASE("mp driver emits one row per step with labels") {
  MpSpec spec;
  spec.song.repetitions = 1;
  spec.song.interval_samples = 2000;  // desk-size song
  spec.iterations = 3;
  spec.solver = PursuitSolver::naive;
  spec.num_trials = 2;
  auto rows = run_mp(spec);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].step == 0);
  CHECK(rows[0].label == "G4");
  CHECK(rows[3].seed == 1);
  std::ostringstream out;
  write_mp_csv(out, rows);
  CHECK(out.str().rfind("seed,step,atom,label,coefficient,residual_norm,mults\n",
                        0) == 0);
}

TEST_CASE("mp driver with a single iteration emits a single row per seed") {
  MpSpec spec;
  spec.song.repetitions = 1;
  spec.song.interval_samples = 1000;
  spec.iterations = 1;
  spec.solver = PursuitSolver::bandit;
  spec.config.delta = 1e-4;
  spec.config.sigma = 2.5;
  spec.num_trials = 1;
  auto rows = run_mp(spec);
  REQUIRE(rows.size() == 1);
}
