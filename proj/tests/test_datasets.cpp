#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mips/datasets.hpp"
#include "mips/oracle.hpp"

using namespace mips;

namespace {

bool identical(const MipsInstance& a, const MipsInstance& b) {
  if (a.num_atoms() != b.num_atoms() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.num_atoms(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.atoms()(i, j) != b.atoms()(i, j)) return false;
    }
  }
  return std::equal(a.query().begin(), a.query().end(), b.query().begin());
}

bool differs_somewhere(const MipsInstance& a, const MipsInstance& b) {
  return !identical(a, b);
}

}  // namespace

TEST_CASE("generators are reproducible and seed-sensitive") {
  auto a1 = gen_normal_custom(6, 40, 5);
  auto a2 = gen_normal_custom(6, 40, 5);
  CHECK(identical(a1, a2));
  CHECK(differs_somewhere(a1, gen_normal_custom(6, 40, 6)));

  auto b1 = gen_correlated_normal_custom(6, 40, 5);
  auto b2 = gen_correlated_normal_custom(6, 40, 5);
  CHECK(identical(b1, b2));
  CHECK(differs_somewhere(b1, gen_correlated_normal_custom(6, 40, 6)));

  auto c1 = gen_symmetric_normal(6, 40, 5);
  auto c2 = gen_symmetric_normal(6, 40, 5);
  CHECK(identical(c1, c2));
  CHECK(differs_somewhere(c1, gen_symmetric_normal(6, 40, 6)));
}

TEST_CASE("instances at smaller d are prefixes of wider ones") {
  auto wide = gen_normal_custom(5, 200, 9);
  auto narrow = gen_normal_custom(5, 80, 9);
  CHECK(identical(narrow, wide.col_prefix(80)));

  auto wide_c = gen_correlated_normal_custom(5, 200, 9);
  auto narrow_c = gen_correlated_normal_custom(5, 80, 9);
  CHECK(identical(narrow_c, wide_c.col_prefix(80)));

  auto wide_s = gen_symmetric_normal(5, 200, 9);
  auto narrow_s = gen_symmetric_normal(5, 80, 9);
  CHECK(identical(narrow_s, wide_s.col_prefix(80)));
}

TEST_CASE("minimal normal-custom instance validates") {
  auto instance = gen_normal_custom(1, 1, 0);
  CHECK(!validate(instance.atoms(), instance.query()).has_value());
}

TEST_CASE("per-atom coordinate means cluster near their location parameter") {
  const std::size_t n = 10000, d = 10000;
  NormalCustomParams params;
  auto instance = gen_normal_custom(n, d, 1, &params);
  double bound = 4.0 / std::sqrt(static_cast<double>(d));
  std::size_t within = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < d; ++j) mean += instance.atoms()(i, j);
    mean /= static_cast<double>(d);
    if (std::abs(mean - params.theta_atoms[i]) < bound) ++within;
  }
  CHECK(within >= n * 99 / 100);
}

TEST_CASE("zero noise makes the correlated atoms collinear with the query") {
  CorrelatedParams params;
  auto instance = gen_correlated_normal_custom(8, 60, 4, 0.0, &params);
  double query_sq = 0.0;
  for (double q : instance.query()) query_sq += q * q;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 60; ++j) {
      CHECK(instance.atoms()(i, j) ==
            doctest::Approx(params.weights[i] * instance.query()[j])
                .epsilon(1e-12));
    }
  }
  // The argmax is the atom with the largest w_i * ||q||^2.
  SampleLedger ledger;
  std::size_t expect = 0;
  for (std::size_t i = 1; i < 8; ++i) {
    if (params.weights[i] * query_sq > params.weights[expect] * query_sq) {
      expect = i;
    }
  }
  CHECK(naive_mips(instance, ledger).best() == expect);
}

TEST_CASE("strongly weighted correlated atoms correlate with the query") {
  const std::size_t n = 100, d = 5000;
  CorrelatedParams params;
  auto instance = gen_correlated_normal_custom(n, d, 2, 1.0, &params);
  double qmean = 0.0;
  for (double q : instance.query()) qmean += q;
  qmean /= static_cast<double>(d);
  double qvar = 0.0;
  for (double q : instance.query()) qvar += (q - qmean) * (q - qmean);

  std::size_t strong = 0, passing = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(params.weights[i]) <= 1.0) continue;
    ++strong;
    double vmean = 0.0;
    for (std::size_t j = 0; j < d; ++j) vmean += instance.atoms()(i, j);
    vmean /= static_cast<double>(d);
    double cov = 0.0, vvar = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double dv = instance.atoms()(i, j) - vmean;
      cov += dv * (instance.query()[j] - qmean);
      vvar += dv * dv;
    }
    double corr = cov / std::sqrt(vvar * qvar);
    if (std::abs(corr) > 0.5) ++passing;
  }
  REQUIRE(strong > 0);
  CHECK(passing * 10 >= strong * 9);
}

TEST_CASE("symmetric min gap shrinks like one over sqrt d") {
  const std::size_t n = 50;
  std::vector<double> small_gaps, large_gaps;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto wide = gen_symmetric_normal(n, 16000, seed);
    large_gaps.push_back(gap_profile(wide).min_gap);
    small_gaps.push_back(gap_profile(wide.col_prefix(1000)).min_gap);
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  double ratio = median(small_gaps) / median(large_gaps);
  CHECK(ratio >= 2.8);
  CHECK(ratio <= 5.7);
}

TEST_CASE("symmetric entries pass a coarse normality check") {
  const std::size_t n = 100, d = 10000;  // n*d = 1e6
  auto instance = gen_symmetric_normal(n, d, 12);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) mean += instance.atoms()(i, j);
  }
  const double count = static_cast<double>(n) * d;
  mean /= count;
  double m2 = 0.0, m3 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double delta = instance.atoms()(i, j) - mean;
      m2 += delta * delta;
      m3 += delta * delta * delta;
    }
  }
  m2 /= count;
  m3 /= count;
  double skew = m3 / std::pow(m2, 1.5);
  CHECK(std::abs(skew) < 0.1);
}

TEST_CASE("song dimensions and structure") {
  SongSpec spec;
  CHECK(spec.dim() == 88200);
  auto instance = gen_simple_song(spec);
  CHECK(instance.num_atoms() == 12);
  CHECK(instance.dim() == 88200);

  // G4 sounds in both intervals; C4 only in the A interval.
  auto energy = [&](std::size_t atom, std::size_t from, std::size_t to) {
    double sum = 0.0;
    for (std::size_t j = from; j < to; ++j) {
      sum += instance.atoms()(atom, j) * instance.query()[j];
    }
    return sum;
  };
  const std::size_t half = 44100;
  CHECK(std::abs(energy(2, 0, half)) > 1000.0);       // G4 in A
  CHECK(std::abs(energy(2, half, 2 * half)) > 1000.0);  // G4 in B
  CHECK(std::abs(energy(0, 0, half)) > 1000.0);       // C4 in A
  CHECK(std::abs(energy(0, half, 2 * half)) < 1.0);   // C4 silent in B
}

TEST_CASE("song note ranking by exact inner products") {
  auto instance = gen_simple_song(SongSpec{});
  auto profile = gap_profile(instance);
  // Expected order among the five song notes: G4 C5 E4 E5 C4.
  CHECK(profile.mu[2] > profile.mu[3]);
  CHECK(profile.mu[3] > profile.mu[1]);
  CHECK(profile.mu[1] > profile.mu[4]);
  CHECK(profile.mu[4] > profile.mu[0]);
  SampleLedger ledger;
  CHECK(naive_mips(instance, ledger).best() == 2);
}

TEST_CASE("song output is exactly periodic with the AB block") {
  SongSpec spec;
  spec.repetitions = 3;
  spec.interval_samples = 1000;
  auto instance = gen_simple_song(spec);
  const std::size_t block = 2000;
  for (std::size_t r = 1; r < 3; ++r) {
    for (std::size_t j = 0; j < block; ++j) {
      CHECK(instance.query()[j] == instance.query()[r * block + j]);
      for (std::size_t atom = 0; atom < instance.num_atoms(); ++atom) {
        if (instance.atoms()(atom, j) != instance.atoms()(atom, r * block + j)) {
          FAIL_CHECK("atom block mismatch");
        }
      }
    }
  }
}

TEST_CASE("song labels name notes and distractor frequencies") {
  SongSpec spec;
  CHECK(spec.label(0) == "C4");
  CHECK(spec.label(2) == "G4");
  CHECK(spec.label(5) == "G5");
  CHECK(spec.label(6) == "294Hz");
  CHECK(spec.frequency(7) == 440.0);
}

TEST_CASE("instance_from_matrix splits the query row out") {
  Matrix m(3, 2, {1, 2, 3, 4, 5, 6});
  auto instance = instance_from_matrix(m, 1);
  CHECK(instance.num_atoms() == 2);
  CHECK(instance.query()[0] == 3);
  CHECK(instance.query()[1] == 4);
  CHECK(instance.atoms()(0, 0) == 1);
  CHECK(instance.atoms()(1, 0) == 5);
  CHECK_THROWS_AS(instance_from_matrix(m, 3), MipsError);
  CHECK_THROWS_AS(instance_from_matrix(Matrix(1, 2, {1, 2}), 0), MipsError);
}
