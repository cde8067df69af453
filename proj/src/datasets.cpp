#include "mips/datasets.hpp"

#include <cmath>
#include <cstdio>

#include "mips/rng.hpp"

namespace mips {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Generator streams live in their own id range so a dataset seed never
// replays a solver stream of the same seed. Latent parameters come from the
// first stream, the query's entries from the second, atom i's entries from
// the atom base + i. Instances at smaller n or d are prefixes of larger ones
// under the same seed.
constexpr std::uint64_t kLatentStream = 0x2000000000000000ull;
constexpr std::uint64_t kQueryStream = 0x2000000000000001ull;
constexpr std::uint64_t kAtomStreamBase = 0x2000000000000002ull;

void check_shape(std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) {
    throw MipsError(ErrorKind::invalid_argument, "n and d must be >= 1");
  }
}

}  // namespace

MipsInstance gen_normal_custom(std::size_t n, std::size_t d, std::uint64_t seed,
                               NormalCustomParams* params) {
  check_shape(n, d);
  Rng latent(seed, kLatentStream);
  double theta_query = latent.gaussian();
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = latent.gaussian();

  std::vector<double> query(d);
  Rng query_rng(seed, kQueryStream);
  for (std::size_t j = 0; j < d; ++j) query[j] = theta_query + query_rng.gaussian();

  std::vector<double> values(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    Rng row(seed, kAtomStreamBase + i);
    double* out = values.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) out[j] = theta[i] + row.gaussian();
  }
  if (params) {
    params->theta_query = theta_query;
    params->theta_atoms = std::move(theta);
  }
  return MipsInstance(Matrix(n, d, std::move(values)), std::move(query));
}

MipsInstance gen_correlated_normal_custom(std::size_t n, std::size_t d,
                                          std::uint64_t seed,
                                          double noise_sigma,
                                          CorrelatedParams* params) {
  check_shape(n, d);
  if (!(noise_sigma >= 0.0)) {
    throw MipsError(ErrorKind::invalid_argument, "noise sigma must be >= 0");
  }
  Rng latent(seed, kLatentStream);
  double theta = latent.gaussian();
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = latent.gaussian();

  std::vector<double> query(d);
  Rng query_rng(seed, kQueryStream);
  for (std::size_t j = 0; j < d; ++j) query[j] = theta + query_rng.gaussian();

  std::vector<double> values(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    Rng row(seed, kAtomStreamBase + i);
    double* out = values.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) {
      out[j] = weights[i] * query[j] + noise_sigma * row.gaussian();
    }
  }
  if (params) {
    params->theta = theta;
    params->weights = std::move(weights);
  }
  return MipsInstance(Matrix(n, d, std::move(values)), std::move(query));
}

MipsInstance gen_symmetric_normal(std::size_t n, std::size_t d,
                                  std::uint64_t seed) {
  check_shape(n, d);
  std::vector<double> query(d);
  Rng query_rng(seed, kQueryStream);
  for (std::size_t j = 0; j < d; ++j) query[j] = query_rng.gaussian();

  std::vector<double> values(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    Rng row(seed, kAtomStreamBase + i);
    double* out = values.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) out[j] = row.gaussian();
  }
  return MipsInstance(Matrix(n, d, std::move(values)), std::move(query));
}

double SongSpec::frequency(std::size_t atom) const {
  return atom < kNumNotes ? kNoteFreqs[atom] : extra_freqs[atom - kNumNotes];
}

std::string SongSpec::label(std::size_t atom) const {
  if (atom < kNumNotes) return kNoteNames[atom];
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%gHz", frequency(atom));
  return buffer;
}

MipsInstance gen_simple_song(const SongSpec& spec) {
  if (spec.repetitions < 1 || spec.interval_samples < 1 ||
      !(spec.sample_rate > 0.0)) {
    throw MipsError(ErrorKind::invalid_argument, "invalid song spec");
  }
  const std::size_t interval = spec.interval_samples;
  const std::size_t block = 2 * interval;
  const std::size_t d = spec.dim();
  const std::size_t n = spec.num_atoms();

  // A interval: C4 + 2 E4 + 3 G4; B interval: 3 G4 + 2.5 C5 + 1.5 E5.
  std::vector<double> query_block(block);
  for (std::size_t j = 0; j < block; ++j) {
    double s = static_cast<double>(j) / spec.sample_rate;
    if (j < interval) {
      query_block[j] = 1.0 * std::sin(kTwoPi * 256.0 * s) +
                       2.0 * std::sin(kTwoPi * 330.0 * s) +
                       3.0 * std::sin(kTwoPi * 392.0 * s);
    } else {
      query_block[j] = 3.0 * std::sin(kTwoPi * 392.0 * s) +
                       2.5 * std::sin(kTwoPi * 512.0 * s) +
                       1.5 * std::sin(kTwoPi * 660.0 * s);
    }
  }
  std::vector<double> query(d);
  for (std::size_t r = 0; r < spec.repetitions; ++r) {
    std::copy(query_block.begin(), query_block.end(),
              query.begin() + r * block);
  }

  std::vector<double> values(n * d);
  std::vector<double> atom_block(block);
  for (std::size_t i = 0; i < n; ++i) {
    double f = spec.frequency(i);
    for (std::size_t j = 0; j < block; ++j) {
      double s = static_cast<double>(j) / spec.sample_rate;
      atom_block[j] = std::sin(kTwoPi * f * s);
    }
    double* out = values.data() + i * d;
    for (std::size_t r = 0; r < spec.repetitions; ++r) {
      std::copy(atom_block.begin(), atom_block.end(), out + r * block);
    }
  }
  return MipsInstance(Matrix(n, d, std::move(values)), std::move(query));
}

MipsInstance instance_from_matrix(const Matrix& matrix, std::size_t query_row) {
  if (matrix.rows() < 2) {
    throw MipsError(ErrorKind::degenerate_instance,
                    "matrix needs at least two rows (atoms plus query)");
  }
  if (query_row >= matrix.rows()) {
    throw MipsError(ErrorKind::invalid_argument, "query row out of range");
  }
  const std::size_t d = matrix.cols();
  std::vector<double> query(matrix.row(query_row).begin(),
                            matrix.row(query_row).end());
  std::vector<double> values((matrix.rows() - 1) * d);
  std::size_t out_row = 0;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (i == query_row) continue;
    auto row = matrix.row(i);
    std::copy(row.begin(), row.end(), values.data() + out_row * d);
    ++out_row;
  }
  return MipsInstance(Matrix(matrix.rows() - 1, d, std::move(values)),
                      std::move(query));
}

}  // namespace mips
