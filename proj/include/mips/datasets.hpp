#ifndef MIPS_DATASETS_HPP
#define MIPS_DATASETS_HPP

#include <string>

#include "mips/types.hpp"

namespace mips {

// Latent parameters behind a generated instance, exposed for test harnesses.
struct NormalCustomParams {
  double theta_query = 0.0;
  std::vector<double> theta_atoms;
};

struct CorrelatedParams {
  double theta = 0.0;
  std::vector<double> weights;
};

// Per-atom location model: theta_i ~ N(0,1), entries ~ N(theta_i, 1); the
// query is generated the same way with its own theta.
//
// Stream layout (shared by all Gaussian generators here): stream 0 carries
// the latent parameters (query's first, then atom 0..n-1), stream 1 the
// query entries, stream 2+i the entries of atom i. Entries are drawn
// sequentially, so the instance at a smaller n or d is a literal prefix of
// the instance at a larger one under the same seed.
MipsInstance gen_normal_custom(std::size_t n, std::size_t d, std::uint64_t seed,
                               NormalCustomParams* params = nullptr);

// Correlated model: q_j ~ N(theta, 1) with theta ~ N(0,1); atom i is
// w_i * q plus N(0, noise_sigma^2) noise, w_i ~ N(0,1).
MipsInstance gen_correlated_normal_custom(std::size_t n, std::size_t d,
                                          std::uint64_t seed,
                                          double noise_sigma = 1.0,
                                          CorrelatedParams* params = nullptr);

// Fully exchangeable atoms: every entry of atoms and query i.i.d. N(0,1).
// The adversarial case: gaps shrink as 1/sqrt(d).
MipsInstance gen_symmetric_normal(std::size_t n, std::size_t d,
                                  std::uint64_t seed);

// Audio-style instance: the query alternates two chords, A = C4+E4+G4 with
// amplitudes 1:2:3 and B = G4+C5+E5 with amplitudes 3:2.5:1.5, each interval
// interval_samples long, repeated t times. Atoms are unit-amplitude sines at
// the six named note frequencies followed by the distractor frequencies.
// Signals are built by tiling one AB block, so repetitions are bit-identical.
struct SongSpec {
  std::size_t repetitions = 1;         // t
  std::size_t interval_samples = 44100;  // one interval; 1 s at 44.1 kHz
  double sample_rate = 44100.0;
  std::vector<double> extra_freqs = {294.0, 440.0, 523.0, 587.0, 698.0, 880.0};

  std::size_t dim() const { return 2 * repetitions * interval_samples; }
  std::size_t num_atoms() const { return kNumNotes + extra_freqs.size(); }
  double frequency(std::size_t atom) const;
  std::string label(std::size_t atom) const;

  static constexpr std::size_t kNumNotes = 6;
  // C4 E4 G4 C5 E5 G5
  static constexpr double kNoteFreqs[kNumNotes] = {256.0, 330.0, 392.0,
                                                   512.0, 660.0, 784.0};
  static constexpr const char* kNoteNames[kNumNotes] = {"C4", "E4", "G4",
                                                        "C5", "E5", "G5"};
};

MipsInstance gen_simple_song(const SongSpec& spec);

// Builds an instance from a loaded matrix by taking row `query_row` as the
// query and the remaining rows as atoms.
MipsInstance instance_from_matrix(const Matrix& matrix, std::size_t query_row);

}  // namespace mips

#endif  // MIPS_DATASETS_HPP
