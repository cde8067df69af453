#ifndef MIPS_BUCKET_HPP
#define MIPS_BUCKET_HPP

#include "mips/solver.hpp"

namespace mips {

// Atoms partitioned into bins by estimated squared norm, descending. Every
// bin except possibly the last holds exactly bin_size atoms.
struct NormBins {
  std::vector<std::vector<std::size_t>> bins;
  std::vector<double> est_norms;  // per-atom squared norm scaled to full d
  std::size_t m_probe = 0;        // coordinates sampled per atom
};

inline constexpr std::size_t kDefaultBinSize = 30;
inline constexpr std::size_t kDefaultNormProbe = 32;

// Estimated squared norms: (d/m_probe) * sum of v_ij^2 over m_probe uniform
// coordinate draws per atom (stream kNormProbe of `seed`). m_probe = d runs
// a deterministic full sweep instead, giving exact norms. Charges n*m_probe.
std::vector<double> estimate_norms(const MipsInstance& instance,
                                   std::size_t m_probe, std::uint64_t seed,
                                   SampleLedger& ledger);

// Sorts atoms by estimate descending (ties by ascending index) and cuts the
// order into bins of bin_size.
NormBins build_bins(std::vector<double> estimates, std::size_t bin_size,
                    std::size_t m_probe = 0);

// Norm-binned search: each bin runs the standard elimination rounds
// (bin b draws from stream b of config.seed), and after every global round
// an atom is additionally pruned when the best lower confidence bound among
// active atoms OUTSIDE its bin exceeds its norm cap
// sqrt(est_norm_i) * ||q|| / d. Per-bin winners meet in an exact fallback.
// ||q|| costs d multiplications, charged to `prep` when given.
SolveOutcome bucket_ae(const MipsInstance& instance, const BanditConfig& config,
                       const NormBins& bins, SampleLedger& ledger,
                       SampleLedger* prep = nullptr,
                       const SolveHooks* hooks = nullptr);

}  // namespace mips

#endif  // MIPS_BUCKET_HPP
