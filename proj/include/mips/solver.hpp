#ifndef MIPS_SOLVER_HPP
#define MIPS_SOLVER_HPP

#include <functional>

#include "mips/samplers.hpp"
#include "mips/types.hpp"

namespace mips {

// Hoeffding-style confidence half-width shared by all arms after d_used
// pulls: sigma * sqrt(2 ln(4 n d_used^2 / delta) / (d_used + 1)).
// Requires d_used >= 1 (d_used = 0 is the infinite initialization).
// delta = 0 returns infinity, which disables elimination entirely.
double confidence_width(std::size_t d_used, std::size_t n, double delta,
                        double sigma);

// Optional observers for invariant checks. on_eliminate fires with
// (atom, upper bound, threshold lower bound) on every confidence-based
// elimination; on_prune fires with (atom, norm cap, outside lower bound)
// on every cross-bin prune.
struct SolveHooks {
  std::function<void(std::size_t, double, double)> on_eliminate;
  std::function<void(std::size_t, double, double)> on_prune;
};

struct SolveOutcome {
  MipsResult result;
  std::size_t rounds = 0;
  // Active set when the elimination loop exited (the exact fallback ran over
  // these whenever there was more than one).
  std::vector<std::size_t> survivors;

  std::size_t survivors_at_fallback() const { return survivors.size(); }
};

// One elimination round shared by every adaptive search in this library:
// draw a coordinate, fold it into all active arms, drop every arm whose
// upper bound sits below the keep_top-th best lower bound, then advance the
// pull count and refresh the shared width (with `ci_arms` in the union
// bound). The comparison width is the one belonging to the pre-pull count -
// infinite on a set's first round - so after k pulls the elimination uses
// the width whose divisor is exactly k. Charges one multiplication per
// active arm. Returns false if the sampler was exhausted before the draw
// (sorted streams only).
bool elimination_round(const Matrix& atoms, std::span<const double> query,
                       CoordinateSampler& sampler, Rng& rng,
                       const BanditConfig& config, std::size_t ci_arms,
                       std::size_t keep_top, CandidateSet& set,
                       SampleLedger& ledger, const SolveHooks* hooks = nullptr);

// Adaptive best-atom search by successive elimination over coordinate
// samples. The loop runs while more than one atom is active and fewer than d
// coordinates have been drawn; survivors beyond one are resolved by exact
// dot products over all d coordinates (d multiplications each). Per-arm
// ledger contribution never exceeds 2d.
SolveOutcome bandit_mips(const MipsInstance& instance,
                         const BanditConfig& config,
                         CoordinateSampler& sampler, SampleLedger& ledger,
                         const SolveHooks* hooks = nullptr);

// Convenience overload: builds the sampler from config.beta.
SolveOutcome bandit_mips(const MipsInstance& instance,
                         const BanditConfig& config, SampleLedger& ledger,
                         const SolveHooks* hooks = nullptr);

// Top-k variant: eliminates against the k-th best lower bound and stops once
// k atoms remain. Returns k indices ordered by final estimate descending,
// ties by index; the exact fallback ranks survivors whenever more than k
// remain (or when no sampling round ran at all, so estimates carry no
// information). Throws invalid_k when k > n.
SolveOutcome bandit_mips_topk(const MipsInstance& instance, std::size_t k,
                              const BanditConfig& config,
                              CoordinateSampler& sampler, SampleLedger& ledger,
                              const SolveHooks* hooks = nullptr);

// Cached atom values across a shared coordinate subset, reusable by every
// query of a batch.
struct WarmCache {
  std::vector<std::size_t> coords;  // sampled with replacement, each in [0,d)
  Matrix products;                  // n x |coords|, products(i,c) = v_i,coords[c]
};

WarmCache build_warm_cache(const MipsInstance& instance, std::size_t cache_size,
                           std::uint64_t seed);

// Solves one search per query over the shared atoms, warm-starting each from
// the cache: estimates are initialized from the cached coordinates,
// d_used starts at cache_size, and elimination proceeds as usual. The
// n*cache_size cache cost is charged to `ledger` once for the whole batch;
// per-query outcome ledgers carry only that query's own loop and fallback
// costs. Every query's loop replays the same solver stream, so identical
// queries produce identical outcomes.
std::vector<SolveOutcome> warm_start_batch(
    const MipsInstance& instance,
    const std::vector<std::vector<double>>& queries, std::size_t cache_size,
    const BanditConfig& config, SampleLedger& ledger);

}  // namespace mips

#endif  // MIPS_SOLVER_HPP
