#include "mips/bucket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mips {

std::vector<double> estimate_norms(const MipsInstance& instance,
                                   std::size_t m_probe, std::uint64_t seed,
                                   SampleLedger& ledger) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (m_probe < 1 || m_probe > d) {
    throw MipsError(ErrorKind::invalid_argument, "m_probe must lie in [1, d]");
  }
  std::vector<double> estimates(n, 0.0);
  if (m_probe == d) {
    // Full sweep: exact squared norms.
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double v = instance.atoms()(i, j);
        sum += v * v;
      }
      estimates[i] = sum;
    }
  } else {
    Rng rng(seed, streams::kNormProbe);
    double scale = static_cast<double>(d) / static_cast<double>(m_probe);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t s = 0; s < m_probe; ++s) {
        double v = instance.atoms()(i, rng.bounded(d));
        sum += v * v;
      }
      estimates[i] = scale * sum;
    }
  }
  ledger.add(static_cast<std::uint64_t>(n) * m_probe);
  return estimates;
}

NormBins build_bins(std::vector<double> estimates, std::size_t bin_size,
                    std::size_t m_probe) {
  if (bin_size < 1) {
    throw MipsError(ErrorKind::invalid_argument, "bin size must be >= 1");
  }
  const std::size_t n = estimates.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending estimate, ties by ascending atom index.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return estimates[a] > estimates[b];
  });
  NormBins bins;
  bins.est_norms = std::move(estimates);
  bins.m_probe = m_probe;
  for (std::size_t start = 0; start < n; start += bin_size) {
    std::size_t stop = std::min(start + bin_size, n);
    bins.bins.emplace_back(order.begin() + start, order.begin() + stop);
  }
  return bins;
}

SolveOutcome bucket_ae(const MipsInstance& instance, const BanditConfig& config,
                       const NormBins& bins, SampleLedger& ledger,
                       SampleLedger* prep, const SolveHooks* hooks) {
  if (auto err = validate(config)) throw *err;
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  std::size_t binned = 0;
  for (const auto& bin : bins.bins) binned += bin.size();
  if (binned != n || bins.est_norms.size() != n) {
    throw MipsError(ErrorKind::size_mismatch,
                    "bins were not built over this instance");
  }

  // Cauchy-Schwarz cap on mu_i from the estimated norm; ||q|| costs d
  // multiplications once.
  double query_sq = 0.0;
  for (double q : instance.query()) query_sq += q * q;
  if (prep) prep->add(d);
  const double query_norm = std::sqrt(query_sq);
  std::vector<double> caps(n);
  for (std::size_t i = 0; i < n; ++i) {
    caps[i] = std::sqrt(std::max(bins.est_norms[i], 0.0)) * query_norm /
              static_cast<double>(d);
  }

  const std::size_t num_bins = bins.bins.size();
  std::vector<CandidateSet> sets;
  std::vector<Rng> rngs;
  sets.reserve(num_bins);
  rngs.reserve(num_bins);
  for (std::size_t b = 0; b < num_bins; ++b) {
    sets.emplace_back(n, bins.bins[b]);
    rngs.emplace_back(config.seed, b);  // bin b draws from stream b
  }
  CoordinateSampler sampler = CoordinateSampler::uniform(d);

  SolveOutcome outcome;
  SampleLedger run;
  std::size_t total_active = n;

  auto live = [&](std::size_t b) {
    return sets[b].num_active() > 1 && sets[b].d_used() < d;
  };

  std::vector<double> bin_lcb(num_bins);
  std::vector<std::size_t> prune_buffer;
  while (true) {
    bool drew = false;
    for (std::size_t b = 0; b < num_bins; ++b) {
      if (!live(b)) continue;
      elimination_round(instance.atoms(), instance.query(), sampler, rngs[b],
                        config, n, 1, sets[b], run, hooks);
      drew = true;
    }
    if (!drew) break;
    ++outcome.rounds;

    // Recount actives after within-bin eliminations.
    total_active = 0;
    for (const auto& set : sets) total_active += set.num_active();

    // Best lower confidence bound per bin; -inf before a bin's first pull.
    for (std::size_t b = 0; b < num_bins; ++b) {
      double best = -kInfinity;
      for (std::size_t atom : sets[b].active()) {
        best = std::max(best, sets[b].estimate(atom) - sets[b].ci_width());
      }
      bin_lcb[b] = best;
    }
    std::size_t best_bin = 0;
    double best_lcb = -kInfinity, second_lcb = -kInfinity;
    for (std::size_t b = 0; b < num_bins; ++b) {
      if (bin_lcb[b] > best_lcb) {
        second_lcb = best_lcb;
        best_lcb = bin_lcb[b];
        best_bin = b;
      } else {
        second_lcb = std::max(second_lcb, bin_lcb[b]);
      }
    }

    // Cross-bin prune: only atoms outside a candidate's own bin may retire
    // it, and the globally last atom always stays.
    for (std::size_t b = 0; b < num_bins && total_active > 1; ++b) {
      double outside = (b == best_bin) ? second_lcb : best_lcb;
      if (!(outside > -kInfinity)) continue;
      prune_buffer.assign(sets[b].active().begin(), sets[b].active().end());
      for (std::size_t atom : prune_buffer) {
        if (total_active <= 1) break;
        if (outside > caps[atom]) {
          sets[b].deactivate(atom);
          --total_active;
          if (hooks && hooks->on_prune) hooks->on_prune(atom, caps[atom], outside);
        }
      }
    }
  }

  std::vector<std::size_t> winners;
  for (const auto& set : sets) {
    winners.insert(winners.end(), set.active().begin(), set.active().end());
  }
  std::sort(winners.begin(), winners.end());
  outcome.survivors = winners;

  MipsResult result;
  std::vector<double> winner_mu(winners.size());
  if (winners.size() > 1) {
    result.exact_fallback_used = true;
    for (std::size_t w = 0; w < winners.size(); ++w) {
      double sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        sum += instance.atoms()(winners[w], j) * instance.query()[j];
      }
      winner_mu[w] = sum / static_cast<double>(d);
      run.add(d);
    }
  } else {
    for (std::size_t b = 0; b < num_bins; ++b) {
      if (sets[b].num_active() == 1) winner_mu[0] = sets[b].estimate(winners[0]);
    }
  }

  std::size_t best_pos = 0;
  for (std::size_t w = 1; w < winners.size(); ++w) {
    if (winner_mu[w] > winner_mu[best_pos]) best_pos = w;
  }
  result.indices = {winners[best_pos]};
  result.estimates = {winner_mu[best_pos]};
  result.ledger = run;
  ledger.merge(run);
  outcome.result = std::move(result);
  return outcome;
}

}  // namespace mips
