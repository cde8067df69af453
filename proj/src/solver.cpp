#include "mips/solver.hpp"

#include <algorithm>
#include <cmath>

namespace mips {

namespace {

double exact_mu(const Matrix& atoms, std::span<const double> query,
                std::size_t atom) {
  double sum = 0.0;
  for (std::size_t j = 0; j < query.size(); ++j) {
    sum += atoms(atom, j) * query[j];
  }
  return sum / static_cast<double>(query.size());
}

// Recomputes full dot products for every active arm (d multiplications
// each). Sampled running means are with-replacement estimates and cannot be
// completed into exact sums, so the fallback starts from scratch.
void exact_fallback(const Matrix& atoms, std::span<const double> query,
                    CandidateSet& set, SampleLedger& ledger) {
  for (std::size_t atom : set.active()) {
    set.set_exact(atom, exact_mu(atoms, query, atom));
    ledger.add(query.size());
  }
}

std::size_t lowest_index_argmax(const CandidateSet& set) {
  std::size_t best = set.active().front();
  double best_value = set.estimate(best);
  for (std::size_t atom : set.active()) {
    if (set.estimate(atom) > best_value) {
      best_value = set.estimate(atom);
      best = atom;
    }
  }
  return best;
}

void throw_if_invalid(const BanditConfig& config) {
  if (auto err = validate(config)) throw *err;
}

}  // namespace

double confidence_width(std::size_t d_used, std::size_t n, double delta,
                        double sigma) {
  if (delta == 0.0) return kInfinity;
  if (d_used == 0) return kInfinity;
  double du = static_cast<double>(d_used);
  double arg = 4.0 * static_cast<double>(n) * du * du / delta;
  return sigma * std::sqrt(2.0 * std::log(arg) / (du + 1.0));
}

bool elimination_round(const Matrix& atoms, std::span<const double> query,
                       CoordinateSampler& sampler, Rng& rng,
                       const BanditConfig& config, std::size_t ci_arms,
                       std::size_t keep_top, CandidateSet& set,
                       SampleLedger& ledger, const SolveHooks* hooks) {
  auto draw = sampler.next(rng);
  if (!draw) return false;
  const std::size_t j = draw->coordinate;
  const double factor = query[j] * draw->scale;
  ledger.add(set.num_active());
  set.update_means([&](std::size_t atom) { return factor * atoms(atom, j); });
  // The comparison width belongs to the pre-pull count (infinite on the
  // first round); with k pulls folded in, its divisor d_used + 1 equals k,
  // which is what makes the per-round error budget delta/(2 n d_used^2) add
  // up across rounds.
  const double width = set.ci_width();
  const double threshold = set.kth_estimate(keep_top) - width;
  if (hooks && hooks->on_eliminate) {
    set.eliminate_below(threshold, [&](std::size_t atom, double upper,
                                       double lower) {
      hooks->on_eliminate(atom, upper, lower);
    });
  } else {
    set.eliminate_below(threshold);
  }
  set.advance(
      confidence_width(set.d_used() + 1, ci_arms, config.delta, config.sigma));
  return true;
}

SolveOutcome bandit_mips(const MipsInstance& instance,
                         const BanditConfig& config,
                         CoordinateSampler& sampler, SampleLedger& ledger,
                         const SolveHooks* hooks) {
  throw_if_invalid(config);
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();

  SolveOutcome outcome;
  SampleLedger run;
  CandidateSet set(n);

  if (n > 1) {
    Rng rng(config.seed, streams::kSolve);
    while (set.d_used() < d && set.num_active() > 1) {
      if (!elimination_round(instance.atoms(), instance.query(), sampler, rng,
                             config, n, 1, set, run, hooks)) {
        break;  // sorted stream exhausted: behave as if d_used = d
      }
      ++outcome.rounds;
    }
  }

  outcome.survivors = set.active();
  MipsResult result;
  if (set.num_active() > 1) {
    result.exact_fallback_used = true;
    exact_fallback(instance.atoms(), instance.query(), set, run);
  }
  std::size_t best = lowest_index_argmax(set);
  result.indices = {best};
  result.estimates = {set.estimate(best)};
  result.ledger = run;
  ledger.merge(run);
  outcome.result = std::move(result);
  return outcome;
}

SolveOutcome bandit_mips(const MipsInstance& instance,
                         const BanditConfig& config, SampleLedger& ledger,
                         const SolveHooks* hooks) {
  CoordinateSampler sampler = make_sampler(instance, config);
  return bandit_mips(instance, config, sampler, ledger, hooks);
}

SolveOutcome bandit_mips_topk(const MipsInstance& instance, std::size_t k,
                              const BanditConfig& config,
                              CoordinateSampler& sampler, SampleLedger& ledger,
                              const SolveHooks* hooks) {
  throw_if_invalid(config);
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (k < 1 || k > n) {
    throw MipsError(ErrorKind::invalid_k, "k must lie in [1, n]");
  }

  SolveOutcome outcome;
  SampleLedger run;
  CandidateSet set(n);
  Rng rng(config.seed, streams::kSolve);
  while (set.d_used() < d && set.num_active() > k) {
    if (!elimination_round(instance.atoms(), instance.query(), sampler, rng,
                           config, n, k, set, run, hooks)) {
      break;
    }
    ++outcome.rounds;
  }

  outcome.survivors = set.active();
  MipsResult result;
  // More than k survivors need exact ranking; so does the degenerate k = n
  // case where no round ever ran and the estimates carry no information.
  if (set.num_active() > k || (set.d_used() == 0 && set.num_active() > 1)) {
    result.exact_fallback_used = true;
    exact_fallback(instance.atoms(), instance.query(), set, run);
  }

  std::vector<std::size_t> ranked(set.active());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) {
                     return set.estimate(a) > set.estimate(b);
                   });
  ranked.resize(k);
  result.indices = std::move(ranked);
  result.estimates.reserve(k);
  for (std::size_t atom : result.indices) {
    result.estimates.push_back(set.estimate(atom));
  }
  result.ledger = run;
  ledger.merge(run);
  outcome.result = std::move(result);
  return outcome;
}

WarmCache build_warm_cache(const MipsInstance& instance, std::size_t cache_size,
                           std::uint64_t seed) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (cache_size > d) {
    throw MipsError(ErrorKind::invalid_argument, "cache size must be <= d");
  }
  WarmCache cache;
  Rng rng(seed, streams::kWarmCache);
  cache.coords.resize(cache_size);
  for (std::size_t c = 0; c < cache_size; ++c) {
    cache.coords[c] = static_cast<std::size_t>(rng.bounded(d));
  }
  std::vector<double> values(n * cache_size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < cache_size; ++c) {
      values[i * cache_size + c] = instance.atoms()(i, cache.coords[c]);
    }
  }
  cache.products = Matrix(n, cache_size, std::move(values));
  return cache;
}

std::vector<SolveOutcome> warm_start_batch(
    const MipsInstance& instance,
    const std::vector<std::vector<double>>& queries, std::size_t cache_size,
    const BanditConfig& config, SampleLedger& ledger) {
  throw_if_invalid(config);
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();

  std::vector<SolveOutcome> outcomes;
  if (queries.empty()) return outcomes;

  WarmCache cache = build_warm_cache(instance, cache_size, config.seed);
  if (cache_size > 0) {
    // Cache cost is attributed once per batch, not per query.
    ledger.add(static_cast<std::uint64_t>(n) * cache_size);
  }

  outcomes.reserve(queries.size());
  for (const auto& raw_query : queries) {
    MipsInstance problem = instance.with_query(raw_query);
    SampleLedger run;
    SolveOutcome outcome;

    CandidateSet set(n);
    if (cache_size > 0) {
      std::vector<double> estimates(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cache_size; ++c) {
          sum += cache.products(i, c) * problem.query()[cache.coords[c]];
        }
        estimates[i] = sum / static_cast<double>(cache_size);
      }
      double width =
          confidence_width(cache_size, n, config.delta, config.sigma);
      set = CandidateSet::warm_started(std::move(estimates), cache_size, width);
      set.eliminate_below(set.max_estimate() - width);
    }

    // Every query replays solver stream 0, so identical queries give
    // identical outcomes and a zero-size cache reproduces the plain solver.
    CoordinateSampler sampler = CoordinateSampler::uniform(d);
    Rng rng(config.seed, streams::kSolve);
    if (n > 1) {
      while (set.d_used() < d && set.num_active() > 1) {
        if (!elimination_round(problem.atoms(), problem.query(), sampler, rng,
                               config, n, 1, set, run, nullptr)) {
          break;
        }
        ++outcome.rounds;
      }
    }

    outcome.survivors = set.active();
    MipsResult result;
    if (set.num_active() > 1) {
      result.exact_fallback_used = true;
      exact_fallback(problem.atoms(), problem.query(), set, run);
    }
    std::size_t best = lowest_index_argmax(set);
    result.indices = {best};
    result.estimates = {set.estimate(best)};
    result.ledger = run;
    ledger.merge(run);
    outcome.result = std::move(result);
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace mips
