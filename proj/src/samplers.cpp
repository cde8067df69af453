#include "mips/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mips {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

void check_probability_vector(const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw MipsError(ErrorKind::invalid_argument,
                      "sampling weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw MipsError(ErrorKind::invalid_argument,
                    "sampling weights must sum to 1");
  }
}

std::vector<double> normalized(std::vector<double> raw) {
  double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw MipsError(ErrorKind::degenerate_weights,
                    "weight numerator is zero everywhere");
  }
  for (double& w : raw) w /= sum;
  return raw;
}

}  // namespace

CoordinateSampler CoordinateSampler::uniform(std::size_t dim) {
  return CoordinateSampler(Kind::uniform, dim);
}

CoordinateSampler CoordinateSampler::weighted(std::vector<double> weights,
                                              SampleLedger* prep) {
  check_probability_vector(weights);
  CoordinateSampler sampler(Kind::weighted, weights.size());
  sampler.cumulative_.resize(weights.size());
  double running = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    running += weights[j];
    sampler.cumulative_[j] = running;
  }
  sampler.cumulative_.back() = 1.0;
  if (prep) prep->add(weights.size());
  sampler.weights_ = std::move(weights);
  return sampler;
}

CoordinateSampler CoordinateSampler::sorted(std::vector<std::size_t> order) {
  CoordinateSampler sampler(Kind::sorted, order.size());
  sampler.order_ = std::move(order);
  return sampler;
}

std::optional<CoordinateDraw> CoordinateSampler::next(Rng& rng) {
  switch (kind_) {
    case Kind::uniform:
      return CoordinateDraw{static_cast<std::size_t>(rng.bounded(dim_)), 1.0};
    case Kind::weighted: {
      // Inverse CDF; zero-weight coordinates have zero-width intervals and
      // are never drawn.
      double u = rng.uniform01();
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      std::size_t j = static_cast<std::size_t>(it - cumulative_.begin());
      if (j >= dim_) j = dim_ - 1;
      return CoordinateDraw{j, 1.0 / (static_cast<double>(dim_) * weights_[j])};
    }
    case Kind::sorted:
      if (cursor_ >= order_.size()) return std::nullopt;
      return CoordinateDraw{order_[cursor_++], 1.0};
  }
  return std::nullopt;
}

std::vector<double> optimal_weights(const MipsInstance& instance,
                                    SampleLedger* prep) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  std::vector<double> raw(d);
  for (std::size_t j = 0; j < d; ++j) {
    double column_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = instance.atoms()(i, j);
      column_sq += v * v;
    }
    double q = instance.query()[j];
    raw[j] = std::sqrt(q * q * column_sq);
  }
  if (prep) prep->add(static_cast<std::uint64_t>(n) * d);
  return normalized(std::move(raw));
}

std::vector<double> query_only_weights(std::span<const double> query,
                                       double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw MipsError(ErrorKind::invalid_argument,
                    "beta must be finite and nonnegative");
  }
  std::vector<double> raw(query.size());
  bool any_nonzero = false;
  for (double q : query) any_nonzero |= (q != 0.0);
  if (!any_nonzero) {
    throw MipsError(ErrorKind::degenerate_weights, "query is all zeros");
  }
  for (std::size_t j = 0; j < query.size(); ++j) {
    // beta = 0 weights every coordinate equally, including zeros of q.
    raw[j] = beta == 0.0 ? 1.0 : std::pow(query[j] * query[j], beta);
  }
  return normalized(std::move(raw));
}

std::vector<std::size_t> alpha_order(std::span<const double> query) {
  std::vector<double> keys(query.size());
  for (std::size_t j = 0; j < query.size(); ++j) keys[j] = query[j] * query[j];
  std::vector<std::size_t> order(query.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  return order;
}

std::vector<double> estimator_mean_identity(const MipsInstance& instance,
                                            std::span<const double> weights) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (weights.size() != d) {
    throw MipsError(ErrorKind::size_mismatch, "weights length must equal d");
  }
  std::vector<double> means(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (weights[j] == 0.0) continue;  // outside the sampler's support
      double x = instance.query()[j] * instance.atoms()(i, j) /
                 (static_cast<double>(d) * weights[j]);
      sum += weights[j] * x;
    }
    means[i] = sum;
  }
  return means;
}

double combined_variance(const MipsInstance& instance,
                         std::span<const double> weights) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  double second_moment = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double column_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = instance.atoms()(i, j);
      column_sq += v * v;
    }
    double q = instance.query()[j];
    double numerator = q * q * column_sq;
    if (numerator == 0.0) continue;
    if (weights[j] == 0.0) return kInfinity;
    second_moment += numerator / (static_cast<double>(d) * d * weights[j]);
  }
  double mean_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mu = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      mu += instance.atoms()(i, j) * instance.query()[j];
    }
    mu /= static_cast<double>(d);
    mean_sq += mu * mu;
  }
  return second_moment - mean_sq;
}

CoordinateSampler make_sampler(const MipsInstance& instance,
                               const BanditConfig& config, SampleLedger* prep) {
  if (config.beta == 0.0) {
    return CoordinateSampler::uniform(instance.dim());
  }
  if (std::isinf(config.beta)) {
    // Sort keys q_j^2 cost d multiplications; the sort itself is overhead.
    if (prep) prep->add(instance.dim());
    return CoordinateSampler::sorted(alpha_order(instance.query()));
  }
  return CoordinateSampler::weighted(
      query_only_weights(instance.query(), config.beta), prep);
}

}  // namespace mips
