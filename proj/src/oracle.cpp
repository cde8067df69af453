#include "mips/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace mips {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

}  // namespace

MipsResult naive_mips(const MipsInstance& instance, SampleLedger& ledger) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  std::size_t best = 0;
  double best_value = -kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    double value = dot(instance.atoms().row(i), instance.query());
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  MipsResult result;
  result.indices = {best};
  result.estimates = {best_value / static_cast<double>(d)};
  result.ledger.add(static_cast<std::uint64_t>(n) * d);
  ledger.merge(result.ledger);
  return result;
}

MipsResult naive_mips_topk(const MipsInstance& instance, std::size_t k,
                           SampleLedger& ledger) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (k < 1 || k > n) {
    throw MipsError(ErrorKind::invalid_k, "k must lie in [1, n]");
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = dot(instance.atoms().row(i), instance.query());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending by value, ascending index on ties.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  MipsResult result;
  for (std::size_t r = 0; r < k; ++r) {
    result.indices.push_back(order[r]);
    result.estimates.push_back(values[order[r]] / static_cast<double>(d));
  }
  result.ledger.add(static_cast<std::uint64_t>(n) * d);
  ledger.merge(result.ledger);
  return result;
}

GapProfile gap_profile(const MipsInstance& instance) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (n < 2) {
    throw MipsError(ErrorKind::degenerate_instance,
                    "gap profile requires at least two atoms");
  }
  GapProfile profile;
  profile.mu.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    profile.mu[i] =
        dot(instance.atoms().row(i), instance.query()) / static_cast<double>(d);
  }
  profile.best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (profile.mu[i] > profile.mu[profile.best]) profile.best = i;
  }
  profile.gaps.resize(n);
  profile.min_gap = kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    profile.gaps[i] = profile.mu[profile.best] - profile.mu[i];
    if (i != profile.best) profile.min_gap = std::min(profile.min_gap, profile.gaps[i]);
  }
  return profile;
}

}  // namespace mips
