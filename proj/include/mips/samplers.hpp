#ifndef MIPS_SAMPLERS_HPP
#define MIPS_SAMPLERS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mips/rng.hpp"
#include "mips/types.hpp"

namespace mips {

// One coordinate draw: the index J and the factor that makes
// scale * q_J * v_iJ an estimate of mu_i under this sampler.
struct CoordinateDraw {
  std::size_t coordinate;
  double scale;
};

// Coordinate stream powering the elimination loop. Three kinds:
//   uniform  - J ~ Unif[d], scale 1 (the per-pull reward is q_J v_iJ).
//   weighted - J ~ w via inverse CDF, scale 1/(d w_J) (unbiased estimator).
//   sorted   - deterministic descending-q_j^2 order without replacement,
//              scale 1 (plain running mean, the beta -> infinity variant).
// Uniform and weighted samplers are immutable and shareable across runs;
// a sorted sampler carries a cursor, so each run needs its own instance.
class CoordinateSampler {
 public:
  enum class Kind { uniform, weighted, sorted };

  static CoordinateSampler uniform(std::size_t dim);

  // `weights` must be a probability vector of length d; entries may be zero
  // (those coordinates leave the support). Building the cumulative table
  // costs d multiplications, charged to `prep` when given.
  static CoordinateSampler weighted(std::vector<double> weights,
                                    SampleLedger* prep = nullptr);

  // `order` must be a permutation of [0, d).
  static CoordinateSampler sorted(std::vector<std::size_t> order);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  // Draws the next coordinate; empty once a sorted stream is exhausted.
  std::optional<CoordinateDraw> next(Rng& rng);

 private:
  CoordinateSampler(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  std::size_t dim_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
};

// Variance-minimizing sampling weights w_j proportional to
// sqrt(q_j^2 * sum_i v_ij^2), normalized to sum 1. Computing the column
// sums costs n*d multiplications, charged to `prep` when given. Throws
// degenerate_weights when every term is zero.
std::vector<double> optimal_weights(const MipsInstance& instance,
                                    SampleLedger* prep = nullptr);

// Practical weights from the query alone: w_j proportional to |q_j|^(2 beta).
// beta = 0 is uniform, beta = 1 approximates the optimal weights when atom
// columns resemble the query. Throws degenerate_weights on an all-zero query.
std::vector<double> query_only_weights(std::span<const double> query,
                                       double beta);

// Coordinate order for the sorted variant: indices by q_j^2 strictly
// descending, ties by ascending index.
std::vector<std::size_t> alpha_order(std::span<const double> query);

// The unbiasedness identity evaluated as an exact finite sum: for each atom,
// sum over the support of w_j * (q_j v_ij / (d w_j)), which must equal mu_i.
// Test oracle only; never on the solve path.
std::vector<double> estimator_mean_identity(const MipsInstance& instance,
                                            std::span<const double> weights);

// Combined estimator variance sum_i Var[X_iJ] under J ~ w; the objective the
// optimal weights minimize over the simplex.
double combined_variance(const MipsInstance& instance,
                         std::span<const double> weights);

// Sampler selection from config.beta: 0 -> uniform, finite -> weighted with
// query-only weights, infinity -> sorted order.
CoordinateSampler make_sampler(const MipsInstance& instance,
                               const BanditConfig& config,
                               SampleLedger* prep = nullptr);

}  // namespace mips

#endif  // MIPS_SAMPLERS_HPP
