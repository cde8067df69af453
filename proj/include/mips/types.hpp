#ifndef MIPS_TYPES_HPP
#define MIPS_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mips/error.hpp"
#include "mips/ledger.hpp"
#include "mips/matrix.hpp"

namespace mips {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Checks the search-problem invariants on raw parts: n,d >= 1, query length
// equals the atom column count, and every entry finite. Errors name the
// offending row/column.
std::optional<MipsError> validate(const Matrix& atoms,
                                  std::span<const double> query);

// A search problem: n atoms (rows) against one query. Immutable once built;
// construction validates, so every held instance satisfies the invariants
// and may be shared freely across concurrent solver runs.
class MipsInstance {
 public:
  // Throws MipsError when validation fails.
  MipsInstance(Matrix atoms, std::vector<double> query);

  const Matrix& atoms() const { return atoms_; }
  std::span<const double> query() const { return query_; }
  std::size_t num_atoms() const { return atoms_.rows(); }
  std::size_t dim() const { return atoms_.cols(); }

  // Same atoms, new query (validated). Storage is shared with *this.
  MipsInstance with_query(std::vector<double> query) const;

  // First `dim` coordinates of atoms and query, as a view. Subsampling
  // features this way keeps the instance at a smaller d a literal prefix of
  // the instance at a larger one.
  MipsInstance col_prefix(std::size_t dim) const;

 private:
  struct Unchecked {};
  MipsInstance(Unchecked, Matrix atoms, std::vector<double> query);

  Matrix atoms_;
  std::vector<double> query_;
};

// Everything that tunes a bandit run. beta = 0 samples coordinates
// uniformly; finite beta > 0 weights them by |q_j|^(2*beta); beta = infinity
// selects the deterministic sorted-order variant.
struct BanditConfig {
  double delta = 1e-3;
  double sigma = 1.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  // Tie-break policy is fixed: lowest index wins every argmax.
};

std::optional<MipsError> validate(const BanditConfig& config);

struct ArmState {
  double mu_hat = 0.0;
  bool active = true;
};

// The surviving-atom set of an elimination run: per-arm running estimates, a
// shared pull count, and the shared confidence width (infinite until the
// first pull). ci_width always corresponds to the current d_used, so it is
// infinite exactly when d_used == 0. The elimination that follows the k-th
// pull compares against the width of the previous count: rounds run
// update_means -> eliminate_below(ci_width) -> advance(new width), which
// matches the count-after-comparison order of the elimination loop and keeps
// the first round elimination-free.
class CandidateSet {
 public:
  // All of [0, n) active.
  explicit CandidateSet(std::size_t n);

  // Only `members` active (bucket bins); estimates indexed by global atom id.
  CandidateSet(std::size_t n, std::vector<std::size_t> members);

  // Warm-started set: estimates already fed by d_used shared pulls.
  static CandidateSet warm_started(std::vector<double> estimates,
                                   std::size_t d_used, double ci_width);

  std::size_t size() const { return arms_.size(); }
  std::size_t d_used() const { return d_used_; }
  double ci_width() const { return ci_width_; }
  const std::vector<std::size_t>& active() const { return active_; }
  std::size_t num_active() const { return active_.size(); }
  double estimate(std::size_t atom) const { return arms_[atom].mu_hat; }
  bool is_active(std::size_t atom) const { return arms_[atom].active; }

  // One shared pull: folds value(atom) into every active arm's running mean
  // with the shared count. Does not advance d_used.
  template <typename ValueFn>
  void update_means(ValueFn&& value) {
    double count = static_cast<double>(d_used_);
    for (std::size_t atom : active_) {
      ArmState& arm = arms_[atom];
      arm.mu_hat = (count * arm.mu_hat + value(atom)) / (count + 1.0);
    }
  }

  // Closes the round: increments d_used and adopts the width for the new
  // count.
  void advance(double next_width) {
    ++d_used_;
    ci_width_ = next_width;
  }

  // Overwrites one arm's estimate with its exact value (fallback path).
  void set_exact(std::size_t atom, double mu) { arms_[atom].mu_hat = mu; }

  double max_estimate() const;

  // k-th largest active estimate (k = 1 gives max_estimate).
  double kth_estimate(std::size_t k) const;

  // Deactivates every active arm with mu_hat + ci_width strictly below
  // `lower_bound`. Calls on_eliminate(atom, upper, lower_bound) per drop.
  template <typename EliminateFn>
  void eliminate_below(double lower_bound, EliminateFn&& on_eliminate) {
    std::size_t kept = 0;
    for (std::size_t atom : active_) {
      double upper = arms_[atom].mu_hat + ci_width_;
      if (upper < lower_bound) {
        arms_[atom].active = false;
        on_eliminate(atom, upper, lower_bound);
      } else {
        active_[kept++] = atom;
      }
    }
    active_.resize(kept);
  }

  void eliminate_below(double lower_bound) {
    eliminate_below(lower_bound, [](std::size_t, double, double) {});
  }

  // External deactivation (cross-bin pruning).
  void deactivate(std::size_t atom);

 private:
  CandidateSet() = default;

  std::vector<ArmState> arms_;
  std::vector<std::size_t> active_;
  std::size_t d_used_ = 0;
  double ci_width_ = kInfinity;
  mutable std::vector<double> scratch_;
};

// Outcome of any search in this library. `indices` is best-first: one entry
// for single-target search, k entries for top-k. `estimates` parallels
// `indices` with the final per-atom estimate (exact when the fallback ran).
// `ledger` holds this run's own multiplication count; callers accumulating
// across runs merge it into a shared ledger.
struct MipsResult {
  std::vector<std::size_t> indices;
  std::vector<double> estimates;
  SampleLedger ledger;
  bool exact_fallback_used = false;

  std::size_t best() const { return indices.front(); }
};

// Normalized inner products and gaps, for analysis and tests only; no solver
// consults this.
struct GapProfile {
  std::vector<double> mu;    // mu_i = (v_i . q) / d
  std::vector<double> gaps;  // mu_best - mu_i, zero at the argmax
  double min_gap = 0.0;      // min over i != argmax
  std::size_t best = 0;
};

}  // namespace mips

#endif  // MIPS_TYPES_HPP
