#include "mips/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mips {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::non_finite_entry: return "non-finite-entry";
    case ErrorKind::degenerate_instance: return "degenerate-instance";
    case ErrorKind::invalid_k: return "invalid-k";
    case ErrorKind::degenerate_weights: return "degenerate-weights";
    case ErrorKind::invalid_dictionary: return "invalid-dictionary";
    case ErrorKind::bad_magic: return "bad-magic";
    case ErrorKind::truncated_file: return "truncated-file";
    case ErrorKind::dimension_overflow: return "dimension-overflow";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::unknown_tag: return "unknown-tag";
    case ErrorKind::size_mismatch: return "size-mismatch";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown-error";
}

std::optional<MipsError> validate(const Matrix& atoms,
                                  std::span<const double> query) {
  if (atoms.rows() < 1 || atoms.cols() < 1) {
    return MipsError(ErrorKind::dimension_mismatch,
                     "atom matrix must have at least one row and one column");
  }
  if (query.size() != atoms.cols()) {
    return MipsError(ErrorKind::dimension_mismatch,
                     "query length " + std::to_string(query.size()) +
                         " does not match atom dimension " +
                         std::to_string(atoms.cols()));
  }
  for (std::size_t i = 0; i < atoms.rows(); ++i) {
    for (std::size_t j = 0; j < atoms.cols(); ++j) {
      if (!std::isfinite(atoms(i, j))) {
        return MipsError(ErrorKind::non_finite_entry,
                         "non-finite atom entry at row " + std::to_string(i) +
                             ", column " + std::to_string(j));
      }
    }
  }
  for (std::size_t j = 0; j < query.size(); ++j) {
    if (!std::isfinite(query[j])) {
      return MipsError(ErrorKind::non_finite_entry,
                       "non-finite query entry at column " + std::to_string(j));
    }
  }
  return std::nullopt;
}

std::optional<MipsError> validate(const BanditConfig& config) {
  if (!(config.delta >= 0.0) || config.delta >= 1.0) {
    return MipsError(ErrorKind::invalid_argument, "delta must lie in [0, 1)");
  }
  if (!(config.sigma >= 0.0) || !std::isfinite(config.sigma)) {
    return MipsError(ErrorKind::invalid_argument, "sigma must be >= 0");
  }
  if (std::isnan(config.beta) || config.beta < 0.0) {
    return MipsError(ErrorKind::invalid_argument,
                     "beta must be >= 0 or infinity");
  }
  return std::nullopt;
}

MipsInstance::MipsInstance(Matrix atoms, std::vector<double> query)
    : atoms_(std::move(atoms)), query_(std::move(query)) {
  if (auto err = validate(atoms_, query_)) throw *err;
}

MipsInstance::MipsInstance(Unchecked, Matrix atoms, std::vector<double> query)
    : atoms_(std::move(atoms)), query_(std::move(query)) {}

MipsInstance MipsInstance::with_query(std::vector<double> query) const {
  if (query.size() != atoms_.cols()) {
    throw MipsError(ErrorKind::dimension_mismatch,
                    "query length " + std::to_string(query.size()) +
                        " does not match atom dimension " +
                        std::to_string(atoms_.cols()));
  }
  for (std::size_t j = 0; j < query.size(); ++j) {
    if (!std::isfinite(query[j])) {
      throw MipsError(ErrorKind::non_finite_entry,
                      "non-finite query entry at column " + std::to_string(j));
    }
  }
  return MipsInstance(Unchecked{}, atoms_, std::move(query));
}

MipsInstance MipsInstance::col_prefix(std::size_t dim) const {
  if (dim < 1 || dim > atoms_.cols()) {
    throw MipsError(ErrorKind::invalid_argument,
                    "column prefix must lie in [1, d]");
  }
  std::vector<double> query(query_.begin(), query_.begin() + dim);
  return MipsInstance(Unchecked{}, atoms_.col_prefix(dim), std::move(query));
}

CandidateSet::CandidateSet(std::size_t n) : arms_(n) {
  active_.resize(n);
  for (std::size_t i = 0; i < n; ++i) active_[i] = i;
}

CandidateSet::CandidateSet(std::size_t n, std::vector<std::size_t> members)
    : arms_(n), active_(std::move(members)) {
  for (auto& arm : arms_) arm.active = false;
  for (std::size_t atom : active_) arms_[atom].active = true;
}

CandidateSet CandidateSet::warm_started(std::vector<double> estimates,
                                        std::size_t d_used, double ci_width) {
  CandidateSet set;
  set.arms_.resize(estimates.size());
  set.active_.resize(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    set.arms_[i].mu_hat = estimates[i];
    set.active_[i] = i;
  }
  set.d_used_ = d_used;
  set.ci_width_ = ci_width;
  return set;
}

double CandidateSet::max_estimate() const {
  double best = -kInfinity;
  for (std::size_t atom : active_) best = std::max(best, arms_[atom].mu_hat);
  return best;
}

double CandidateSet::kth_estimate(std::size_t k) const {
  if (k <= 1) return max_estimate();
  scratch_.clear();
  for (std::size_t atom : active_) scratch_.push_back(arms_[atom].mu_hat);
  auto nth = scratch_.begin() + (k - 1);
  std::nth_element(scratch_.begin(), nth, scratch_.end(),
                   std::greater<double>());
  return *nth;
}

void CandidateSet::deactivate(std::size_t atom) {
  if (!arms_[atom].active) return;
  arms_[atom].active = false;
  active_.erase(std::find(active_.begin(), active_.end(), atom));
}

}  // namespace mips
