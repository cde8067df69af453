#ifndef MIPS_PURSUIT_HPP
#define MIPS_PURSUIT_HPP

#include <map>
#include <string>

#include "mips/datasets.hpp"
#include "mips/solver.hpp"

namespace mips {

enum class PursuitSolver { naive, bandit, bandit_alpha };

struct PursuitStep {
  std::size_t atom_index = 0;
  double coefficient = 0.0;    // (r . v) / (v . v), exact
  double residual_norm = 0.0;  // ||r|| after the subtraction, exact
  std::uint64_t ledger_delta = 0;  // search cost of this step's MIPS call
};

// Greedy decomposition of the query over the atoms: each step finds the atom
// with the largest |inner product| against the current residual (the signed
// search runs over the dictionary augmented with atom negations), subtracts
// its exact projection, and repeats. Selection is the only approximate part;
// coefficients and residual norms are computed exactly.
//
// Accounting: `search` receives the MIPS-subroutine cost (what the adaptive
// solver spends). The exact arithmetic - 2d per coefficient, d per residual
// norm refresh, and the upfront d for ||r_0|| plus n*d for the zero-norm
// check - goes to `projection`.
//
// Stops early when either the step's projection magnitude |c|*||v|| or the
// remaining residual norm falls below stop_threshold * ||r_0||.
// Throws invalid_dictionary if any atom has zero norm.
std::vector<PursuitStep> matching_pursuit(const MipsInstance& instance,
                                          std::size_t iterations,
                                          PursuitSolver solver,
                                          const BanditConfig& config,
                                          SampleLedger& search,
                                          SampleLedger* projection = nullptr,
                                          double stop_threshold = 1e-9);

// Cumulative coefficient per selected atom, keyed by the song label of the
// atom index. Atoms never selected are absent.
std::map<std::string, double> song_coefficients(
    const std::vector<PursuitStep>& steps, const SongSpec& spec);

}  // namespace mips

#endif  // MIPS_PURSUIT_HPP
