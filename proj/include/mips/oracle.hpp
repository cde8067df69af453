#ifndef MIPS_ORACLE_HPP
#define MIPS_ORACLE_HPP

#include "mips/types.hpp"

namespace mips {

// Exact search: evaluates all n*d coordinate products, charges exactly n*d
// to the ledger, and returns the lowest-index argmax of v_i . q.
MipsResult naive_mips(const MipsInstance& instance, SampleLedger& ledger);

// Exact top-k by inner product, ties by ascending index. Charges n*d.
MipsResult naive_mips_topk(const MipsInstance& instance, std::size_t k,
                           SampleLedger& ledger);

// Normalized inner products mu_i = (v_i . q)/d, gaps, and the minimum gap.
// Requires n >= 2; throws degenerate_instance otherwise.
GapProfile gap_profile(const MipsInstance& instance);

}  // namespace mips

#endif  // MIPS_ORACLE_HPP
