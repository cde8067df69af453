#ifndef MIPS_LEDGER_HPP
#define MIPS_LEDGER_HPP

#include <cstdint>

namespace mips {

// Counter of coordinate-wise multiplications, the hardware-independent
// complexity unit every benchmark reports. Monotone by construction: the
// only mutations are add and merge.
class SampleLedger {
 public:
  void add(std::uint64_t mults) { mults_ += mults; }

  void merge(const SampleLedger& other) { mults_ += other.mults_; }

  std::uint64_t mults() const { return mults_; }

 private:
  std::uint64_t mults_ = 0;
};

}  // namespace mips

#endif  // MIPS_LEDGER_HPP
