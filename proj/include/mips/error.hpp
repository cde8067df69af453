#ifndef MIPS_ERROR_HPP
#define MIPS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mips {

enum class ErrorKind {
  dimension_mismatch,
  non_finite_entry,
  degenerate_instance,
  invalid_k,
  degenerate_weights,
  invalid_dictionary,
  bad_magic,
  truncated_file,
  dimension_overflow,
  parse_error,
  unknown_tag,
  size_mismatch,
  invalid_argument,
};

const char* to_string(ErrorKind kind);

class MipsError : public std::runtime_error {
 public:
  MipsError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mips

#endif  // MIPS_ERROR_HPP
