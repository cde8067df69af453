#ifndef MIPS_MATRIX_IO_HPP
#define MIPS_MATRIX_IO_HPP

#include <string>

#include "mips/matrix.hpp"

namespace mips {

enum class MatrixFormat { csv, bin };

// csv: first line "n d", then n lines of d comma-separated values printed
// with 17 significant digits (round-trips to 1e-12 or better).
// bin: 8-byte magic "BMIPSB01", two 64-bit little-endian unsigned integers
// n and d, then n*d little-endian IEEE-754 doubles row-major (bit-exact
// round trip).
void save_matrix(const Matrix& matrix, const std::string& path,
                 MatrixFormat format);

// Throws MipsError (bad_magic, truncated_file, dimension_overflow,
// parse_error) with the byte or line position on malformed input.
Matrix load_matrix(const std::string& path, MatrixFormat format);

// Format from a file extension: ".csv" -> csv, ".bin" -> bin.
MatrixFormat format_from_path(const std::string& path);

}  // namespace mips

#endif  // MIPS_MATRIX_IO_HPP
