#include "mips/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "mips/error.hpp"

namespace mips {

namespace {

constexpr char kMagic[8] = {'B', 'M', 'I', 'P', 'S', 'B', '0', '1'};

void check_product(std::size_t n, std::size_t d) {
  if (n != 0 && d > std::numeric_limits<std::size_t>::max() / n) {
    throw MipsError(ErrorKind::dimension_overflow,
                    "matrix of " + std::to_string(n) + " x " +
                        std::to_string(d) + " entries overflows");
  }
}

std::uint64_t load_le_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

void store_le_u64(std::uint64_t v, unsigned char* p) {
  for (int b = 0; b < 8; ++b) p[b] = static_cast<unsigned char>(v >> (8 * b));
}

void save_csv(const Matrix& matrix, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MipsError(ErrorKind::parse_error, "cannot open " + path);
  out << matrix.rows() << ' ' << matrix.cols() << '\n';
  char buffer[64];
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", matrix(i, j));
      if (j) out << ',';
      out << buffer;
    }
    out << '\n';
  }
  if (!out) throw MipsError(ErrorKind::parse_error, "write failed: " + path);
}

Matrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MipsError(ErrorKind::parse_error, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw MipsError(ErrorKind::truncated_file, path + ": empty file");
  }
  std::size_t n = 0, d = 0;
  if (std::sscanf(line.c_str(), "%zu %zu", &n, &d) != 2 || n < 1 || d < 1) {
    throw MipsError(ErrorKind::parse_error,
                    path + ": line 1: expected header \"n d\"");
  }
  check_product(n, d);
  std::vector<double> values;
  values.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw MipsError(ErrorKind::truncated_file,
                      path + ": line " + std::to_string(i + 2) +
                          ": expected " + std::to_string(n) + " data rows");
    }
    const char* cursor = line.c_str();
    for (std::size_t j = 0; j < d; ++j) {
      char* end = nullptr;
      double value = std::strtod(cursor, &end);
      if (end == cursor) {
        throw MipsError(ErrorKind::parse_error,
                        path + ": line " + std::to_string(i + 2) +
                            ": expected " + std::to_string(d) + " values");
      }
      values.push_back(value);
      cursor = end;
      if (j + 1 < d) {
        if (*cursor != ',') {
          throw MipsError(ErrorKind::parse_error,
                          path + ": line " + std::to_string(i + 2) +
                              ": expected ',' after value " +
                              std::to_string(j));
        }
        ++cursor;
      }
    }
    while (*cursor == ' ' || *cursor == '\r') ++cursor;
    if (*cursor != '\0') {
      throw MipsError(ErrorKind::parse_error,
                      path + ": line " + std::to_string(i + 2) +
                          ": trailing characters after " + std::to_string(d) +
                          " values");
    }
  }
  return Matrix(n, d, std::move(values));
}

void save_bin(const Matrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MipsError(ErrorKind::parse_error, "cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  unsigned char header[16];
  store_le_u64(matrix.rows(), header);
  store_le_u64(matrix.cols(), header + 8);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  if constexpr (std::endian::native == std::endian::little) {
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      auto row = matrix.row(i);
      out.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
  } else {
    unsigned char buffer[8];
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      for (std::size_t j = 0; j < matrix.cols(); ++j) {
        std::uint64_t bits;
        double v = matrix(i, j);
        std::memcpy(&bits, &v, sizeof(bits));
        store_le_u64(bits, buffer);
        out.write(reinterpret_cast<const char*>(buffer), sizeof(buffer));
      }
    }
  }
  if (!out) throw MipsError(ErrorKind::parse_error, "write failed: " + path);
}

Matrix load_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MipsError(ErrorKind::parse_error, "cannot open " + path);
  char magic[8];
  if (!in.read(magic, sizeof(magic))) {
    throw MipsError(ErrorKind::truncated_file,
                    path + ": byte 0: missing 8-byte magic");
  }
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw MipsError(ErrorKind::bad_magic, path + ": byte 0: bad magic");
  }
  unsigned char header[16];
  if (!in.read(reinterpret_cast<char*>(header), sizeof(header))) {
    throw MipsError(ErrorKind::truncated_file,
                    path + ": byte 8: missing dimensions");
  }
  std::uint64_t n64 = load_le_u64(header);
  std::uint64_t d64 = load_le_u64(header + 8);
  if (n64 < 1 || d64 < 1 ||
      n64 > std::numeric_limits<std::size_t>::max() ||
      d64 > std::numeric_limits<std::size_t>::max()) {
    throw MipsError(ErrorKind::dimension_overflow,
                    path + ": byte 8: unusable dimensions");
  }
  std::size_t n = static_cast<std::size_t>(n64);
  std::size_t d = static_cast<std::size_t>(d64);
  check_product(n, d);
  std::vector<double> values(n * d);
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(values.data()),
                 static_cast<std::streamsize>(values.size() * sizeof(double)))) {
      std::size_t got = static_cast<std::size_t>(in.gcount());
      throw MipsError(ErrorKind::truncated_file,
                      path + ": byte " + std::to_string(24 + got) +
                          ": payload ends early");
    }
  } else {
    unsigned char buffer[8];
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!in.read(reinterpret_cast<char*>(buffer), sizeof(buffer))) {
        throw MipsError(ErrorKind::truncated_file,
                        path + ": byte " + std::to_string(24 + 8 * k) +
                            ": payload ends early");
      }
      std::uint64_t bits = load_le_u64(buffer);
      std::memcpy(&values[k], &bits, sizeof(double));
    }
  }
  return Matrix(n, d, std::move(values));
}

}  // namespace

void save_matrix(const Matrix& matrix, const std::string& path,
                 MatrixFormat format) {
  if (format == MatrixFormat::csv) {
    save_csv(matrix, path);
  } else {
    save_bin(matrix, path);
  }
}

Matrix load_matrix(const std::string& path, MatrixFormat format) {
  return format == MatrixFormat::csv ? load_csv(path) : load_bin(path);
}

MatrixFormat format_from_path(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".csv") return MatrixFormat::csv;
  if (ext == ".bin") return MatrixFormat::bin;
  throw MipsError(ErrorKind::unknown_tag,
                  "cannot infer matrix format from path: " + path);
}

}  // namespace mips
