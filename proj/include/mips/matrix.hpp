#ifndef MIPS_MATRIX_HPP
#define MIPS_MATRIX_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace mips {

// Immutable row-major matrix with shared storage. Views created by
// row_prefix/col_prefix alias the parent's buffer, so taking the first d'
// columns of a wide matrix (feature subsampling) costs nothing.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : storage_(std::make_shared<const std::vector<double>>(std::move(values))),
        rows_(rows),
        cols_(cols),
        stride_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return (*storage_)[i * stride_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {storage_->data() + i * stride_, cols_};
  }

  // First `rows` rows as a view over the same storage.
  Matrix row_prefix(std::size_t rows) const {
    Matrix m(*this);
    m.rows_ = rows;
    return m;
  }

  // First `cols` columns as a view over the same storage.
  Matrix col_prefix(std::size_t cols) const {
    Matrix m(*this);
    m.cols_ = cols;
    return m;
  }

  bool empty() const { return rows_ == 0 || cols_ == 0; }

 private:
  std::shared_ptr<const std::vector<double>> storage_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
};

}  // namespace mips

#endif  // MIPS_MATRIX_HPP
