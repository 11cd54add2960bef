#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/numeric.hpp"

namespace selfsim {

using RatVector = std::vector<Rational>;

/// Dense exact rational matrix, row-major. Sizes here are tiny (coordinate counts).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const RatVector& entries);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatVector column(std::size_t c) const;
  RatVector row(std::size_t r) const;

  RatMatrix operator*(const RatMatrix& other) const;
  RatVector operator*(const RatVector& v) const;
  RatMatrix operator+(const RatMatrix& other) const;
  RatMatrix operator-(const RatMatrix& other) const;
  RatMatrix scaled(const Rational& s) const;

  RatMatrix transpose() const;
  Rational trace() const;
  Rational determinant() const;
  std::optional<RatMatrix> inverse() const;
  std::size_t rank() const;
  bool is_zero() const;

  /// Basis of the right null space, one vector per free column of the RREF.
  std::vector<RatVector> kernel_basis() const;

  bool operator==(const RatMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix power(const RatMatrix& m, unsigned exponent);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Rank of the matrix whose rows are `vectors`.
std::size_t rank_of(const std::vector<RatVector>& vectors, std::size_t dim);

bool in_span(const std::vector<RatVector>& basis, const RatVector& v);

}  // namespace selfsim
