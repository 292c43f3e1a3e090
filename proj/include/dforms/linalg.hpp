#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dforms/rational.hpp"

namespace dforms {

/// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix from_rows(const std::vector<RatVec>& rows, std::size_t cols);
  static RatMatrix from_columns(const std::vector<RatVec>& columns, std::size_t rows);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatVec col(std::size_t j) const;
  RatMatrix transpose() const;

  RatVec operator*(std::span<const Rational> v) const;
  RatMatrix operator*(const RatMatrix& o) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RatMatrix reduced;                 // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;   // pivot column of each row
};

RowEchelon rref(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);

/// Basis of {x : A x = 0}; each vector is scaled to a primitive integer vector.
std::vector<RatVec> kernel(const RatMatrix& a);

/// Some solution of A x = b, or nullopt when inconsistent. Free variables are 0.
std::optional<RatVec> solve(const RatMatrix& a, std::span<const Rational> b);

Rational determinant(RatMatrix a);
std::optional<RatMatrix> inverse(const RatMatrix& a);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
RatVec add(std::span<const Rational> a, std::span<const Rational> b);
RatVec sub(std::span<const Rational> a, std::span<const Rational> b);
RatVec scale(std::span<const Rational> a, const Rational& s);
bool is_zero(std::span<const Rational> a);

/// Positive multiple of v that is a primitive integer vector (v nonzero).
RatVec primitive_integer(std::span<const Rational> v);

}  // namespace dforms
