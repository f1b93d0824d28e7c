#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

using Rational = mpq_class;

/// Dense exact matrix over the rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix from_int(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> row(std::size_t i) const;
  void append_row(const std::vector<Rational>& row);
  RationalMatrix transpose() const;
  RationalMatrix select_columns(const std::vector<std::size_t>& cols) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  bool is_zero() const;

  bool operator==(const RationalMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  RationalMatrix reduced;              // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots;     // pivot column of each row
};

/// Reduced row-echelon form with pivots chosen left to right. When
/// `column_order` is given, columns are visited in that order instead.
EchelonForm rref(const RationalMatrix& m, const std::vector<std::size_t>& column_order = {});

std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0} as rows, canonicalized to reduced row-echelon form.
RationalMatrix right_kernel(const RationalMatrix& m);

std::string to_string(const Rational& q);

}  // namespace crn
