#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "autorb/ffield.hpp"

namespace autorb {

/// Dense matrix over a Field, entries stored as element codes, row-major.
/// Sizes stay small by design; all arithmetic is exact.
class Mat {
public:
  static constexpr int kMaxCells = 256;

  Mat(const Field& f, int rows, int cols);  // zero-filled
  static Mat identity(const Field& f, int n);
  static Mat from_rows(const Field& f,
                       std::initializer_list<std::initializer_list<int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return *f_; }

  int at(int r, int c) const { return e_[index(r, c)]; }
  void set(int r, int c, int code);

  Mat operator*(const Mat& rhs) const;
  Mat operator+(const Mat& rhs) const;
  Mat operator-(const Mat& rhs) const;
  Mat scaled(int code) const;

  /// Gauss-Jordan inverse; throws singular_error if not invertible.
  Mat inverse() const;
  bool invertible() const;

  /// Row rank by Gaussian elimination; pivots chosen at the leftmost
  /// nonzero column, topmost nonzero row.
  int rank() const;

  /// Determinant by elimination; dim_error on non-square input.
  int det() const;

  Mat transposed() const;
  Mat frobenius(int power = 1) const;  // entrywise x -> x^(p^power)

  bool is_identity() const;
  bool is_zero() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  /// Appends a canonical byte encoding (entries only; dimensions and the
  /// field are fixed by context).
  void encode(std::string& out) const;

  /// "[[1,w],[0,1]]"
  std::string str() const;

private:
  std::size_t index(int r, int c) const;
  void require_same_field(const Mat& o) const;

  const Field* f_;
  int rows_, cols_;
  std::vector<uint16_t> e_;
};

/// Invertible (E, F) with E*a*F equal to the rank normal form (ones on
/// the leading diagonal positions up to rank(a), zeros elsewhere).
std::pair<Mat, Mat> rank_normal_decomposition(const Mat& a);

/// Invertible n x n matrix whose first row is the given one.
Mat complete_to_invertible(const Field& f, const std::vector<int>& first_row);

}  // namespace autorb
