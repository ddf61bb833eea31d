#pragma once

#include "solvcoh/rational.hpp"

#include <cstddef>
#include <initializer_list>

namespace solvcoh {

/// Dense rational matrix, row-major. Immutable use is the norm; the mutating
/// accessors exist for construction only.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
  static RatMatrix from_rows(const std::vector<RatVec>& rows);
  static RatMatrix diagonal(const RatVec& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  RatVec row(std::size_t r) const;
  RatVec col(std::size_t c) const;
  void set_row(std::size_t r, const RatVec& v);

  RatMatrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Matrix-vector product A*x with x a column vector.
  RatVec apply(const RatVec& x) const;

  /// [A,B] = AB - BA.
  static RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

  Rational trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Small vector helpers shared across the library.
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rational& s, const RatVec& a);
void vec_axpy(RatVec& acc, const Rational& s, const RatVec& a);
bool vec_is_zero(const RatVec& a);

}  // namespace solvcoh
