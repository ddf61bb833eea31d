#include "solvcoh/matrix.hpp"

namespace solvcoh {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw Error("entry count does not match matrix shape");
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged initializer for matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return RatMatrix();
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

RatMatrix RatMatrix::diagonal(const RatVec& entries) {
  RatMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

RatVec RatMatrix::row(std::size_t r) const {
  return RatVec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RatVec RatMatrix::col(std::size_t c) const {
  RatVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void RatMatrix::set_row(std::size_t r, const RatVec& v) {
  if (v.size() != cols_) throw Error("row length does not match matrix shape");
  std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix shape mismatch in +");
  RatMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix shape mismatch in -");
  RatMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix shape mismatch in *");
  RatMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) == 0) continue;
        out(i, j) += aik * b(k, j);
      }
    }
  return out;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = s * a.data_[i];
  return out;
}

RatVec RatMatrix::apply(const RatVec& x) const {
  if (x.size() != cols_) throw Error("vector length does not match matrix shape");
  RatVec y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) == 0 || x[c] == 0) continue;
      acc += (*this)(r, c) * x[c];
    }
    y[r] = acc;
  }
  return y;
}

RatMatrix RatMatrix::commutator(const RatMatrix& a, const RatMatrix& b) {
  return a * b - b * a;
}

Rational RatMatrix::trace() const {
  if (!is_square()) throw Error("trace of non-square matrix");
  Rational t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("vector length mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("vector length mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec vec_scale(const Rational& s, const RatVec& a) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

void vec_axpy(RatVec& acc, const Rational& s, const RatVec& a) {
  if (acc.size() != a.size()) throw Error("vector length mismatch");
  if (s == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) acc[i] += s * a[i];
}

bool vec_is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace solvcoh
