// Copyright 2026 The excl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "excl/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "excl/errors.hpp"
#include "excl/kernels.hpp"

namespace excl {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, cd(0.0, 0.0)) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionMismatch("entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  a_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionMismatch("ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::col_vector(const std::vector<cd>& entries) {
  return {static_cast<int>(entries.size()), 1, entries};
}

ComplexMatrix ComplexMatrix::outer(const ComplexMatrix& v) {
  if (!v.is_vector()) throw DimensionMismatch("outer() wants a column vector");
  const int d = v.rows();
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v(i, 0) * std::conj(v(j, 0));
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
  return m;
}

cd ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
  cd t(0.0, 0.0);
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cd& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cd& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (!same_shape(o)) throw DimensionMismatch("matrix addition shape mismatch");
  kernels::axpy(a_.data(), cd(1.0, 0.0), o.a_.data(), a_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (!same_shape(o)) throw DimensionMismatch("matrix subtraction shape mismatch");
  kernels::axpy(a_.data(), cd(-1.0, 0.0), o.a_.data(), a_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd s) {
  kernels::scale(a_.data(), s, a_.size());
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product inner dim mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  kernels::matmul(c.data(), a.data(), b.data(), a.rows(), a.cols(), b.cols());
  return c;
}

cd frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("inner product shape mismatch");
  return kernels::dotc(a.data(), b.data(), a.size());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const cd aij = a(i, j);
      if (aij == cd(0.0, 0.0)) continue;
      for (int r = 0; r < b.rows(); ++r) {
        cd* dst = m.row(i * b.rows() + r) + static_cast<std::size_t>(j) * b.cols();
        kernels::axpy(dst, aij, b.row(r), b.cols());
      }
    }
  }
  return m;
}

}  // namespace excl
