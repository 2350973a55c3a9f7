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

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace excl {

using cd = std::complex<double>;

/// Dense row-major complex matrix. The carrier for every operator in the
/// library; immutable use is the norm, but entries are assignable while a
/// value is being built.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<cd> entries);
  /// Row-major nested initializer, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cd>> rows);

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols);
  /// Column vector from entries.
  static ComplexMatrix col_vector(const std::vector<cd>& entries);
  /// |v><v| for a column vector v (not necessarily normalized).
  static ComplexMatrix outer(const ComplexMatrix& v);
  static ComplexMatrix diagonal(const std::vector<double>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_vector() const { return cols_ == 1; }

  cd& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const cd& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }

  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }
  cd* row(int r) { return a_.data() + static_cast<std::size_t>(r) * cols_; }
  const cd* row(int r) const { return a_.data() + static_cast<std::size_t>(r) * cols_; }
  std::size_t size() const { return a_.size(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  cd trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cd s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cd s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, cd s) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool same_shape(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cd> a_;
};

/// <a, b> = tr[a^dagger b]; the Frobenius inner product.
cd frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; dims multiply.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace excl
