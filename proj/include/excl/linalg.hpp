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

#include <vector>

#include "excl/complex_matrix.hpp"

namespace excl {

/// Square matrix with conjugate symmetry. Construction validates
/// ||H - H^dagger||_max <= 1e-12 and then stores the exact Hermitian part,
/// so downstream code can rely on bitwise symmetry.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = 1e-12);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  /// |v><v| from a column vector.
  static HermitianMatrix projector(const ComplexMatrix& v);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  /// Trusts the caller that m is Hermitian up to roundoff; symmetrizes.
  static HermitianMatrix from_symmetrized(const ComplexMatrix& m);

  int dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

  cd operator()(int r, int c) const { return mat_(r, c); }
  double trace_real() const { return mat_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) {
    return a += b;
  }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) {
    return a -= b;
  }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  ComplexMatrix mat_;
};

/// Eigendecomposition of a Hermitian matrix: eigenvalues descending,
/// matching eigenvectors as the columns of a unitary matrix.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  /// V diag(f(lambda)) V^dagger, symmetrized.
  HermitianMatrix apply(const std::vector<double>& f) const;
};

/// Cyclic Jacobi eigendecomposition (fixed row-major sweep order,
/// off-diagonal Frobenius target 1e-12 * ||H||_F, at most 100 sweeps).
Spectrum eig_hermitian(const HermitianMatrix& h);

/// Principal square root of a PSD operator. Eigenvalues in (-1e-6, 0) are
/// clamped to zero; below -1e-6 the input is rejected as NotPSD.
HermitianMatrix sqrt_psd(const HermitianMatrix& p);

/// |H| = sum_i |lambda_i| |u_i><u_i|.
HermitianMatrix abs_hermitian(const HermitianMatrix& h);

/// Sum of singular values, computed from the spectrum of M^dagger M.
double trace_norm(const ComplexMatrix& m);

/// F(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)). Works on
/// subnormalized PSD operators; equals |<psi|phi>| for unit pure states.
double fidelity(const HermitianMatrix& rho, const HermitianMatrix& sigma);

/// min(A, B) = (A + B - |A - B|) / 2; dominated by both arguments in the
/// PSD order.
HermitianMatrix min_op(const HermitianMatrix& a, const HermitianMatrix& b);

/// Smallest eigenvalue; the caller compares against its tolerance.
double psd_margin(const HermitianMatrix& h);

/// Unitary U maximizing Re tr[M U]; the maximum equals trace_norm(M).
/// Rank-deficient inputs are completed deterministically by pairing
/// null-space vectors of M^dagger M and M M^dagger in index order.
ComplexMatrix polar_unitary(const ComplexMatrix& m);

}  // namespace excl
