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

#include "excl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "excl/errors.hpp"
#include "excl/kernels.hpp"

namespace excl {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw DimensionMismatch("Hermitian matrix must be square");
  const int d = m.rows();
  double herm_res = 0.0;
  for (int i = 0; i < d; ++i) {
    herm_res = std::max(herm_res, std::abs(m(i, i).imag()));
    for (int j = i + 1; j < d; ++j) {
      herm_res = std::max(herm_res, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  if (herm_res > tol) {
    throw NotHermitian("matrix is not Hermitian: max |H - H^dagger| = " +
                       std::to_string(herm_res));
  }
  ComplexMatrix s(d, d);
  for (int i = 0; i < d; ++i) {
    s(i, i) = m(i, i).real();
    for (int j = i + 1; j < d; ++j) {
      const cd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  mat_ = std::move(s);
}

HermitianMatrix HermitianMatrix::identity(int n) {
  HermitianMatrix h;
  h.mat_ = ComplexMatrix::identity(n);
  return h;
}

HermitianMatrix HermitianMatrix::zero(int n) {
  HermitianMatrix h;
  h.mat_ = ComplexMatrix::zero(n, n);
  return h;
}

HermitianMatrix HermitianMatrix::projector(const ComplexMatrix& v) {
  return from_symmetrized(ComplexMatrix::outer(v));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  HermitianMatrix h;
  h.mat_ = ComplexMatrix::diagonal(d);
  return h;
}

HermitianMatrix HermitianMatrix::from_symmetrized(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("Hermitian matrix must be square");
  const int d = m.rows();
  HermitianMatrix h;
  h.mat_ = ComplexMatrix(d, d);
  for (int i = 0; i < d; ++i) {
    h.mat_(i, i) = m(i, i).real();
    for (int j = i + 1; j < d; ++j) {
      const cd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h.mat_(i, j) = v;
      h.mat_(j, i) = std::conj(v);
    }
  }
  return h;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  mat_ += o.mat_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  mat_ -= o.mat_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  mat_ *= cd(s, 0.0);
  return *this;
}

HermitianMatrix Spectrum::apply(const std::vector<double>& f) const {
  const int d = eigenvectors.rows();
  if (static_cast<int>(f.size()) != d) throw DimensionMismatch("spectrum apply size");
  // V diag(f) V^dagger via scaled columns.
  ComplexMatrix scaled = eigenvectors;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) scaled(i, j) *= f[j];
  return HermitianMatrix::from_symmetrized(scaled * eigenvectors.adjoint());
}

namespace {

double offdiag_frobenius(const ComplexMatrix& w) {
  double s = 0.0;
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j)
      if (i != j) s += std::norm(w(i, j));
  return std::sqrt(s);
}

}  // namespace

Spectrum eig_hermitian(const HermitianMatrix& h) {
  const int d = h.dim();
  ComplexMatrix w = h.mat();
  // Vt accumulates the adjoint of the eigenvector matrix so that every
  // update is a contiguous row rotation: V <- V J  <=>  Vt <- J^dagger Vt.
  ComplexMatrix vt = ComplexMatrix::identity(d);

  const double norm_f = w.frobenius_norm();
  const double target = 1e-12 * norm_f;
  const double skip = (norm_f > 0.0) ? 1e-18 * norm_f : 0.0;
  constexpr int kMaxSweeps = 100;

  if (d > 1 && norm_f > 0.0) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (offdiag_frobenius(w) <= target) break;
      for (int p = 0; p < d - 1; ++p) {
        for (int q = p + 1; q < d; ++q) {
          const cd c = w(p, q);
          const double ac = std::abs(c);
          if (ac <= skip) continue;
          const double a = w(p, p).real();
          const double b = w(q, q).real();
          // Phase that makes the off-diagonal entry real, then a real
          // Jacobi rotation that annihilates it.
          const cd phase = c / ac;  // e^{i arg c}
          const double tau = (b - a) / (2.0 * ac);
          const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
          const double cs = 1.0 / std::sqrt(1.0 + t * t);
          const double sn = t * cs;
          // J = [[cs, sn], [-conj(phase)*sn, conj(phase)*cs]] acting on
          // columns (p, q); rows transform with J^dagger.
          const cd j11 = cs;
          const cd j12 = sn;
          const cd j21 = -std::conj(phase) * sn;
          const cd j22 = std::conj(phase) * cs;
          // Rows p and q: row_p' = conj(j11) row_p + conj(j21) row_q, etc.
          kernels::rot2(w.row(p), w.row(q), d, std::conj(j11), std::conj(j21),
                        std::conj(j12), std::conj(j22));
          // Mirror into columns to preserve exact Hermitian symmetry.
          for (int r = 0; r < d; ++r) {
            if (r == p || r == q) continue;
            w(r, p) = std::conj(w(p, r));
            w(r, q) = std::conj(w(q, r));
          }
          w(p, p) = a - t * ac;
          w(q, q) = b + t * ac;
          w(p, q) = 0.0;
          w(q, p) = 0.0;
          kernels::rot2(vt.row(p), vt.row(q), d, std::conj(j11), std::conj(j21),
                        std::conj(j12), std::conj(j22));
        }
      }
    }
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return w(i, i).real() > w(j, j).real();
  });

  Spectrum s;
  s.eigenvalues.resize(d);
  s.eigenvectors = ComplexMatrix(d, d);
  for (int j = 0; j < d; ++j) {
    const int src = order[j];
    s.eigenvalues[j] = w(src, src).real();
    for (int i = 0; i < d; ++i) s.eigenvectors(i, j) = std::conj(vt(src, i));
  }
  return s;
}

HermitianMatrix sqrt_psd(const HermitianMatrix& p) {
  Spectrum s = eig_hermitian(p);
  std::vector<double> f(s.eigenvalues.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam < -1e-6) {
      throw NotPSD("sqrt_psd: eigenvalue " + std::to_string(lam) + " below -1e-6");
    }
    f[i] = std::sqrt(std::max(lam, 0.0));
  }
  return s.apply(f);
}

HermitianMatrix abs_hermitian(const HermitianMatrix& h) {
  Spectrum s = eig_hermitian(h);
  std::vector<double> f(s.eigenvalues.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(s.eigenvalues[i]);
  return s.apply(f);
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("trace_norm of non-square matrix");
  const HermitianMatrix gram = HermitianMatrix::from_symmetrized(m.adjoint() * m);
  Spectrum s = eig_hermitian(gram);
  double sum = 0.0;
  for (double lam : s.eigenvalues) sum += std::sqrt(std::max(lam, 0.0));
  return sum;
}

double fidelity(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity dim mismatch");
  if (psd_margin(rho) < -1e-6 || psd_margin(sigma) < -1e-6) {
    throw NotPSD("fidelity requires PSD operators");
  }
  const HermitianMatrix root = sqrt_psd(rho);
  const HermitianMatrix inner =
      HermitianMatrix::from_symmetrized(root.mat() * sigma.mat() * root.mat());
  Spectrum s = eig_hermitian(inner);
  double f = 0.0;
  for (double lam : s.eigenvalues) f += std::sqrt(std::max(lam, 0.0));
  return f;
}

HermitianMatrix min_op(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("min_op dim mismatch");
  HermitianMatrix diff = a;
  diff -= b;
  HermitianMatrix result = a;
  result += b;
  result -= abs_hermitian(diff);
  result *= 0.5;
  return result;
}

double psd_margin(const HermitianMatrix& h) {
  Spectrum s = eig_hermitian(h);
  return s.eigenvalues.empty() ? 0.0 : s.eigenvalues.back();
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("polar_unitary of non-square matrix");
  const int d = m.rows();
  if (d == 0) return m;

  const Spectrum right = eig_hermitian(HermitianMatrix::from_symmetrized(m.adjoint() * m));
  const double sig_max = std::sqrt(std::max(right.eigenvalues.front(), 0.0));
  const double cutoff = std::max(1e-12 * std::max(sig_max, 1.0), 0.0);

  // Columns of U_left: images M v_i / sigma_i on the range, null vectors of
  // M M^dagger (in eigendecomposition index order) on the cokernel.
  ComplexMatrix u_left(d, d);
  int rank = 0;
  for (int j = 0; j < d; ++j) {
    const double sig = std::sqrt(std::max(right.eigenvalues[j], 0.0));
    if (sig <= cutoff) break;
    ComplexMatrix vj(d, 1);
    for (int i = 0; i < d; ++i) vj(i, 0) = right.eigenvectors(i, j);
    const ComplexMatrix mv = m * vj;
    for (int i = 0; i < d; ++i) u_left(i, j) = mv(i, 0) / sig;
    ++rank;
  }
  if (rank < d) {
    const Spectrum left = eig_hermitian(HermitianMatrix::from_symmetrized(m * m.adjoint()));
    // Eigenvalues are descending, so the null space sits in the last columns.
    for (int j = rank; j < d; ++j) {
      const int src = d - (j - rank) - 1;
      for (int i = 0; i < d; ++i) u_left(i, j) = left.eigenvectors(i, src);
    }
  }

  // With M = U_s Sigma V_s^dagger, the maximizer of Re tr[M U] is
  // U = V_s U_s^dagger = sum_j v_j u_j^dagger.
  ComplexMatrix u(d, d);
  for (int jcol = 0; jcol < d; ++jcol) {
    for (int i = 0; i < d; ++i) {
      const cd vi = right.eigenvectors(i, jcol);
      if (vi == cd(0.0, 0.0)) continue;
      for (int c = 0; c < d; ++c) {
        u(i, c) += vi * std::conj(u_left(c, jcol));
      }
    }
  }
  return u;
}

}  // namespace excl
