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

// AVX2+FMA kernels. One __m256d holds two interleaved complex doubles
// [re0, im0, re1, im1]. This translation unit is the only one compiled
// with -mavx2 -mfma; it must not be entered unless CPUID reports both.

#include "excl/kernels.hpp"

#if defined(EXCL_HAVE_AVX2)

#include <immintrin.h>

namespace excl::kernels::avx2_impl {

namespace {

// (ar + i*ai) * v for two complex lanes, with the scalar pre-broadcast.
//   even lanes: ar*re - ai*im, odd lanes: ar*im + ai*re
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  const __m256d vswap = _mm256_permute_pd(v, 0x5);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vswap));
}

}  // namespace

void axpy(cd* y, cd alpha, const cd* x, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    yv = _mm256_add_pd(yv, cmul(ar, ai, xv));
    _mm256_storeu_pd(yd + 2 * i, yv);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void matmul(cd* c, const cd* a, const cd* b, std::size_t n, std::size_t m, std::size_t p) {
  for (std::size_t i = 0; i < n * p; ++i) c[i] = cd(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cd* crow = c + i * p;
    auto* crd = reinterpret_cast<double*>(crow);
    for (std::size_t k = 0; k < m; ++k) {
      const cd aik = a[i * m + k];
      if (aik == cd(0.0, 0.0)) continue;
      const __m256d ar = _mm256_set1_pd(aik.real());
      const __m256d ai = _mm256_set1_pd(aik.imag());
      const cd* brow = b + k * p;
      const auto* brd = reinterpret_cast<const double*>(brow);
      std::size_t j = 0;
      for (; j + 2 <= p; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brd + 2 * j);
        __m256d cv = _mm256_loadu_pd(crd + 2 * j);
        cv = _mm256_add_pd(cv, cmul(ar, ai, bv));
        _mm256_storeu_pd(crd + 2 * j, cv);
      }
      for (; j < p; ++j) crow[j] += aik * brow[j];
    }
  }
}

cd dotc(const cd* x, const cd* y, std::size_t n) {
  // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr.
  __m256d acc_a = _mm256_setzero_pd();  // lanewise x*y
  __m256d acc_b = _mm256_setzero_pd();  // lanewise swap(x)*y
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_a = _mm256_fmadd_pd(xv, yv, acc_a);
    acc_b = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, acc_b);
  }
  alignas(32) double a[4], b[4];
  _mm256_store_pd(a, acc_a);
  _mm256_store_pd(b, acc_b);
  double re = (a[0] + a[1]) + (a[2] + a[3]);
  double im = (b[1] - b[0]) + (b[3] - b[2]);
  for (; i < n; ++i) {
    const cd t = std::conj(x[i]) * y[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

void scale(cd* x, cd alpha, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  auto* xd = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul(ar, ai, xv));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void add_scaled(cd* z, cd alpha, const cd* x, cd beta, const cd* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const __m256d br = _mm256_set1_pd(beta.real());
  const __m256d bi = _mm256_set1_pd(beta.imag());
  auto* zd = reinterpret_cast<double*>(z);
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(zd + 2 * i, _mm256_add_pd(cmul(ar, ai, xv), cmul(br, bi, yv)));
  }
  for (; i < n; ++i) z[i] = alpha * x[i] + beta * y[i];
}

void rot2(cd* x, cd* y, std::size_t n, cd c11, cd c12, cd c21, cd c22) {
  const __m256d r11 = _mm256_set1_pd(c11.real()), i11 = _mm256_set1_pd(c11.imag());
  const __m256d r12 = _mm256_set1_pd(c12.real()), i12 = _mm256_set1_pd(c12.imag());
  const __m256d r21 = _mm256_set1_pd(c21.real()), i21 = _mm256_set1_pd(c21.imag());
  const __m256d r22 = _mm256_set1_pd(c22.real()), i22 = _mm256_set1_pd(c22.imag());
  auto* xd = reinterpret_cast<double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, _mm256_add_pd(cmul(r11, i11, xv), cmul(r12, i12, yv)));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(cmul(r21, i21, xv), cmul(r22, i22, yv)));
  }
  for (; i < n; ++i) {
    const cd xi = x[i];
    const cd yi = y[i];
    x[i] = c11 * xi + c12 * yi;
    y[i] = c21 * xi + c22 * yi;
  }
}

}  // namespace excl::kernels::avx2_impl

#endif  // EXCL_HAVE_AVX2
