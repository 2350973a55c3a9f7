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
#include <cstddef>

// Data-parallel inner loops used by the dense complex linear algebra.
//
// Every kernel exists in a scalar reference version and, on x86-64, an
// AVX2+FMA version. The backend is picked once at startup from CPUID and
// can be overridden with the EXCL_KERNELS environment variable
// ("scalar" or "avx2") or programmatically with force_backend().
// Both versions compute the same quantities; results may differ in the
// last bits because the vector versions reassociate sums.

namespace excl::kernels {

using cd = std::complex<double>;

enum class Backend { scalar, avx2 };

/// Backend currently used by the dispatch table.
Backend active_backend();

/// True if the CPU (and build) support the AVX2 path.
bool avx2_available();

/// Force a backend. Throws excl::Error if the backend is unavailable.
void force_backend(Backend b);

const char* backend_name(Backend b);

/// c = a * b for row-major matrices: a is n x m, b is m x p, c is n x p.
/// c must not alias a or b.
void matmul(cd* c, const cd* a, const cd* b, std::size_t n, std::size_t m, std::size_t p);

/// y += alpha * x over n entries.
void axpy(cd* y, cd alpha, const cd* x, std::size_t n);

/// Returns sum_i conj(x[i]) * y[i].
cd dotc(const cd* x, const cd* y, std::size_t n);

/// x *= alpha over n entries.
void scale(cd* x, cd alpha, std::size_t n);

/// z = alpha * x + beta * y over n entries. z may alias x or y.
void add_scaled(cd* z, cd alpha, const cd* x, cd beta, const cd* y, std::size_t n);

/// Plane rotation of two rows:
///   (x[i], y[i]) <- (c11*x[i] + c12*y[i], c21*x[i] + c22*y[i]).
void rot2(cd* x, cd* y, std::size_t n, cd c11, cd c12, cd c21, cd c22);

// Per-backend entry points, exposed for equivalence testing.
namespace scalar_impl {
void matmul(cd* c, const cd* a, const cd* b, std::size_t n, std::size_t m, std::size_t p);
void axpy(cd* y, cd alpha, const cd* x, std::size_t n);
cd dotc(const cd* x, const cd* y, std::size_t n);
void scale(cd* x, cd alpha, std::size_t n);
void add_scaled(cd* z, cd alpha, const cd* x, cd beta, const cd* y, std::size_t n);
void rot2(cd* x, cd* y, std::size_t n, cd c11, cd c12, cd c21, cd c22);
}  // namespace scalar_impl

#if defined(EXCL_HAVE_AVX2)
namespace avx2_impl {
void matmul(cd* c, const cd* a, const cd* b, std::size_t n, std::size_t m, std::size_t p);
void axpy(cd* y, cd alpha, const cd* x, std::size_t n);
cd dotc(const cd* x, const cd* y, std::size_t n);
void scale(cd* x, cd alpha, std::size_t n);
void add_scaled(cd* z, cd alpha, const cd* x, cd beta, const cd* y, std::size_t n);
void rot2(cd* x, cd* y, std::size_t n, cd c11, cd c12, cd c21, cd c22);
}  // namespace avx2_impl
#endif

}  // namespace excl::kernels
