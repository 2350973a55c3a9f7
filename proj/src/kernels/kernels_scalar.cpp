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

// Reference kernels. These define the semantics the vector backends must
// reproduce (up to floating-point reassociation).

#include "excl/kernels.hpp"

namespace excl::kernels::scalar_impl {

void axpy(cd* y, cd alpha, const cd* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matmul(cd* c, const cd* a, const cd* b, std::size_t n, std::size_t m, std::size_t p) {
  for (std::size_t i = 0; i < n * p; ++i) c[i] = cd(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cd* crow = c + i * p;
    for (std::size_t k = 0; k < m; ++k) {
      const cd aik = a[i * m + k];
      if (aik == cd(0.0, 0.0)) continue;
      const cd* brow = b + k * p;
      for (std::size_t j = 0; j < p; ++j) crow[j] += aik * brow[j];
    }
  }
}

cd dotc(const cd* x, const cd* y, std::size_t n) {
  cd acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void scale(cd* x, cd alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void add_scaled(cd* z, cd alpha, const cd* x, cd beta, const cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = alpha * x[i] + beta * y[i];
}

void rot2(cd* x, cd* y, std::size_t n, cd c11, cd c12, cd c21, cd c22) {
  for (std::size_t i = 0; i < n; ++i) {
    const cd xi = x[i];
    const cd yi = y[i];
    x[i] = c11 * xi + c12 * yi;
    y[i] = c21 * xi + c22 * yi;
  }
}

}  // namespace excl::kernels::scalar_impl
