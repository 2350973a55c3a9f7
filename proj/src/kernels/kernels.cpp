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

#include "excl/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "excl/errors.hpp"

namespace excl::kernels {

namespace {

struct Table {
  void (*matmul)(cd*, const cd*, const cd*, std::size_t, std::size_t, std::size_t);
  void (*axpy)(cd*, cd, const cd*, std::size_t);
  cd (*dotc)(const cd*, const cd*, std::size_t);
  void (*scale)(cd*, cd, std::size_t);
  void (*add_scaled)(cd*, cd, const cd*, cd, const cd*, std::size_t);
  void (*rot2)(cd*, cd*, std::size_t, cd, cd, cd, cd);
};

constexpr Table kScalar = {scalar_impl::matmul, scalar_impl::axpy,  scalar_impl::dotc,
                           scalar_impl::scale,  scalar_impl::add_scaled, scalar_impl::rot2};

#if defined(EXCL_HAVE_AVX2)
constexpr Table kAvx2 = {avx2_impl::matmul, avx2_impl::axpy,  avx2_impl::dotc,
                         avx2_impl::scale,  avx2_impl::add_scaled, avx2_impl::rot2};
#endif

bool detect_avx2() {
#if defined(EXCL_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct State {
  bool has_avx2 = false;
  Backend backend = Backend::scalar;
  Table table = kScalar;

  State() {
    has_avx2 = detect_avx2();
    Backend want = has_avx2 ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("EXCL_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) want = Backend::scalar;
      if (std::strcmp(env, "avx2") == 0 && has_avx2) want = Backend::avx2;
    }
    set(want);
  }

  void set(Backend b) {
    backend = b;
#if defined(EXCL_HAVE_AVX2)
    table = (b == Backend::avx2) ? kAvx2 : kScalar;
#else
    table = kScalar;
#endif
  }
};

State& state() {
  static State s;
  return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

bool avx2_available() { return state().has_avx2; }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !state().has_avx2) {
    throw Error("avx2 kernel backend not available on this CPU/build");
  }
  state().set(b);
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void matmul(cd* c, const cd* a, const cd* b, std::size_t n, std::size_t m, std::size_t p) {
  state().table.matmul(c, a, b, n, m, p);
}

void axpy(cd* y, cd alpha, const cd* x, std::size_t n) {
  state().table.axpy(y, alpha, x, n);
}

cd dotc(const cd* x, const cd* y, std::size_t n) { return state().table.dotc(x, y, n); }

void scale(cd* x, cd alpha, std::size_t n) { state().table.scale(x, alpha, n); }

void add_scaled(cd* z, cd alpha, const cd* x, cd beta, const cd* y, std::size_t n) {
  state().table.add_scaled(z, alpha, x, beta, y, n);
}

void rot2(cd* x, cd* y, std::size_t n, cd c11, cd c12, cd c21, cd c22) {
  state().table.rot2(x, y, n, c11, c12, c21, c22);
}

}  // namespace excl::kernels
