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

// Infeasible-start primal-dual interior-point solver for the three
// exclusion SDPs, over block-diagonal complex Hermitian variables.
//
// Internal standard form:
//   min sum_b <C_b, X_b>   s.t.  sum_{b in G} X_b = I_d   (d^2 rows)
//                                 sum_b <F_jb, X_b> = r_j  (scalar rows)
//                                 X_b >= 0
// with dual variables (Y on the matrix rows, y_j on the scalar rows) and
// slacks Z_b = C_b - [b in G] Y - sum_j y_j F_jb >= 0.
//
// Directions use Nesterov-Todd scaling with a Mehrotra predictor-corrector;
// the Schur complement is assembled on an orthonormal basis of Herm(d).

#include "excl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "excl/errors.hpp"
#include "excl/kernels.hpp"

namespace excl {

void SolveOptions::validate() const {
  if (gap_tol <= 0 || feas_tol <= 0) throw Error("solver tolerances must be positive");
  if (max_iters < 1) throw Error("max_iters must be at least 1");
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iters: return "max-iters";
    case SolveStatus::numerical_failure: return "numerical-failure";
  }
  return "?";
}

namespace {

constexpr double kScaleCapKD = 1024;
constexpr double kBoundaryFraction = 0.98;
constexpr double kBaseRegularization = 1e-12;

bool debug_log() {
  static const bool on = [] {
    const char* env = std::getenv("EXCL_LOG");
    return env != nullptr && std::string(env) == "debug";
  }();
  return on;
}

ComplexMatrix sym(const ComplexMatrix& m) {
  const int d = m.rows();
  ComplexMatrix s(d, d);
  for (int i = 0; i < d; ++i) {
    s(i, i) = m(i, i).real();
    for (int j = i + 1; j < d; ++j) {
      const cd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  return s;
}

struct Eig {
  std::vector<double> lam;  // descending
  ComplexMatrix q;          // columns
};

Eig heig(const ComplexMatrix& m) {
  Spectrum s = eig_hermitian(HermitianMatrix::from_symmetrized(m));
  return {std::move(s.eigenvalues), std::move(s.eigenvectors)};
}

ComplexMatrix eig_apply(const Eig& e, const std::vector<double>& f) {
  const int d = e.q.rows();
  ComplexMatrix scaled = e.q;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) scaled(i, j) *= f[j];
  return sym(scaled * e.q.adjoint());
}

double min_eig(const ComplexMatrix& m) { return heig(m).lam.back(); }

// --- orthonormal basis of Herm(d) -----------------------------------------
// Coordinates: d diagonal entries, then (sqrt(2) Re, sqrt(2) Im) per p<q in
// row-major pair order. tr[A B] = dot(vec A, vec B).

struct HermBasis {
  int d = 0;
  int size() const { return d * d; }

  void vec(const ComplexMatrix& h, double* out) const {
    int idx = 0;
    for (int i = 0; i < d; ++i) out[idx++] = h(i, i).real();
    const double s2 = std::sqrt(2.0);
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        out[idx++] = s2 * h(p, q).real();
        out[idx++] = s2 * h(p, q).imag();
      }
    }
  }

  ComplexMatrix unvec(const double* v) const {
    ComplexMatrix h(d, d);
    int idx = 0;
    for (int i = 0; i < d; ++i) h(i, i) = v[idx++];
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double re = v[idx++] * inv_s2;
        const double im = v[idx++] * inv_s2;
        h(p, q) = cd(re, im);
        h(q, p) = cd(re, -im);
      }
    }
    return h;
  }
};

// --- dense real symmetric Cholesky -----------------------------------------

bool cholesky(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (int k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0)) return false;
    const double l = std::sqrt(diag);
    a[j * n + j] = l;
    for (int i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (int k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / l;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, int n, std::vector<double>& x) {
  for (int i = 0; i < n; ++i) {
    double v = x[i];
    for (int k = 0; k < i; ++k) v -= l[i * n + k] * x[k];
    x[i] = v / l[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double v = x[i];
    for (int k = i + 1; k < n; ++k) v -= l[k * n + i] * x[k];
    x[i] = v / l[i * n + i];
  }
}

// --- internal standard form -------------------------------------------------

struct ScalarConstraint {
  std::vector<std::pair<int, ComplexMatrix>> coeffs;  // (block, F)
  double rhs = 0.0;
};

struct InternalProblem {
  std::vector<int> dims;
  std::vector<ComplexMatrix> c;
  // Blocks entering the identity-sum constraint, each through an isometry:
  // sum_b T_b X_b T_b^dagger = I. An empty injection means T_b = I.
  std::vector<int> sum_group;
  std::vector<ComplexMatrix> inject;  // parallel to sum_group
  int sum_dim = 0;
  std::vector<ScalarConstraint> scalars;

  int blocks() const { return static_cast<int>(dims.size()); }
  int rows() const { return sum_dim * sum_dim + static_cast<int>(scalars.size()); }
  int barrier_nu() const {
    int nu = 0;
    for (int d : dims) nu += d;
    return nu;
  }

  ComplexMatrix lift(int gi, const ComplexMatrix& x) const {
    if (inject[gi].size() == 0) return x;
    return inject[gi] * x * inject[gi].adjoint();
  }
  ComplexMatrix restrict_to(int gi, const ComplexMatrix& y) const {
    if (inject[gi].size() == 0) return y;
    return inject[gi].adjoint() * y * inject[gi];
  }
};

ComplexMatrix scalar_block(double v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

// Orthonormal basis of ker(rho), as columns; empty when rho has full rank.
ComplexMatrix kernel_basis(const HermitianMatrix& rho) {
  const Spectrum s = eig_hermitian(rho);
  const int d = rho.dim();
  const double scale = std::max(std::abs(s.eigenvalues.front()), 1e-300);
  int r = 0;
  while (r < d && std::abs(s.eigenvalues[d - 1 - r]) <= 1e-12 * scale) ++r;
  ComplexMatrix k(d, r);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < d; ++i) k(i, j) = s.eigenvectors(i, d - r + j);
  }
  return k;
}

InternalProblem build_internal(const ExclusionModel& model,
                               std::vector<ComplexMatrix>* kernels_out) {
  const int d = model.dim();
  const int k = model.count();
  InternalProblem p;
  p.sum_dim = d;
  switch (model.variant()) {
    case Variant::min_error: {
      for (int i = 0; i < k; ++i) {
        p.dims.push_back(d);
        p.c.push_back(model.op(i).mat());
        p.sum_group.push_back(i);
        p.inject.push_back(ComplexMatrix());
      }
      break;
    }
    case Variant::unambiguous: {
      // Facial reduction: tr[rho_i M_i] = 0 with M_i >= 0 confines M_i to
      // ker(rho_i), so substitute M_i = K_i G_i K_i^dagger. The equality
      // rows disappear (they hold exactly by construction), the reduced
      // primal regains a strict interior, and full-rank states drop out
      // with M_i = 0. Remaining blocks: the G_i and the explicit M_?.
      for (int i = 0; i < k; ++i) {
        const ComplexMatrix kb = kernel_basis(model.op(i));
        if (kernels_out) kernels_out->push_back(kb);
        if (kb.cols() == 0) continue;
        p.dims.push_back(kb.cols());
        p.c.push_back(ComplexMatrix::zero(kb.cols(), kb.cols()));
        p.sum_group.push_back(p.blocks() - 1);
        p.inject.push_back(kb);
      }
      p.dims.push_back(d);  // M_?
      p.c.push_back(model.operator_sum().mat());
      p.sum_group.push_back(p.blocks() - 1);
      p.inject.push_back(ComplexMatrix());
      break;
    }
    case Variant::worst_case: {
      // Blocks: lambda, M_1..M_k, slack scalars t_i for
      // lambda - tr[rho_i M_i] - t_i = 0.
      p.dims.push_back(1);
      p.c.push_back(scalar_block(1.0));
      for (int i = 0; i < k; ++i) {
        p.dims.push_back(d);
        p.c.push_back(ComplexMatrix::zero(d, d));
        p.sum_group.push_back(1 + i);
        p.inject.push_back(ComplexMatrix());
      }
      for (int i = 0; i < k; ++i) {
        p.dims.push_back(1);
        p.c.push_back(ComplexMatrix::zero(1, 1));
        ScalarConstraint sc;
        sc.coeffs.emplace_back(0, scalar_block(1.0));
        ComplexMatrix neg = model.op(i).mat();
        neg *= cd(-1.0, 0.0);
        sc.coeffs.emplace_back(1 + i, std::move(neg));
        sc.coeffs.emplace_back(1 + k + i, scalar_block(-1.0));
        sc.rhs = 0.0;
        p.scalars.push_back(std::move(sc));
      }
      break;
    }
  }
  return p;
}

// b vector of the internal rows.
std::vector<double> rhs_vector(const InternalProblem& p) {
  const HermBasis basis{p.sum_dim};
  std::vector<double> b(p.rows(), 0.0);
  basis.vec(ComplexMatrix::identity(p.sum_dim), b.data());
  for (std::size_t j = 0; j < p.scalars.size(); ++j) {
    b[basis.size() + j] = p.scalars[j].rhs;
  }
  return b;
}

std::vector<double> apply_a(const InternalProblem& p, const std::vector<ComplexMatrix>& x) {
  const HermBasis basis{p.sum_dim};
  std::vector<double> out(p.rows(), 0.0);
  ComplexMatrix sum(p.sum_dim, p.sum_dim);
  for (std::size_t gi = 0; gi < p.sum_group.size(); ++gi) {
    sum += p.lift(static_cast<int>(gi), x[p.sum_group[gi]]);
  }
  basis.vec(sum, out.data());
  for (std::size_t j = 0; j < p.scalars.size(); ++j) {
    double v = 0.0;
    for (const auto& [b, f] : p.scalars[j].coeffs) {
      v += frobenius_inner(f, x[b]).real();
    }
    out[basis.size() + j] = v;
  }
  return out;
}

std::vector<ComplexMatrix> apply_a_star(const InternalProblem& p, const std::vector<double>& y) {
  const HermBasis basis{p.sum_dim};
  std::vector<ComplexMatrix> out;
  out.reserve(p.dims.size());
  for (int d : p.dims) out.push_back(ComplexMatrix::zero(d, d));
  const ComplexMatrix ymat = basis.unvec(y.data());
  for (std::size_t gi = 0; gi < p.sum_group.size(); ++gi) {
    out[p.sum_group[gi]] += p.restrict_to(static_cast<int>(gi), ymat);
  }
  for (std::size_t j = 0; j < p.scalars.size(); ++j) {
    const double yj = y[basis.size() + j];
    if (yj == 0.0) continue;
    for (const auto& [b, f] : p.scalars[j].coeffs) {
      ComplexMatrix t = f;
      t *= cd(yj, 0.0);
      out[b] += t;
    }
  }
  return out;
}

// --- per-block NT scaling ----------------------------------------------------

struct Scaling {
  ComplexMatrix w, r, rinv, zinv, vinvhalf, vinv;
};

bool make_scaling(const ComplexMatrix& x, const ComplexMatrix& z, Scaling& s) {
  const int d = x.rows();
  const Eig ez = heig(z);
  if (ez.lam.back() <= 0.0) return false;
  std::vector<double> f(d);
  for (int i = 0; i < d; ++i) f[i] = std::sqrt(ez.lam[i]);
  const ComplexMatrix zhalf = eig_apply(ez, f);
  for (int i = 0; i < d; ++i) f[i] = 1.0 / std::sqrt(ez.lam[i]);
  const ComplexMatrix zinvhalf = eig_apply(ez, f);
  for (int i = 0; i < d; ++i) f[i] = 1.0 / ez.lam[i];
  s.zinv = eig_apply(ez, f);

  const Eig ey = heig(sym(zhalf * x * zhalf));
  const double floor_y = std::max(ey.lam.front(), 1.0) * 1e-300;
  for (int i = 0; i < d; ++i) f[i] = std::sqrt(std::max(ey.lam[i], floor_y));
  const ComplexMatrix yhalf = eig_apply(ey, f);

  s.w = sym(zinvhalf * yhalf * zinvhalf);
  const Eig ew = heig(s.w);
  if (ew.lam.back() <= 0.0) return false;
  for (int i = 0; i < d; ++i) f[i] = std::sqrt(ew.lam[i]);
  s.r = eig_apply(ew, f);
  for (int i = 0; i < d; ++i) f[i] = 1.0 / std::sqrt(ew.lam[i]);
  s.rinv = eig_apply(ew, f);

  const Eig ev = heig(sym(s.rinv * x * s.rinv));
  if (ev.lam.back() <= 0.0) return false;
  for (int i = 0; i < d; ++i) f[i] = 1.0 / std::sqrt(ev.lam[i]);
  s.vinvhalf = eig_apply(ev, f);
  for (int i = 0; i < d; ++i) f[i] = 1.0 / ev.lam[i];
  s.vinv = eig_apply(ev, f);
  return true;
}

// Largest step alpha with M + alpha*D >= 0, in the V-metric.
double max_step(const ComplexMatrix& vinvhalf, const ComplexMatrix& dirn) {
  const double lmin = min_eig(sym(vinvhalf * dirn * vinvhalf));
  if (lmin >= 0.0) return 1e30;
  return -1.0 / lmin;
}

// --- Schur complement ---------------------------------------------------------

// S[j][c] over the matrix rows gets sum_b <E_j, W_b E_c W_b>; the column
// for basis element E_c is assembled from outer products of the columns
// of W (Hermitian, so column p is the conjugated row p).
void add_theta(const ComplexMatrix& w, std::vector<double>& s, int m) {
  const int d = w.rows();
  const HermBasis basis{d};
  const int n = basis.size();
  std::vector<cd> wcol(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p)
    for (int i = 0; i < d; ++i) wcol[p * d + i] = std::conj(w(p, i));

  ComplexMatrix g(d, d);
  std::vector<double> col(n);
  int c = 0;
  auto emit = [&]() {
    basis.vec(g, col.data());
    for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j) * m + c] += col[j];
    ++c;
  };
  for (int r = 0; r < d; ++r) {
    const cd* wr = wcol.data() + r * d;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = wr[i] * std::conj(wr[j]);
    emit();
  }
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < d; ++p) {
    for (int q = p + 1; q < d; ++q) {
      const cd* wp = wcol.data() + p * d;
      const cd* wq = wcol.data() + q * d;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          g(i, j) = inv_s2 * (wp[i] * std::conj(wq[j]) + wq[i] * std::conj(wp[j]));
      emit();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          g(i, j) = cd(0.0, inv_s2) * (wp[i] * std::conj(wq[j]) - wq[i] * std::conj(wp[j]));
      emit();
    }
  }
}

struct SchurSystem {
  int m = 0;
  std::vector<double> matrix;  // unregularized S, kept for refinement
  std::vector<double> factor;  // Cholesky factor of S + reg*I
  double reg_used = 0.0;

  bool build(const InternalProblem& p, const std::vector<Scaling>& sc) {
    const HermBasis basis{p.sum_dim};
    const int n_mat = basis.size();
    m = p.rows();
    std::vector<double> s(static_cast<std::size_t>(m) * m, 0.0);

    std::vector<int> group_index(p.blocks(), -1);
    for (std::size_t gi = 0; gi < p.sum_group.size(); ++gi) {
      group_index[p.sum_group[gi]] = static_cast<int>(gi);
      add_theta(sym(p.lift(static_cast<int>(gi), sc[p.sum_group[gi]].w)), s, m);
    }

    // scalar rows: cross terms against the matrix rows, then the
    // scalar-scalar band
    const int ns = static_cast<int>(p.scalars.size());
    std::vector<std::vector<std::pair<int, ComplexMatrix>>> wfw(ns);
    for (int j = 0; j < ns; ++j) {
      for (const auto& [b, f] : p.scalars[j].coeffs) {
        wfw[j].emplace_back(b, sym(sc[b].w * f * sc[b].w));
      }
    }
    std::vector<double> col(n_mat);
    for (int j = 0; j < ns; ++j) {
      ComplexMatrix acc(p.sum_dim, p.sum_dim);
      bool any = false;
      for (const auto& [b, g] : wfw[j]) {
        if (group_index[b] >= 0) {
          acc += p.lift(group_index[b], g);
          any = true;
        }
      }
      if (any) {
        basis.vec(acc, col.data());
        for (int r = 0; r < n_mat; ++r) {
          s[static_cast<std::size_t>(r) * m + (n_mat + j)] += col[r];
          s[static_cast<std::size_t>(n_mat + j) * m + r] += col[r];
        }
      }
      for (int j2 = j; j2 < ns; ++j2) {
        double v = 0.0;
        for (const auto& [b, g] : wfw[j]) {
          for (const auto& [b2, f2] : p.scalars[j2].coeffs) {
            if (b2 == b) v += frobenius_inner(f2, g).real();
          }
        }
        s[static_cast<std::size_t>(n_mat + j) * m + (n_mat + j2)] += v;
        if (j2 != j) s[static_cast<std::size_t>(n_mat + j2) * m + (n_mat + j)] += v;
      }
    }

    // exact symmetrization, then regularized factorization
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const double v =
            0.5 * (s[static_cast<std::size_t>(i) * m + j] + s[static_cast<std::size_t>(j) * m + i]);
        s[static_cast<std::size_t>(i) * m + j] = v;
        s[static_cast<std::size_t>(j) * m + i] = v;
      }
    }
    matrix = s;
    double reg = kBaseRegularization;
    for (int attempt = 0; attempt < 8; ++attempt) {
      factor = s;
      for (int i = 0; i < m; ++i) factor[static_cast<std::size_t>(i) * m + i] += reg;
      if (cholesky(factor, m)) {
        reg_used = reg;
        return true;
      }
      reg *= 100.0;
    }
    return false;
  }

  // Solve S x = rhs with the regularized factor plus iterative refinement
  // against the unregularized matrix; the refinement keeps the search
  // directions accurate once the barrier parameter is small.
  void solve(std::vector<double>& rhs) const {
    std::vector<double> x = rhs;
    cholesky_solve(factor, m, x);
    std::vector<double> r(m);
    for (int round = 0; round < 3; ++round) {
      double rnorm = 0.0;
      for (int i = 0; i < m; ++i) {
        double v = rhs[i];
        const double* row = matrix.data() + static_cast<std::size_t>(i) * m;
        for (int j = 0; j < m; ++j) v -= row[j] * x[j];
        r[i] = v;
        rnorm = std::max(rnorm, std::abs(v));
      }
      if (rnorm == 0.0) break;
      cholesky_solve(factor, m, r);
      for (int i = 0; i < m; ++i) x[i] += r[i];
    }
    rhs = std::move(x);
  }
};

// --- iterate state ------------------------------------------------------------

struct Iterate {
  std::vector<ComplexMatrix> x, z;
  std::vector<double> y;
};

struct Residuals {
  std::vector<double> rp;              // b - A(X)
  std::vector<ComplexMatrix> rd;       // C - Z - A*(y)
  double pinf = 0.0, dinf = 0.0;
  double alpha_int = 0.0, beta_int = 0.0, mu = 0.0;
};

Residuals compute_residuals(const InternalProblem& p, const std::vector<double>& b,
                            const Iterate& it) {
  Residuals r;
  r.rp = apply_a(p, it.x);
  for (int j = 0; j < p.rows(); ++j) {
    r.rp[j] = b[j] - r.rp[j];
    r.pinf = std::max(r.pinf, std::abs(r.rp[j]));
  }
  std::vector<ComplexMatrix> astar = apply_a_star(p, it.y);
  r.rd.reserve(p.blocks());
  for (int bi = 0; bi < p.blocks(); ++bi) {
    ComplexMatrix m = p.c[bi];
    m -= it.z[bi];
    m -= astar[bi];
    r.dinf = std::max(r.dinf, m.max_abs());
    r.rd.push_back(std::move(m));
  }
  double gap = 0.0;
  for (int bi = 0; bi < p.blocks(); ++bi) {
    r.alpha_int += frobenius_inner(p.c[bi], it.x[bi]).real();
    gap += frobenius_inner(it.x[bi], it.z[bi]).real();
  }
  for (int j = 0; j < p.rows(); ++j) r.beta_int += b[j] * it.y[j];
  r.mu = gap / std::max(1, p.barrier_nu());
  return r;
}

struct Direction {
  std::vector<ComplexMatrix> dx, dz;
  std::vector<double> dy;
};

// Solves the Newton system for a given centering right-hand side R_mu.
Direction solve_direction(const InternalProblem& p, const SchurSystem& schur,
                          const std::vector<Scaling>& sc, const Residuals& res,
                          const std::vector<ComplexMatrix>& rmu) {
  // rhs = r_p - A(rmu) + A(W Rd W)
  std::vector<ComplexMatrix> wrw;
  wrw.reserve(p.blocks());
  for (int b = 0; b < p.blocks(); ++b) {
    wrw.push_back(sym(sc[b].w * res.rd[b] * sc[b].w));
  }
  std::vector<ComplexMatrix> combined;
  combined.reserve(p.blocks());
  for (int b = 0; b < p.blocks(); ++b) {
    ComplexMatrix t = wrw[b];
    t -= rmu[b];
    combined.push_back(std::move(t));
  }
  std::vector<double> rhs = apply_a(p, combined);
  for (int j = 0; j < p.rows(); ++j) rhs[j] += res.rp[j];

  Direction dir;
  dir.dy = rhs;
  schur.solve(dir.dy);

  std::vector<ComplexMatrix> astar_dy = apply_a_star(p, dir.dy);
  dir.dz.reserve(p.blocks());
  dir.dx.reserve(p.blocks());
  for (int b = 0; b < p.blocks(); ++b) {
    ComplexMatrix dz = res.rd[b];
    dz -= astar_dy[b];
    dz = sym(dz);
    ComplexMatrix dx = rmu[b];
    dx -= sym(sc[b].w * dz * sc[b].w);
    dx = sym(dx);
    dir.dz.push_back(std::move(dz));
    dir.dx.push_back(std::move(dx));
  }
  return dir;
}

std::pair<double, double> step_lengths(const InternalProblem& p, const std::vector<Scaling>& sc,
                                       const Direction& dir, double cap) {
  double ap = cap, ad = cap;
  for (int b = 0; b < p.blocks(); ++b) {
    ap = std::min(ap, max_step(sc[b].vinvhalf, sym(sc[b].rinv * dir.dx[b] * sc[b].rinv)));
    ad = std::min(ad, max_step(sc[b].vinvhalf, sym(sc[b].r * dir.dz[b] * sc[b].r)));
  }
  return {std::min(ap, cap), std::min(ad, cap)};
}

// --- starting points ----------------------------------------------------------

Iterate internal_start(const ExclusionModel& model, const InternalProblem& p,
                       const SolveOptions& opts, int attempt) {
  const int d = model.dim();
  const int k = model.count();
  Iterate it;
  it.y.assign(p.rows(), 0.0);
  it.x.reserve(p.blocks());
  it.z.reserve(p.blocks());

  double max_tr = 0.0;
  for (int i = 0; i < k; ++i) max_tr = std::max(max_tr, model.op(i).trace_real());

  const HermBasis basis{d};
  std::vector<double> ymat_coords(basis.size(), 0.0);

  switch (model.variant()) {
    case Variant::min_error: {
      for (int i = 0; i < k; ++i) it.x.push_back(ComplexMatrix::identity(d) * cd(1.0 / k, 0.0));
      // N = -I
      basis.vec(ComplexMatrix::identity(d) * cd(-1.0, 0.0), ymat_coords.data());
      std::copy(ymat_coords.begin(), ymat_coords.end(), it.y.begin());
      break;
    }
    case Variant::unambiguous: {
      // Kernel blocks at eta * I, then the exact complement for M_? so
      // the identity-sum constraint holds from the first iterate.
      const double eta = 1.0 / (2.0 * k);
      ComplexMatrix rest = ComplexMatrix::identity(d);
      for (int b = 0; b + 1 < p.blocks(); ++b) {
        it.x.push_back(ComplexMatrix::identity(p.dims[b]) * cd(eta, 0.0));
        rest -= p.lift(b, it.x.back());
      }
      it.x.push_back(std::move(rest));  // M_?
      basis.vec(ComplexMatrix::identity(d) * cd(-1.0, 0.0), ymat_coords.data());
      std::copy(ymat_coords.begin(), ymat_coords.end(), it.y.begin());
      break;
    }
    case Variant::worst_case: {
      const double lambda0 = std::max(1.0, 2.0 * max_tr / k);
      it.x.push_back(scalar_block(lambda0));
      for (int i = 0; i < k; ++i) it.x.push_back(ComplexMatrix::identity(d) * cd(1.0 / k, 0.0));
      for (int i = 0; i < k; ++i) {
        it.x.push_back(scalar_block(lambda0 - model.op(i).trace_real() / k));
      }
      basis.vec(ComplexMatrix::identity(d) * cd(-1.0, 0.0), ymat_coords.data());
      std::copy(ymat_coords.begin(), ymat_coords.end(), it.y.begin());
      for (int i = 0; i < k; ++i) it.y[basis.size() + i] = 1.0 / (2.0 * k);
      break;
    }
  }

  if (attempt > 0) {
    // Seeded restart: push the primal start deeper into the cone with a
    // randomized diagonal, leaving feasibility to the infeasible-start
    // machinery.
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (auto& xb : it.x) {
      for (int i = 0; i < xb.rows(); ++i) xb(i, i) += u(rng) * 0.1;
    }
  }

  std::vector<ComplexMatrix> astar = apply_a_star(p, it.y);
  for (int b = 0; b < p.blocks(); ++b) {
    ComplexMatrix z = p.c[b];
    z -= astar[b];
    it.z.push_back(sym(z));
  }
  return it;
}

// --- extraction ----------------------------------------------------------------

// Smallest (power-of-two bracketed) a >= 0 making a*rho + N - sum_rho PSD
// within tolerance. The reduced problem never forms these multipliers, so
// they are recovered for the paper-form certificate afterwards.
double feasible_multiplier(const HermitianMatrix& rho, const HermitianMatrix& n,
                           const HermitianMatrix& op_sum) {
  auto margin = [&](double a) {
    HermitianMatrix slack = rho;
    slack *= a;
    slack += n;
    slack -= op_sum;
    return psd_margin(slack);
  };
  const double tol = 1e-10;
  if (margin(0.0) >= -tol) return 0.0;
  double lo = 0.0, hi = 1.0;
  bool found = false;
  for (int e = 0; e < 52; ++e) {
    if (margin(hi) >= -tol) {
      found = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  if (!found) return hi;
  for (int round = 0; round < 40; ++round) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) >= -tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void extract_vars(const ExclusionModel& model, const InternalProblem& p,
                  const std::vector<ComplexMatrix>& kernels, const Iterate& it,
                  PrimalVars& primal, DualVars& dual) {
  const int d = model.dim();
  const int k = model.count();
  const HermBasis basis{d};
  const ComplexMatrix ymat = basis.unvec(it.y.data());
  primal.m.clear();
  dual.a.clear();
  switch (model.variant()) {
    case Variant::min_error: {
      for (int i = 0; i < k; ++i) {
        primal.m.push_back(HermitianMatrix::from_symmetrized(it.x[i]));
      }
      primal.lambda.reset();
      dual.n = HermitianMatrix::from_symmetrized(ymat);
      break;
    }
    case Variant::unambiguous: {
      int block = 0;
      for (int i = 0; i < k; ++i) {
        if (kernels[i].cols() == 0) {
          primal.m.push_back(HermitianMatrix::zero(d));
        } else {
          primal.m.push_back(HermitianMatrix::from_symmetrized(
              kernels[i] * it.x[block] * kernels[i].adjoint()));
          ++block;
        }
      }
      primal.lambda.reset();
      ComplexMatrix n = model.operator_sum().mat();
      n -= ymat;
      dual.n = HermitianMatrix::from_symmetrized(n);
      for (int i = 0; i < k; ++i) {
        dual.a.push_back(feasible_multiplier(model.op(i), dual.n, model.operator_sum()));
      }
      break;
    }
    case Variant::worst_case: {
      primal.lambda = it.x[0](0, 0).real();
      for (int i = 0; i < k; ++i) {
        primal.m.push_back(HermitianMatrix::from_symmetrized(it.x[1 + i]));
      }
      dual.n = HermitianMatrix::from_symmetrized(ymat);
      for (int i = 0; i < k; ++i) dual.a.push_back(it.y[basis.size() + i]);
      break;
    }
  }
}

}  // namespace

std::pair<PrimalVars, DualVars> strict_start(const ExclusionModel& model) {
  const int d = model.dim();
  const int k = model.count();
  PrimalVars primal;
  DualVars dual;
  switch (model.variant()) {
    case Variant::min_error: {
      for (int i = 0; i < k; ++i) {
        primal.m.push_back(HermitianMatrix::from_symmetrized(
            ComplexMatrix::identity(d) * cd(1.0 / k, 0.0)));
      }
      dual.n = HermitianMatrix::from_symmetrized(ComplexMatrix::identity(d) * cd(-1.0, 0.0));
      break;
    }
    case Variant::unambiguous: {
      // Kernel projector of each operator when it exists, otherwise a tiny
      // multiple of the identity keeping tr[rho_i M_i] below 1e-9.
      for (int i = 0; i < k; ++i) {
        const Spectrum s = eig_hermitian(model.op(i));
        const double scale = std::max(std::abs(s.eigenvalues.front()), 1.0);
        int kernel_dim = 0;
        for (double lam : s.eigenvalues) {
          if (std::abs(lam) <= 1e-12 * scale) ++kernel_dim;
        }
        if (kernel_dim > 0) {
          ComplexMatrix proj(d, d);
          for (int j = d - kernel_dim; j < d; ++j) {
            for (int r = 0; r < d; ++r) {
              for (int c = 0; c < d; ++c) {
                proj(r, c) += s.eigenvectors(r, j) * std::conj(s.eigenvectors(c, j));
              }
            }
          }
          proj *= cd(1.0 / (2.0 * k), 0.0);
          primal.m.push_back(HermitianMatrix::from_symmetrized(proj));
        } else {
          const double tr = std::max(model.op(i).trace_real(), 1e-12);
          const double eta = std::min(1.0 / (2.0 * k), 0.5e-9 / tr);
          primal.m.push_back(
              HermitianMatrix::from_symmetrized(ComplexMatrix::identity(d) * cd(eta, 0.0)));
        }
      }
      HermitianMatrix n = model.operator_sum();
      n += HermitianMatrix::identity(d);
      dual.n = n;
      dual.a.assign(k, 1.0);
      break;
    }
    case Variant::worst_case: {
      double max_tr = 0.0;
      for (int i = 0; i < k; ++i) max_tr = std::max(max_tr, model.op(i).trace_real());
      primal.lambda = std::max(1.0, 2.0 * max_tr / k);
      for (int i = 0; i < k; ++i) {
        primal.m.push_back(HermitianMatrix::from_symmetrized(
            ComplexMatrix::identity(d) * cd(1.0 / k, 0.0)));
      }
      dual.n = HermitianMatrix::from_symmetrized(ComplexMatrix::identity(d) * cd(-1.0, 0.0));
      dual.a.assign(k, 1.0 / (2.0 * k));
      break;
    }
  }
  return {std::move(primal), std::move(dual)};
}

SolveReport solve(const ExclusionModel& model, const SolveOptions& opts) {
  opts.validate();
  if (static_cast<long>(model.count()) * model.dim() > kScaleCapKD) {
    throw ScaleCap("problem size k*d = " +
                   std::to_string(static_cast<long>(model.count()) * model.dim()) +
                   " exceeds the cap of 1024");
  }

  std::vector<ComplexMatrix> kernels;
  const InternalProblem problem = build_internal(model, &kernels);
  const std::vector<double> b = rhs_vector(problem);
  const int nblocks = problem.blocks();

  SolveReport report;
  bool have_best = false;
  double best_score = 0.0;
  Iterate best;

  for (int attempt = 0; attempt < 3; ++attempt) {
    Iterate it = internal_start(model, problem, opts, attempt);
    report.restarts = attempt;
    bool failed = false;
    int stalled = 0;

    while (report.iterations < opts.max_iters) {
      const Residuals res = compute_residuals(problem, b, it);
      const double gap_int = std::abs(res.alpha_int - res.beta_int);
      const double score = std::max({res.pinf, res.dinf, gap_int});
      if (!have_best || score < best_score) {
        have_best = true;
        best_score = score;
        best = it;
      }
      if (debug_log()) {
        std::fprintf(stderr, "[excl] it=%3d mu=%9.2e gap=%9.2e pinf=%9.2e dinf=%9.2e\n",
                     report.iterations, res.mu, gap_int, res.pinf, res.dinf);
      }
      if (res.pinf <= opts.feas_tol && res.dinf <= opts.feas_tol && gap_int <= opts.gap_tol) {
        extract_vars(model, problem, kernels, it, report.primal, report.dual);
        report.alpha = model.primal_value(report.primal);
        report.beta = model.dual_value(report.dual);
        report.gap = std::abs(model.duality_gap(report.alpha, report.beta));
        report.primal_residual = res.pinf;
        report.dual_residual = res.dinf;
        report.status = SolveStatus::optimal;
        return report;
      }

      std::vector<Scaling> sc(nblocks);
      bool scaling_ok = true;
      for (int bi = 0; bi < nblocks && scaling_ok; ++bi) {
        scaling_ok = make_scaling(it.x[bi], it.z[bi], sc[bi]);
      }
      SchurSystem schur;
      if (!scaling_ok || !schur.build(problem, sc)) {
        failed = true;
        break;
      }

      // Predictor (affine scaling).
      std::vector<ComplexMatrix> rmu;
      rmu.reserve(nblocks);
      for (int bi = 0; bi < nblocks; ++bi) {
        ComplexMatrix t = it.x[bi];
        t *= cd(-1.0, 0.0);
        rmu.push_back(std::move(t));
      }
      const Direction aff = solve_direction(problem, schur, sc, res, rmu);
      const auto [ap_aff, ad_aff] = step_lengths(problem, sc, aff, 1.0);

      double mu_aff = 0.0;
      for (int bi = 0; bi < nblocks; ++bi) {
        ComplexMatrix xa = it.x[bi];
        kernels::axpy(xa.data(), cd(ap_aff, 0.0), aff.dx[bi].data(), xa.size());
        ComplexMatrix za = it.z[bi];
        kernels::axpy(za.data(), cd(ad_aff, 0.0), aff.dz[bi].data(), za.size());
        mu_aff += frobenius_inner(xa, za).real();
      }
      mu_aff = std::max(mu_aff / std::max(1, problem.barrier_nu()), 0.0);
      const double ratio = res.mu > 0.0 ? mu_aff / res.mu : 0.0;
      const double sigma = std::clamp(ratio * ratio * ratio, 1e-10, 1.0 - 1e-10);

      // Corrector with the Mehrotra second-order term, assembled in the
      // scaled space: H(V^{-1} H(DX_aff DZ_aff)).
      for (int bi = 0; bi < nblocks; ++bi) {
        const ComplexMatrix dxs = sym(sc[bi].rinv * aff.dx[bi] * sc[bi].rinv);
        const ComplexMatrix dzs = sym(sc[bi].r * aff.dz[bi] * sc[bi].r);
        const ComplexMatrix corr = sym(sc[bi].vinv * sym(dxs * dzs));
        ComplexMatrix t = sc[bi].zinv;
        t *= cd(sigma * res.mu, 0.0);
        t -= it.x[bi];
        t -= sym(sc[bi].r * corr * sc[bi].r);
        rmu[bi] = sym(t);
      }
      const Direction dir = solve_direction(problem, schur, sc, res, rmu);
      auto [ap, ad] = step_lengths(problem, sc, dir, 1.0 / kBoundaryFraction);
      ap = std::min(1.0, kBoundaryFraction * ap);
      ad = std::min(1.0, kBoundaryFraction * ad);

      for (int bi = 0; bi < nblocks; ++bi) {
        kernels::axpy(it.x[bi].data(), cd(ap, 0.0), dir.dx[bi].data(), it.x[bi].size());
        kernels::axpy(it.z[bi].data(), cd(ad, 0.0), dir.dz[bi].data(), it.z[bi].size());
        it.x[bi] = sym(it.x[bi]);
        it.z[bi] = sym(it.z[bi]);
      }
      for (int j = 0; j < problem.rows(); ++j) it.y[j] += ad * dir.dy[j];

      report.trace.push_back({gap_int, ap, ad, res.mu});
      ++report.iterations;

      if (ap < 1e-10 && ad < 1e-10) {
        if (++stalled >= 3) {
          failed = true;
          break;
        }
      } else {
        stalled = 0;
      }
    }

    if (!failed) break;  // ran out of iterations
  }

  // Not converged: report the best iterate seen.
  if (have_best) {
    const Residuals res = compute_residuals(problem, b, best);
    extract_vars(model, problem, kernels, best, report.primal, report.dual);
    report.alpha = model.primal_value(report.primal);
    report.beta = model.dual_value(report.dual);
    report.gap = std::abs(model.duality_gap(report.alpha, report.beta));
    report.primal_residual = res.pinf;
    report.dual_residual = res.dinf;
  }
  report.status = report.iterations >= opts.max_iters ? SolveStatus::max_iters
                                                      : SolveStatus::numerical_failure;
  return report;
}

}  // namespace excl
