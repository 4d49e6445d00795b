// SPDX-License-Identifier: Apache-2.0
//
// irsug: joint user grouping and resource allocation for IRS-aided SWIPT
// Copyright (C) 2026 The irsug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Primal log-barrier interior-point method over products of nonnegative,
// second-order, real PSD and exponential cones, with linear equalities
// handled through the KKT system. Phase I minimizes a shift along interior
// directions until the original slacks become strictly interior.

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsug/conic.hpp"

namespace irsug::conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Block {
  ConeKind kind = ConeKind::NonNegative;
  int dim = 0;
  std::vector<int> cols;  // local -> global variable index
  RMatrix G;              // rows x cols
  RVector h;
  double nu = 1.0;

  RVector slack(const RVector& x) const {
    RVector xl(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) xl(i) = x(cols[i]);
    return G * xl + h;
  }
};

double cone_nu(ConeKind k, int rows, int dim) {
  switch (k) {
    case ConeKind::NonNegative: return rows;
    case ConeKind::SecondOrder: return 2.0;
    case ConeKind::Psd: return dim;
    case ConeKind::Exponential: return 3.0;
    case ConeKind::Zero: return 0.0;
  }
  return 0.0;
}

// Interior direction used by phase I.
RVector interior_direction(ConeKind k, int rows, int dim) {
  RVector e = RVector::Zero(rows);
  switch (k) {
    case ConeKind::NonNegative: e.setOnes(); break;
    case ConeKind::SecondOrder: e(0) = 1.0; break;
    case ConeKind::Psd:
      for (int i = 0; i < dim; ++i) e(svec_index(dim, i, i)) = 1.0;
      break;
    case ConeKind::Exponential: e << -1.0, 1.0, 1.0; break;
    case ConeKind::Zero: break;
  }
  return e;
}

RMatrix unpack_sym(const RVector& s, int d) {
  RMatrix S(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = c; r < d; ++r) S(r, c) = S(c, r) = s(svec_index(d, r, c));
  return S;
}

// Barrier value, and optionally gradient and Hessian w.r.t. the slack.
// Returns +inf outside the interior.
double barrier(ConeKind kind, int dim, const RVector& s, RVector* g, RMatrix* H) {
  const Eigen::Index m = s.size();
  switch (kind) {
    case ConeKind::NonNegative: {
      if ((s.array() <= 0.0).any()) return kInf;
      if (g) *g = -s.cwiseInverse();
      if (H) *H = s.cwiseInverse().cwiseAbs2().asDiagonal();
      return -s.array().log().sum();
    }
    case ConeKind::SecondOrder: {
      const double t = s(0);
      const double d = t * t - s.tail(m - 1).squaredNorm();
      if (t <= 0.0 || d <= 0.0) return kInf;
      if (g || H) {
        RVector Js = -s;
        Js(0) = t;
        if (g) *g = -2.0 / d * Js;
        if (H) {
          *H = 4.0 / (d * d) * Js * Js.transpose();
          H->diagonal().array() += 2.0 / d;
          (*H)(0, 0) -= 4.0 / d;
        }
      }
      return -std::log(d);
    }
    case ConeKind::Psd: {
      const RMatrix S = unpack_sym(s, dim);
      Eigen::LLT<RMatrix> llt(S);
      if (llt.info() != Eigen::Success) return kInf;
      const RMatrix& L = llt.matrixLLT();
      double logdet = 0.0;
      for (int i = 0; i < dim; ++i) {
        if (!(L(i, i) > 0.0)) return kInf;
        logdet += 2.0 * std::log(L(i, i));
      }
      if (g || H) {
        const RMatrix Si = llt.solve(RMatrix::Identity(dim, dim));
        std::vector<int> ra(m), rb(m);
        for (int c = 0; c < dim; ++c)
          for (int r = c; r < dim; ++r) {
            const int p = svec_index(dim, r, c);
            ra[p] = r;
            rb[p] = c;
          }
        if (g) {
          g->resize(m);
          for (Eigen::Index p = 0; p < m; ++p) (*g)(p) = -(ra[p] == rb[p] ? 1.0 : 2.0) * Si(ra[p], rb[p]);
        }
        if (H) {
          H->resize(m, m);
          for (Eigen::Index p = 0; p < m; ++p) {
            const int a = ra[p], b = rb[p];
            const double cp = a == b ? 0.5 : 1.0;
            for (Eigen::Index q = 0; q <= p; ++q) {
              const int c = ra[q], d = rb[q];
              const double cq = c == d ? 0.5 : 1.0;
              const double v = cp * cq * 2.0 * (Si(a, c) * Si(b, d) + Si(a, d) * Si(b, c));
              (*H)(p, q) = (*H)(q, p) = v;
            }
          }
        }
      }
      return -logdet;
    }
    case ConeKind::Exponential: {
      const double x = s(0), y = s(1), z = s(2);
      if (y <= 0.0 || z <= 0.0) return kInf;
      const double lzy = std::log(z / y);
      const double psi = y * lzy - x;
      if (psi <= 0.0) return kInf;
      if (g || H) {
        const Eigen::Vector3d dpsi(-1.0, lzy - 1.0, y / z);
        if (g) {
          *g = -dpsi / psi;
          (*g)(1) -= 1.0 / y;
          (*g)(2) -= 1.0 / z;
        }
        if (H) {
          Eigen::Matrix3d d2 = Eigen::Matrix3d::Zero();
          d2(1, 1) = -1.0 / y;
          d2(1, 2) = d2(2, 1) = 1.0 / z;
          d2(2, 2) = -y / (z * z);
          Eigen::Matrix3d h = dpsi * dpsi.transpose() / (psi * psi) - d2 / psi;
          h(1, 1) += 1.0 / (y * y);
          h(2, 2) += 1.0 / (z * z);
          *H = h;
        }
      }
      return -std::log(psi) - std::log(y) - std::log(z);
    }
    case ConeKind::Zero: return 0.0;
  }
  return kInf;
}

bool interior(const Block& b, const RVector& s) { return std::isfinite(barrier(b.kind, b.dim, s, nullptr, nullptr)); }

struct Compiled {
  int n = 0;
  RVector c;
  double c0 = 0.0;
  RMatrix A;  // equalities A x = b
  RVector b;
  std::vector<Block> blocks;
  double nu = 0.0;
};

Block compile_block(const ConeConstraint& cc, int sigma_index) {
  Block b;
  b.kind = cc.kind;
  b.dim = cc.dim;
  const int rows = static_cast<int>(cc.rows.size());
  std::vector<int> cols;
  for (const auto& r : cc.rows)
    for (const auto& [i, v] : r.terms()) cols.push_back(i);
  if (sigma_index >= 0) cols.push_back(sigma_index);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  b.cols = cols;
  b.G = RMatrix::Zero(rows, cols.size());
  b.h.resize(rows);
  auto local = [&](int gidx) {
    return static_cast<int>(std::lower_bound(cols.begin(), cols.end(), gidx) - cols.begin());
  };
  for (int r = 0; r < rows; ++r) {
    b.h(r) = cc.rows[r].constant();
    for (const auto& [i, v] : cc.rows[r].terms()) b.G(r, local(i)) += v;
  }
  if (sigma_index >= 0) b.G.col(local(sigma_index)) += interior_direction(cc.kind, rows, cc.dim);
  b.nu = cone_nu(cc.kind, rows, cc.dim);
  return b;
}

Compiled compile(const ConicProblem& p, bool phase_one) {
  Compiled out;
  const int n0 = p.num_variables();
  out.n = phase_one ? n0 + 1 : n0;
  out.c = RVector::Zero(out.n);
  if (phase_one) {
    out.c(n0) = 1.0;
  } else {
    const double sgn = p.is_maximization() ? -1.0 : 1.0;
    for (const auto& [i, v] : p.objective().terms()) out.c(i) += sgn * v;
    out.c0 = sgn * p.objective().constant();
  }
  const int me = static_cast<int>(p.equalities().size());
  out.A = RMatrix::Zero(me, out.n);
  out.b = RVector::Zero(me);
  for (int r = 0; r < me; ++r) {
    for (const auto& [i, v] : p.equalities()[r].terms()) out.A(r, i) += v;
    out.b(r) = -p.equalities()[r].constant();
  }
  for (const auto& cc : p.cones()) {
    out.blocks.push_back(compile_block(cc, phase_one ? n0 : -1));
    out.nu += out.blocks.back().nu;
  }
  return out;
}

struct Eval {
  double phi = kInf;
  RVector grad;  // barrier gradient (no objective)
  RMatrix hess;
};

double barrier_value(const Compiled& cp, const RVector& x) {
  double v = 0.0;
  for (const auto& b : cp.blocks) {
    const double f = barrier(b.kind, b.dim, b.slack(x), nullptr, nullptr);
    if (!std::isfinite(f)) return kInf;
    v += f;
  }
  return v;
}

Eval evaluate(const Compiled& cp, const RVector& x) {
  Eval e;
  e.grad = RVector::Zero(cp.n);
  e.hess = RMatrix::Zero(cp.n, cp.n);
  double v = 0.0;
  RVector g;
  RMatrix H;
  for (const auto& b : cp.blocks) {
    const double f = barrier(b.kind, b.dim, b.slack(x), &g, &H);
    if (!std::isfinite(f)) return e;
    v += f;
    const RVector gl = b.G.transpose() * g;
    const RMatrix Hl = b.G.transpose() * H * b.G;
    const int nc = static_cast<int>(b.cols.size());
    for (int i = 0; i < nc; ++i) {
      e.grad(b.cols[i]) += gl(i);
      for (int j = 0; j < nc; ++j) e.hess(b.cols[i], b.cols[j]) += Hl(i, j);
    }
  }
  e.phi = v;
  return e;
}

bool all_interior(const Compiled& cp, const RVector& x) {
  for (const auto& b : cp.blocks)
    if (!interior(b, b.slack(x))) return false;
  return true;
}

// Newton direction for t*c'x + phi(x) subject to A(x + dx) = b.
struct NewtonStep {
  RVector dx;
  double decrement2 = 0.0;
  double dual_residual = 0.0;
  bool ok = false;
};

NewtonStep newton_direction(const Compiled& cp, const RVector& x, const Eval& ev, double t) {
  NewtonStep st;
  const int n = cp.n;
  const RVector grad = t * cp.c + ev.grad;
  RMatrix H = ev.hess;
  // Jacobi scaling plus a tiny ridge.
  RVector d(n);
  for (int i = 0; i < n; ++i) {
    const double hii = H(i, i);
    d(i) = hii > 0.0 ? 1.0 / std::sqrt(hii) : 1.0;
  }
  RMatrix Hs = d.asDiagonal() * H * d.asDiagonal();
  Hs.diagonal().array() += 1e-13;
  Eigen::LDLT<RMatrix> ldlt(Hs);
  if (ldlt.info() != Eigen::Success) return st;
  const RVector gs = d.cwiseProduct(grad);
  RVector dxs;
  if (cp.A.rows() == 0) {
    dxs = -ldlt.solve(gs);
  } else {
    const RMatrix As = cp.A * d.asDiagonal();
    const RVector r = cp.b - cp.A * x;
    const RMatrix HiAt = ldlt.solve(As.transpose());
    const RVector Hig = ldlt.solve(gs);
    const RMatrix S = As * HiAt;
    const RVector rhs = -(r + As * Hig);
    const RVector w = S.completeOrthogonalDecomposition().solve(rhs);
    dxs = -(Hig + HiAt * w);
  }
  if (!dxs.allFinite()) return st;
  st.dx = d.cwiseProduct(dxs);
  st.decrement2 = std::max(0.0, dxs.dot(Hs * dxs));
  st.dual_residual = (H * st.dx + grad).lpNorm<Eigen::Infinity>();
  if (cp.A.rows() > 0) {
    // Remove the equality multiplier contribution from the residual estimate.
    st.dual_residual = (Hs * dxs + gs).lpNorm<Eigen::Infinity>();
  }
  st.ok = true;
  return st;
}

struct CenterResult {
  RVector x;
  int steps = 0;
  bool ok = true;
  bool stalled = false;
  double dual = 0.0;
};

// Minimizes t c'x + phi(x) from a strictly interior x. `stop` is checked
// after every accepted step.
template <typename Stop>
CenterResult center(const Compiled& cp, RVector x, double t, int max_steps, Stop stop) {
  CenterResult res;
  double prev_lam2 = kInf;
  for (int it = 0; it < max_steps; ++it) {
    const Eval ev = evaluate(cp, x);
    if (!std::isfinite(ev.phi)) {
      res.ok = false;
      break;
    }
    const NewtonStep st = newton_direction(cp, x, ev, t);
    if (!st.ok) {
      res.ok = false;
      break;
    }
    res.dual = st.dual_residual / t;
    const double lam2 = st.decrement2;
    const double eq_res = cp.A.rows() ? (cp.b - cp.A * x).lpNorm<Eigen::Infinity>() : 0.0;
    const double eq_tol =
        cp.A.rows() ? 1e-10 * (1.0 + cp.b.lpNorm<Eigen::Infinity>() +
                               cp.A.cwiseAbs().maxCoeff() * x.lpNorm<Eigen::Infinity>())
                    : 0.0;
    const bool floor_hit = lam2 < 1e-5 && lam2 > 0.5 * prev_lam2;
    prev_lam2 = lam2;
    if ((lam2 <= 1e-10 || floor_hit) && eq_res <= eq_tol) break;
    // Backtracking: interior first, then Armijo on the change in t c'x + phi.
    const double slope = t * cp.c.dot(st.dx) + ev.grad.dot(st.dx);
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      const RVector xn = x + alpha * st.dx;
      const double phin = barrier_value(cp, xn);
      if (std::isfinite(phin)) {
        const double change = alpha * t * cp.c.dot(st.dx) + (phin - ev.phi);
        if (change <= 0.25 * alpha * slope || (slope >= 0.0 && lam2 < 1e-12)) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // Round-off dominated region: fall back to the damped step if interior.
      alpha = 1.0 / (1.0 + std::sqrt(lam2));
      if (!std::isfinite(barrier_value(cp, x + alpha * st.dx))) {
        res.stalled = true;
        ++res.steps;
        break;
      }
      if (lam2 < 1e-10) {
        res.stalled = true;
      }
    }
    x += alpha * st.dx;
    ++res.steps;
    if (stop(x)) break;
    if (res.stalled) break;
    if (lam2 < 1e-14 && eq_res <= eq_tol) break;
  }
  res.x = std::move(x);
  return res;
}

RVector equality_projection(const Compiled& cp, const RVector& x) {
  if (cp.A.rows() == 0) return x;
  const RVector r = cp.A * x - cp.b;
  const RMatrix AAt = cp.A * cp.A.transpose();
  const RVector w = AAt.completeOrthogonalDecomposition().solve(r);
  return x - cp.A.transpose() * w;
}

// Smallest sigma with s + sigma * e interior, by bracketing and bisection.
double required_shift(const Block& b, const RVector& s) {
  const RVector e = interior_direction(b.kind, static_cast<int>(s.size()), b.dim);
  auto ok = [&](double sig) { return interior(b, s + sig * e); };
  const double scale = std::max(1.0, s.lpNorm<Eigen::Infinity>());
  double hi = 0.0;
  if (!ok(hi)) {
    hi = 1e-6 * scale;
    while (!ok(hi)) {
      hi *= 2.0;
      if (hi > 1e30) return kInf;
    }
  }
  double lo = -1e-6 * scale;
  while (ok(lo)) {
    lo *= 2.0;
    if (lo < -1e30) return -kInf;
  }
  for (int i = 0; i < 80 && hi - lo > 1e-12 * (std::abs(hi) + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double objective_value(const Compiled& cp, const RVector& x) { return cp.c.dot(x) + cp.c0; }

}  // namespace

bool strictly_feasible(const ConicProblem& p, const RVector& x) {
  if (x.size() != p.num_variables() || !x.allFinite()) return false;
  const Compiled cp = compile(p, false);
  return all_interior(cp, x);
}

ConicSolution solve(const ConicProblem& p, const SolverOptions& opt) {
  ConicSolution sol;
  const int n0 = p.num_variables();
  const Compiled cp = compile(p, false);
  const double tol = opt.tolerance;
  const double mu = opt.barrier_growth;
  const int max_it = opt.max_iterations;
  const int max_center = 60;

  RVector x = RVector::Zero(n0);
  if (opt.initial_point && opt.initial_point->size() == n0 && opt.initial_point->allFinite())
    x = *opt.initial_point;
  x = equality_projection(cp, x);

  if (cp.blocks.empty()) {
    // Pure equality-constrained linear program.
    const RVector cproj = cp.c - (cp.A.rows() ? RVector(cp.A.transpose() *
                                                        (cp.A * cp.A.transpose()).completeOrthogonalDecomposition().solve(cp.A * cp.c))
                                              : RVector::Zero(n0));
    if (cproj.lpNorm<Eigen::Infinity>() > 1e-12) {
      sol.status = Status::Unbounded;
      sol.x = x;
      return sol;
    }
    sol.status = Status::Optimal;
    sol.x = x;
    sol.objective = (p.is_maximization() ? -1.0 : 1.0) * objective_value(cp, x);
    return sol;
  }

  // ---- phase I ----
  int total = 0;
  if (all_interior(cp, x)) {
    sol.phase_one_skipped = true;
  } else {
    double sig = -kInf;
    for (const auto& b : cp.blocks) sig = std::max(sig, required_shift(b, b.slack(x)));
    if (!std::isfinite(sig)) {
      sol.status = Status::NumericalFailure;
      sol.message = "phase I: cannot find an interior shift";
      return sol;
    }
    const double sig_scale = std::max(1.0, std::abs(sig));
    const double sig0 = sig + 0.5 * sig_scale;
    Compiled c1 = compile(p, true);
    // Lower bound sigma >= -floor keeps the phase I problem bounded.
    {
      ConeConstraint lb;
      lb.kind = ConeKind::NonNegative;
      lb.rows = {LinExpr::var(n0) + LinExpr(2.0 * sig_scale)};
      c1.blocks.push_back(compile_block(lb, -1));
      c1.nu += 1.0;
      // A large ball around the start keeps directions in which the barrier
      // is unbounded from running away.
      ConeConstraint ball;
      ball.kind = ConeKind::SecondOrder;
      const double radius = 1e4 * (1.0 + x.lpNorm<Eigen::Infinity>());
      ball.rows.push_back(LinExpr(radius));
      for (int i = 0; i < n0; ++i) ball.rows.push_back(LinExpr::var(i) - LinExpr(x(i)));
      c1.blocks.push_back(compile_block(ball, -1));
      c1.nu += 2.0;
    }
    RVector y(n0 + 1);
    y << x, sig0;
    auto original_interior = [&](const RVector& z) { return all_interior(cp, RVector(z.head(n0))); };
    auto stop = [&](const RVector& z) { return z(n0) < 0.0 && original_interior(z); };
    // Initial t balancing objective and barrier gradients.
    double t = std::max(1e-6, c1.nu / (std::abs(sig0) + sig_scale));
    bool found = false;
    bool infeasible = false;
    for (;;) {
      const CenterResult cr = center(c1, y, t, std::min(max_center, max_it - total + 1), stop);
      total += cr.steps;
      if (!cr.ok) break;
      y = cr.x;
      if (original_interior(y) && (y(n0) < 0.0)) {
        found = true;
        break;
      }
      if (y(n0) - c1.nu / t > 0.0 && !cr.stalled) {
        infeasible = true;
        break;
      }
      if (c1.nu / t < tol * std::max(1.0, std::abs(y(n0))) || cr.stalled) {
        // Converged without reaching the interior.
        infeasible = !original_interior(y);
        found = !infeasible;
        break;
      }
      if (total >= max_it) break;
      t *= mu;
    }
    sol.iterations = total;
    if (!found) {
      sol.x = y.head(n0);
      if (infeasible) {
        sol.status = Status::Infeasible;
        sol.message = "phase I: no strictly feasible point";
      } else {
        sol.status = total >= max_it ? Status::MaxIterations : Status::NumericalFailure;
        sol.message = "phase I did not reach the interior";
        sol.x = RVector();
      }
      return sol;
    }
    x = y.head(n0);
  }

  // ---- phase II ----
  const double big = 1e14;
  double t;
  {
    const Eval ev = evaluate(cp, x);
    const double fscale = std::max(1.0, std::abs(objective_value(cp, x)));
    // t minimizing || t c + g ||_{H^-1}.
    RMatrix H = ev.hess;
    H.diagonal().array() += 1e-12 * (1.0 + H.diagonal().cwiseAbs().maxCoeff());
    Eigen::LDLT<RMatrix> ldlt(H);
    const RVector Hc = ldlt.solve(cp.c);
    const double num = -Hc.dot(ev.grad);
    const double den = Hc.dot(cp.c);
    t = (den > 0.0 && num > 0.0 && std::isfinite(num / den)) ? num / den : cp.nu / fscale;
    const double t_lo = 1e-3 * cp.nu / fscale;
    const double t_hi = cp.nu / (tol * fscale);
    t = std::clamp(t, t_lo, std::max(t_lo, t_hi));
  }
  const int phase_one_steps = total;
  int steps = 0;
  Status status = Status::MaxIterations;
  double dual = 0.0;
  int stalls = 0;
  for (;;) {
    const CenterResult cr = center(cp, x, t, std::min(max_center, std::max(1, max_it - steps)),
                                   [&](const RVector& z) { return objective_value(cp, z) < -big; });
    steps += cr.steps;
    if (!cr.ok) {
      status = Status::NumericalFailure;
      break;
    }
    x = cr.x;
    dual = cr.dual;
    const double f = objective_value(cp, x);
    if (f < -big) {
      status = Status::Unbounded;
      break;
    }
    const double gap = cp.nu / t;
    if (gap <= tol * std::max(1.0, std::abs(f))) {
      status = Status::Optimal;
      break;
    }
    // A stalled centering step is still interior: keep raising t a few times
    // before settling for the looser gap.
    stalls = cr.stalled ? stalls + 1 : 0;
    if (stalls >= 4 && gap <= 1e3 * tol * std::max(1.0, std::abs(f))) {
      status = Status::Optimal;
      break;
    }
    if (steps >= max_it) {
      status = Status::MaxIterations;
      break;
    }
    t *= mu;
  }
  sol.status = status;
  sol.iterations = phase_one_steps + steps;
  sol.x = x;
  sol.objective = (p.is_maximization() ? -1.0 : 1.0) * objective_value(cp, x);
  sol.residuals.gap = cp.nu / t;
  sol.residuals.primal = cp.A.rows() ? (cp.A * x - cp.b).lpNorm<Eigen::Infinity>() : 0.0;
  sol.residuals.dual = dual;
  if (status == Status::NumericalFailure) sol.message = "phase II: Newton system failed";
  return sol;
}

}  // namespace irsug::conic
