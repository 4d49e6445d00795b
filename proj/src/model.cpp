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

#include "irsug/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace irsug {

namespace {

struct Direction {
  double x, y, z;
};

Direction unit_direction(const Point3& from, const Point3& to) {
  const double d = distance(from, to);
  if (d <= 0.0) return {1.0, 0.0, 0.0};
  return {(to.x - from.x) / d, (to.y - from.y) / d, (to.z - from.z) / d};
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}

  Complex cn() {  // CN(0, 1)
    const double s = std::sqrt(0.5);
    return {s * normal_(gen_), s * normal_(gen_)};
  }

  CVector cn(int n) {
    CVector out(n);
    for (int i = 0; i < n; ++i) out(i) = cn();
    return out;
  }

  CMatrix cn(int rows, int cols) {
    CMatrix out(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) out(i, j) = cn();
    return out;
  }

  Point3 in_disk(const Point3& c, double r) {
    const double rho = r * std::sqrt(uniform_(gen_));
    const double phi = 2.0 * std::numbers::pi * uniform_(gen_);
    return {c.x + rho * std::cos(phi), c.y + rho * std::sin(phi), c.z};
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// AP array along x, IRS array along y.
CVector ap_response(int m, const Direction& d) { return ula_response(m, d.x); }
CVector irs_response(int n, const Direction& d) { return ula_response(n, d.y); }

CMatrix compose(const CVector& h_r, const CMatrix& F, const CVector& h_d) {
  const int n = static_cast<int>(h_r.size());
  const int m = static_cast<int>(h_d.size());
  CMatrix out(n + 1, m);
  for (int i = 0; i < n; ++i) out.row(i) = std::conj(h_r(i)) * F.row(i);
  out.row(n) = h_d.adjoint();
  return out;
}

}  // namespace

double path_loss(double c0_db, double distance_m, double alpha) {
  if (!(distance_m > 0.0)) throw InvalidInput("path_loss: distance must be positive");
  return db_to_linear(c0_db) * std::pow(distance_m, -alpha);
}

CVector ula_response(int n, double cos_angle) {
  CVector a(n);
  for (int i = 0; i < n; ++i) a(i) = std::polar(1.0, std::numbers::pi * i * cos_angle);
  return a;
}

ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed) {
  require_valid(cfg);
  const int M = cfg.num_antennas, N = cfg.num_elements;
  const auto& g = cfg.geometry;
  const double kappa = db_to_linear(cfg.rician_factor_db);
  const double los = std::sqrt(kappa / (1.0 + kappa));
  const double nlos = std::sqrt(1.0 / (1.0 + kappa));
  Draw draw(seed);

  ChannelSet out;
  out.num_antennas = M;
  out.num_elements = N;

  // AP -> IRS, N x M.
  CMatrix F = CMatrix::Zero(N, M);
  if (N > 0) {
    const double pl = path_loss(cfg.path_loss_ref_db, distance(g.ap, g.irs), cfg.alpha_irs);
    const CMatrix los_part =
        irs_response(N, unit_direction(g.irs, g.ap)) * ap_response(M, unit_direction(g.ap, g.irs)).adjoint();
    F = std::sqrt(pl) * (los * los_part + nlos * draw.cn(N, M));
  }

  auto user = [&](const Point3& pos) {
    const double pl_d = path_loss(cfg.path_loss_ref_db, distance(g.ap, pos), cfg.alpha_direct);
    const CVector h_d = std::sqrt(pl_d) * draw.cn(M);
    CVector h_r = CVector::Zero(N);
    if (N > 0) {
      const double pl_r = path_loss(cfg.path_loss_ref_db, distance(g.irs, pos), cfg.alpha_irs);
      h_r = std::sqrt(pl_r) * (los * irs_response(N, unit_direction(g.irs, pos)) + nlos * draw.cn(N));
    }
    return compose(h_r, F, h_d);
  };

  out.H.reserve(cfg.num_info_users);
  for (int k = 0; k < cfg.num_info_users; ++k) out.H.push_back(user(draw.in_disk(g.iu_center, g.iu_radius)));
  out.G.reserve(cfg.num_energy_users);
  for (int j = 0; j < cfg.num_energy_users; ++j) out.G.push_back(user(draw.in_disk(g.eu_center, g.eu_radius)));
  return out;
}

PhaseStats phase_error_moment_matrix(int num_elements, bool robust) {
  if (num_elements < 0) throw InvalidInput("phase_error_moment_matrix: N must be >= 0");
  const int n = num_elements + 1;
  PhaseStats s;
  s.robust = robust;
  if (!robust) {
    s.Z = RMatrix::Ones(n, n);
    return s;
  }
  const double pi = std::numbers::pi;
  s.Z = RMatrix::Constant(n, n, 4.0 / (pi * pi));
  s.Z.row(n - 1).setConstant(2.0 / pi);
  s.Z.col(n - 1).setConstant(2.0 / pi);
  s.Z.diagonal().setOnes();
  return s;
}

CMatrix effective_matrix(const CMatrix& channel, const CVector& v, const PhaseStats& stats) {
  if (channel.rows() != v.size() || stats.Z.rows() != v.size())
    throw ShapeMismatch("effective_matrix: channel, v and Z sizes disagree");
  const CMatrix B = v.conjugate().asDiagonal() * channel;
  return hermitian_part(B.adjoint() * stats.Z.cast<Complex>() * B);
}

CMatrix quad_lift(const CMatrix& channel, const CMatrix& covariance, const PhaseStats& stats,
                  double zero_trace) {
  const Eigen::Index n = channel.rows();
  if (channel.cols() != covariance.rows() || covariance.rows() != covariance.cols() || stats.Z.rows() != n)
    throw ShapeMismatch("quad_lift: channel, covariance and Z sizes disagree");
  CMatrix Q = CMatrix::Zero(n, n);
  if (covariance.trace().real() <= zero_trace) return Q;
  const auto ed = eig_hermitian(covariance);
  const double lmax = ed.values(0);
  const double scale = std::max(lmax, covariance.trace().real());
  if (ed.values(ed.values.size() - 1) < -1e-9 * scale) throw NotPsd("quad_lift: covariance is not PSD");
  // Sum_m q_m diag(H u_m) Z diag(H u_m)^H.
  CMatrix C(n, ed.values.size());
  Eigen::Index used = 0;
  for (Eigen::Index m = 0; m < ed.values.size(); ++m) {
    if (ed.values(m) <= 1e-12 * lmax) break;
    C.col(used++) = channel * ed.vectors.col(m) * std::sqrt(ed.values(m));
  }
  const CMatrix CC = C.leftCols(used) * C.leftCols(used).adjoint();
  Q = CC.cwiseProduct(stats.Z.cast<Complex>());
  return hermitian_part(Q);
}

CVector unit_reflect(int num_elements) { return CVector::Ones(num_elements + 1); }

}  // namespace irsug
