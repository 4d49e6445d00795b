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

#include "irsug/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "irsug/feasibility.hpp"
#include "irsug/opt_nonoverlap.hpp"

namespace irsug {

Design empty_design(int K, int L, int M, int N, double T) {
  Design d;
  d.a = RMatrix::Zero(K, L);
  d.tau = RVector::Constant(L, L > 0 ? T / L : 0.0);
  d.w.assign(K, std::vector<CVector>(L, CVector::Zero(M)));
  d.W_E.assign(L, CMatrix::Zero(M, M));
  d.v.assign(L, unit_reflect(N));
  d.eta = 0.0;
  return d;
}

namespace {

void check_shapes(const Design& d, const ChannelSet& ch) {
  const int K = d.num_info_users(), L = d.num_slots();
  if (K != static_cast<int>(ch.H.size())) throw ShapeMismatch("design: IU count does not match the channels");
  if (d.tau.size() != L || static_cast<int>(d.W_E.size()) != L || static_cast<int>(d.v.size()) != L ||
      static_cast<int>(d.w.size()) != K)
    throw ShapeMismatch("design: slot count mismatch");
  for (const auto& row : d.w)
    if (static_cast<int>(row.size()) != L) throw ShapeMismatch("design: beamformer grid mismatch");
  for (const auto& v : d.v)
    if (v.size() != ch.num_elements + 1) throw ShapeMismatch("design: reflect vector length mismatch");
}

}  // namespace

MetricsReport expected_metrics(const Design& d, const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg) {
  check_shapes(d, ch);
  const int K = d.num_info_users(), L = d.num_slots();
  const int J = static_cast<int>(ch.G.size());
  MetricsReport m;
  m.throughput = RVector::Zero(K);
  m.energy = RVector::Zero(J);
  m.slot_power = RVector::Zero(L);
  m.sinr = RMatrix::Zero(K, L);
  for (int l = 0; l < L; ++l) {
    const double tau = d.tau(l);
    double power = d.W_E[l].trace().real();
    for (int k = 0; k < K; ++k) power += d.a(k, l) * d.w[k][l].squaredNorm();
    m.slot_power(l) = power;
    if (tau > 1e-6 * cfg.duration_s) ++m.active_slots;
    for (int k = 0; k < K; ++k) {
      const CMatrix X = effective_matrix(ch.H[k], d.v[l], stats);
      const double sig = d.a(k, l) * d.w[k][l].dot(X * d.w[k][l]).real();
      double den = (X * d.W_E[l]).trace().real() + cfg.noise_w;
      for (int i = 0; i < K; ++i)
        if (i != k) den += d.a(i, l) * d.w[i][l].dot(X * d.w[i][l]).real();
      m.sinr(k, l) = sig / den;
      if (tau > 0.0) m.throughput(k) += tau * std::log2(1.0 + m.sinr(k, l));
    }
    for (int j = 0; j < J; ++j) {
      const CMatrix Y = effective_matrix(ch.G[j], d.v[l], stats);
      double e = (Y * d.W_E[l]).trace().real();
      for (int k = 0; k < K; ++k) e += d.a(k, l) * d.w[k][l].dot(Y * d.w[k][l]).real();
      m.energy(j) += tau * e;
    }
  }
  m.eta = K > 0 ? m.throughput.minCoeff() : 0.0;
  m.eh_margin = J > 0 ? m.energy.minCoeff() - cfg.energy_j : std::numeric_limits<double>::infinity();
  m.sum_a = d.a.sum();
  return m;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& x) {
  const std::size_t n = x.size();
  MeanSe r;
  if (n == 0) return r;
  r.mean = pairwise_sum(x.data(), n) / static_cast<double>(n);
  if (n < 2) return r;
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = (x[i] - r.mean) * (x[i] - r.mean);
  r.se = std::sqrt(pairwise_sum(dev.data(), n) / static_cast<double>(n - 1) / static_cast<double>(n));
  return r;
}

// Generator of sample s: independent of how samples are split across workers.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

template <typename F>
void parallel_samples(int n, int workers, F&& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int s = 0; s < n; ++s) body(s);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int s = w; s < n; s += workers) body(s);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

SampledMetrics sampled_metrics(const Design& d, const ChannelSet& ch, const SystemConfig& cfg, int n_samples,
                               std::uint64_t seed, double width, int workers) {
  if (n_samples < 1) throw InvalidInput("sampled_metrics: n_samples must be at least 1");
  check_shapes(d, ch);
  const int K = d.num_info_users(), L = d.num_slots();
  const int J = static_cast<int>(ch.G.size());
  const int N = ch.num_elements;
  const std::size_t n = static_cast<std::size_t>(n_samples);

  std::vector<std::vector<double>> sig(K * L, std::vector<double>(n)), den = sig;
  std::vector<std::vector<double>> logs(K, std::vector<double>(n)), energy(J, std::vector<double>(n));

  parallel_samples(n_samples, workers, [&](int s) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(s));
    std::uniform_real_distribution<double> phase(-0.5 * width, 0.5 * width);
    std::vector<double> rate(K, 0.0), harvested(J, 0.0);
    for (int l = 0; l < L; ++l) {
      CVector u = d.v[l];
      for (int m = 0; m < N; ++m) u(m) *= std::polar(1.0, phase(rng));
      const double tau = d.tau(l);
      for (int k = 0; k < K; ++k) {
        const CVector g = ch.H[k].adjoint() * u;
        const double own = d.a(k, l) * std::norm(g.dot(d.w[k][l]));
        double rest = g.dot(d.W_E[l] * g).real() + cfg.noise_w;
        for (int i = 0; i < K; ++i)
          if (i != k) rest += d.a(i, l) * std::norm(g.dot(d.w[i][l]));
        sig[k * L + l][s] = own;
        den[k * L + l][s] = rest;
        if (tau > 0.0) rate[k] += tau * std::log2(1.0 + own / rest);
      }
      for (int j = 0; j < J; ++j) {
        const CVector g = ch.G[j].adjoint() * u;
        double e = g.dot(d.W_E[l] * g).real();
        for (int k = 0; k < K; ++k) e += d.a(k, l) * std::norm(g.dot(d.w[k][l]));
        harvested[j] += tau * e;
      }
    }
    for (int k = 0; k < K; ++k) logs[k][s] = rate[k];
    for (int j = 0; j < J; ++j) energy[j][s] = harvested[j];
  });

  SampledMetrics r;
  r.samples = n_samples;
  r.throughput_mean_log = RVector::Zero(K);
  r.throughput_mean_log_se = RVector::Zero(K);
  r.throughput_ratio = RVector::Zero(K);
  r.signal_mean = r.signal_se = r.denominator_mean = r.denominator_se = RMatrix::Zero(K, L);
  r.energy_mean = r.energy_se = RVector::Zero(J);
  for (int k = 0; k < K; ++k) {
    const MeanSe lg = mean_se(logs[k]);
    r.throughput_mean_log(k) = lg.mean;
    r.throughput_mean_log_se(k) = lg.se;
    for (int l = 0; l < L; ++l) {
      const MeanSe a = mean_se(sig[k * L + l]), b = mean_se(den[k * L + l]);
      r.signal_mean(k, l) = a.mean;
      r.signal_se(k, l) = a.se;
      r.denominator_mean(k, l) = b.mean;
      r.denominator_se(k, l) = b.se;
      if (d.tau(l) > 0.0) r.throughput_ratio(k) += d.tau(l) * std::log2(1.0 + a.mean / b.mean);
    }
  }
  for (int j = 0; j < J; ++j) {
    const MeanSe e = mean_se(energy[j]);
    r.energy_mean(j) = e.mean;
    r.energy_se(j) = e.se;
  }
  r.eta_mean_log = K ? r.throughput_mean_log.minCoeff() : 0.0;
  r.eta_ratio = K ? r.throughput_ratio.minCoeff() : 0.0;
  return r;
}

PhaseMomentEstimate sampled_phase_moment(int N, int n_samples, std::uint64_t seed, int workers) {
  if (N < 0 || n_samples < 2) throw InvalidInput("sampled_phase_moment: need N >= 0 and at least two samples");
  const int d = N + 1;
  const std::size_t n = static_cast<std::size_t>(n_samples);
  // Real and imaginary parts of every entry of v v^H per sample.
  std::vector<std::vector<double>> re(d * d, std::vector<double>(n)), im = re;
  parallel_samples(n_samples, workers, [&](int s) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(s));
    std::uniform_real_distribution<double> phase(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    CVector v = CVector::Ones(d);
    for (int m = 0; m < N; ++m) v(m) = std::polar(1.0, phase(rng));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Complex z = v(i) * std::conj(v(j));
        re[i * d + j][s] = z.real();
        im[i * d + j][s] = z.imag();
      }
  });
  PhaseMomentEstimate out;
  out.mean = CMatrix::Zero(d, d);
  out.se_real = RMatrix::Zero(d, d);
  out.se_imag = RMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const MeanSe a = mean_se(re[i * d + j]), b = mean_se(im[i * d + j]);
      out.mean(i, j) = Complex(a.mean, b.mean);
      out.se_real(i, j) = a.se;
      out.se_imag(i, j) = b.se;
    }
  return out;
}

DesignAudit audit_design(const Design& d, const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                         bool non_overlapping) {
  DesignAudit r;
  const MetricsReport m = expected_metrics(d, ch, stats, cfg);
  const int K = d.num_info_users(), L = d.num_slots();
  const double P = cfg.power_w, T = cfg.duration_s, E = cfg.energy_j;
  auto fail = [&](const std::string& what) {
    r.ok = false;
    r.failures.push_back(what);
  };

  r.eh_margin = m.eh_margin;
  if (!ch.G.empty() && E > 0.0 && m.eh_margin < -1e-9) fail("energy below requirement");

  r.power_excess = L ? (m.slot_power.maxCoeff() - P) / P : 0.0;
  if (r.power_excess > 1e-8) fail("slot power above budget");

  r.time_excess = d.tau.sum() - T;
  if (r.time_excess > 1e-10) fail("slot durations exceed the frame");
  if (L && d.tau.minCoeff() < 0.0) fail("negative slot duration");

  for (const auto& v : d.v) {
    for (Eigen::Index n = 0; n < v.size(); ++n)
      r.modulus_error = std::max(r.modulus_error, std::abs(std::abs(v(n)) - 1.0));
    if (v.size() && v(v.size() - 1) != Complex(1.0, 0.0)) fail("last reflect entry is not 1");
  }
  if (r.modulus_error > 1e-12) fail("reflect vector off the unit circle");

  for (int k = 0; k < K; ++k) {
    double groups = 0.0;
    for (int l = 0; l < L; ++l) {
      const double a = d.a(k, l);
      if (a != 0.0 && a != 1.0) r.binary = false;
      groups += a;
      if (a == 0.0 && d.w[k][l].squaredNorm() > 0.0) fail("beamformer present for an unassigned pair");
    }
    r.max_groups_per_iu = std::max(r.max_groups_per_iu, groups);
  }
  if (!r.binary) fail("grouping is not binary");
  if (non_overlapping && r.max_groups_per_iu > 1.0) fail("IU assigned to more than one group");

  for (const auto& W : d.W_E) {
    const double scale = std::max(W.trace().real(), 1e-300);
    if (W.size() && min_eigenvalue(W) < -1e-9 * scale) fail("energy covariance not PSD");
  }
  return r;
}

OracleTable brute_force_grouping_oracle(int K, int L, bool non_overlapping, const FrozenSolver& solve) {
  if (K < 0 || L < 1 || K > 4 || L > 2) throw InvalidInput("brute_force_grouping_oracle: enumeration budget exceeded");
  OracleTable t;
  const int base = non_overlapping ? L + 1 : 2;
  const int digits = non_overlapping ? K : K * L;
  int count = 1;
  for (int i = 0; i < digits; ++i) count *= base;
  for (int c = 0; c < count; ++c) {
    RMatrix a = RMatrix::Zero(K, L);
    int code = c;
    for (int i = 0; i < digits; ++i) {
      const int digit = code % base;
      code /= base;
      if (non_overlapping) {
        if (digit > 0) a(i, digit - 1) = 1.0;  // digit 0: not served
      } else {
        a(i / L, i % L) = digit;
      }
    }
    const double value = solve(a);
    t.candidates.push_back(a);
    t.values.push_back(value);
    if (t.best < 0 || value > t.best_value) {
      t.best = static_cast<int>(t.values.size()) - 1;
      t.best_value = value;
    }
  }
  return t;
}

OracleTable brute_force_grouping_oracle(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                                        bool non_overlapping) {
  const int K = static_cast<int>(ch.H.size());
  const FeasibilityReport feas = check_feasibility(ch, stats, cfg);
  return brute_force_grouping_oracle(K, cfg.max_groups, non_overlapping, [&](const RMatrix& a) {
    if (!feas.feasible()) return 0.0;
    for (int k = 0; k < K; ++k)
      if (a.row(k).sum() < 0.5) return 0.0;
    const SolveReport r = solve_grouped(ch, stats, cfg, feas, GroupingMode::Fixed, a);
    return r.degenerate ? 0.0 : r.design.eta;
  });
}

}  // namespace irsug
