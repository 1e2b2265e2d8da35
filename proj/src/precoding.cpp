/*
 * Copyright 2026 The fbgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "fbgame/precoding.hpp"

#include <cmath>
#include <string>

#include "fbgame/errors.hpp"
#include "fbgame/game_config.hpp"

namespace fbgame {

namespace {

// Leaves (H H^H + psi I)^-1 H in ws.solved. Note (A^-1 H)^H = H^H A^-1 = T
// because A is Hermitian.
void solve_regularized(const CMatrix& h_quant, double psi, SinrWorkspace& ws) {
  if (!(psi >= 0.0)) {
    throw InvalidArgument("regularization psi must be non-negative, got " + std::to_string(psi));
  }
  const auto n_s = h_quant.rows();
  ws.gram.setZero(n_s, n_s);
  ws.gram.selfadjointView<Eigen::Lower>().rankUpdate(h_quant);
  if (psi == 0.0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(ws.gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kZfConditionLimit) {
      throw SingularMatrix("zero-forcing precoder: H H^H is singular (condition number " +
                           std::to_string(lo > 0.0 ? hi / lo : INFINITY) + ")");
    }
  } else {
    ws.gram.diagonal().array() += psi;
  }
  ws.llt.compute(ws.gram);
  if (ws.llt.info() != Eigen::Success) {
    throw SingularMatrix("precoder: Cholesky factorization of H H^H + psi I failed");
  }
  ws.solved = h_quant;
  ws.llt.solveInPlace(ws.solved);
}

}  // namespace

double regularization_param(const GameConfig& cfg) {
  if (cfg.psi) return *cfg.psi;
  return static_cast<double>(cfg.n_s) * cfg.n0;
}

PrecoderSet build_precoder(const CMatrix& h_quant, double psi) {
  if (h_quant.size() == 0) throw InvalidArgument("build_precoder: empty channel matrix");
  SinrWorkspace ws;
  solve_regularized(h_quant, psi, ws);
  const double norm = ws.solved.norm();
  PrecoderSet out;
  out.w = ws.solved.adjoint() / norm;
  out.k_norm = 1.0 / norm;
  out.psi = psi;
  return out;
}

LinkMetrics link_metrics(const CMatrix& h_true, const PrecoderSet& precoder, double n0) {
  if (h_true.cols() != precoder.w.rows() || h_true.rows() != precoder.w.cols()) {
    throw InvalidArgument("link_metrics: channel and precoder shapes do not conform");
  }
  if (!(n0 > 0.0)) throw InvalidArgument("link_metrics: noise power must be positive");
  const CMatrix gains = h_true * precoder.w;
  const auto n_s = static_cast<std::size_t>(h_true.rows());
  LinkMetrics m;
  m.n0 = n0;
  m.gamma.resize(n_s);
  m.signal_power.resize(n_s);
  m.interference_power.resize(n_s);
  for (std::size_t k = 0; k < n_s; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    double interference = 0.0;
    for (Eigen::Index i = 0; i < gains.cols(); ++i) {
      if (i != row) interference += std::norm(gains(row, i));
    }
    m.signal_power[k] = std::norm(gains(row, row));
    m.interference_power[k] = interference;
    m.gamma[k] = m.signal_power[k] / (interference + n0);
  }
  return m;
}

double throughput(double gamma, double b_dl) { return b_dl * std::log2(1.0 + gamma); }

void sinr_into(const CMatrix& h_true, const CMatrix& h_quant, double psi, double n0,
               SinrWorkspace& ws, std::vector<double>& gamma) {
  solve_regularized(h_quant, psi, ws);
  const double inv_norm2 = 1.0 / ws.solved.squaredNorm();
  ws.cross.resize(h_true.rows(), h_true.rows());
  ws.cross.noalias() = h_true * ws.solved.adjoint();
  const auto n_s = static_cast<std::size_t>(h_true.rows());
  gamma.resize(n_s);
  for (std::size_t k = 0; k < n_s; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    double interference = 0.0;
    for (Eigen::Index i = 0; i < ws.cross.cols(); ++i) {
      if (i != row) interference += std::norm(ws.cross(row, i));
    }
    const double signal = std::norm(ws.cross(row, row)) * inv_norm2;
    gamma[k] = signal / (interference * inv_norm2 + n0);
  }
}

}  // namespace fbgame
