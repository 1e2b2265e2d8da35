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
#include "fbgame/row_update.hpp"

#include <cmath>
#include <string>

#include "fbgame/errors.hpp"

namespace fbgame {

RowUpdateSinr::RowUpdateSinr(const CrnBank& bank, std::span<const double> true_gain,
                             std::span<const double> noise_gain, std::size_t swept, double psi,
                             double n0)
    : swept_(swept), n_s_(bank.n_s()), psi_(psi), n0_(n0) {
  if (!(psi > 0.0)) throw InvalidArgument("RowUpdateSinr requires psi > 0");
  if (swept >= n_s_) throw InvalidArgument("RowUpdateSinr: swept user out of range");
  if (true_gain.size() != n_s_ || noise_gain.size() != n_s_) {
    throw InvalidArgument("RowUpdateSinr: gain vectors must have one entry per user");
  }
  const auto k = static_cast<Eigen::Index>(swept);
  const auto n_t = static_cast<Eigen::Index>(bank.n_t());
  cache_.reserve(bank.size());

  CMatrix fixed;
  CMatrix gram(n_t, n_t);
  CMatrix inv;
  CMatrix hc;
  for (const auto& draw : bank) {
    quantize_channel_into(draw, true_gain, noise_gain, fixed);
    fixed.row(k).setZero();

    gram.noalias() = fixed.adjoint() * fixed;
    gram.diagonal().array() += psi;
    inv = gram.llt().solve(CMatrix::Identity(n_t, n_t));

    Trial tr;
    hc.noalias() = draw.h * inv;
    tr.cross.noalias() = hc * fixed.adjoint();
    tr.u.noalias() = hc * draw.h.row(k).adjoint();
    tr.v.noalias() = hc * draw.nq.row(k).adjoint();

    const Eigen::RowVectorXcd h_c = hc.row(k);
    const Eigen::RowVectorXcd n_c = draw.nq.row(k) * inv;
    tr.m = (n_c * fixed.adjoint()).transpose();
    const Eigen::RowVectorXcd h_c2 = h_c * inv;
    const Eigen::RowVectorXcd n_c2 = n_c * inv;

    tr.c_hh = h_c.dot(draw.h.row(k)).real();
    tr.c_hn = draw.nq.row(k).dot(h_c);
    tr.c_nn = n_c.dot(draw.nq.row(k)).real();
    tr.c2_hh = h_c.squaredNorm();
    tr.c2_hn = n_c.dot(h_c);
    tr.c2_nn = n_c.squaredNorm();
    tr.c3_hh = h_c.dot(h_c2).real();
    tr.c3_hn = n_c.dot(h_c2);
    tr.c3_nn = n_c.dot(n_c2).real();
    tr.tr1 = inv.trace().real();
    tr.tr2 = inv.squaredNorm();
    cache_.push_back(std::move(tr));
  }
}

double RowUpdateSinr::gamma(std::size_t t, std::size_t user, double a, double b) const {
  const Trial& tr = cache_[t];
  const auto k = static_cast<Eigen::Index>(swept_);
  const auto j = static_cast<Eigen::Index>(user);

  const double ab2 = 2.0 * a * b;
  const double d = 1.0 + a * a * tr.c_hh + ab2 * tr.c_hn.real() + b * b * tr.c_nn;
  const double q2 = a * a * tr.c2_hh + ab2 * tr.c2_hn.real() + b * b * tr.c2_nn;
  const double q3 = a * a * tr.c3_hh + ab2 * tr.c3_hn.real() + b * b * tr.c3_nn;
  // ||T||_F^2 = tr(M^-1) - psi tr(M^-2), M = Hq^H Hq + psi I.
  const double trace_inv = tr.tr1 - q2 / d;
  const double trace_inv2 = tr.tr2 - 2.0 * q3 / d + (q2 * q2) / (d * d);
  const double norm2 = trace_inv - psi_ * trace_inv2;

  // Gains of receiver j through M^-1 = C - C x x^H C / d, x = (a h_k + b nq_k)^H.
  const Complex t_user = (a * tr.u(j) + b * tr.v(j)) / d;
  double signal = 0.0;
  double interference = 0.0;
  for (Eigen::Index i = 0; i < tr.cross.cols(); ++i) {
    Complex g;
    if (i == k) {
      g = t_user;
    } else {
      const Complex e = a * tr.cross(k, i) + b * tr.m(i);
      g = tr.cross(j, i) - t_user * e;
    }
    if (i == j) {
      signal = std::norm(g);
    } else {
      interference += std::norm(g);
    }
  }
  return signal / (interference + n0_ * norm2);
}

double RowUpdateSinr::mean_log2_sinr(std::size_t user, double a, double b) const {
  double total = 0.0;
  for (std::size_t t = 0; t < cache_.size(); ++t) total += std::log2(1.0 + gamma(t, user, a, b));
  return total / static_cast<double>(cache_.size());
}

void RowUpdateSinr::mean_log2_sinr(double a, double b, std::vector<double>& out) const {
  out.assign(n_s_, 0.0);
  for (std::size_t t = 0; t < cache_.size(); ++t) {
    for (std::size_t j = 0; j < n_s_; ++j) out[j] += std::log2(1.0 + gamma(t, j, a, b));
  }
  for (double& v : out) v /= static_cast<double>(cache_.size());
}

}  // namespace fbgame
