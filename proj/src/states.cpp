// Copyright 2026 The symcert authors
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

#include "symcert/states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace symcert {

void SymmetricState::validate() const {
  if (matrix.rows() != parties + 1 || matrix.cols() != parties + 1) {
    throw std::invalid_argument("state dimension must be parties + 1");
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("state is not Hermitian");
  }
  if (std::abs(matrix.trace().real() - 1.0) > 1e-12 ||
      std::abs(matrix.trace().imag()) > 1e-12) {
    throw std::invalid_argument("state trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("state has a negative eigenvalue");
  }
}

namespace {

SymmetricState pure_state(Eigen::VectorXcd amplitudes, int parties,
                          std::string label) {
  amplitudes /= amplitudes.norm();
  SymmetricState s;
  s.matrix = amplitudes * amplitudes.adjoint();
  s.parties = parties;
  s.label = std::move(label);
  return s;
}

Eigen::VectorXcd css_amplitudes(int parties, const Eigen::Vector3d& u) {
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double phi = std::atan2(u.y(), u.x());
  const std::complex<double> i1(0.0, 1.0);
  Eigen::VectorXcd amp(parties + 1);
  const double lc = std::log(std::cos(theta / 2));
  const double ls = std::log(std::sin(theta / 2));
  for (int k = 0; k <= parties; ++k) {
    // sqrt(C(N,k)) cos(t/2)^(N-k) sin(t/2)^k e^{i k phi}, in logs for N ~ 100
    double logmag;
    if (k == 0) {
      logmag = parties * lc;
    } else if (k == parties) {
      logmag = parties * ls;
    } else {
      logmag = 0.5 * log_binomial(parties, k) + (parties - k) * lc + k * ls;
    }
    amp(k) = std::exp(logmag) * std::exp(i1 * (phi * k));
  }
  return amp;
}

}  // namespace

SymmetricState coherent_spin_state(int parties, const Eigen::Vector3d& u) {
  if (parties < 1) throw std::invalid_argument("party count must be >= 1");
  if (std::abs(u.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("direction must be a unit vector");
  }
  return pure_state(css_amplitudes(parties, u), parties, "css");
}

SymmetricState one_axis_twisted(int parties, double mu) {
  if (parties < 2) throw std::invalid_argument("twisting needs >= 2 parties");
  Eigen::VectorXcd amp = css_amplitudes(parties, {1, 0, 0});
  const std::complex<double> i1(0.0, 1.0);
  for (int k = 0; k <= parties; ++k) {
    const double kz = 0.5 * parties - k;  // S_z eigenvalue
    amp(k) *= std::exp(-i1 * (mu / 2) * kz * kz);
  }
  return pure_state(std::move(amp), parties, "oat");
}

SymmetricState dicke_state(int parties, int excitations) {
  if (excitations < 0 || excitations > parties) {
    throw std::invalid_argument("excitation count out of range");
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(parties + 1);
  amp(excitations) = 1.0;
  return pure_state(std::move(amp), parties, "dicke");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 over master ^ f(index); stable across platforms
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SymmetricState random_symmetric_state(int parties, int rank,
                                      std::uint64_t seed) {
  const int dim = parties + 1;
  if (rank < 1 || rank > dim) throw std::invalid_argument("rank out of range");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = std::complex<double>(re, im);
    }
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  SymmetricState s;
  s.matrix = 0.5 * (rho + rho.adjoint().eval());
  s.parties = parties;
  s.label = "random";
  return s;
}

double expectation(const SymmetricState& state, const Eigen::MatrixXcd& obs) {
  return (obs * state.matrix).trace().real();
}

SqueezingResult wineland_xi2(const SymmetricState& state) {
  const int n = state.parties;
  const Eigen::MatrixXcd sx = collective_spin(n, {1, 0, 0}).matrix;
  const Eigen::MatrixXcd sy = collective_spin(n, {0, 1, 0}).matrix;
  const Eigen::MatrixXcd sz = collective_spin(n, {0, 0, 1}).matrix;

  const double ex = expectation(state, sx);
  if (std::abs(ex) < 1e-9) {
    throw std::invalid_argument("vanishing polarization: <S_x> ~ 0");
  }
  const double ey = expectation(state, sy);
  const double ez = expectation(state, sz);
  const double vy = expectation(state, sy * sy) - ey * ey;
  const double vz = expectation(state, sz * sz) - ez * ez;
  const double cyz =
      0.5 * expectation(state, sy * sz + sz * sy) - ey * ez;

  // Var(S_theta) = (sin t, cos t) C (sin t, cos t)^T with C the symmetrized
  // covariance of (S_y, S_z); the minimum is the smaller eigenvalue.
  Eigen::Matrix2d cov;
  cov << vy, cyz, cyz, vz;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const double vmin = es.eigenvalues()(0);
  const Eigen::Vector2d v = es.eigenvectors().col(0);

  SqueezingResult r;
  r.xi2 = n * vmin / (ex * ex);
  r.theta_star = std::atan2(v(0), v(1));  // v = (y-component, z-component)
  if (r.theta_star < 0) r.theta_star += M_PI;  // directions are mod pi
  r.direction = {0.0, std::sin(r.theta_star), std::cos(r.theta_star)};
  return r;
}

double uhlmann_fidelity(const SymmetricState& rho1, const SymmetricState& rho2) {
  if (rho1.matrix.rows() != rho2.matrix.rows()) {
    throw std::invalid_argument("fidelity of states with different dimensions");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(rho1.matrix);
  Eigen::VectorXd ev = es1.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd sqrt1 = es1.eigenvectors() *
                           ev.cwiseSqrt().asDiagonal() *
                           es1.eigenvectors().adjoint();
  Eigen::MatrixXcd inner = sqrt1 * rho2.matrix * sqrt1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(
      0.5 * (inner + inner.adjoint().eval()));
  const double root_sum = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_sum * root_sum;
}

}  // namespace symcert
