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

#include "symcert/dicke.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace symcert {

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_binomial(n, k)));
}

int OccupationVector::parties() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

int OccupationVector::local_dimension() const {
  return static_cast<int>(counts.size());
}

int OccupationVector::excitations() const {
  if (counts.size() != 2) {
    throw std::invalid_argument("excitations() requires local dimension 2");
  }
  return counts[1];
}

bool OccupationVector::valid(int m) const {
  if (counts.empty()) return false;
  for (int c : counts) {
    if (c < 0) return false;
  }
  return parties() == m;
}

std::vector<OccupationVector> OccupationVector::enumerate(int m, int d) {
  if (m < 0 || d < 1) throw std::invalid_argument("bad occupation parameters");
  std::vector<OccupationVector> out;
  std::vector<int> cur(d, 0);
  // recursive composition of m into d nonnegative parts
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d - 1) {
      cur[pos] = remaining;
      out.push_back(OccupationVector{cur});
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      cur[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, m);
  return out;
}

long long dicke_dimension(int parties, int local_dimension) {
  if (parties < 1) throw std::invalid_argument("party count must be >= 1");
  if (local_dimension < 2) throw std::invalid_argument("local dimension must be >= 2");
  // exact multiplicative evaluation of binomial(N + d - 1, d - 1)
  long long result = 1;
  for (int i = 1; i <= local_dimension - 1; ++i) {
    long long num = parties + i;
    if (__builtin_mul_overflow(result, num, &result)) {
      throw std::overflow_error("symmetric-subspace dimension overflows 64 bits");
    }
    result /= i;  // divides exactly: product of i consecutive integers
  }
  return result;
}

Eigen::Vector3d direction_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

namespace {

void require_unit(const Eigen::Vector3d& u) {
  if (std::abs(u.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("direction must be a unit vector");
  }
}

// ladder element <D^{k-1}| S_+ |D^k> = sqrt(k (N - k + 1))
double ladder(int parties, int k) {
  return std::sqrt(static_cast<double>(k) * (parties - k + 1));
}

}  // namespace

SymmetricOperator collective_spin(int parties, const Eigen::Vector3d& u) {
  if (parties < 1) throw std::invalid_argument("party count must be >= 1");
  require_unit(u);
  const int dim = parties + 1;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  const std::complex<double> i1(0.0, 1.0);
  for (int k = 0; k <= parties; ++k) {
    s(k, k) = 0.5 * parties - k;  // S_z eigenvalue times u_z applied below
  }
  s *= u.z();
  for (int k = 1; k <= parties; ++k) {
    // u_x S_x + u_y S_y = S_+ (u_x - i u_y)/2 + S_- (u_x + i u_y)/2
    const double t = 0.5 * ladder(parties, k);
    s(k - 1, k) += t * (u.x() - i1 * u.y());
    s(k, k - 1) += t * (u.x() + i1 * u.y());
  }
  SymmetricOperator op;
  op.matrix = std::move(s);
  op.parties = parties;
  op.order = 1;
  op.direction = u;
  return op;
}

SymmetricOperator spin_moment(int parties, const Eigen::Vector3d& u, int order) {
  if (order < 1) throw std::invalid_argument("moment order must be >= 1");
  SymmetricOperator op = collective_spin(parties, u);
  Eigen::MatrixXcd power = op.matrix;
  for (int j = 1; j < order; ++j) power = (power * op.matrix).eval();
  op.matrix = 0.5 * (power + power.adjoint().eval());  // clear roundoff drift
  op.order = order;
  return op;
}

SymmetricOperator total_spin_squared(int parties) {
  const Eigen::Vector3d axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(parties + 1, parties + 1);
  for (const auto& a : axes) {
    const Eigen::MatrixXcd s = collective_spin(parties, a).matrix;
    sum += s * s;
  }
  SymmetricOperator op;
  op.matrix = std::move(sum);
  op.parties = parties;
  op.order = 2;
  return op;
}

Eigen::MatrixXcd spin_rotation(int parties, const Eigen::Vector3d& u) {
  require_unit(u);
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double phi = std::atan2(u.y(), u.x());
  const std::complex<double> i1(0.0, 1.0);
  const int dim = parties + 1;

  const Eigen::MatrixXcd sy = collective_spin(parties, {0, 1, 0}).matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sy);
  Eigen::VectorXcd phase(dim);
  for (int j = 0; j < dim; ++j) {
    phase(j) = std::exp(-i1 * theta * es.eigenvalues()(j));
  }
  Eigen::MatrixXcd rot_y =
      es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();

  Eigen::VectorXcd zphase(dim);
  for (int k = 0; k < dim; ++k) {
    zphase(k) = std::exp(-i1 * phi * (0.5 * parties - k));
  }
  return zphase.asDiagonal() * rot_y;
}

}  // namespace symcert
