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

#include "symcert/marginal.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace symcert {

double MarginalMap::weight(int a, int a_prime, int j) const {
  const int m = marginal_parties;
  if (a < 0 || a > m || a_prime < 0 || a_prime > m) return 0.0;
  if (j < 0 || j > global_parties - m) return 0.0;
  return weights_(a * (m + 1) + a_prime, j);
}

Eigen::MatrixXcd MarginalMap::apply(const Eigen::MatrixXcd& rho) const {
  const int n = global_parties, m = marginal_parties;
  if (rho.rows() != n + 1 || rho.cols() != n + 1) {
    throw std::invalid_argument("marginal map applied to wrong dimension");
  }
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(m + 1, m + 1);
  for (int a = 0; a <= m; ++a) {
    for (int ap = 0; ap <= m; ++ap) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j <= n - m; ++j) {
        acc += weights_(a * (m + 1) + ap, j) * rho(a + j, ap + j);
      }
      sigma(a, ap) = acc;
    }
  }
  return sigma;
}

Eigen::MatrixXcd MarginalMap::adjoint_apply(const Eigen::MatrixXcd& obs) const {
  const int n = global_parties, m = marginal_parties;
  if (obs.rows() != m + 1 || obs.cols() != m + 1) {
    throw std::invalid_argument("adjoint map applied to wrong dimension");
  }
  Eigen::MatrixXcd global = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int a = 0; a <= m; ++a) {
    for (int ap = 0; ap <= m; ++ap) {
      for (int j = 0; j <= n - m; ++j) {
        global(a + j, ap + j) += weights_(a * (m + 1) + ap, j) * obs(a, ap);
      }
    }
  }
  return global;
}

const MarginalMap& marginal_map(int global_parties, int marginal_parties) {
  const int n = global_parties, m = marginal_parties;
  if (n < 1 || m < 1 || m > n) {
    throw std::invalid_argument("need 1 <= m <= N for a marginal map");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, MarginalMap> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n, m});
  if (it != cache.end()) return it->second;

  MarginalMap map;
  map.global_parties = n;
  map.marginal_parties = m;
  map.weights_ = Eigen::MatrixXd::Zero((m + 1) * (m + 1), n - m + 1);
  for (int a = 0; a <= m; ++a) {
    for (int ap = 0; ap <= m; ++ap) {
      for (int j = 0; j <= n - m; ++j) {
        const double logw = log_binomial(n - m, j) +
                            0.5 * (log_binomial(m, a) + log_binomial(m, ap) -
                                   log_binomial(n, a + j) -
                                   log_binomial(n, ap + j));
        map.weights_(a * (m + 1) + ap, j) = std::exp(logw);
      }
    }
  }
  return cache.emplace(std::make_pair(n, m), std::move(map)).first->second;
}

Eigen::MatrixXcd reduce(const SymmetricState& state, int marginal_parties) {
  return marginal_map(state.parties, marginal_parties).apply(state.matrix);
}

Eigen::MatrixXcd dicke_isometry(int parties) {
  if (parties < 1 || parties > 16) {
    throw std::invalid_argument("isometry limited to 1 <= N <= 16");
  }
  const long long full = 1ll << parties;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(full, parties + 1);
  for (long long b = 0; b < full; ++b) {
    const int k = __builtin_popcountll(b);
    v(b, k) = 1.0;
  }
  for (int k = 0; k <= parties; ++k) v.col(k) /= v.col(k).norm();
  return v;
}

Eigen::MatrixXcd brute_force_reduce(const SymmetricState& state,
                                    int marginal_parties) {
  const int n = state.parties, m = marginal_parties;
  if (n > 8) throw std::invalid_argument("brute-force reduce limited to N <= 8");
  if (m < 1 || m > n) throw std::invalid_argument("bad marginal size");

  const Eigen::MatrixXcd vn = dicke_isometry(n);
  const Eigen::MatrixXcd full = vn * state.matrix * vn.adjoint();

  const long long dm = 1ll << m, denv = 1ll << (n - m);
  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(dm, dm);
  for (long long a = 0; a < dm; ++a) {
    for (long long b = 0; b < dm; ++b) {
      std::complex<double> acc = 0.0;
      for (long long e = 0; e < denv; ++e) {
        acc += full(a * denv + e, b * denv + e);
      }
      red(a, b) = acc;
    }
  }
  const Eigen::MatrixXcd vm = dicke_isometry(m);
  return vm.adjoint() * red * vm;
}

namespace {

// (sum_i sigma_u^(i))^k = sum_r alpha_r P_r with P_r the sum over r-subsets
// of products of sigma_u on distinct parties. alpha satisfies
// alpha'_s = s alpha_{s-1} + (N - s) alpha_{s+1}.
std::vector<double> pauli_sum_power_coefficients(int parties, int order) {
  std::vector<double> alpha(order + 2, 0.0);
  alpha[0] = 1.0;  // (sum)^0 = identity
  for (int step = 0; step < order; ++step) {
    std::vector<double> next(order + 2, 0.0);
    for (int s = 0; s <= order; ++s) {
      if (s >= 1) next[s] += s * alpha[s - 1];
      next[s] += (parties - s) * alpha[s + 1];
    }
    alpha = std::move(next);
  }
  alpha.resize(order + 1);
  return alpha;
}

// <D_m^a| sigma_z^{(1..r)} |D_m^a>: average of (-1)^(ones among first r bits)
double diagonal_moment(int m, int r, int a) {
  double acc = 0.0;
  for (int t = 0; t <= std::min(r, a); ++t) {
    const double c = binomial(r, t) * binomial(m - r, a - t);
    acc += (t % 2 == 0 ? c : -c);
  }
  return acc / binomial(m, a);
}

}  // namespace

Eigen::MatrixXcd embed_observable(int global_parties, int marginal_parties,
                                  const Eigen::Vector3d& u, int order) {
  const int n = global_parties, m = marginal_parties;
  if (order < 1) throw std::invalid_argument("moment order must be >= 1");
  if (order > m) {
    throw std::invalid_argument(
        "moment order exceeds marginal size: k-th moments need an m-RDM with "
        "m >= k");
  }
  if (m > n) throw std::invalid_argument("marginal larger than global state");

  const std::vector<double> alpha = pauli_sum_power_coefficients(n, order);
  const Eigen::MatrixXcd rot = spin_rotation(m, u);

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m + 1, m + 1);
  for (int r = 0; r <= order; ++r) {
    if (alpha[r] == 0.0) continue;
    Eigen::VectorXd diag(m + 1);
    for (int a = 0; a <= m; ++a) diag(a) = diagonal_moment(m, r, a);
    // sigma_u^{tensor r} (x) I, projected to the symmetric basis, equals the
    // rotated diagonal z-basis moment
    const Eigen::MatrixXcd q =
        rot * diag.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
        rot.adjoint();
    acc += (alpha[r] * binomial(n, r)) * q;
  }
  acc /= std::pow(2.0, order);
  return 0.5 * (acc + acc.adjoint().eval());
}

}  // namespace symcert
