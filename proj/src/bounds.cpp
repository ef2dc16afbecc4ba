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

#include "symcert/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symcert {

DerivedBound schmidt_number_witness(
    double fidelity, const std::vector<double>& schmidt_coefficients) {
  if (schmidt_coefficients.empty()) {
    throw std::invalid_argument("empty coefficient vector");
  }
  double sum = 0;
  for (size_t i = 0; i < schmidt_coefficients.size(); ++i) {
    const double c = schmidt_coefficients[i];
    if (c < -1e-12) throw std::invalid_argument("negative Schmidt coefficient");
    if (i > 0 && c > schmidt_coefficients[i - 1] + 1e-12) {
      throw std::invalid_argument("coefficients must be sorted decreasing");
    }
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("coefficients must sum to 1");
  }

  // rank >= 1 + max{ r : sum of r largest < fidelity }; ties do not witness
  // the next rank
  int witnessed = 1;
  double partial = 0;
  for (size_t r = 0; r < schmidt_coefficients.size(); ++r) {
    partial += schmidt_coefficients[r];
    if (partial < fidelity) witnessed = static_cast<int>(r) + 2;
  }

  DerivedBound bound;
  bound.kind = DerivedBound::Kind::schmidt_rank;
  bound.value = witnessed;
  bound.inputs = {{"fidelity", fidelity},
                  {"coefficients", double(schmidt_coefficients.size())}};
  return bound;
}

DerivedBound qfi_bound(double fidelity, int parties, bool target_pure,
                       double qfi_target) {
  if (fidelity < 0 || fidelity > 1) {
    throw std::invalid_argument("fidelity must lie in [0, 1]");
  }
  const double zeta = target_pure ? 6.0 : 8.0;
  const double n2 = double(parties) * parties;
  const double half_width = zeta * std::sqrt(1.0 - fidelity) * n2;

  DerivedBound bound;
  bound.kind = DerivedBound::Kind::qfi;
  bound.lower = std::max(qfi_target - half_width, 0.0);
  bound.upper = std::min(qfi_target + half_width, n2);
  bound.value = half_width;
  bound.inputs = {{"fidelity", fidelity},
                  {"parties", double(parties)},
                  {"zeta", zeta},
                  {"qfi_target", qfi_target}};
  return bound;
}

DerivedBound relative_entropy_bound(double fidelity, double rho_entropy_term) {
  if (fidelity < 0 || fidelity > 1) {
    throw std::invalid_argument("fidelity must lie in (0, 1]");
  }
  DerivedBound bound;
  bound.kind = DerivedBound::Kind::relative_entropy;
  bound.value = fidelity == 0
                    ? std::numeric_limits<double>::infinity()
                    : rho_entropy_term - std::log2(fidelity);
  bound.inputs = {{"fidelity", fidelity},
                  {"rho_entropy_term", rho_entropy_term}};
  return bound;
}

}  // namespace symcert
