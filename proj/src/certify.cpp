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

#include "symcert/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "symcert/parallel.hpp"

namespace symcert {

namespace {

bool is_pure(const SymmetricState& state) {
  const double purity =
      (state.matrix * state.matrix).trace().real();
  return purity > 1.0 - 1e-9;
}

std::string direction_label(const Eigen::Vector3d& u) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << u.x() << "," << u.y() << "," << u.z() << ")";
  return os.str();
}

Eigen::MatrixXcd record_constraint_matrix(int parties, int m,
                                          const MeasurementRecord& record) {
  // Collective moments enter Eq.-style data constraints through the m-RDM:
  // compose the m-party moment observable with the adjoint marginal map to
  // act on the global state. (Analytically this equals S_u^k; the marginal
  // route is what the certification model constrains.)
  const Eigen::MatrixXcd embedded =
      embed_observable(parties, m, record.direction, record.order);
  return marginal_map(parties, m).adjoint_apply(embedded);
}

CertificationResult package(const SymmetricState& target,
                            const ConicSolution& sol,
                            std::vector<std::string> labels) {
  CertificationResult result;
  result.raw_dual_value = sol.dual_value;
  result.bound = std::clamp(sol.dual_value, 0.0, 1.0);
  result.constraints_used = std::move(labels);
  result.dual_certificate = sol.dual;
  result.diagnostics.status = sol.status;
  result.diagnostics.gap = sol.gap;
  result.diagnostics.iterations = sol.iterations;
  result.diagnostics.primal_residual = sol.primal_residual;
  result.diagnostics.dual_residual = sol.dual_residual;
  result.linear_fidelity_only = !is_pure(target);
  return result;
}

}  // namespace

CertificationResult fidelity_from_full_rdm(const SymmetricState& target, int m,
                                           const SolveOptions& options) {
  target.validate();
  const int n = target.parties;
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= N");

  const MarginalMap& map = marginal_map(n, m);
  const Eigen::MatrixXcd sigma = map.apply(target.matrix);
  const std::complex<double> i1(0.0, 1.0);

  ConicProblem problem;
  problem.objective = target.matrix;
  std::vector<std::string> labels;
  problem.equalities.push_back(
      {Eigen::MatrixXcd::Identity(n + 1, n + 1), 1.0});
  labels.emplace_back("trace");

  for (int a = 0; a <= m; ++a) {
    for (int ap = a; ap <= m; ++ap) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n + 1, n + 1);
      for (int j = 0; j <= n - m; ++j) {
        e(a + j, ap + j) = map.weight(a, ap, j);
      }
      problem.equalities.push_back(
          {0.5 * (e + e.adjoint()), sigma(a, ap).real()});
      labels.push_back("rdm(" + std::to_string(a) + "," + std::to_string(ap) +
                       ")re");
      if (ap > a) {
        // Tr[(E - E^dag) (i/2) rho] = Im sigma(a, a')
        problem.equalities.push_back(
            {(e - e.adjoint()) * (i1 / 2.0), sigma(a, ap).imag()});
        labels.push_back("rdm(" + std::to_string(a) + "," +
                         std::to_string(ap) + ")im");
      }
    }
  }

  const ConicSolution sol = solve(problem, options);
  if (sol.status == SolveStatus::primal_infeasible) {
    // the target's own RDM is feasible by construction
    throw std::runtime_error(
        "internal error: full-RDM certification reported infeasible");
  }
  return package(target, sol, std::move(labels));
}

CertificationResult fidelity_from_data(
    const SymmetricState& target, int m,
    const std::vector<MeasurementRecord>& records,
    const SolveOptions& options) {
  target.validate();
  const int n = target.parties;
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= N");

  ConicProblem problem;
  problem.objective = target.matrix;
  std::vector<std::string> labels;
  problem.equalities.push_back(
      {Eigen::MatrixXcd::Identity(n + 1, n + 1), 1.0});
  labels.emplace_back("trace");

  for (const auto& record : records) {
    if (record.order < 1 || record.order > m) {
      throw std::invalid_argument(
          "record order must satisfy 1 <= k <= m (marginal too small)");
    }
    if (record.noise_halfwidth < 0) {
      throw std::invalid_argument("negative noise halfwidth");
    }
    Eigen::MatrixXcd a = record_constraint_matrix(n, m, record);
    std::string label = record.label.empty()
                            ? "S^" + std::to_string(record.order) + "@" +
                                  direction_label(record.direction)
                            : record.label;
    if (record.noise_halfwidth == 0) {
      problem.equalities.push_back({std::move(a), record.value});
      labels.push_back(std::move(label));
    } else {
      problem.intervals.push_back({std::move(a),
                                   record.value - record.noise_halfwidth,
                                   record.value + record.noise_halfwidth});
      labels.push_back(label + "+-" + std::to_string(record.noise_halfwidth));
    }
  }

  const ConicSolution sol = solve(problem, options);
  if (sol.status == SolveStatus::primal_infeasible) {
    InconsistentDataError err(
        "data inconsistent with a symmetric " + std::to_string(n) +
        "-party state (Farkas certificate available)");
    err.certificate = sol.dual;
    throw err;
  }
  return package(target, sol, std::move(labels));
}

namespace {

struct GridPoint {
  double theta = 0, phi = 0;
};

struct GridEval {
  double bound = -1;
  bool ok = false;
};

// Nelder-Mead on (theta, phi); the bound is smooth and periodic in the
// angles, so an unconstrained simplex works.
template <class Fn>
std::pair<GridPoint, double> nelder_mead(Fn&& fn, GridPoint start, double size,
                                         double tol, int max_evals) {
  struct Vertex {
    GridPoint p;
    double value;
  };
  std::array<Vertex, 3> simplex;
  simplex[0] = {start, fn(start)};
  simplex[1] = {{start.theta + size, start.phi}, 0};
  simplex[1].value = fn(simplex[1].p);
  simplex[2] = {{start.theta, start.phi + size}, 0};
  simplex[2].value = fn(simplex[2].p);
  int evals = 3;

  auto by_value = [](const Vertex& a, const Vertex& b) {
    return a.value < b.value;
  };
  while (evals < max_evals) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double diameter =
        std::max(std::hypot(simplex[1].p.theta - simplex[0].p.theta,
                            simplex[1].p.phi - simplex[0].p.phi),
                 std::hypot(simplex[2].p.theta - simplex[0].p.theta,
                            simplex[2].p.phi - simplex[0].p.phi));
    if (diameter < tol) break;

    const GridPoint centroid{
        0.5 * (simplex[0].p.theta + simplex[1].p.theta),
        0.5 * (simplex[0].p.phi + simplex[1].p.phi)};
    auto affine = [&](double t) {
      return GridPoint{centroid.theta + t * (simplex[2].p.theta - centroid.theta),
                       centroid.phi + t * (simplex[2].p.phi - centroid.phi)};
    };

    const GridPoint refl = affine(-1.0);
    const double f_refl = fn(refl);
    ++evals;
    if (f_refl < simplex[0].value) {
      const GridPoint expand = affine(-2.0);
      const double f_exp = fn(expand);
      ++evals;
      simplex[2] = f_exp < f_refl ? Vertex{expand, f_exp} : Vertex{refl, f_refl};
    } else if (f_refl < simplex[1].value) {
      simplex[2] = {refl, f_refl};
    } else {
      const GridPoint contract = affine(0.5);
      const double f_con = fn(contract);
      ++evals;
      if (f_con < simplex[2].value) {
        simplex[2] = {contract, f_con};
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          simplex[i].p.theta =
              0.5 * (simplex[i].p.theta + simplex[0].p.theta);
          simplex[i].p.phi = 0.5 * (simplex[i].p.phi + simplex[0].p.phi);
          simplex[i].value = fn(simplex[i].p);
          evals += 1;
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex[0].p, simplex[0].value};
}

}  // namespace

AngleSearchResult optimal_single_measurement(
    const SymmetricState& target, int m, int order,
    const std::vector<MeasurementRecord>& fixed,
    const AngleSearchOptions& options) {
  target.validate();
  const int n = target.parties;
  if (order < 1 || order > m) {
    throw std::invalid_argument("moment order must satisfy 1 <= k <= m");
  }

  auto make_record = [&](double theta, double phi) {
    MeasurementRecord record;
    record.direction = direction_vector(theta, phi);
    record.order = order;
    record.value = expectation(
        target, record_constraint_matrix(n, m, record));
    return record;
  };

  auto bound_at = [&](double theta, double phi) -> double {
    std::vector<MeasurementRecord> records = fixed;
    records.push_back(make_record(theta, phi));
    return fidelity_from_data(target, m, records, options.solver).bound;
  };

  // S_u -> S_{-u} flips the sign of odd moments and fixes even ones; either
  // way the constraint set is unchanged, so the upper half-sphere suffices.
  std::vector<GridPoint> grid;
  grid.push_back({0.0, 0.0});  // pole
  for (int it = 0; it < options.grid_theta; ++it) {
    const double theta =
        (it + 0.5) * (0.5 * M_PI) / options.grid_theta;
    for (int ip = 0; ip < options.grid_phi; ++ip) {
      const double phi = ip * 2.0 * M_PI / options.grid_phi;
      grid.push_back({theta, phi});
    }
  }

  const std::vector<GridEval> evals = parallel_map(
      grid.size(),
      [&](std::size_t i) -> GridEval {
        try {
          return {bound_at(grid[i].theta, grid[i].phi), true};
        } catch (const std::exception&) {
          return {-1.0, false};
        }
      },
      options.threads);

  AngleSearchResult result;
  int best = -1;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].ok) {
      ++result.failed_points;
      continue;
    }
    if (best < 0 || evals[i].bound > evals[best].bound) {
      best = static_cast<int>(i);  // first maximizer wins: lex-smallest angles
    }
  }
  if (best < 0) {
    throw std::runtime_error("angle search failed at every grid point");
  }

  // local refinement at the best grid point
  const double step = 0.5 * (0.5 * M_PI) / options.grid_theta;
  auto negated = [&](const GridPoint& p) -> double {
    try {
      return -bound_at(p.theta, p.phi);
    } catch (const std::exception&) {
      return 1.0;  // worse than any bound
    }
  };
  const auto [point, value] = nelder_mead(
      negated, grid[best], step, options.angle_tolerance, 120);

  GridPoint final_point = grid[best];
  double final_bound = evals[best].bound;
  if (-value > final_bound) {
    final_point = point;
    final_bound = -value;
  }

  result.theta = final_point.theta;
  result.phi = final_point.phi;
  result.bound = final_bound;
  result.record = make_record(final_point.theta, final_point.phi);
  return result;
}

SelectionResult select_measurements(const SymmetricState& target, int m,
                                    int max_order, double improvement_tol,
                                    const AngleSearchOptions& options) {
  if (max_order < 1 || max_order > m) {
    throw std::invalid_argument("max order must satisfy 1 <= K <= m");
  }
  SelectionResult result;
  result.final_bound =
      fidelity_from_data(target, m, {}, options.solver).bound;

  int order = 1;
  while (order <= max_order) {
    AngleSearchResult search =
        optimal_single_measurement(target, m, order, result.records, options);
    SelectionStep step;
    step.record = search.record;
    step.bound = search.bound;
    step.accepted = search.bound > result.final_bound + improvement_tol;
    result.steps.push_back(step);
    if (step.accepted) {
      result.records.push_back(search.record);
      result.bound_trace.push_back(search.bound);
      result.final_bound = search.bound;
    } else {
      ++order;  // same-order measurements stopped paying; escalate
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

BlockDecomposition block_decomposition(int parties, CollectiveObservable kind,
                                       const Eigen::Vector3d& u) {
  if (parties < 2) throw std::invalid_argument("need at least 2 parties");
  (void)u;  // per-block spectra are direction-independent

  BlockDecomposition decomposition;
  decomposition.parties = parties;
  decomposition.observable = kind;
  for (int s2 = parties; s2 >= (parties % 2 == 0 ? 0 : 1); s2 -= 2) {
    const double spin = 0.5 * s2;
    SpinBlock block;
    block.spin = spin;
    const int half_defect = (parties - s2) / 2;
    block.multiplicity = binomial(parties, half_defect) -
                         binomial(parties, half_defect - 1);
    switch (kind) {
      case CollectiveObservable::first_moment:
        block.lower = -spin;
        block.upper = spin;
        break;
      case CollectiveObservable::second_moment:
        // spectrum of (S restricted to the block)^2 is {m^2}
        block.lower = s2 % 2 == 0 ? 0.0 : 0.25;
        block.upper = spin * spin;
        break;
      case CollectiveObservable::total_spin_length:
        block.lower = spin * (spin + 1);
        block.upper = block.lower;
        break;
    }
    decomposition.blocks.push_back(block);
  }
  return decomposition;
}

double symmetric_overlap_bound(const BlockDecomposition& decomposition,
                               double measured) {
  const auto& blocks = decomposition.blocks;
  if (blocks.size() < 2) {
    throw std::invalid_argument("decomposition needs at least two blocks");
  }
  const SpinBlock& top = blocks.front();
  if (measured < top.lower - 1e-12 || measured > top.upper + 1e-12) {
    throw std::invalid_argument(
        "measured value outside the physically attainable range");
  }
  double best_other = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < blocks.size(); ++i) {
    best_other = std::max(best_other, blocks[i].upper);
  }
  if (measured <= best_other) return 0.0;
  return std::clamp((measured - best_other) / (top.upper - best_other), 0.0,
                    1.0);
}

double symmetric_overlap_bound_lp(const BlockDecomposition& decomposition,
                                  double measured,
                                  const SolveOptions& options) {
  const auto& blocks = decomposition.blocks;
  if (blocks.size() < 2) {
    throw std::invalid_argument("decomposition needs at least two blocks");
  }
  const SpinBlock& top = blocks.front();
  if (measured < top.lower - 1e-12 || measured > top.upper + 1e-12) {
    throw std::invalid_argument(
        "measured value outside the physically attainable range");
  }

  // two variables per block (weight at the lower and at the upper extreme)
  const int nb = static_cast<int>(blocks.size());
  Eigen::VectorXd costs = Eigen::VectorXd::Zero(2 * nb);
  costs(0) = 1.0;
  costs(1) = 1.0;

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(2 * nb);
  Eigen::VectorXd values(2 * nb);
  for (int i = 0; i < nb; ++i) {
    values(2 * i) = blocks[i].lower;
    values(2 * i + 1) = blocks[i].upper;
  }
  std::vector<LinearEquality> equalities;
  equalities.push_back({ones, 1.0});
  equalities.push_back({values, measured});

  const ConicSolution sol = solve_lp(costs, equalities, {}, options);
  if (sol.status != SolveStatus::optimal) {
    throw std::runtime_error(std::string("symmetric-overlap LP: ") +
                             to_string(sol.status));
  }
  return std::clamp(sol.dual_value, 0.0, 1.0);
}

double pi_rescale(double symmetric_bound, double lambda_bound) {
  if (symmetric_bound < 0 || symmetric_bound > 1 || lambda_bound < 0 ||
      lambda_bound > 1) {
    throw std::invalid_argument("bounds must lie in [0, 1]");
  }
  return lambda_bound * symmetric_bound;
}

}  // namespace symcert
