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

#include "symcert/conic.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace symcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + " is not square");
  }
  if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(std::string(what) + " is not Hermitian");
  }
}

// A point (or direction) in the cone space S^n x R^p.
struct Element {
  Eigen::MatrixXcd P;
  Eigen::VectorXd q;

  static Element zero(int n, int p) {
    return {Eigen::MatrixXcd::Zero(n, n), Eigen::VectorXd::Zero(p)};
  }
  static Element identity(int n, int p) {
    return {Eigen::MatrixXcd::Identity(n, n), Eigen::VectorXd::Ones(p)};
  }

  Element& operator+=(const Element& o) {
    P += o.P;
    q += o.q;
    return *this;
  }
  Element& axpy(double a, const Element& o) {
    P += a * o.P;
    q += a * o.q;
    return *this;
  }
  Element& operator*=(double a) {
    P *= a;
    q *= a;
    return *this;
  }
  void hermitize() {
    if (P.size() > 0) P = 0.5 * (P + P.adjoint()).eval();
  }
  double norm() const { return std::sqrt(P.squaredNorm() + q.squaredNorm()); }
  bool finite() const { return P.allFinite() && q.allFinite(); }
};

double inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  // Re Tr[a^dag b]; real for Hermitian arguments
  return a.conjugate().cwiseProduct(b).sum().real();
}

double inner(const Element& a, const Element& b) {
  double v = a.q.dot(b.q);
  if (a.P.size() > 0) v += inner(a.P, b.P);
  return v;
}

// Nesterov-Todd scaling state for the product cone, Todd-Toh-Tutuncu
// construction: R = L_x V diag(sigma)^{-1/2} makes the scaled point
// lambda = R^{-1} X R^{-dag} = R^dag S R = diag(sigma).
struct Scaling {
  // PSD block
  Eigen::MatrixXcd R, Rinv, G;  // G = R R^dag (so P(v) = G v G)
  Eigen::VectorXd sigma;
  // nonnegative block
  Eigen::VectorXd w, lam_q;  // w = sqrt(x/s), lam_q = sqrt(x*s)

  Element scale_s(const Element& v) const {  // W(v)
    Element out;
    if (v.P.size() > 0) out.P = R.adjoint() * v.P * R;
    out.q = w.cwiseProduct(v.q);
    return out;
  }
  Element scale_x(const Element& v) const {  // W^{-dag}(v)
    Element out;
    if (v.P.size() > 0) out.P = Rinv * v.P * Rinv.adjoint();
    out.q = v.q.cwiseQuotient(w);
    return out;
  }
  Element unscale(const Element& v) const {  // W^dag(v)
    Element out;
    if (v.P.size() > 0) out.P = R * v.P * R.adjoint();
    out.q = w.cwiseProduct(v.q);
    return out;
  }
  Element quad(const Element& v) const {  // P(v) = W^dag W (v)
    Element out;
    if (v.P.size() > 0) out.P = G * v.P * G;
    out.q = w.array().square().matrix().cwiseProduct(v.q);
    return out;
  }
  // g solving lambda o g = d in the scaled space
  Element lyapunov(const Element& d) const {
    Element g;
    if (d.P.size() > 0) {
      const Eigen::Index n = d.P.rows();
      g.P.resize(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          g.P(i, j) = 2.0 * d.P(i, j) / (sigma(i) + sigma(j));
        }
      }
    }
    g.q = d.q.cwiseQuotient(lam_q);
    return g;
  }
};

// largest step alpha with lambda + alpha * D >= 0 in the scaled space
double psd_step_limit(const Eigen::VectorXd& sigma, const Eigen::MatrixXcd& d) {
  const Eigen::Index n = sigma.size();
  Eigen::MatrixXcd scaled(n, n);
  const Eigen::VectorXd isq = sigma.cwiseSqrt().cwiseInverse();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      scaled(i, j) = d(i, j) * (isq(i) * isq(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(scaled,
                                                     Eigen::EigenvaluesOnly);
  const double emin = es.eigenvalues().minCoeff();
  return emin >= -1e-14 ? kInf : -1.0 / emin;
}

double vec_step_limit(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  double limit = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0) limit = std::min(limit, -x(i) / dx(i));
  }
  return limit;
}

struct ScaledData {
  int n = 0, p = 0, m = 0;
  Element c;                 // scaled objective
  std::vector<Element> rows; // scaled constraint rows
  Eigen::VectorXd b;         // scaled rhs
  Eigen::VectorXd row_scale;
  double obj_scale = 1;
};

Eigen::VectorXd apply_rows(const ScaledData& d, const Element& v) {
  Eigen::VectorXd out(d.m);
  for (int i = 0; i < d.m; ++i) out(i) = inner(d.rows[i], v);
  return out;
}

Element apply_rows_adjoint(const ScaledData& d, const Eigen::VectorXd& y) {
  Element out = Element::zero(d.n, d.p);
  for (int i = 0; i < d.m; ++i) out.axpy(y(i), d.rows[i]);
  return out;
}

// Cholesky factor with an eigenvalue-based fallback for iterates that have
// drifted to the cone boundary.
Eigen::MatrixXcd robust_cholesky(const Eigen::MatrixXcd& x) {
  Eigen::LLT<Eigen::MatrixXcd> llt(x);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x);
  const double floor = std::max(1e-14, 1e-14 * es.eigenvalues().maxCoeff());
  const Eigen::VectorXd fixed = es.eigenvalues().cwiseMax(floor);
  const Eigen::MatrixXcd repaired = es.eigenvectors() * fixed.asDiagonal() *
                                    es.eigenvectors().adjoint();
  return Eigen::LLT<Eigen::MatrixXcd>(repaired).matrixL();
}

struct SchurSolver {
  Eigen::MatrixXd M;
  Eigen::LDLT<Eigen::MatrixXd> factor;

  void build(const ScaledData& d, const Scaling& sc,
             std::vector<Element>& quad_rows) {
    quad_rows.resize(d.m);
    M.resize(d.m, d.m);
    for (int j = 0; j < d.m; ++j) quad_rows[j] = sc.quad(d.rows[j]);
    for (int j = 0; j < d.m; ++j) {
      for (int i = j; i < d.m; ++i) {
        M(i, j) = inner(d.rows[i], quad_rows[j]);
        M(j, i) = M(i, j);
      }
    }
    // static regularization keeps LDLT stable when rows are dependent
    // (e.g. an explicit trace row alongside a complete marginal set)
    const double reg = 1e-13 * std::max(1.0, M.diagonal().maxCoeff());
    M.diagonal().array() += reg;
    factor.compute(M);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd sol = factor.solve(rhs);
    sol += factor.solve(rhs - M * sol);  // one refinement step
    return sol;
  }
};

struct Direction {
  Element dx, ds;
  Eigen::VectorXd dy;
  double dtau = 0, dkappa = 0;
};

struct NewtonContext {
  const ScaledData* data;
  const Scaling* scaling;
  const SchurSolver* schur;
  Element quad_c;       // P(c)
  Eigen::VectorXd apc;  // A P(c)
  Eigen::VectorXd u2;   // M^{-1} (b + A P(c))
};

// One Newton solve of the HSD KKT system with residual weight eta and
// complementarity targets (d_cone, d_tau).
Direction newton_step(const NewtonContext& ctx, double tau, double kappa,
                      const Eigen::VectorXd& rp, const Element& rd, double rg,
                      double eta, const Element& d_cone, double d_tau) {
  const ScaledData& d = *ctx.data;
  const Scaling& sc = *ctx.scaling;

  const Element g = sc.lyapunov(d_cone);
  const Element wg = sc.unscale(g);        // W^dag g
  const Element prd = sc.quad(rd);         // P(r_d)

  Eigen::VectorXd h1 = -eta * rp - apply_rows(d, wg) + eta * apply_rows(d, prd);
  const Eigen::VectorXd u1 = ctx.schur->solve(h1);

  const double denom = -inner(d.c, ctx.quad_c) + ctx.apc.dot(ctx.u2) -
                       d.b.dot(ctx.u2) - kappa / tau;
  const double numer = -eta * rg - inner(d.c, wg) + eta * inner(d.c, prd) -
                       ctx.apc.dot(u1) + d.b.dot(u1) - d_tau / tau;

  Direction dir;
  dir.dtau = numer / denom;
  dir.dy = u1 + dir.dtau * ctx.u2;

  dir.ds = Element::zero(d.n, d.p);
  dir.ds.axpy(dir.dtau, d.c);
  {
    Element aty = apply_rows_adjoint(d, dir.dy);
    dir.ds.axpy(-1.0, aty);
  }
  dir.ds.axpy(eta, rd);
  dir.ds.hermitize();

  dir.dx = wg;
  dir.dx.axpy(-1.0, sc.quad(dir.ds));
  dir.dx.hermitize();

  dir.dkappa = (d_tau - kappa * dir.dtau) / tau;
  return dir;
}

struct StepLimits {
  double alpha = kInf;
  Element dx_scaled, ds_scaled;  // kept for the Mehrotra correction
};

StepLimits step_limit(const Scaling& sc, const Element& x, const Element& s,
                      double tau, double kappa, const Direction& dir) {
  StepLimits out;
  if (x.P.size() > 0) {
    out.dx_scaled.P = sc.Rinv * dir.dx.P * sc.Rinv.adjoint();
    out.ds_scaled.P = sc.R.adjoint() * dir.ds.P * sc.R;
    out.alpha = std::min(out.alpha, psd_step_limit(sc.sigma, out.dx_scaled.P));
    out.alpha = std::min(out.alpha, psd_step_limit(sc.sigma, out.ds_scaled.P));
  }
  out.dx_scaled.q = dir.dx.q;
  out.ds_scaled.q = dir.ds.q;
  out.alpha = std::min(out.alpha, vec_step_limit(x.q, dir.dx.q));
  out.alpha = std::min(out.alpha, vec_step_limit(s.q, dir.ds.q));
  if (dir.dtau < 0) out.alpha = std::min(out.alpha, -tau / dir.dtau);
  if (dir.dkappa < 0) out.alpha = std::min(out.alpha, -kappa / dir.dkappa);
  return out;
}

struct RepairBounds {
  double trace_bound = -1;
  Eigen::VectorXd lin_bounds;  // negative = unknown
};

// b'y plus the worst-case contribution of any dual-slack negativity, which
// turns an approximately feasible dual point into a rigorous lower bound on
// the primal optimum (the PSD defect is paid at the known trace, each scalar
// defect at its known variable bound).
double certify_dual(const StandardForm& form, const RepairBounds& bounds,
                    const Eigen::VectorXd& y, bool* exact) {
  double value = 0;
  for (size_t i = 0; i < form.rows.size(); ++i) value += form.rows[i].rhs * y(i);

  *exact = true;
  if (form.psd_dim > 0) {
    Eigen::MatrixXcd z = form.cost_psd;
    for (size_t i = 0; i < form.rows.size(); ++i) z -= y(i) * form.rows[i].psd;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z, Eigen::EigenvaluesOnly);
    const double defect = std::min(0.0, es.eigenvalues().minCoeff());
    if (defect < 0) {
      if (bounds.trace_bound > 0) {
        value += defect * bounds.trace_bound;
      } else if (defect < -1e-12) {
        *exact = false;
      }
    }
  }
  if (form.lin_dim > 0) {
    Eigen::VectorXd z = form.cost_lin;
    for (size_t i = 0; i < form.rows.size(); ++i) {
      if (form.rows[i].lin.size() > 0) z -= y(i) * form.rows[i].lin;
    }
    for (int j = 0; j < form.lin_dim; ++j) {
      const double defect = std::min(0.0, z(j));
      if (defect < 0) {
        if (bounds.lin_bounds.size() > j && bounds.lin_bounds(j) >= 0) {
          value += defect * bounds.lin_bounds(j);
        } else if (defect < -1e-12) {
          *exact = false;
        }
      }
    }
  }
  return value;
}

RepairBounds detect_bounds(const StandardForm& form) {
  RepairBounds bounds;
  bounds.trace_bound = form.psd_trace_bound;
  bounds.lin_bounds = form.lin_upper_bounds;
  if (bounds.lin_bounds.size() == 0 && form.lin_dim > 0) {
    bounds.lin_bounds = Eigen::VectorXd::Constant(form.lin_dim, -1.0);
  }

  // look for normalization rows: alpha*I on the PSD block, alpha*1 on the
  // scalar block
  for (const auto& row : form.rows) {
    const bool lin_zero = row.lin.size() == 0 || row.lin.isZero(0);
    const bool psd_zero = row.psd.size() == 0 || row.psd.isZero(0);
    if (form.psd_dim > 0 && lin_zero && bounds.trace_bound <= 0) {
      const std::complex<double> alpha = row.psd(0, 0);
      if (std::abs(alpha.imag()) < 1e-14 && alpha.real() > 0 &&
          (row.psd - alpha.real() * Eigen::MatrixXcd::Identity(
                                        form.psd_dim, form.psd_dim))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14 &&
          row.rhs > 0) {
        bounds.trace_bound = row.rhs / alpha.real();
      }
    }
    if (form.lin_dim > 0 && psd_zero) {
      const double alpha = row.lin.size() > 0 ? row.lin(0) : 0.0;
      if (alpha > 0 &&
          (row.lin - alpha * Eigen::VectorXd::Ones(form.lin_dim)).cwiseAbs().maxCoeff() <
              1e-14 &&
          row.rhs > 0) {
        const double total = row.rhs / alpha;
        for (int j = 0; j < form.lin_dim; ++j) {
          if (bounds.lin_bounds(j) < 0) bounds.lin_bounds(j) = total;
        }
      }
    }
  }
  return bounds;
}

}  // namespace

void ConicProblem::validate() const {
  require_hermitian(objective, "objective");
  if (dimension() < 1) throw std::invalid_argument("dimension must be >= 1");
  for (const auto& eq : equalities) {
    require_hermitian(eq.matrix, "equality constraint");
    if (eq.matrix.rows() != dimension()) {
      throw std::invalid_argument("equality constraint dimension mismatch");
    }
  }
  for (const auto& iv : intervals) {
    require_hermitian(iv.matrix, "interval constraint");
    if (iv.matrix.rows() != dimension()) {
      throw std::invalid_argument("interval constraint dimension mismatch");
    }
    if (!(iv.lower <= iv.upper)) {
      throw std::invalid_argument("interval with lower > upper");
    }
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal_infeasible";
    case SolveStatus::dual_infeasible: return "dual_infeasible";
    case SolveStatus::max_iterations: return "max_iterations";
  }
  return "unknown";
}

StandardForm to_standard_form(const ConicProblem& problem) {
  problem.validate();
  StandardForm form;
  form.psd_dim = static_cast<int>(problem.dimension());
  form.cost_psd = 0.5 * (problem.objective + problem.objective.adjoint());

  // degenerate intervals become equalities so the slack block keeps a
  // strictly feasible interior
  std::vector<const IntervalConstraint*> wide;
  std::vector<const IntervalConstraint*> tight;
  for (const auto& iv : problem.intervals) {
    (iv.upper - iv.lower > 1e-14 ? wide : tight).push_back(&iv);
  }

  form.lin_dim = 2 * static_cast<int>(wide.size());
  form.cost_lin = Eigen::VectorXd::Zero(form.lin_dim);
  form.lin_upper_bounds = Eigen::VectorXd::Zero(form.lin_dim);

  for (const auto& eq : problem.equalities) {
    form.rows.push_back({eq.matrix, Eigen::VectorXd::Zero(form.lin_dim), eq.value});
  }
  for (const auto* iv : tight) {
    form.rows.push_back(
        {iv->matrix, Eigen::VectorXd::Zero(form.lin_dim), 0.5 * (iv->lower + iv->upper)});
  }
  for (size_t j = 0; j < wide.size(); ++j) {
    const auto& iv = *wide[j];
    const double width = iv.upper - iv.lower;
    Eigen::VectorXd lo_slack = Eigen::VectorXd::Zero(form.lin_dim);
    lo_slack(2 * j) = -1.0;  // <B,X> - u = lo
    form.rows.push_back({iv.matrix, lo_slack, iv.lower});
    Eigen::VectorXd hi_slack = Eigen::VectorXd::Zero(form.lin_dim);
    hi_slack(2 * j + 1) = 1.0;  // <B,X> + v = hi
    form.rows.push_back({iv.matrix, hi_slack, iv.upper});
    form.lin_upper_bounds(2 * j) = width;
    form.lin_upper_bounds(2 * j + 1) = width;
  }
  return form;
}

ConicSolution solve_standard(const StandardForm& form,
                             const SolveOptions& options) {
  const int n = form.psd_dim, p = form.lin_dim;
  const int m = static_cast<int>(form.rows.size());
  if (n < 0 || p < 0 || n + p < 1) {
    throw std::invalid_argument("empty cone");
  }
  if (m < 1) throw std::invalid_argument("at least one constraint required");

  // ---- prescale data (rows to unit norm, objective to unit norm) ----
  ScaledData d;
  d.n = n;
  d.p = p;
  d.m = m;
  d.c.P = form.psd_dim > 0 ? form.cost_psd
                           : Eigen::MatrixXcd::Zero(0, 0);
  d.c.q = form.cost_lin.size() > 0 ? form.cost_lin : Eigen::VectorXd::Zero(p);
  const double norm_c = d.c.norm();
  d.obj_scale = norm_c > 1e-10 ? norm_c : 1.0;
  d.c *= 1.0 / d.obj_scale;

  d.rows.resize(m);
  d.b.resize(m);
  d.row_scale.resize(m);
  double norm_b_orig = 0;
  for (int i = 0; i < m; ++i) {
    Element row;
    row.P = n > 0 ? Eigen::MatrixXcd(0.5 * (form.rows[i].psd +
                                            form.rows[i].psd.adjoint()))
                  : Eigen::MatrixXcd::Zero(0, 0);
    row.q = form.rows[i].lin.size() > 0 ? form.rows[i].lin
                                        : Eigen::VectorXd::Zero(p);
    const double f = std::max({row.norm(), std::abs(form.rows[i].rhs), 1e-12});
    d.row_scale(i) = f;
    row *= 1.0 / f;
    d.rows[i] = std::move(row);
    d.b(i) = form.rows[i].rhs / f;
    norm_b_orig = std::max(norm_b_orig, std::abs(form.rows[i].rhs));
  }
  const double norm_c_orig = std::max(1.0, norm_c);
  const double norm_b_ref = 1.0 + norm_b_orig;

  // ---- HSD state ----
  Element x = Element::identity(n, p);
  Element s = Element::identity(n, p);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  double tau = 1.0, kappa = 1.0;
  const double nu = n + p;
  const double mu0 = (inner(x, s) + tau * kappa) / (nu + 1);

  ConicSolution sol;
  sol.status = SolveStatus::max_iterations;

  const RepairBounds repair = detect_bounds(form);

  // internal margins keep the reported (certified) gap within tolerance
  const double gap_goal = 0.5 * options.gap_tolerance;
  const double feas_goal = 0.5 * options.feasibility_tolerance;

  auto finalize_point = [&](SolveStatus status, int iterations,
                            std::string message) {
    sol.status = status;
    sol.iterations = iterations;
    sol.message = std::move(message);
    if (n > 0) sol.primal = x.P / tau;
    sol.primal_linear = x.q / tau;
    sol.dual.resize(m);
    for (int i = 0; i < m; ++i) {
      sol.dual(i) = d.obj_scale * y(i) / (d.row_scale(i) * tau);
    }
    sol.primal_value = d.obj_scale * inner(d.c, x) / tau;
    bool exact = true;
    sol.dual_value = certify_dual(form, repair, sol.dual, &exact);
    if (!exact) {
      sol.message += sol.message.empty() ? "" : "; ";
      sol.message +=
          "dual certificate not fully repaired (no trace/variable bound)";
    }
    sol.gap = std::abs(sol.primal_value - sol.dual_value);
    const Eigen::VectorXd rp_final = apply_rows(d, x) - d.b * tau;
    double pres = 0;
    for (int i = 0; i < m; ++i) {
      pres = std::max(pres, d.row_scale(i) * std::abs(rp_final(i)) / tau);
    }
    sol.primal_residual = pres / norm_b_ref;
    Element rd_final = Element::zero(n, p);
    rd_final.axpy(tau, d.c);
    rd_final.axpy(-1.0, apply_rows_adjoint(d, y));
    rd_final.axpy(-1.0, s);
    sol.dual_residual = d.obj_scale * rd_final.norm() / tau / norm_c_orig;
  };

  int stall_count = 0;
  for (int it = 0; it < options.max_iterations; ++it) {
    // residuals of the homogeneous model
    const Eigen::VectorXd rp = apply_rows(d, x) - d.b * tau;
    Element rd = Element::zero(n, p);
    rd.axpy(tau, d.c);
    rd.axpy(-1.0, apply_rows_adjoint(d, y));
    rd.axpy(-1.0, s);
    const double rg = inner(d.c, x) - d.b.dot(y) + kappa;
    const double mu = (inner(x, s) + tau * kappa) / (nu + 1);

    if (!x.finite() || !s.finite() || !std::isfinite(tau) ||
        !std::isfinite(kappa)) {
      finalize_point(SolveStatus::max_iterations, it, "numerical breakdown");
      return sol;
    }

    // unscaled optimality metrics
    const double pv = d.obj_scale * inner(d.c, x) / tau;
    const double dv = d.obj_scale * d.b.dot(y) / tau;
    double pres = 0;
    for (int i = 0; i < m; ++i) {
      pres = std::max(pres, d.row_scale(i) * std::abs(rp(i)) / tau);
    }
    pres /= norm_b_ref;
    const double dres = d.obj_scale * rd.norm() / tau / norm_c_orig;
    const double gap = std::abs(pv - dv);

    if (pres <= feas_goal && dres <= feas_goal && gap <= gap_goal) {
      finalize_point(SolveStatus::optimal, it, "");
      return sol;
    }

    // infeasibility certificates once the homogeneous iterate collapses
    if (tau <= 1e-6 * std::max(kappa, 1e-10) && mu <= 1e-8 * mu0) {
      const double by = d.b.dot(y);
      const double cx = inner(d.c, x);
      if (by > 1e-12) {
        Element cert = apply_rows_adjoint(d, y);
        cert += s;
        if (cert.norm() / by <= 1e-6) {
          sol.status = SolveStatus::primal_infeasible;
          sol.iterations = it;
          sol.dual.resize(m);
          double by_orig = 0;
          for (int i = 0; i < m; ++i) {
            sol.dual(i) = y(i) / d.row_scale(i);
            by_orig += form.rows[i].rhs * sol.dual(i);
          }
          sol.dual /= by_orig;  // normalize: b'y = 1, A'y + s = 0
          sol.primal_value = kInf;
          sol.dual_value = kInf;
          sol.gap = 0;
          sol.message =
              "primal infeasible: constraints admit no PSD solution "
              "(Farkas certificate in dual)";
          return sol;
        }
      }
      if (cx < -1e-12) {
        const Eigen::VectorXd ax = apply_rows(d, x);
        if (ax.norm() / (-cx) <= 1e-6) {
          sol.status = SolveStatus::dual_infeasible;
          sol.iterations = it;
          if (n > 0) sol.primal = x.P / (-cx);
          sol.primal_linear = x.q / (-cx);
          sol.primal_value = -kInf;
          sol.dual_value = -kInf;
          sol.gap = 0;
          sol.message = "dual infeasible: objective unbounded below";
          return sol;
        }
      }
    }

    // Nesterov-Todd scaling
    Scaling sc;
    if (n > 0) {
      const Eigen::MatrixXcd lx = robust_cholesky(x.P);
      const Eigen::MatrixXcd ls = robust_cholesky(s.P);
      const Eigen::MatrixXcd bmat = ls.adjoint() * lx;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(bmat.adjoint() * bmat);
      const double floor = std::max(1e-300, 1e-16 * es.eigenvalues().maxCoeff());
      sc.sigma = es.eigenvalues().cwiseMax(floor).cwiseSqrt();
      const Eigen::VectorXd inv_sqrt_sigma = sc.sigma.cwiseSqrt().cwiseInverse();
      sc.R = lx * es.eigenvectors() * inv_sqrt_sigma.asDiagonal();
      // R^{-1} = diag(sqrt(sigma)) V^dag L_x^{-1}
      sc.Rinv = sc.sigma.cwiseSqrt().asDiagonal() *
                es.eigenvectors().adjoint() *
                lx.triangularView<Eigen::Lower>().solve(
                    Eigen::MatrixXcd::Identity(n, n));
      sc.G = sc.R * sc.R.adjoint();
    }
    sc.lam_q = x.q.cwiseProduct(s.q).cwiseSqrt();
    sc.w = x.q.cwiseQuotient(s.q).cwiseSqrt();

    // Schur complement (shared by predictor and corrector)
    SchurSolver schur;
    std::vector<Element> quad_rows;
    schur.build(d, sc, quad_rows);

    NewtonContext ctx;
    ctx.data = &d;
    ctx.scaling = &sc;
    ctx.schur = &schur;
    ctx.quad_c = sc.quad(d.c);
    ctx.apc = apply_rows(d, ctx.quad_c);
    ctx.u2 = schur.solve(d.b + ctx.apc);

    // predictor (affine direction)
    Element d_aff = Element::zero(n, p);
    if (n > 0) {
      d_aff.P = (-sc.sigma.array().square()).matrix().asDiagonal();
    }
    d_aff.q = -sc.lam_q.array().square().matrix();
    const Direction aff =
        newton_step(ctx, tau, kappa, rp, rd, rg, 1.0, d_aff, -tau * kappa);
    const StepLimits aff_limits = step_limit(sc, x, s, tau, kappa, aff);
    const double alpha_aff = std::min(aff_limits.alpha, 1.0);

    // Mehrotra centering weight
    Element x_try = x;
    x_try.axpy(alpha_aff, aff.dx);
    Element s_try = s;
    s_try.axpy(alpha_aff, aff.ds);
    const double mu_aff =
        (inner(x_try, s_try) + (tau + alpha_aff * aff.dtau) *
                                   (kappa + alpha_aff * aff.dkappa)) /
        (nu + 1);
    const double sigma_c =
        std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 1e-8, 1.0 - 1e-8);

    // corrector (combined direction)
    Element d_comb = Element::zero(n, p);
    if (n > 0) {
      const Eigen::MatrixXcd cross =
          aff_limits.dx_scaled.P * aff_limits.ds_scaled.P;
      d_comb.P = (sigma_c * mu) * Eigen::MatrixXcd::Identity(n, n);
      d_comb.P -= (sc.sigma.array().square()).matrix().asDiagonal();
      d_comb.P -= 0.5 * (cross + cross.adjoint());
    }
    d_comb.q = Eigen::VectorXd::Constant(p, sigma_c * mu) -
               x.q.cwiseProduct(s.q) - aff.dx.q.cwiseProduct(aff.ds.q);
    const double d_tau_comb =
        sigma_c * mu - tau * kappa - aff.dtau * aff.dkappa;

    const double eta = 1.0 - sigma_c;
    const Direction comb =
        newton_step(ctx, tau, kappa, rp, rd, rg, eta, d_comb, d_tau_comb);
    const StepLimits comb_limits = step_limit(sc, x, s, tau, kappa, comb);
    const double alpha = std::min(0.99 * comb_limits.alpha, 1.0);

    if (alpha < 1e-8) {
      if (++stall_count >= 2) {
        finalize_point(SolveStatus::max_iterations, it,
                       "step length collapsed (stalled)");
        return sol;
      }
    } else {
      stall_count = 0;
    }

    x.axpy(alpha, comb.dx);
    x.hermitize();
    s.axpy(alpha, comb.ds);
    s.hermitize();
    y += alpha * comb.dy;
    tau += alpha * comb.dtau;
    kappa += alpha * comb.dkappa;
  }

  finalize_point(SolveStatus::max_iterations, options.max_iterations,
                 "iteration limit reached");
  return sol;
}

ConicSolution solve(const ConicProblem& problem, const SolveOptions& options) {
  return solve_standard(to_standard_form(problem), options);
}

ConicSolution solve_lp(const Eigen::VectorXd& costs,
                       const std::vector<LinearEquality>& equalities,
                       const std::vector<LinearInterval>& bounds,
                       const SolveOptions& options) {
  const int k = static_cast<int>(costs.size());
  if (k < 1) throw std::invalid_argument("LP needs at least one variable");

  std::vector<const LinearInterval*> wide, tight;
  for (const auto& bd : bounds) {
    if (bd.coefficients.size() != k) {
      throw std::invalid_argument("LP bound dimension mismatch");
    }
    if (!(bd.lower <= bd.upper)) {
      throw std::invalid_argument("LP bound with lower > upper");
    }
    (bd.upper - bd.lower > 1e-14 ? wide : tight).push_back(&bd);
  }

  StandardForm form;
  form.psd_dim = 0;
  form.lin_dim = k + 2 * static_cast<int>(wide.size());
  form.cost_lin = Eigen::VectorXd::Zero(form.lin_dim);
  form.cost_lin.head(k) = costs;

  auto lifted = [&](const Eigen::VectorXd& a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(form.lin_dim);
    v.head(k) = a;
    return v;
  };
  for (const auto& eq : equalities) {
    if (eq.coefficients.size() != k) {
      throw std::invalid_argument("LP equality dimension mismatch");
    }
    form.rows.push_back({Eigen::MatrixXcd(), lifted(eq.coefficients), eq.value});
  }
  for (const auto* bd : tight) {
    form.rows.push_back({Eigen::MatrixXcd(), lifted(bd->coefficients),
                         0.5 * (bd->lower + bd->upper)});
  }
  form.lin_upper_bounds = Eigen::VectorXd::Constant(form.lin_dim, -1.0);
  for (size_t j = 0; j < wide.size(); ++j) {
    const auto* bd = wide[j];
    Eigen::VectorXd lo = lifted(bd->coefficients);
    lo(k + 2 * j) = -1.0;
    form.rows.push_back({Eigen::MatrixXcd(), lo, bd->lower});
    Eigen::VectorXd hi = lifted(bd->coefficients);
    hi(k + 2 * j + 1) = 1.0;
    form.rows.push_back({Eigen::MatrixXcd(), hi, bd->upper});
    form.lin_upper_bounds(k + 2 * j) = bd->upper - bd->lower;
    form.lin_upper_bounds(k + 2 * j + 1) = bd->upper - bd->lower;
  }
  return solve_standard(form, options);
}

// ---------------------------------------------------------------------------
// SDPA sparse interchange. See docs/formats.md: the problem is written in
// SDPA's equality-constrained block (Y), with F_0 = -C so that the optimal
// SDPA objective equals minus our optimum. Complex Hermitian data is written
// as the real embedding [[Re, -Im], [Im, Re]] with the objective halved and
// the right-hand sides doubled, which leaves the optimal value unchanged.

namespace {

bool problem_is_real(const ConicProblem& problem) {
  auto real = [](const Eigen::MatrixXcd& m) {
    return m.imag().cwiseAbs().maxCoeff() < 1e-15;
  };
  if (!real(problem.objective)) return false;
  for (const auto& eq : problem.equalities) {
    if (!real(eq.matrix)) return false;
  }
  for (const auto& iv : problem.intervals) {
    if (!real(iv.matrix)) return false;
  }
  return true;
}

Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return out;
}

void write_block_entries(std::ostream& out, int mat_index, int block,
                         const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > 0.0) {
        out << mat_index << ' ' << block << ' ' << i + 1 << ' ' << j + 1 << ' ';
        out.precision(17);
        out << m(i, j) << '\n';
      }
    }
  }
}

}  // namespace

void write_sdpa(const ConicProblem& problem, std::ostream& out) {
  const StandardForm form = to_standard_form(problem);
  const bool embed = !problem_is_real(problem);
  const double rhs_factor = embed ? 2.0 : 1.0;
  const double obj_factor = embed ? 0.5 : 1.0;

  auto psd_block = [&](const Eigen::MatrixXcd& h) -> Eigen::MatrixXd {
    return embed ? real_embedding(h) : Eigen::MatrixXd(h.real());
  };

  const int m = static_cast<int>(form.rows.size());
  const bool has_lin = form.lin_dim > 0;
  out << m << '\n';
  out << (has_lin ? 2 : 1) << '\n';
  out << (embed ? 2 * form.psd_dim : form.psd_dim);
  if (has_lin) out << ' ' << -form.lin_dim;
  out << '\n';
  out.precision(17);
  for (int i = 0; i < m; ++i) {
    out << form.rows[i].rhs * rhs_factor << (i + 1 < m ? ' ' : '\n');
  }

  // F_0 = -C (our minimum equals minus the SDPA objective)
  write_block_entries(out, 0, 1, -obj_factor * psd_block(form.cost_psd));
  for (int i = 0; i < m; ++i) {
    write_block_entries(out, i + 1, 1, psd_block(form.rows[i].psd));
    if (has_lin) {
      write_block_entries(out, i + 1, 2,
                          Eigen::MatrixXd(form.rows[i].lin.asDiagonal()));
    }
  }
}

std::string write_sdpa_string(const ConicProblem& problem) {
  std::ostringstream out;
  write_sdpa(problem, out);
  return out.str();
}

StandardForm read_sdpa(std::istream& in) {
  auto next_token = [&in]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '*' || tok[0] == '"') {  // comment: discard rest of line
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw std::runtime_error("truncated SDPA input");
  };
  auto next_int = [&]() { return std::stoll(next_token()); };
  auto next_double = [&]() { return std::stod(next_token()); };

  const int m = static_cast<int>(next_int());
  const int nblocks = static_cast<int>(next_int());
  if (m < 1 || nblocks < 1 || nblocks > 2) {
    throw std::runtime_error("unsupported SDPA structure");
  }
  std::vector<long long> sizes(nblocks);
  int psd_block = -1, lin_block = -1;
  StandardForm form;
  for (int bidx = 0; bidx < nblocks; ++bidx) {
    std::string tok = next_token();
    // tolerate forms like "{3, -2}"
    std::string cleaned;
    for (char c : tok) {
      if (std::isdigit(c) || c == '-') cleaned += c;
    }
    sizes[bidx] = std::stoll(cleaned);
    if (sizes[bidx] > 0) {
      if (psd_block >= 0) throw std::runtime_error("multiple PSD blocks unsupported");
      psd_block = bidx;
      form.psd_dim = static_cast<int>(sizes[bidx]);
    } else {
      if (lin_block >= 0) throw std::runtime_error("multiple diagonal blocks unsupported");
      lin_block = bidx;
      form.lin_dim = static_cast<int>(-sizes[bidx]);
    }
  }

  form.rows.resize(m);
  for (int i = 0; i < m; ++i) {
    form.rows[i].rhs = next_double();
    if (form.psd_dim > 0) {
      form.rows[i].psd = Eigen::MatrixXcd::Zero(form.psd_dim, form.psd_dim);
    }
    form.rows[i].lin = Eigen::VectorXd::Zero(form.lin_dim);
  }
  form.cost_psd = Eigen::MatrixXcd::Zero(form.psd_dim, form.psd_dim);
  form.cost_lin = Eigen::VectorXd::Zero(form.lin_dim);

  std::string tok;
  while (in >> tok) {
    if (tok[0] == '*' || tok[0] == '"') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    const int mat = std::stoi(tok);
    const int blk = static_cast<int>(next_int()) - 1;
    const int i = static_cast<int>(next_int()) - 1;
    const int j = static_cast<int>(next_int()) - 1;
    const double v = next_double();
    if (mat < 0 || mat > m || blk < 0 || blk >= nblocks) {
      throw std::runtime_error("entry outside declared SDPA structure");
    }
    if (blk == psd_block) {
      Eigen::MatrixXcd& target = mat == 0 ? form.cost_psd : form.rows[mat - 1].psd;
      // F_0 carries -C
      const double value = mat == 0 ? -v : v;
      target(i, j) = value;
      target(j, i) = value;
    } else {
      if (i != j) throw std::runtime_error("off-diagonal entry in diagonal block");
      if (mat == 0) {
        form.cost_lin(i) = -v;
      } else {
        form.rows[mat - 1].lin(i) = v;
      }
    }
  }
  return form;
}

}  // namespace symcert
