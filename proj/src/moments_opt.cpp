#include "spectra/moments_opt.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/rates.hpp"

namespace spectra {

namespace {

bool positive_definite(const Eigen::MatrixXd& H, double rel_tol) {
  const double trace = H.trace();
  if (!(trace > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > rel_tol * trace;
}

struct DualState {
  double value = -kInf;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

}  // namespace

std::size_t MomentConstraint::order() const {
  if (c.empty() || c.size() % 2 == 0) {
    std::ostringstream os;
    os << "a moment constraint needs an odd number 2l-1 of moments, got " << c.size();
    throw ParameterError(os.str());
  }
  for (double v : c) {
    if (!std::isfinite(v)) throw ParameterError("moments must be finite");
  }
  return (c.size() + 1) / 2;
}

bool hankel_interior(const MomentConstraint& c, double rel_tol) {
  const std::size_t l = c.order();
  Eigen::MatrixXd H(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) H(i, j) = c.at(i + j);
  return positive_definite(H, rel_tol);
}

bool interval_body_interior(const MomentConstraint& c, double rel_tol) {
  const std::size_t l = c.order();
  Eigen::MatrixXd P(l, l), M(l, l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      P(i, j) = 2.0 * c.at(i + j) + c.at(i + j + 1);
      M(i, j) = 2.0 * c.at(i + j) - c.at(i + j + 1);
    }
  }
  return positive_definite(P, rel_tol) && positive_definite(M, rel_tol);
}

JacobiCoeffs moments_to_jacobi(const MomentConstraint& c) {
  const std::size_t l = c.order();
  if (!hankel_interior(c)) {
    throw BoundaryError("Hankel matrix is not positive definite: moments on or outside the boundary");
  }
  // upper factor R (l x (l+1)) with R^T R = [c_{i+j}] on the first l columns
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(l, l + 1);
  for (std::size_t i = 0; i < l; ++i) {
    double diag = c.at(2 * i);
    for (std::size_t k = 0; k < i; ++k) diag -= R(k, i) * R(k, i);
    if (!(diag > 0.0)) throw BoundaryError("Cholesky breakdown in the Hankel factorization");
    R(i, i) = std::sqrt(diag);
    for (std::size_t j = i + 1; j <= l; ++j) {
      double v = c.at(i + j);
      for (std::size_t k = 0; k < i; ++k) v -= R(k, i) * R(k, j);
      R(i, j) = v / R(i, i);
    }
  }
  JacobiCoeffs J;
  J.b.resize(l);
  J.a.resize(l - 1);
  for (std::size_t j = 0; j < l; ++j) {
    J.b[j] = R(j, j + 1) / R(j, j) - (j > 0 ? R(j - 1, j) / R(j - 1, j - 1) : 0.0);
    if (j + 1 < l) J.a[j] = R(j + 1, j + 1) / R(j, j);
  }
  return J;
}

double constrained_rate_primal(const MomentConstraint& c) { return hermite_rate(moments_to_jacobi(c)).value; }

DualResult constrained_rate_dual(const MomentConstraint& c) { return constrained_rate_dual(c, semicircle_grid(200)); }

DualResult constrained_rate_dual(const MomentConstraint& c, const ChebGrid& grid) {
  const std::size_t l = c.order();
  const std::size_t n = 2 * l;  // v_0..v_{2l-1}
  DualResult result;
  if (!interval_body_interior(c)) result.flags.emplace_back("outside-interval-body");

  Eigen::VectorXd cvec(n);
  for (std::size_t j = 0; j < n; ++j) cvec(j) = c.at(j);

  // powers at the quadrature nodes, plus a feasibility check grid
  const std::size_t q = grid.size();
  Eigen::MatrixXd X(q, n);
  for (std::size_t i = 0; i < q; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j, p *= grid.nodes[i]) X(i, j) = p;
  }
  constexpr std::size_t kCheck = 1001;
  Eigen::MatrixXd Y(kCheck, n);
  for (std::size_t i = 0; i < kCheck; ++i) {
    const double x = -2.0 + 4.0 * static_cast<double>(i) / (kCheck - 1);
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j, p *= x) Y(i, j) = p;
  }
  auto feasible = [&](const Eigen::VectorXd& v) {
    return ((1.0 - (X * v).array()) > 0.0).all() && ((1.0 - (Y * v).array()) > 0.0).all();
  };
  auto evaluate = [&](const Eigen::VectorXd& v, bool derivatives) {
    DualState s;
    const Eigen::ArrayXd p = 1.0 - (X * v).array();
    if (!(p > 0.0).all()) return s;
    double integral = 0.0;
    for (std::size_t i = 0; i < q; ++i) integral += grid.weights[i] * std::log(p(static_cast<long>(i)));
    s.value = v.dot(cvec) + integral;
    if (derivatives) {
      Eigen::ArrayXd w(static_cast<long>(q));
      for (std::size_t i = 0; i < q; ++i) w(static_cast<long>(i)) = grid.weights[i];
      const Eigen::ArrayXd inv = w / p;
      const Eigen::ArrayXd inv2 = w / (p * p);
      s.grad = cvec - X.transpose() * inv.matrix();
      s.hess = -(X.transpose() * inv2.matrix().asDiagonal() * X);
    }
    return s;
  };

  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<long>(n));
  DualState state = evaluate(v, true);
  for (std::size_t it = 0; it < 200; ++it) {
    result.iterations = it;
    const double gnorm = state.grad.norm();
    if (gnorm < 1e-8) break;
    // ascent direction from the negated (positive definite) Hessian
    const Eigen::MatrixXd A = -state.hess;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    Eigen::VectorXd step = ldlt.solve(state.grad);
    if (ldlt.info() != Eigen::Success || !step.allFinite() || step.dot(state.grad) <= 0.0) step = state.grad;
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-14) {
      const Eigen::VectorXd trial = v + t * step;
      if (feasible(trial)) {
        const DualState next = evaluate(trial, false);
        if (next.value >= state.value + 1e-4 * t * step.dot(state.grad) ||
            (gnorm < 1e-6 && next.value >= state.value - 1e-15 * (1.0 + std::abs(state.value)))) {
          v = trial;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) {
      result.flags.emplace_back("line-search-stalled");
      break;
    }
    state = evaluate(v, true);
    result.iterations = it + 1;
  }
  result.value = state.value;
  result.gradient_norm = state.grad.norm();
  result.certified = result.gradient_norm < 1e-8;
  if (!result.certified) result.flags.emplace_back("not-certified");
  result.v.assign(v.data(), v.data() + v.size());
  return result;
}

}  // namespace spectra
