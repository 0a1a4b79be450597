#pragma once

#include <string>
#include <utility>
#include <vector>

#include "distil/rational.hpp"
#include "distil/tensor.hpp"

// The projector algebra on a d (x) d register pair and the state families
// built from it. Everything is kept unnormalized; callers that need a
// density matrix divide by the trace themselves.

namespace distil {

// |Phi> = (1/sqrt d) sum_i |i>|i> on a pair of registers.
template <typename Real = double>
BasicPureVector<Real> max_entangled(int d, int first_id = 1) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be at least 2");
  RegisterLayout layout = RegisterLayout::pairs(d, 1, first_id);
  typename BasicPureVector<Real>::Vector v = BasicPureVector<Real>::Vector::Zero(static_cast<long>(d) * d);
  const Real a = Real(1) / std::sqrt(Real(d));
  for (int i = 0; i < d; ++i) v(static_cast<long>(i) * d + i) = a;
  return BasicPureVector<Real>(std::move(v), std::move(layout));
}

// P projects onto |Phi>, Q onto its complement; R and S project onto the
// antisymmetric and symmetric subspaces (the -1 and +1 eigenspaces of the
// swap F).
template <typename Real = double>
struct BasicProjectorSet {
  int d = 0;
  BasicDenseOperator<Real> P, Q, R, S, F;
};

using ProjectorSet = BasicProjectorSet<double>;

template <typename Real = double>
BasicProjectorSet<Real> projector_set(int d, int first_id = 1) {
  if (d < 2) throw std::invalid_argument("projector_set: d must be at least 2");
  RegisterLayout layout = RegisterLayout::pairs(d, 1, first_id);
  const long n = static_cast<long>(d) * d;
  using Matrix = typename BasicDenseOperator<Real>::Matrix;

  BasicProjectorSet<Real> set;
  set.d = d;

  const BasicPureVector<Real> phi = max_entangled<Real>(d, first_id);
  Matrix p = phi.amp * phi.amp.adjoint();
  Matrix f = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(static_cast<long>(i) * d + j, static_cast<long>(j) * d + i) = Real(1);

  set.P = BasicDenseOperator<Real>(p, layout);
  set.Q = BasicDenseOperator<Real>(Matrix::Identity(n, n) - p, layout);
  set.F = BasicDenseOperator<Real>(f, layout);
  set.R = BasicDenseOperator<Real>((Matrix::Identity(n, n) - f) / Real(2), layout);
  set.S = BasicDenseOperator<Real>((Matrix::Identity(n, n) + f) / Real(2), layout);
  return set;
}

template <typename Real = double>
struct NamedDeviation {
  std::string name;
  Real deviation;
};

template <typename Real = double>
struct DeviationReport {
  std::vector<NamedDeviation<Real>> checks;

  Real max_deviation() const {
    Real worst = Real(0);
    for (const auto& c : checks) worst = std::max(worst, c.deviation);
    return worst;
  }
  bool ok(Real tol) const { return max_deviation() <= tol; }
};

// Entrywise residuals of the defining algebra of the projector set:
// idempotence, completeness, orthogonality, F^2 = I, swap action and traces.
template <typename Real = double>
DeviationReport<Real> projector_invariants(int d) {
  const BasicProjectorSet<Real> s = projector_set<Real>(d);
  const long n = static_cast<long>(d) * d;
  using Matrix = typename BasicDenseOperator<Real>::Matrix;
  const Matrix eye = Matrix::Identity(n, n);

  DeviationReport<Real> report;
  auto push = [&report](std::string name, Real dev) { report.checks.push_back({std::move(name), dev}); };

  push("P^2 = P", (s.P.mat * s.P.mat - s.P.mat).cwiseAbs().maxCoeff());
  push("Q^2 = Q", (s.Q.mat * s.Q.mat - s.Q.mat).cwiseAbs().maxCoeff());
  push("R^2 = R", (s.R.mat * s.R.mat - s.R.mat).cwiseAbs().maxCoeff());
  push("S^2 = S", (s.S.mat * s.S.mat - s.S.mat).cwiseAbs().maxCoeff());
  push("P + Q = I", (s.P.mat + s.Q.mat - eye).cwiseAbs().maxCoeff());
  push("R + S = I", (s.R.mat + s.S.mat - eye).cwiseAbs().maxCoeff());
  push("PQ = 0", (s.P.mat * s.Q.mat).cwiseAbs().maxCoeff());
  push("RS = 0", (s.R.mat * s.S.mat).cwiseAbs().maxCoeff());
  push("F^2 = I", (s.F.mat * s.F.mat - eye).cwiseAbs().maxCoeff());
  push("tr P = 1", std::abs(s.P.mat.trace() - std::complex<Real>(Real(1))));
  push("tr Q = d^2-1", std::abs(s.Q.mat.trace() - std::complex<Real>(Real(d) * d - 1)));
  push("tr R = d(d-1)/2", std::abs(s.R.mat.trace() - std::complex<Real>(Real(d) * (d - 1) / 2)));
  push("tr S = d(d+1)/2", std::abs(s.S.mat.trace() - std::complex<Real>(Real(d) * (d + 1) / 2)));
  return report;
}

// Entrywise residuals of the four exact partial-transpose relations that
// exchange the {P,Q} and {R,S} pairs; failures are reported, not thrown.
template <typename Real = double>
DeviationReport<Real> verify_pt_relations(int d) {
  const BasicProjectorSet<Real> s = projector_set<Real>(d);
  const std::vector<int> alice = {1};
  const Real rd = Real(d);

  DeviationReport<Real> report;
  auto dev = [&](const BasicDenseOperator<Real>& lhs, const typename BasicDenseOperator<Real>::Matrix& rhs) {
    return (lhs.mat - rhs).cwiseAbs().maxCoeff();
  };
  report.checks.push_back({"T(P) = (-R + S)/d", dev(partial_transpose(s.P, alice), ((-s.R.mat + s.S.mat) / rd).eval())});
  report.checks.push_back({"T(Q) = ((d+1)R + (d-1)S)/d", dev(partial_transpose(s.Q, alice), (((rd + 1) * s.R.mat + (rd - 1) * s.S.mat) / rd).eval())});
  report.checks.push_back({"T(R) = (-(d-1)P + Q)/2", dev(partial_transpose(s.R, alice), ((-(rd - 1) * s.P.mat + s.Q.mat) / 2).eval())});
  report.checks.push_back({"T(S) = ((d+1)P + Q)/2", dev(partial_transpose(s.S, alice), (((rd + 1) * s.P.mat + s.Q.mat) / 2).eval())});
  return report;
}

struct RhoEpsilonParams {
  int d = 3;
  Rational epsilon = 0;

  void validate() const {
    if (d < 3) throw std::invalid_argument("RhoEpsilonParams: d must be at least 3");
    if (epsilon < 0) throw std::invalid_argument("RhoEpsilonParams: epsilon must be nonnegative");
  }
};

struct WernerParams {
  int d = 2;
  double alpha = 0;

  void validate() const {
    if (d < 2) throw std::invalid_argument("WernerParams: d must be at least 2");
    if (alpha < 0) throw std::invalid_argument("WernerParams: alpha must be nonnegative");
  }
};

// alpha R(x)R + S(x)S on registers (1,2,3,4); closed under the measurement
// iteration of the protocol module.
template <typename Real = double>
BasicDenseOperator<Real> alpha_state(int d, Real alpha) {
  if (d < 2) throw std::invalid_argument("alpha_state: d must be at least 2");
  if (alpha < Real(0)) throw std::invalid_argument("alpha_state: alpha must be nonnegative");
  const BasicProjectorSet<Real> first = projector_set<Real>(d, 1);
  const BasicProjectorSet<Real> second = projector_set<Real>(d, 3);
  BasicDenseOperator<Real> state = tensor(first.R, second.R);
  state.mat = alpha * state.mat + tensor(first.S, second.S).mat;
  require_hermitian(state, Real(1e-12));
  return state;
}

// ((d+1+eps)/(d-1)) R(x)R + S(x)S on registers (1,2,3,4). The exact rational
// epsilon is kept by the caller; the dense realization uses its floating
// approximation.
template <typename Real = double>
BasicDenseOperator<Real> rho_epsilon(const RhoEpsilonParams& params) {
  params.validate();
  const Real beta = (Real(params.d) + 1 + static_cast<Real>(to_double(params.epsilon))) / (Real(params.d) - 1);
  return alpha_state<Real>(params.d, beta);
}

// sigma_W(alpha) = S + alpha R on a single pair.
template <typename Real = double>
BasicDenseOperator<Real> werner(const WernerParams& params) {
  params.validate();
  const BasicProjectorSet<Real> s = projector_set<Real>(params.d);
  BasicDenseOperator<Real> state = s.S;
  state.mat += Real(params.alpha) * s.R.mat;
  require_hermitian(state, Real(1e-12));
  return state;
}

}  // namespace distil
