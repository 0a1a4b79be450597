#pragma once

#include <cstdint>
#include <vector>

#include "distil/pq_algebra.hpp"
#include "distil/rational.hpp"
#include "distil/tensor.hpp"

// The 1-distillability criterion as a computation: quadratic forms
// <psi|T_A(rho)|psi> over Schmidt-rank-2 vectors, a heuristic minimizer over
// that set, and the exact non-distillability bound with its epsilon
// threshold. A negative search value is a certificate (the vector is
// returned); a nonnegative one is evidence only, and callers must report it
// as such.

namespace distil {

// Alice-side 2-column isometry plus a unit coefficient vector; represents
// psi = (U (x) I_B) c, which has Schmidt rank at most 2 across the cut.
struct SchmidtRank2Ansatz {
  Eigen::MatrixXcd alice_isometry;  // d_A x 2, orthonormal columns
  Eigen::VectorXcd coeffs;          // length 2*d_B, unit norm

  long d_alice() const { return alice_isometry.rows(); }
  long d_bob() const { return coeffs.size() / 2; }

  void validate(double iso_tol = 1e-10, double coeff_tol = 1e-12) const;
  Eigen::VectorXcd vector() const;  // flat over (a, b) with b least significant

  // Best rank-2 representation of an arbitrary vector on a d_a x d_b cut
  // (truncated SVD); the input need not be normalized.
  static SchmidtRank2Ansatz from_vector(const Eigen::VectorXcd& psi, long d_a, long d_b);
};

struct WitnessResult {
  double best_value = 0.0;
  PureVector best_vector;  // unit vector, on the cut-ordered layout
  int restarts_used = 0;
  bool converged = false;               // every restart terminated by tolerance
  std::vector<double> value_history;    // winning restart, nonincreasing
  std::uint64_t seed = 0;
};

struct SearchOptions {
  int restarts = 64;
  int max_iters = 500;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  int workers = 1;
  // Warm starts in the operator's own layout (evaluated first, one restart
  // slot each). Unnormalized vectors are normalized on conversion.
  std::vector<PureVector> seed_vectors;
  // Additionally seed with the rank-2 truncation of the bottom eigenvector
  // when the dimension permits a dense eigensolve.
  bool min_eig_seed = true;
  long eig_seed_dim_limit = 1024;
};

// Minimize <psi|M|psi> over unit Schmidt-rank-<=2 vectors by alternating an
// exact compressed eigenstep for the coefficients with a backtracking
// retraction step along the Riemannian gradient on the isometry. The result
// is an upper bound on the true minimum. M must be Hermitian; it is permuted
// to cut order internally.
WitnessResult search_rank2_min(const DenseOperator& m, const SearchOptions& opts = {});

// <psi|T_A(rho)|psi> for a unit vector psi on rho's layout. The imaginary
// residue is checked (error above 1e-8) and discarded.
double evaluate_witness(const DenseOperator& rho, const PureVector& psi);

// |phi> = |1>|2>(|1>|1> + |2>|2>) on registers (1,2,3,4), unnormalized
// (norm^2 = 2), Schmidt rank 2 across the (1,3)|(2,4) cut.
PureVector canonical_phi(int d);

// Minimum of <psi|M|psi> over `samples` rotation-invariant random rank-2
// draws; sampling evidence to set against search results.
double min_over_random_rank2(const DenseOperator& m, long samples, std::uint64_t seed);

struct BoundParams {
  int d = 3;
  int n = 1;
  Rational epsilon = 0;

  void validate() const;
};

// B(d,n,eps) = (lambda^n/4^n)(1-2/d)^(2n) - eps*mu^(n-1), the exact lower
// bound on the n-copy witness form over Schmidt-rank-2 vectors.
Rational n_copy_bound(const BoundParams& params);

// Largest bisection point eps* in [0,1] with B(d,n,eps*) > 0 and
// B(d,n,eps*+precision) <= 0; exact rational arithmetic throughout.
Rational epsilon_threshold(int d, int n, const Rational& precision);

// Q^(x)2n on pair registers (1,2),...,(4n-1,4n).
DenseOperator q_tensor_operator(int d, int n, long dense_budget = kDefaultDenseBudget);

// search_rank2_min on Q^(x)2n across the Alice|Bob cut; numerical evidence
// for the overlap inequality <psi|Q^(x)2n|psi> >= (1-2/d)^(2n).
WitnessResult q_overlap_min(int d, int n, const SearchOptions& opts = {});

}  // namespace distil
