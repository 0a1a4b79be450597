#include "distil/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "distil/rng.hpp"
#include "distil/states.hpp"
#include "parallel.hpp"

namespace distil {

namespace {

Eigen::MatrixXcd random_isometry(long rows, long cols, SplitMix64& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) g(i, j) = rng.next_complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
}

Eigen::VectorXcd random_unit(long n, SplitMix64& rng) {
  Eigen::VectorXcd v(n);
  for (long i = 0; i < n; ++i) v(i) = rng.next_complex_normal();
  const double norm = v.norm();
  return norm > 0 ? Eigen::VectorXcd(v / norm) : Eigen::VectorXcd::Unit(n, 0);
}

// One seesaw restart from the given isometry. Appends per-iteration values
// to `history` (nonincreasing: the eigenstep is exact and U-steps only
// accept strict decrease).
struct RestartOutcome {
  double value = 0.0;
  SchmidtRank2Ansatz ansatz;
  bool converged = false;
  std::vector<double> history;
};

RestartOutcome run_restart(const Eigen::MatrixXcd& h, long d_a, long d_b, Eigen::MatrixXcd u, int max_iters, double tol) {
  const long dim = d_a * d_b;
  const long k_dim = 2 * d_b;

  Eigen::MatrixXcd w2(dim, k_dim);     // U (x) I
  Eigen::MatrixXcd hw;                 // H (U (x) I)
  Eigen::MatrixXcd k(k_dim, k_dim);    // compressed operator
  Eigen::VectorXcd c;
  double value = 0.0;

  const auto refresh = [&](const Eigen::MatrixXcd& iso) {
    w2.setZero();
    for (long a = 0; a < d_a; ++a)
      for (int col = 0; col < 2; ++col) w2.block(a * d_b, col * d_b, d_b, d_b).diagonal().setConstant(iso(a, col));
    hw.noalias() = h * w2;
    k.noalias() = w2.adjoint() * hw;
    k = ((k + k.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k);
    c = solver.eigenvectors().col(0);
    value = solver.eigenvalues()(0);
  };

  refresh(u);

  RestartOutcome out;
  out.history.push_back(value);

  double step = 1.0;
  bool converged = false;
  for (int iter = 0; iter < max_iters; ++iter) {
    // Euclidean gradient of the form wrt conj(U) is W C^H with
    // W = reshape(H psi), C = reshape(c); project to the tangent space of
    // the isometries and retract by thin QR.
    const Eigen::VectorXcd g = hw * c;
    Eigen::MatrixXcd wmat(d_a, d_b), cmat(2, d_b);
    for (long a = 0; a < d_a; ++a)
      for (long b = 0; b < d_b; ++b) wmat(a, b) = g(a * d_b + b);
    for (int row = 0; row < 2; ++row)
      for (long b = 0; b < d_b; ++b) cmat(row, b) = c(row * d_b + b);

    const Eigen::MatrixXcd grad = wmat * cmat.adjoint();
    const Eigen::MatrixXcd utg = u.adjoint() * grad;
    const Eigen::MatrixXcd riem = grad - u * ((utg + utg.adjoint()) / 2.0);
    const double grad_norm2 = riem.squaredNorm();

    double new_value = value;
    Eigen::MatrixXcd new_u = u;
    if (grad_norm2 > 0) {
      double t = std::min(step * 2.0, 1e3 / std::sqrt(grad_norm2));
      for (int cut = 0; cut < 40; ++cut) {
        const Eigen::MatrixXcd candidate_raw = u - t * riem;
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(candidate_raw);
        const Eigen::MatrixXcd candidate = qr.householderQ() * Eigen::MatrixXcd::Identity(d_a, 2);
        // Objective at (candidate, current c).
        Eigen::VectorXcd psi(dim);
        const Eigen::MatrixXcd pm = candidate * cmat;
        for (long a = 0; a < d_a; ++a)
          for (long b = 0; b < d_b; ++b) psi(a * d_b + b) = pm(a, b);
        const double f = std::real(psi.dot(h * psi));
        if (f <= value - 1e-4 * t * grad_norm2) {
          new_u = candidate;
          new_value = f;
          step = t;
          break;
        }
        t /= 2.0;
      }
    }

    if (new_value < value) {
      u = new_u;
      refresh(u);  // exact eigenstep after the accepted move
    }
    const double improvement = out.history.back() - value;
    out.history.push_back(value);
    if (improvement < tol) {
      converged = true;
      break;
    }
  }

  out.value = value;
  out.converged = converged;
  out.ansatz.alice_isometry = u;
  out.ansatz.coeffs = c;
  return out;
}

}  // namespace

void SchmidtRank2Ansatz::validate(double iso_tol, double coeff_tol) const {
  if (alice_isometry.cols() != 2) throw std::invalid_argument("SchmidtRank2Ansatz: isometry must have 2 columns");
  if (coeffs.size() % 2 != 0 || coeffs.size() == 0) throw std::invalid_argument("SchmidtRank2Ansatz: coefficient length must be 2*d_B");
  const Eigen::Matrix2cd gram = alice_isometry.adjoint() * alice_isometry;
  if ((gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > iso_tol)
    throw std::invalid_argument("SchmidtRank2Ansatz: isometry columns are not orthonormal");
  if (std::abs(coeffs.norm() - 1.0) > coeff_tol)
    throw std::invalid_argument("SchmidtRank2Ansatz: coefficients are not unit norm");
}

Eigen::VectorXcd SchmidtRank2Ansatz::vector() const {
  const long da = d_alice(), db = d_bob();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(da * db);
  for (long a = 0; a < da; ++a)
    for (int k = 0; k < 2; ++k) psi.segment(a * db, db) += alice_isometry(a, k) * coeffs.segment(k * db, db);
  return psi;
}

SchmidtRank2Ansatz SchmidtRank2Ansatz::from_vector(const Eigen::VectorXcd& psi, long d_a, long d_b) {
  if (psi.size() != d_a * d_b) throw std::invalid_argument("from_vector: size does not match the cut");
  if (d_a < 2) throw std::invalid_argument("from_vector: need at least two Alice dimensions");
  if (!(psi.norm() > 0)) throw std::invalid_argument("from_vector: zero vector");
  Eigen::MatrixXcd m(d_a, d_b);
  for (long a = 0; a < d_a; ++a)
    for (long b = 0; b < d_b; ++b) m(a, b) = psi(a * d_b + b);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeThinV);

  SchmidtRank2Ansatz out;
  out.alice_isometry = svd.matrixU().leftCols(2);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(2 * d_b);
  const long rank_cols = std::min<long>(2, svd.matrixV().cols());
  for (long k = 0; k < rank_cols; ++k) c.segment(k * d_b, d_b) = svd.singularValues()(k) * svd.matrixV().col(k).conjugate();
  const double norm = c.norm();
  out.coeffs = c / norm;
  return out;
}

WitnessResult search_rank2_min(const DenseOperator& m, const SearchOptions& opts) {
  require_hermitian(m, 1e-10);
  const DenseOperator cut = permute_registers(m, cut_order(m.layout));
  const auto [d_a, d_b] = cut_dims(cut.layout);
  if (d_a < 2) throw std::invalid_argument("search_rank2_min: Alice side must have dimension at least 2");
  if (opts.restarts < 1) throw std::invalid_argument("search_rank2_min: need at least one restart");

  const Eigen::MatrixXcd h = ((cut.mat + cut.mat.adjoint()) / 2.0).eval();

  // Warm starts: caller-provided vectors first, then the truncated bottom
  // eigenvector, then rotation-invariant random isometries.
  std::vector<Eigen::MatrixXcd> warm;
  for (const PureVector& sv : opts.seed_vectors) {
    const PureVector p = permute_registers(sv, cut_order(m.layout));
    warm.push_back(SchmidtRank2Ansatz::from_vector(p.amp, d_a, d_b).alice_isometry);
  }
  if (opts.min_eig_seed && cut.dim() <= opts.eig_seed_dim_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    warm.push_back(SchmidtRank2Ansatz::from_vector(solver.eigenvectors().col(0), d_a, d_b).alice_isometry);
  }

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
  parallel_for(opts.restarts, opts.workers, [&](long r) {
    Eigen::MatrixXcd u0;
    if (r < static_cast<long>(warm.size())) {
      u0 = warm[static_cast<std::size_t>(r)];
    } else {
      SplitMix64 rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
      u0 = random_isometry(d_a, 2, rng);
    }
    outcomes[static_cast<std::size_t>(r)] = run_restart(h, d_a, d_b, u0, opts.max_iters, opts.tol);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].value < outcomes[best].value) best = r;

  WitnessResult result;
  result.best_value = outcomes[best].value;
  result.restarts_used = opts.restarts;
  result.converged = std::all_of(outcomes.begin(), outcomes.end(), [](const RestartOutcome& o) { return o.converged; });
  result.value_history = std::move(outcomes[best].history);
  result.seed = opts.seed;

  Eigen::VectorXcd psi = outcomes[best].ansatz.vector();
  psi /= psi.norm();
  result.best_vector = PureVector(psi, cut.layout);
  const double check = std::real(psi.dot(h * psi));
  if (std::abs(check - result.best_value) > 1e-10)
    throw std::logic_error("search_rank2_min: best value does not match its vector");
  return result;
}

double evaluate_witness(const DenseOperator& rho, const PureVector& psi) {
  if (rho.layout != psi.layout) throw std::invalid_argument("evaluate_witness: layouts differ");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("evaluate_witness: psi must be unit norm");
  const DenseOperator transposed = partial_transpose(rho, Party::Alice);
  const std::complex<double> value = expectation(transposed, psi);
  if (std::abs(value.imag()) > 1e-8) throw std::runtime_error("evaluate_witness: imaginary residue above 1e-8");
  return value.real();
}

PureVector canonical_phi(int d) {
  if (d < 2) throw std::invalid_argument("canonical_phi: d must be at least 2");
  const RegisterLayout layout = RegisterLayout::pairs(d, 2);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(layout.dim());
  amp(layout.flat_of({0, 1, 0, 0})) = 1.0;
  amp(layout.flat_of({0, 1, 1, 1})) = 1.0;
  return PureVector(std::move(amp), layout);
}

double min_over_random_rank2(const DenseOperator& m, long samples, std::uint64_t seed) {
  require_hermitian(m, 1e-10);
  const DenseOperator cut = permute_registers(m, cut_order(m.layout));
  const auto [d_a, d_b] = cut_dims(cut.layout);
  if (d_a < 2) throw std::invalid_argument("min_over_random_rank2: Alice side must have dimension at least 2");

  const Eigen::MatrixXcd h = ((cut.mat + cut.mat.adjoint()) / 2.0).eval();
  double best = std::numeric_limits<double>::infinity();
  SplitMix64 rng(seed);
  for (long s = 0; s < samples; ++s) {
    SchmidtRank2Ansatz ansatz;
    ansatz.alice_isometry = random_isometry(d_a, 2, rng);
    ansatz.coeffs = random_unit(2 * d_b, rng);
    const Eigen::VectorXcd psi = ansatz.vector();
    best = std::min(best, std::real(psi.dot(h * psi)));
  }
  return best;
}

void BoundParams::validate() const {
  if (d < 3) throw std::invalid_argument("BoundParams: d must be at least 3");
  if (n < 1) throw std::invalid_argument("BoundParams: n must be at least 1");
  if (epsilon < 0) throw std::invalid_argument("BoundParams: epsilon must be nonnegative");
}

Rational n_copy_bound(const BoundParams& params) {
  params.validate();
  const MuLambda ml = mu_lambda(params.d, params.epsilon);
  const unsigned n = static_cast<unsigned>(params.n);
  const Rational q_overlap = rational_pow(Rational(params.d - 2, params.d), 2 * n);
  return rational_pow(ml.lambda / 4, n) * q_overlap - params.epsilon * rational_pow(ml.mu, n - 1);
}

Rational epsilon_threshold(int d, int n, const Rational& precision) {
  if (precision <= 0) throw std::invalid_argument("epsilon_threshold: precision must be positive");
  const auto bound_at = [&](const Rational& eps) { return n_copy_bound(BoundParams{d, n, eps}); };
  if (bound_at(0) <= 0) throw std::runtime_error("epsilon_threshold: bound is not positive at epsilon = 0");
  Rational lo = 0, hi = 1;
  if (bound_at(hi) > 0) throw std::runtime_error("epsilon_threshold: bound does not change sign on [0,1]");
  while (hi - lo > precision) {
    const Rational mid = (lo + hi) / 2;
    (bound_at(mid) > 0 ? lo : hi) = mid;
  }
  return lo;
}

DenseOperator q_tensor_operator(int d, int n, long dense_budget) {
  if (d < 2 || n < 1) throw std::invalid_argument("q_tensor_operator: need d >= 2 and n >= 1");
  long dim = 1;
  for (int k = 0; k < 4 * n; ++k) {
    if (dim > dense_budget / d)
      throw BudgetError("q_tensor_operator: d^(4n) exceeds the dense budget of " + std::to_string(dense_budget));
    dim *= d;
  }
  DenseOperator op = projector_set<double>(d, 1).Q;
  for (int pair = 1; pair < 2 * n; ++pair) op = tensor(op, projector_set<double>(d, 2 * pair + 1).Q);
  return op;
}

WitnessResult q_overlap_min(int d, int n, const SearchOptions& opts) {
  return search_rank2_min(q_tensor_operator(d, n), opts);
}

}  // namespace distil
