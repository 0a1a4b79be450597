#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "distil/states.hpp"
#include "distil/tensor.hpp"
#include "distil/witness.hpp"
#include "oracles.hpp"

using namespace distil;

namespace {

DenseOperator random_pair_operator(int d, std::mt19937& gen, int first_id = 1) {
  return DenseOperator(oracle::random_matrix(static_cast<long>(d) * d, gen), RegisterLayout::pairs(d, 1, first_id));
}

}  // namespace

TEST_CASE("layout basics and error paths") {
  const RegisterLayout layout = RegisterLayout::pairs(3, 2);
  CHECK(layout.count() == 4);
  CHECK(layout.dim() == 81);
  CHECK(layout.at(0).party == Party::Alice);
  CHECK(layout.at(1).party == Party::Bob);
  CHECK(layout.ids_of(Party::Alice) == std::vector<int>{1, 3});
  CHECK(layout.ids_of(Party::Bob) == std::vector<int>{2, 4});
  CHECK(layout.flat_of({0, 1, 0, 2}) == 0 * 27 + 1 * 9 + 0 * 3 + 2);

  CHECK_THROWS_AS(RegisterLayout({{1, 2, Party::Alice}, {1, 2, Party::Bob}}), std::invalid_argument);
  CHECK_THROWS_AS(RegisterLayout({{1, 0, Party::Alice}}), std::invalid_argument);
  CHECK_THROWS_AS(layout.reordered({1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(layout.reordered({1, 2, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(layout.by_id(9), std::invalid_argument);
}

TEST_CASE("tensor: identity case and trace multiplicativity") {
  const auto eye2 = identity_operator<double>(RegisterLayout::single(1, 2, Party::Alice));
  const auto eye2b = identity_operator<double>(RegisterLayout::single(2, 2, Party::Bob));
  const auto prod = tensor(eye2, eye2b);
  CHECK((prod.mat - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  // tr(P (x) Q) at d=2 is 1 * (4 - 1) = 3; brute-force matrix build.
  const auto set = projector_set<double>(2);
  const auto set_high = projector_set<double>(2, 3);
  const auto pq = tensor(set.P, set_high.Q);
  CHECK(std::abs(pq.mat.trace() - std::complex<double>(3.0)) < 1e-13);
  const Eigen::MatrixXcd reference = oracle::kron(set.P.mat, set.Q.mat);
  CHECK((pq.mat - reference).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("tensor: associativity and id collision") {
  std::mt19937 gen(11);
  const DenseOperator a(oracle::random_matrix(2, gen), RegisterLayout::single(1, 2, Party::Alice));
  const DenseOperator b(oracle::random_matrix(3, gen), RegisterLayout::single(2, 3, Party::Bob));
  const DenseOperator c(oracle::random_matrix(2, gen), RegisterLayout::single(3, 2, Party::Alice));
  const auto left = tensor(tensor(a, b), c);
  const auto right = tensor(a, tensor(b, c));
  CHECK(max_abs_diff(left, right) == 0.0);
  CHECK_THROWS_AS(tensor(a, a), std::invalid_argument);
}

TEST_CASE("partial_trace: maximally entangled reduction and total trace") {
  const auto phi = max_entangled<double>(3);
  const auto proj = outer(phi);
  const auto reduced = partial_trace(proj, {1});
  CHECK((reduced.mat - Eigen::MatrixXcd::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-15);

  std::mt19937 gen(12);
  const DenseOperator m(oracle::random_matrix(9, gen), RegisterLayout::pairs(3, 1));
  const auto full = partial_trace(m, {1, 2});
  CHECK(full.dim() == 1);
  CHECK(std::abs(full.mat(0, 0) - m.mat.trace()) < 1e-12);
  CHECK_THROWS_AS(partial_trace(m, {7}), std::invalid_argument);
}

TEST_CASE("partial_trace: recovers factors scaled by the partner trace") {
  std::mt19937 gen(13);
  const DenseOperator a = random_pair_operator(3, gen, 1);
  DenseOperator b = random_pair_operator(3, gen, 3);
  const auto joint = tensor(a, b);
  const auto first = partial_trace(joint, {3, 4});
  const std::complex<double> tb = b.mat.trace();
  CHECK((first.mat - tb * a.mat).cwiseAbs().maxCoeff() < 1e-12);
  const auto second = partial_trace(joint, {1, 2});
  CHECK((second.mat - a.mat.trace() * b.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial_trace: eight-register product traces down to one factor") {
  // tr over the second block of (rho (x) rho') equals tr(rho') * rho.
  const auto first = rho_epsilon<double>({3, Rational(1, 10)});
  auto second = rho_epsilon<double>({3, Rational(1)});
  second = relabeled(second, {5, 6, 7, 8});
  const auto joint = tensor(first, second);
  const auto traced = partial_trace(joint, {5, 6, 7, 8});
  const std::complex<double> t2 = second.mat.trace();
  CHECK((traced.mat - t2 * first.mat).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("partial_transpose: identity, spectrum of T(P), involution") {
  const auto eye = identity_operator<double>(RegisterLayout::pairs(3, 1));
  CHECK(max_abs_diff(partial_transpose(eye, Party::Alice), eye) == 0.0);

  // T(P) = (S - R)/d has eigenvalue -1/3 on the antisymmetric subspace
  // (dimension 3) and +1/3 on the symmetric one (dimension 6) at d = 3.
  const auto set = projector_set<double>(3);
  const auto tp = partial_transpose(set.P, Party::Alice);
  const auto evs = hermitian_eigenvalues(tp);
  REQUIRE(evs.size() == 9);
  for (int i = 0; i < 3; ++i) CHECK(evs(i) == doctest::Approx(-1.0 / 3).epsilon(1e-12));
  for (int i = 3; i < 9; ++i) CHECK(evs(i) == doctest::Approx(1.0 / 3).epsilon(1e-12));

  std::mt19937 gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const DenseOperator m(oracle::random_hermitian(9, gen), RegisterLayout::pairs(3, 1));
    const auto once = partial_transpose(m, Party::Alice);
    CHECK(std::abs(once.mat.trace() - m.mat.trace()) <= 1e-12);
    CHECK(is_hermitian(once, 1e-12));
    CHECK(max_abs_diff(partial_transpose(once, Party::Alice), m) <= 1e-12);
  }
}

TEST_CASE("partial_transpose: matches the digit-level reference") {
  std::mt19937 gen(15);
  const RegisterLayout layout({{1, 2, Party::Alice}, {2, 3, Party::Bob}, {3, 2, Party::Alice}});
  const DenseOperator m(oracle::random_matrix(12, gen), layout);
  const auto lib = partial_transpose(m, Party::Alice);
  const Eigen::MatrixXcd ref = oracle::partial_transpose(m.mat, {2, 3, 2}, {0, 2});
  CHECK((lib.mat - ref).cwiseAbs().maxCoeff() < 1e-14);
  const auto bob = partial_transpose(m, Party::Bob);
  const Eigen::MatrixXcd ref_bob = oracle::partial_transpose(m.mat, {2, 3, 2}, {1});
  CHECK((bob.mat - ref_bob).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("permute_registers: identity, swap symmetry, spectrum") {
  const auto set = projector_set<double>(3);
  CHECK(max_abs_diff(permute_registers(set.F, {1, 2}), set.F) == 0.0);

  // F is invariant under exchanging the two factors of the pair.
  const auto swapped = permute_registers(set.F, {2, 1});
  CHECK((swapped.mat - set.F.mat).cwiseAbs().maxCoeff() == 0.0);

  const auto rho = rho_epsilon<double>({3, Rational(1)});
  const auto permuted = permute_registers(rho, {1, 3, 2, 4});
  const auto ev_before = hermitian_eigenvalues(rho);
  const auto ev_after = hermitian_eigenvalues(permuted);
  CHECK((ev_before - ev_after).cwiseAbs().maxCoeff() < 1e-10);

  std::mt19937 gen(16);
  const DenseOperator m(oracle::random_hermitian(81, gen), RegisterLayout::pairs(3, 2));
  const auto p = permute_registers(m, {3, 1, 4, 2});
  const auto ev_m = hermitian_eigenvalues(m);
  const auto ev_p = hermitian_eigenvalues(p);
  CHECK((ev_m - ev_p).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(max_abs_diff(permute_registers(p, {1, 2, 3, 4}), m) < 1e-14);
}

TEST_CASE("schmidt_values: entanglement structure across cuts") {
  const auto phi = max_entangled<double>(3);
  const auto sv = schmidt_values(phi);
  REQUIRE(sv.size() == 3);
  for (double s : sv) CHECK(s == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(schmidt_rank(phi) == 3);

  // Product state |1>|1>.
  PureVector product(Eigen::VectorXcd::Zero(9), RegisterLayout::pairs(3, 1));
  product.amp(0) = 1.0;
  CHECK(schmidt_rank(product) == 1);

  const auto phi_canonical = canonical_phi(3);
  CHECK(schmidt_rank(phi_canonical) == 2);
  CHECK(schmidt_rank(phi_canonical, Party::Bob) == 2);

  std::mt19937 gen(17);
  const PureVector v(oracle::random_vector(81, gen), RegisterLayout::pairs(3, 2));
  const auto values = schmidt_values(v);
  double sum = 0.0;
  for (double s : values) sum += s * s;
  CHECK(sum == doctest::Approx(v.norm() * v.norm()).epsilon(1e-12));
  CHECK(schmidt_rank(v) == schmidt_rank(v, Party::Bob));

  const PureVector zero(Eigen::VectorXcd::Zero(9), RegisterLayout::pairs(3, 1));
  CHECK_THROWS_AS(schmidt_values(zero), std::invalid_argument);
}

TEST_CASE("min_eigenpair: frozen values and error paths") {
  const auto eye = identity_operator<double>(RegisterLayout::single(1, 3, Party::Alice));
  const auto [one, vec1] = min_eigenpair(eye);
  CHECK(one == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vec1.norm() == doctest::Approx(1.0).epsilon(1e-12));

  const auto set = projector_set<double>(3);
  const auto [low, vec2] = min_eigenpair(partial_transpose(set.P, Party::Alice));
  CHECK(low == doctest::Approx(-1.0 / 3).epsilon(1e-12));
  (void)vec2;

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 5.0;
  diag(1, 1) = -2.0;
  const DenseOperator d(diag, RegisterLayout::single(1, 3, Party::Alice));
  const auto [lambda, vec] = min_eigenpair(d);
  CHECK(lambda == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(std::abs(vec.amp(1)) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937 gen(18);
  const DenseOperator bad(oracle::random_matrix(4, gen), RegisterLayout::single(1, 4, Party::Alice));
  CHECK_THROWS_AS(min_eigenpair(bad), std::invalid_argument);
}

TEST_CASE("apply_and_trace_out: agrees with embed-multiply-trace") {
  std::mt19937 gen(19);
  // M on registers (1,2,3) of dims (2,3,2); K on (3,1) in that order.
  const RegisterLayout layout({{1, 2, Party::Alice}, {2, 3, Party::Bob}, {3, 2, Party::Alice}});
  const DenseOperator m(oracle::random_matrix(12, gen), layout);
  const DenseOperator k(oracle::random_matrix(4, gen), RegisterLayout({{3, 2, Party::Alice}, {1, 2, Party::Alice}}));

  const auto fast = apply_and_trace_out(m, k);

  // Reference: embed K as K_{3,1} (x) I_2, multiply, trace out (1,3).
  const auto k_perm = permute_registers(k, {1, 3});  // now ordered (1,3)
  Eigen::MatrixXcd k_full = Eigen::MatrixXcd::Zero(12, 12);
  // Embed over digit tuples (r1, r2, r3).
  for (int r1 = 0; r1 < 2; ++r1)
    for (int r3 = 0; r3 < 2; ++r3)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c3 = 0; c3 < 2; ++c3)
          for (int r2 = 0; r2 < 3; ++r2)
            k_full(oracle::flat_index({r1, r2, r3}, {2, 3, 2}), oracle::flat_index({c1, r2, c3}, {2, 3, 2})) =
                k_perm.mat(r1 * 2 + r3, c1 * 2 + c3);
  const Eigen::MatrixXcd product = k_full * m.mat;
  const Eigen::MatrixXcd ref = oracle::partial_trace(product, {2, 3, 2}, {0, 2});
  CHECK((fast.mat - ref).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fast.layout.ids() == std::vector<int>{2});
}

TEST_CASE("expectation and hermiticity guards") {
  std::mt19937 gen(20);
  const DenseOperator h(oracle::random_hermitian(9, gen), RegisterLayout::pairs(3, 1));
  Eigen::VectorXcd raw = oracle::random_vector(9, gen);
  const PureVector v(raw, RegisterLayout::pairs(3, 1));
  const std::complex<double> val = expectation(h, v);
  CHECK(std::abs(val.imag()) < 1e-10);
  CHECK(is_hermitian(h));
  DenseOperator slightly = h;
  slightly.mat(0, 1) += std::complex<double>(0.0, 1e-6);
  CHECK(!is_hermitian(slightly, 1e-12));
  CHECK_THROWS_AS(require_hermitian(slightly, 1e-12), std::invalid_argument);
}

TEST_CASE("scalar-templated instantiation") {
  const auto eye = identity_operator<float>(RegisterLayout::pairs(2, 1));
  const auto prod = tensor(eye, identity_operator<float>(RegisterLayout::pairs(2, 1, 3)));
  CHECK(prod.dim() == 16);
  const auto phi = max_entangled<float>(2);
  CHECK(phi.norm() == doctest::Approx(1.0f).epsilon(1e-6));
}
