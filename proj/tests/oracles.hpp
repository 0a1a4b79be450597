#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

// Brute-force reference computations for the test suites. Everything here is
// written directly over flat matrices and digit tuples, independent of the
// layout machinery in the library, so the two paths can check each other.

namespace oracle {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline long flat_index(const std::vector<int>& digits, const std::vector<int>& dims) {
  long idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

inline std::vector<int> digits_at(long flat, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(flat % dims[static_cast<std::size_t>(k)]);
    flat /= dims[static_cast<std::size_t>(k)];
  }
  return digits;
}

// Transpose the digits at `positions`; reference for the partial transpose.
inline Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, const std::vector<int>& dims,
                                          const std::vector<int>& positions) {
  const long n = m.rows();
  Eigen::MatrixXcd out(n, n);
  for (long i = 0; i < n; ++i) {
    std::vector<int> row = digits_at(i, dims);
    for (long j = 0; j < n; ++j) {
      std::vector<int> col = digits_at(j, dims);
      std::vector<int> new_row = row, new_col = col;
      for (int p : positions) {
        new_row[static_cast<std::size_t>(p)] = col[static_cast<std::size_t>(p)];
        new_col[static_cast<std::size_t>(p)] = row[static_cast<std::size_t>(p)];
      }
      out(flat_index(new_row, dims), flat_index(new_col, dims)) = m(i, j);
    }
  }
  return out;
}

// Sum out the digits at `positions`; reference for the partial trace.
inline Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& m, const std::vector<int>& dims,
                                      const std::vector<int>& positions) {
  std::vector<int> kept_dims;
  std::vector<int> kept_positions;
  for (int p = 0; p < static_cast<int>(dims.size()); ++p) {
    bool traced = false;
    for (int q : positions) traced = traced || (q == p);
    if (!traced) {
      kept_dims.push_back(dims[static_cast<std::size_t>(p)]);
      kept_positions.push_back(p);
    }
  }
  long nk = 1;
  for (int d : kept_dims) nk *= d;

  const long n = m.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nk, nk);
  for (long i = 0; i < n; ++i) {
    const std::vector<int> row = digits_at(i, dims);
    for (long j = 0; j < n; ++j) {
      const std::vector<int> col = digits_at(j, dims);
      bool diagonal = true;
      for (int p : positions) diagonal = diagonal && (row[static_cast<std::size_t>(p)] == col[static_cast<std::size_t>(p)]);
      if (!diagonal) continue;
      std::vector<int> krow, kcol;
      for (int p : kept_positions) {
        krow.push_back(row[static_cast<std::size_t>(p)]);
        kcol.push_back(col[static_cast<std::size_t>(p)]);
      }
      out(flat_index(krow, kept_dims), flat_index(kcol, kept_dims)) += m(i, j);
    }
  }
  return out;
}

inline Eigen::MatrixXcd random_matrix(long n, std::mt19937& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = std::complex<double>(normal(gen), normal(gen));
  return m;
}

inline Eigen::MatrixXcd random_hermitian(long n, std::mt19937& gen) {
  const Eigen::MatrixXcd m = random_matrix(n, gen);
  return (m + m.adjoint()) / 2.0;
}

inline Eigen::VectorXcd random_vector(long n, std::mt19937& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (long i = 0; i < n; ++i) v(i) = std::complex<double>(normal(gen), normal(gen));
  return v;
}

}  // namespace oracle
