#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "distil/layout.hpp"

// Dense complex linear algebra over multi-register tensor-product spaces.
// Values are immutable after construction in the sense that every operation
// returns a fresh value; nothing here mutates shared state.

namespace distil {

template <typename Real = double>
struct BasicDenseOperator {
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix mat;
  RegisterLayout layout;

  BasicDenseOperator() = default;
  BasicDenseOperator(Matrix m, RegisterLayout lay) : mat(std::move(m)), layout(std::move(lay)) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("DenseOperator: matrix must be square");
    if (mat.rows() != layout.dim()) throw std::invalid_argument("DenseOperator: matrix side does not match layout dimension");
  }

  long dim() const { return layout.dim(); }
};

template <typename Real = double>
struct BasicPureVector {
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector amp;
  RegisterLayout layout;

  BasicPureVector() = default;
  BasicPureVector(Vector v, RegisterLayout lay) : amp(std::move(v)), layout(std::move(lay)) {
    if (amp.size() != layout.dim()) throw std::invalid_argument("PureVector: length does not match layout dimension");
  }

  long dim() const { return layout.dim(); }
  // Norm is reported, never silently fixed up; states may be unnormalized.
  Real norm() const { return amp.norm(); }
};

using DenseOperator = BasicDenseOperator<double>;
using PureVector = BasicPureVector<double>;

template <typename Real>
BasicDenseOperator<Real> identity_operator(RegisterLayout layout) {
  const long n = layout.dim();
  return BasicDenseOperator<Real>(BasicDenseOperator<Real>::Matrix::Identity(n, n), std::move(layout));
}

// Kronecker product. The result lives on the concatenated layout, so the two
// operands must carry disjoint register ids (relabel before tensoring).
template <typename Real>
BasicDenseOperator<Real> tensor(const BasicDenseOperator<Real>& a, const BasicDenseOperator<Real>& b) {
  RegisterLayout layout = RegisterLayout::concat(a.layout, b.layout);
  const long na = a.dim(), nb = b.dim();
  typename BasicDenseOperator<Real>::Matrix out(na * nb, na * nb);
  for (long i = 0; i < na; ++i)
    for (long j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.mat(i, j) * b.mat;
  return BasicDenseOperator<Real>(std::move(out), std::move(layout));
}

template <typename Real>
BasicPureVector<Real> tensor(const BasicPureVector<Real>& a, const BasicPureVector<Real>& b) {
  RegisterLayout layout = RegisterLayout::concat(a.layout, b.layout);
  const long na = a.dim(), nb = b.dim();
  typename BasicPureVector<Real>::Vector out(na * nb);
  for (long i = 0; i < na; ++i) out.segment(i * nb, nb) = a.amp(i) * b.amp;
  return BasicPureVector<Real>(std::move(out), std::move(layout));
}

// Same registers under a new id labelling (old ids in ascending position
// order are replaced by new_ids). Used to direct fresh ids before tensor().
template <typename Real>
BasicDenseOperator<Real> relabeled(const BasicDenseOperator<Real>& m, const std::vector<int>& new_ids) {
  if (static_cast<int>(new_ids.size()) != m.layout.count())
    throw std::invalid_argument("relabeled: need one new id per register");
  std::vector<Register> regs = m.layout.registers();
  for (std::size_t k = 0; k < regs.size(); ++k) regs[k].id = new_ids[k];
  return BasicDenseOperator<Real>(m.mat, RegisterLayout(std::move(regs)));
}

namespace detail {

// Offsets of each sub-index combination of `positions` inside the flat index
// of `layout`, in row-major order over the listed positions.
inline std::vector<long> subindex_offsets(const RegisterLayout& layout, const std::vector<int>& positions) {
  const std::vector<long> strides = layout.strides();
  long count = 1;
  for (int p : positions) count *= layout.at(p).dim;
  std::vector<long> offsets(static_cast<std::size_t>(count), 0);
  long repeat = count;
  for (int p : positions) {
    const int d = layout.at(p).dim;
    const long stride = strides[static_cast<std::size_t>(p)];
    repeat /= d;
    long idx = 0;
    while (idx < count) {
      for (int digit = 0; digit < d; ++digit)
        for (long r = 0; r < repeat; ++r) offsets[static_cast<std::size_t>(idx++)] += digit * stride;
    }
  }
  return offsets;
}

inline std::vector<int> positions_of_ids(const RegisterLayout& layout, const std::vector<int>& ids) {
  std::vector<int> pos;
  pos.reserve(ids.size());
  for (int id : ids) {
    const int p = layout.position_of(id);
    if (p < 0) throw std::invalid_argument("unknown register id " + std::to_string(id));
    pos.push_back(p);
  }
  return pos;
}

}  // namespace detail

// Trace out the listed registers; the result acts on the remaining ones and
// has the same total trace.
template <typename Real>
BasicDenseOperator<Real> partial_trace(const BasicDenseOperator<Real>& m, const std::vector<int>& traced_ids) {
  const std::vector<int> traced_pos = detail::positions_of_ids(m.layout, traced_ids);
  std::vector<int> kept_pos;
  for (int p = 0; p < m.layout.count(); ++p)
    if (std::find(traced_pos.begin(), traced_pos.end(), p) == traced_pos.end()) kept_pos.push_back(p);

  const std::vector<long> off_kept = detail::subindex_offsets(m.layout, kept_pos);
  const std::vector<long> off_traced = detail::subindex_offsets(m.layout, traced_pos);
  const long nk = static_cast<long>(off_kept.size());

  typename BasicDenseOperator<Real>::Matrix out(nk, nk);
  for (long i = 0; i < nk; ++i)
    for (long j = 0; j < nk; ++j) {
      std::complex<Real> sum{};
      for (long t : off_traced) sum += m.mat(off_kept[static_cast<std::size_t>(i)] + t, off_kept[static_cast<std::size_t>(j)] + t);
      out(i, j) = sum;
    }
  return BasicDenseOperator<Real>(std::move(out), m.layout.without(traced_ids));
}

// Transpose the listed registers in the standard basis (an involution that
// preserves the trace and Hermiticity).
template <typename Real>
BasicDenseOperator<Real> partial_transpose(const BasicDenseOperator<Real>& m, const std::vector<int>& ids) {
  const std::vector<int> pos = detail::positions_of_ids(m.layout, ids);
  const std::vector<long> strides = m.layout.strides();
  const long n = m.dim();

  // Split every flat index into the transposed part and the rest.
  std::vector<long> tpart(static_cast<std::size_t>(n), 0);
  {
    std::vector<int> digits;
    for (long x = 0; x < n; ++x) {
      m.layout.digits_of(x, digits);
      long t = 0;
      for (int p : pos) t += static_cast<long>(digits[static_cast<std::size_t>(p)]) * strides[static_cast<std::size_t>(p)];
      tpart[static_cast<std::size_t>(x)] = t;
    }
  }

  typename BasicDenseOperator<Real>::Matrix out(n, n);
  for (long i = 0; i < n; ++i) {
    const long ri = i - tpart[static_cast<std::size_t>(i)];
    for (long j = 0; j < n; ++j) {
      const long rj = j - tpart[static_cast<std::size_t>(j)];
      out(ri + tpart[static_cast<std::size_t>(j)], rj + tpart[static_cast<std::size_t>(i)]) = m.mat(i, j);
    }
  }
  return BasicDenseOperator<Real>(std::move(out), m.layout);
}

template <typename Real>
BasicDenseOperator<Real> partial_transpose(const BasicDenseOperator<Real>& m, Party party) {
  return partial_transpose(m, m.layout.ids_of(party));
}

namespace detail {

inline std::vector<long> permutation_index_map(const RegisterLayout& from, const RegisterLayout& to) {
  const long n = from.dim();
  const std::vector<long> to_strides = to.strides();
  std::vector<int> to_pos_of_from_pos(static_cast<std::size_t>(from.count()));
  for (int p = 0; p < from.count(); ++p) to_pos_of_from_pos[static_cast<std::size_t>(p)] = to.position_of(from.at(p).id);

  std::vector<long> map(static_cast<std::size_t>(n));
  std::vector<int> digits;
  for (long x = 0; x < n; ++x) {
    from.digits_of(x, digits);
    long y = 0;
    for (int p = 0; p < from.count(); ++p)
      y += static_cast<long>(digits[static_cast<std::size_t>(p)]) * to_strides[static_cast<std::size_t>(to_pos_of_from_pos[static_cast<std::size_t>(p)])];
    map[static_cast<std::size_t>(x)] = y;
  }
  return map;
}

}  // namespace detail

// Similarity transform by the permutation matrix that lists the registers in
// the requested id order; the spectrum is unchanged.
template <typename Real>
BasicDenseOperator<Real> permute_registers(const BasicDenseOperator<Real>& m, const std::vector<int>& id_order) {
  const RegisterLayout target = m.layout.reordered(id_order);
  const std::vector<long> map = detail::permutation_index_map(m.layout, target);
  const long n = m.dim();
  typename BasicDenseOperator<Real>::Matrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = m.mat(i, j);
  return BasicDenseOperator<Real>(std::move(out), target);
}

template <typename Real>
BasicPureVector<Real> permute_registers(const BasicPureVector<Real>& v, const std::vector<int>& id_order) {
  const RegisterLayout target = v.layout.reordered(id_order);
  const std::vector<long> map = detail::permutation_index_map(v.layout, target);
  typename BasicPureVector<Real>::Vector out(v.dim());
  for (long i = 0; i < v.dim(); ++i) out(map[static_cast<std::size_t>(i)]) = v.amp(i);
  return BasicPureVector<Real>(std::move(out), target);
}

// Alice's registers (ascending id) followed by Bob's: the order used for
// every cross-cut reshape.
inline std::vector<int> cut_order(const RegisterLayout& layout, Party left = Party::Alice) {
  std::vector<int> order = layout.ids_of(left);
  const std::vector<int> right = layout.ids_of(left == Party::Alice ? Party::Bob : Party::Alice);
  order.insert(order.end(), right.begin(), right.end());
  return order;
}

inline std::pair<long, long> cut_dims(const RegisterLayout& layout, Party left = Party::Alice) {
  long da = 1, db = 1;
  for (const Register& r : layout.registers()) (r.party == left ? da : db) *= r.dim;
  return {da, db};
}

template <typename Real>
Real max_abs_diff(const BasicDenseOperator<Real>& a, const BasicDenseOperator<Real>& b) {
  if (a.layout != b.layout) throw std::invalid_argument("max_abs_diff: layouts differ");
  return (a.mat - b.mat).cwiseAbs().maxCoeff();
}

template <typename Real>
bool is_hermitian(const BasicDenseOperator<Real>& m, Real tol = Real(1e-12)) {
  return (m.mat - m.mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Real>
void require_hermitian(const BasicDenseOperator<Real>& m, Real tol = Real(1e-12)) {
  const Real dev = (m.mat - m.mat.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= tol))
    throw std::invalid_argument("operator is not Hermitian within " + std::to_string(tol) + " (deviation " + std::to_string(dev) + ")");
}

// <v|M|v>, conjugate-linear in the first argument.
template <typename Real>
std::complex<Real> expectation(const BasicDenseOperator<Real>& m, const BasicPureVector<Real>& v) {
  if (m.layout != v.layout) throw std::invalid_argument("expectation: layouts differ");
  return v.amp.dot(m.mat * v.amp);
}

template <typename Real>
BasicDenseOperator<Real> outer(const BasicPureVector<Real>& v) {
  return BasicDenseOperator<Real>(v.amp * v.amp.adjoint(), v.layout);
}

// tr over K's registers of (K (x) I) M, without forming the big product.
// For a projector K this is the unnormalized post-measurement state of M on
// the remaining registers.
template <typename Real>
BasicDenseOperator<Real> apply_and_trace_out(const BasicDenseOperator<Real>& m, const BasicDenseOperator<Real>& k) {
  std::vector<int> k_pos_in_m;
  for (const Register& r : k.layout.registers()) {
    const int p = m.layout.position_of(r.id);
    if (p < 0) throw std::invalid_argument("apply_and_trace_out: id " + std::to_string(r.id) + " not in target layout");
    if (m.layout.at(p).dim != r.dim) throw std::invalid_argument("apply_and_trace_out: register dimension mismatch");
    k_pos_in_m.push_back(p);
  }
  std::vector<int> rest_pos;
  for (int p = 0; p < m.layout.count(); ++p)
    if (std::find(k_pos_in_m.begin(), k_pos_in_m.end(), p) == k_pos_in_m.end()) rest_pos.push_back(p);

  // Offsets follow K's own register order, so K needs no pre-permutation.
  const std::vector<long> off_k = detail::subindex_offsets(m.layout, k_pos_in_m);
  const std::vector<long> off_r = detail::subindex_offsets(m.layout, rest_pos);
  const long nk = static_cast<long>(off_k.size());
  const long nr = static_cast<long>(off_r.size());

  typename BasicDenseOperator<Real>::Matrix out(nr, nr);
  for (long a = 0; a < nr; ++a)
    for (long b = 0; b < nr; ++b) {
      std::complex<Real> sum{};
      for (long s = 0; s < nk; ++s) {
        const long col = off_k[static_cast<std::size_t>(s)] + off_r[static_cast<std::size_t>(b)];
        for (long u = 0; u < nk; ++u)
          sum += k.mat(s, u) * m.mat(off_k[static_cast<std::size_t>(u)] + off_r[static_cast<std::size_t>(a)], col);
      }
      out(a, b) = sum;
    }
  return BasicDenseOperator<Real>(std::move(out), m.layout.without(k.layout.ids()));
}

// Singular values of the reshape of v across the party cut, nonincreasing.
// Their squares sum to |v|^2; the input is not renormalized.
template <typename Real>
std::vector<Real> schmidt_values(const BasicPureVector<Real>& v, Party left = Party::Alice) {
  if (!(v.norm() > Real(0))) throw std::invalid_argument("schmidt_values: zero vector");
  const BasicPureVector<Real> w = permute_registers(v, cut_order(v.layout, left));
  const auto [da, db] = cut_dims(v.layout, left);
  typename BasicDenseOperator<Real>::Matrix m(da, db);
  for (long a = 0; a < da; ++a)
    for (long b = 0; b < db; ++b) m(a, b) = w.amp(a * db + b);
  Eigen::JacobiSVD<typename BasicDenseOperator<Real>::Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<Real>(sv.data(), sv.data() + sv.size());
}

template <typename Real>
int schmidt_rank(const BasicPureVector<Real>& v, Party left = Party::Alice, Real tol = Real(1e-10)) {
  int rank = 0;
  for (Real s : schmidt_values(v, left))
    if (s > tol) ++rank;
  return rank;
}

// Smallest eigenvalue and a unit eigenvector of a Hermitian operator. With a
// degenerate bottom eigenvalue any vector of the eigenspace may come back.
template <typename Real>
std::pair<Real, BasicPureVector<Real>> min_eigenpair(const BasicDenseOperator<Real>& m, Real herm_tol = Real(1e-10)) {
  require_hermitian(m, herm_tol);
  typename BasicDenseOperator<Real>::Matrix h = (m.mat + m.mat.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<typename BasicDenseOperator<Real>::Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("min_eigenpair: eigensolver failed");
  const Real value = solver.eigenvalues()(0);
  typename BasicPureVector<Real>::Vector vec = solver.eigenvectors().col(0);
  const Real residual = (h * vec - value * vec).norm();
  if (!(residual <= Real(1e-9))) throw std::runtime_error("min_eigenpair: eigenresidual above 1e-9");
  return {value, BasicPureVector<Real>(std::move(vec), m.layout)};
}

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> hermitian_eigenvalues(const BasicDenseOperator<Real>& m, Real herm_tol = Real(1e-10)) {
  require_hermitian(m, herm_tol);
  typename BasicDenseOperator<Real>::Matrix h = (m.mat + m.mat.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<typename BasicDenseOperator<Real>::Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

}  // namespace distil
