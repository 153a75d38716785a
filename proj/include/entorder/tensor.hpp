#pragma once

// Dense complex linear algebra on small Hilbert spaces: composition,
// reduction, partial transposition, Hermitian spectra and Schmidt
// decomposition. Index convention throughout the library: subsystem 0 is the
// slowest-varying index, i.e. the composite index of digits (i_0, ..., i_S-1)
// with local dimensions (d_0, ..., d_S-1) is i_0*d_1*...*d_S-1 + ... + i_S-1.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "entorder/tolerances.hpp"

namespace entorder {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Dense representation cap. Everything in the verification and acceptance
// suites fits; beyond this the library refuses rather than thrash.
inline constexpr Index max_dense_dim = Index{1} << 14;

inline void check_dense_dim(Index dim, const char* what) {
  if (dim <= 0 || dim > max_dense_dim)
    throw std::length_error(std::string(what) +
                            ": Hilbert-space dimension exceeds the dense cap 2^14 (got " +
                            std::to_string(dim) + ")");
}

struct BipartiteShape {
  Index dim_a = 0;
  Index dim_b = 0;

  BipartiteShape(Index a, Index b) : dim_a(a), dim_b(b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("BipartiteShape: dimensions must be positive");
  }
  Index total() const { return dim_a * dim_b; }
};

struct MultipartiteShape {
  std::vector<Index> local_dims;

  explicit MultipartiteShape(std::vector<Index> dims) : local_dims(std::move(dims)) {
    if (local_dims.empty()) throw std::invalid_argument("MultipartiteShape: need at least one subsystem");
    for (Index d : local_dims)
      if (d <= 0) throw std::invalid_argument("MultipartiteShape: dimensions must be positive");
  }

  Index total() const {
    Index t = 1;
    for (Index d : local_dims) t *= d;
    return t;
  }
  int sites() const { return static_cast<int>(local_dims.size()); }

  // Element stride of subsystem s under the row-major convention.
  Index stride(int s) const {
    Index t = 1;
    for (std::size_t j = s + 1; j < local_dims.size(); ++j) t *= local_dims[j];
    return t;
  }
};

enum class Subsystem { A, B };

struct SchmidtSpectrum {
  std::vector<double> coefficients;  // nonnegative, descending; squares sum to 1
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_dense_dim(a.rows() * b.rows(), "kron");
  check_dense_dim(a.cols() * b.cols(), "kron");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace detail {

// Composite-index split for a keep/trace partition. Any composite index is
// base[p] + off[t] where p runs over kept digits and t over traced digits;
// the two digit sets occupy disjoint strides, so the contributions add.
struct KeepTraceIndexer {
  std::vector<Index> base;  // size: prod of kept dims
  std::vector<Index> off;   // size: prod of traced dims
  Index kept_dim = 1;
  Index traced_dim = 1;

  KeepTraceIndexer(const MultipartiteShape& shape, const std::vector<int>& keep) {
    const int sites = shape.sites();
    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    if (std::adjacent_find(keep_sorted.begin(), keep_sorted.end()) != keep_sorted.end())
      throw std::invalid_argument("partial_trace: duplicate keep index");
    for (int s : keep_sorted)
      if (s < 0 || s >= sites) throw std::out_of_range("partial_trace: keep index out of range");

    std::vector<char> kept(sites, 0);
    for (int s : keep_sorted) kept[s] = 1;

    std::vector<int> traced;
    for (int s = 0; s < sites; ++s)
      if (!kept[s]) traced.push_back(s);

    for (int s : keep_sorted) kept_dim *= shape.local_dims[s];
    for (int s : traced) traced_dim *= shape.local_dims[s];

    base.assign(static_cast<std::size_t>(kept_dim), 0);
    off.assign(static_cast<std::size_t>(traced_dim), 0);
    fill(shape, keep_sorted, base);
    fill(shape, traced, off);
  }

 private:
  static void fill(const MultipartiteShape& shape, const std::vector<int>& subs,
                   std::vector<Index>& table) {
    for (Index c = 0; c < static_cast<Index>(table.size()); ++c) {
      Index rem = c;
      Index composite = 0;
      for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        const Index d = shape.local_dims[*it];
        composite += (rem % d) * shape.stride(*it);
        rem /= d;
      }
      table[static_cast<std::size_t>(c)] = composite;
    }
  }
};

}  // namespace detail

// Reduced density matrix on the kept subsystems (in their original order);
// trace preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const MultipartiteShape& shape,
                                   const std::vector<int>& keep) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("partial_trace: matrix must be square");
  if (rho.rows() != shape.total())
    throw std::invalid_argument("partial_trace: shape does not match matrix dimension");
  const detail::KeepTraceIndexer ix(shape, keep);
  ComplexMatrix out = ComplexMatrix::Zero(ix.kept_dim, ix.kept_dim);
  for (Index p = 0; p < ix.kept_dim; ++p)
    for (Index q = 0; q < ix.kept_dim; ++q) {
      Complex acc{0.0, 0.0};
      for (Index t = 0; t < ix.traced_dim; ++t)
        acc += rho(ix.base[p] + ix.off[t], ix.base[q] + ix.off[t]);
      out(p, q) = acc;
    }
  return out;
}

// Tr_rest |psi><psi| without materializing the full density matrix. Used
// wherever the pure-state reduction of a large register is needed.
inline ComplexMatrix reduced_density_matrix(const ComplexVector& psi, const MultipartiteShape& shape,
                                            const std::vector<int>& keep) {
  if (psi.size() != shape.total())
    throw std::invalid_argument("reduced_density_matrix: shape does not match vector length");
  const detail::KeepTraceIndexer ix(shape, keep);
  ComplexMatrix out = ComplexMatrix::Zero(ix.kept_dim, ix.kept_dim);
  for (Index p = 0; p < ix.kept_dim; ++p)
    for (Index q = 0; q <= p; ++q) {
      Complex acc{0.0, 0.0};
      for (Index t = 0; t < ix.traced_dim; ++t)
        acc += psi(ix.base[p] + ix.off[t]) * std::conj(psi(ix.base[q] + ix.off[t]));
      out(p, q) = acc;
      out(q, p) = std::conj(acc);
    }
  return out;
}

// Transpose on the chosen tensor factor only. Involution; preserves trace and
// hermiticity.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteShape& shape,
                                       Subsystem which) {
  if (rho.rows() != rho.cols() || rho.rows() != shape.total())
    throw std::invalid_argument("partial_transpose: shape does not match matrix dimension");
  const Index da = shape.dim_a, db = shape.dim_b;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Index ia = 0; ia < da; ++ia)
    for (Index ja = 0; ja < da; ++ja) {
      if (which == Subsystem::A)
        out.block(ia * db, ja * db, db, db) = rho.block(ja * db, ia * db, db, db);
      else
        out.block(ia * db, ja * db, db, db) = rho.block(ia * db, ja * db, db, db).transpose();
    }
  return out;
}

// All eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol::spectral)
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed to converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

inline void require_normalized(const ComplexVector& psi, const char* what) {
  if (std::abs(psi.norm() - 1.0) > tol::spectral)
    throw std::invalid_argument(std::string(what) + ": state vector is not normalized");
}

// Singular values of the dim_a x dim_b reshaping of psi, descending.
inline SchmidtSpectrum schmidt_decompose(const ComplexVector& psi, const BipartiteShape& shape) {
  if (psi.size() != shape.total())
    throw std::invalid_argument("schmidt_decompose: shape does not match vector length");
  require_normalized(psi, "schmidt_decompose");
  ComplexMatrix m(shape.dim_a, shape.dim_b);
  for (Index i = 0; i < shape.dim_a; ++i)
    for (Index j = 0; j < shape.dim_b; ++j) m(i, j) = psi(i * shape.dim_b + j);
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return SchmidtSpectrum{std::vector<double>(sv.data(), sv.data() + sv.size())};
}

// Reorders tensor factors: new_order[j] names the original subsystem that
// becomes position j of the output. Used to bring an arbitrary site to the
// front before a bipartite cut.
inline ComplexVector permute_subsystems(const ComplexVector& psi, const MultipartiteShape& shape,
                                        const std::vector<int>& new_order) {
  const int sites = shape.sites();
  if (static_cast<int>(new_order.size()) != sites)
    throw std::invalid_argument("permute_subsystems: order must name every subsystem once");
  std::vector<char> seen(sites, 0);
  for (int s : new_order) {
    if (s < 0 || s >= sites || seen[s]) throw std::invalid_argument("permute_subsystems: invalid permutation");
    seen[s] = 1;
  }
  if (psi.size() != shape.total())
    throw std::invalid_argument("permute_subsystems: shape does not match vector length");

  std::vector<Index> new_dims(sites);
  for (int j = 0; j < sites; ++j) new_dims[j] = shape.local_dims[new_order[j]];
  std::vector<Index> new_stride(sites, 1);
  for (int j = sites - 2; j >= 0; --j) new_stride[j] = new_stride[j + 1] * new_dims[j + 1];
  std::vector<Index> target_stride(sites);  // stride of original subsystem s in the output
  for (int j = 0; j < sites; ++j) target_stride[new_order[j]] = new_stride[j];

  ComplexVector out(psi.size());
  for (Index idx = 0; idx < psi.size(); ++idx) {
    Index rem = idx;
    Index target = 0;
    for (int s = sites - 1; s >= 0; --s) {
      target += (rem % shape.local_dims[s]) * target_stride[s];
      rem /= shape.local_dims[s];
    }
    out(target) = psi(idx);
  }
  return out;
}

// (I x ... x op x ... x I) |psi> with op acting on `site`.
inline ComplexVector apply_local_operator(const ComplexVector& psi, const MultipartiteShape& shape,
                                          int site, const ComplexMatrix& op) {
  if (psi.size() != shape.total())
    throw std::invalid_argument("apply_local_operator: shape does not match vector length");
  if (site < 0 || site >= shape.sites())
    throw std::out_of_range("apply_local_operator: site out of range");
  const Index d = shape.local_dims[site];
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("apply_local_operator: operator does not match local dimension");
  const Index stride = shape.stride(site);
  const Index outer = psi.size() / (d * stride);
  ComplexVector out = ComplexVector::Zero(psi.size());
  for (Index o = 0; o < outer; ++o)
    for (Index inner = 0; inner < stride; ++inner) {
      const Index anchor = o * d * stride + inner;
      for (Index i = 0; i < d; ++i) {
        Complex acc{0.0, 0.0};
        for (Index j = 0; j < d; ++j) acc += op(i, j) * psi(anchor + j * stride);
        out(anchor + i * stride) = acc;
      }
    }
  return out;
}

inline bool is_density_matrix(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol::structural) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol::structural ||
      std::abs(rho.trace().imag()) > tol::structural)
    return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.info() == Eigen::Success && solver.eigenvalues().minCoeff() >= tol::psd_floor;
}

inline void require_density_matrix(const ComplexMatrix& rho, const char* what) {
  if (!is_density_matrix(rho))
    throw std::invalid_argument(std::string(what) + ": input is not a density matrix");
}

}  // namespace entorder
