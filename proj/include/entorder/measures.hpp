#pragma once

// Entanglement quantifiers: negativity and logarithmic negativity (base-2),
// binary entropy, entanglement of formation from concurrence, geometric
// measure via a seeded nearest-product-state search, fully entangled fraction
// and the qubit teleportation-fidelity map. All logarithms are base 2 (bits).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "entorder/numeric.hpp"
#include "entorder/tensor.hpp"
#include "entorder/tolerances.hpp"

namespace entorder {

// Nearest-product-state searches refuse above this total dimension.
inline constexpr Index max_optimizer_dim = Index{1} << 12;

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 500;
  double convergence_tol = 1e-10;
  std::uint64_t seed = 12345;

  void validate() const {
    if (restarts <= 0 || max_iterations <= 0 || convergence_tol <= 0.0)
      throw std::invalid_argument("OptimizerConfig: all fields must be positive");
  }
};

// Sum of |negative eigenvalues| of the partial transpose.
inline double negativity(const ComplexMatrix& rho, const BipartiteShape& shape) {
  require_density_matrix(rho, "negativity");
  if (rho.rows() != shape.total())
    throw std::invalid_argument("negativity: shape does not match matrix dimension");
  const std::vector<double> evals = hermitian_eigenvalues(partial_transpose(rho, shape, Subsystem::B));
  KahanSum neg;
  for (double ev : evals)
    if (ev < -tol::negativity_clip) neg.add(-ev);
  return neg.value();
}

inline double log_negativity(const ComplexMatrix& rho, const BipartiteShape& shape) {
  return std::log2(1.0 + 2.0 * negativity(rho, shape));
}

// Negativity of a bipartite pure state from its Schmidt coefficients:
// ((sum_i lambda_i)^2 - 1) / 2.
inline double pure_negativity_from_schmidt(const SchmidtSpectrum& s) {
  KahanSum sum;
  for (double c : s.coefficients) {
    if (c < 0.0) throw std::invalid_argument("pure_negativity_from_schmidt: negative coefficient");
    sum.add(c);
  }
  const double total = sum.value();
  return (total * total - 1.0) / 2.0;
}

// Binary entropy in bits. Evaluated from the canonical pair (max(x,1-x),
// 1-max(x,1-x)) so that h(x) and h(1-x) are bit-identical: the subtraction
// 1-y is exact for y >= 1/2 (Sterbenz), making the canonical form independent
// of which of the two arguments was passed.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0,1]");
  const double hi = std::max(x, 1.0 - x);
  const double lo = 1.0 - hi;
  if (lo == 0.0) return 0.0;
  const double h = -hi * std::log2(hi) - lo * std::log2(lo);
  return h == 0.0 ? 0.0 : h;
}

// Entanglement of formation of a two-qubit state as a function of its
// concurrence: h((1 + sqrt(1 - C^2)) / 2).
inline double eof_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("eof_from_concurrence: argument outside [0,1]");
  const double root = std::sqrt((1.0 - c) * (1.0 + c));
  return binary_entropy((1.0 + root) / 2.0);
}

struct ProductOverlap {
  double overlap_sq = 0.0;                // max_{product} |<product|psi>|^2
  std::vector<ComplexVector> factors;     // one normalized local vector per subsystem
  bool converged = false;                 // best restart met the convergence tolerance
};

namespace detail {

inline ComplexVector random_local_state(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  const double n = v.norm();
  return n > 0.0 ? ComplexVector(v / n) : random_local_state(dim, rng);
}

}  // namespace detail

// Maximal squared overlap with a product state, found by alternating
// single-site updates: with all factors but one fixed, the optimal free
// factor is the normalized partial inner product, so every update is monotone
// nondecreasing in the overlap. Seeded multi-restart; best restart wins.
inline ProductOverlap nearest_product_overlap(const ComplexVector& psi, const MultipartiteShape& shape,
                                              const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (psi.size() != shape.total())
    throw std::invalid_argument("nearest_product_overlap: shape does not match vector length");
  if (psi.size() > max_optimizer_dim)
    throw std::length_error("nearest_product_overlap: dimension exceeds the optimizer cap 2^12");
  require_normalized(psi, "nearest_product_overlap");

  const int sites = shape.sites();
  const Index dim = psi.size();
  if (sites == 1) return ProductOverlap{1.0, {psi}, true};

  // digit(idx, s) lookup tables
  std::vector<std::vector<int>> digits(sites, std::vector<int>(static_cast<std::size_t>(dim)));
  for (Index idx = 0; idx < dim; ++idx) {
    Index rem = idx;
    for (int s = sites - 1; s >= 0; --s) {
      digits[s][static_cast<std::size_t>(idx)] = static_cast<int>(rem % shape.local_dims[s]);
      rem /= shape.local_dims[s];
    }
  }

  ProductOverlap best;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(restart));
    std::vector<ComplexVector> factors;
    factors.reserve(sites);
    for (int s = 0; s < sites; ++s) factors.push_back(detail::random_local_state(shape.local_dims[s], rng));

    double overlap_sq = 0.0;
    bool converged = false;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      double sweep_overlap_sq = 0.0;
      for (int s = 0; s < sites; ++s) {
        ComplexVector g = ComplexVector::Zero(shape.local_dims[s]);
        for (Index idx = 0; idx < dim; ++idx) {
          Complex w{1.0, 0.0};
          for (int t = 0; t < sites; ++t)
            if (t != s) w *= std::conj(factors[t](digits[t][static_cast<std::size_t>(idx)]));
          g(digits[s][static_cast<std::size_t>(idx)]) += w * psi(idx);
        }
        const double norm = g.norm();
        if (norm == 0.0) {
          factors[s] = detail::random_local_state(shape.local_dims[s], rng);
          continue;
        }
        factors[s] = g / norm;
        sweep_overlap_sq = norm * norm;
      }
      if (sweep_overlap_sq - overlap_sq < cfg.convergence_tol && iter > 0) {
        overlap_sq = std::max(overlap_sq, sweep_overlap_sq);
        converged = true;
        break;
      }
      overlap_sq = sweep_overlap_sq;
    }
    if (overlap_sq > best.overlap_sq) best = ProductOverlap{overlap_sq, factors, converged};
  }
  return best;
}

// Geometric measure of entanglement: -log2 of the maximal squared product
// overlap. Nonnegative; 0 for product states.
inline double geometric_measure(const ComplexVector& psi, const MultipartiteShape& shape,
                                const OptimizerConfig& cfg = {}) {
  const double overlap_sq = std::min(nearest_product_overlap(psi, shape, cfg).overlap_sq, 1.0);
  return std::max(0.0, -std::log2(overlap_sq));
}

// Fully entangled fraction of a two-qubit state: max over maximally entangled
// |Phi> of <Phi|rho|Phi>. Every maximally entangled two-qubit state is
// (U x I)|psi+> for a unitary U, i.e. vec(W)/sqrt(2) for a unitary W, so the
// scan runs over 2x2 unitaries: projected power ascent with polar retraction,
// warm-started from the dominant eigenvector plus seeded random restarts.
inline double fully_entangled_fraction(const ComplexMatrix& rho, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("fully_entangled_fraction: expected a 4x4 two-qubit state");
  require_density_matrix(rho, "fully_entangled_fraction");

  using Matrix2 = Eigen::Matrix2cd;
  using Vector4 = Eigen::Vector4cd;

  const auto unvec = [](const Vector4& u) {
    Matrix2 m;
    m << u(0), u(1), u(2), u(3);
    return m;
  };
  const auto vec = [](const Matrix2& m) {
    Vector4 u;
    u << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return u;
  };
  const auto nearest_unitary = [](const Matrix2& m) -> Matrix2 {
    Eigen::JacobiSVD<Matrix2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
  };
  const auto objective = [&rho](const Vector4& u) { return std::real(u.dot(rho * u)); };

  const auto ascend = [&](Matrix2 w) {
    Vector4 u = vec(w) / std::numbers::sqrt2;
    double f = objective(u);
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      const Vector4 grad = rho * u;
      if (grad.norm() == 0.0) break;
      const Vector4 next = vec(nearest_unitary(unvec(grad))) / std::numbers::sqrt2;
      const double fn = objective(next);
      if (fn - f < cfg.convergence_tol) {
        f = std::max(f, fn);
        break;
      }
      u = next;
      f = fn;
    }
    return f;
  };

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
  Vector4 top = solver.eigenvectors().col(3);
  double best = ascend(nearest_unitary(unvec(top)));
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(restart));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix2 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    best = std::max(best, ascend(nearest_unitary(m)));
  }
  return best;
}

// Standard two-qubit teleportation fidelity attained from a resource state of
// fully entangled fraction F.
inline double teleportation_fidelity(double fef) {
  if (!(fef >= 0.0 && fef <= 1.0)) throw std::domain_error("teleportation_fidelity: argument outside [0,1]");
  return (2.0 * fef + 1.0) / 3.0;
}

}  // namespace entorder
