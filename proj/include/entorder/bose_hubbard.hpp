#pragma once

// Bose-Hubbard limit states: the deeply superfluid state of N atoms over M
// wells and site-local Mott product states, with the binomial Schmidt
// spectrum of the one-site-vs-rest cut, the exact negativity, its CLT and
// Poisson-regime approximations, and the ODLRO order parameter.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entorder/numeric.hpp"
#include "entorder/tensor.hpp"

namespace entorder {

// Series tails are truncated once terms drop below this.
inline constexpr double series_tail_tol = 1e-16;

struct SuperfluidSpec {
  long long atoms = 1;  // N
  long long sites = 1;  // M

  SuperfluidSpec(long long n, long long m) : atoms(n), sites(m) {
    if (n < 1 || m < 1) throw std::invalid_argument("SuperfluidSpec: need N >= 1 and M >= 1");
  }

  double hopping_fraction() const { return 1.0 / static_cast<double>(sites); }  // p = 1/M
};

using Occupation = std::vector<long long>;

// All compositions of `atoms` into `sites` parts, colexicographic: the last
// site's occupation varies slowest. Fixed order keeps downstream vectors
// byte-stable across runs.
inline std::vector<Occupation> enumerate_compositions(long long atoms, long long sites) {
  if (sites < 1) throw std::invalid_argument("enumerate_compositions: need at least one site");
  std::vector<Occupation> result;
  Occupation current(static_cast<std::size_t>(sites), 0);
  const auto recurse = [&](auto&& self, long long remaining, long long site) -> void {
    if (site == 0) {
      current[0] = remaining;
      result.push_back(current);
      return;
    }
    for (long long occ = 0; occ <= remaining; ++occ) {
      current[static_cast<std::size_t>(site)] = occ;
      self(self, remaining - occ, site - 1);
    }
  };
  recurse(recurse, atoms, sites - 1);
  return result;
}

// Amplitude of an occupation pattern in the superfluid state:
// sqrt(N!/(n_1! ... n_M!)) * M^(-N/2).
inline double superfluid_amplitude(const SuperfluidSpec& s, const Occupation& occ) {
  double log_multinomial = std::lgamma(static_cast<double>(s.atoms) + 1.0);
  for (long long n : occ) log_multinomial -= std::lgamma(static_cast<double>(n) + 1.0);
  return std::exp(0.5 * log_multinomial -
                  0.5 * static_cast<double>(s.atoms) * std::log(static_cast<double>(s.sites)));
}

// Occupation-basis expansion in composition order.
inline std::vector<std::pair<Occupation, double>> superfluid_amplitudes(const SuperfluidSpec& s) {
  // composition count C(N+M-1, M-1), estimated in log space before enumerating
  if (log_binomial(s.atoms + s.sites - 1, s.sites - 1) > std::log(1.0e6))
    throw std::length_error("superfluid_amplitudes: composition count exceeds 1e6");
  const std::vector<Occupation> basis = enumerate_compositions(s.atoms, s.sites);
  std::vector<std::pair<Occupation, double>> out;
  out.reserve(basis.size());
  for (const Occupation& occ : basis) out.emplace_back(occ, superfluid_amplitude(s, occ));
  return out;
}

// One tensor factor of dimension N+1 per site (occupations 0..N).
inline MultipartiteShape superfluid_shape(const SuperfluidSpec& s) {
  return MultipartiteShape(std::vector<Index>(static_cast<std::size_t>(s.sites),
                                              static_cast<Index>(s.atoms) + 1));
}

// The superfluid state embedded in the full per-site occupation product
// space; site 0 is the slowest index.
inline ComplexVector superfluid_state_vector(const SuperfluidSpec& s) {
  const MultipartiteShape shape = superfluid_shape(s);
  check_dense_dim(shape.total(), "superfluid_state_vector");
  ComplexVector psi = ComplexVector::Zero(shape.total());
  for (const auto& [occ, amp] : superfluid_amplitudes(s)) {
    Index idx = 0;
    for (int site = 0; site < s.sites; ++site)
      idx += static_cast<Index>(occ[static_cast<std::size_t>(site)]) * shape.stride(site);
    psi(idx) = amp;
  }
  psi /= psi.norm();
  return psi;
}

// Mott-insulator product state: one local vector per site. The default is
// one atom per site in local occupation registers of dimension local_dim.
struct MottSpec {
  std::vector<ComplexVector> locals;

  explicit MottSpec(std::vector<ComplexVector> site_states) : locals(std::move(site_states)) {
    if (locals.empty()) throw std::invalid_argument("MottSpec: need at least one site");
    for (const ComplexVector& v : locals) require_normalized(v, "MottSpec");
  }

  static MottSpec unit_filling(int sites, Index local_dim = 2) {
    if (local_dim < 2) throw std::invalid_argument("MottSpec: local dimension must be >= 2");
    ComplexVector one = ComplexVector::Zero(local_dim);
    one(1) = 1.0;
    return MottSpec(std::vector<ComplexVector>(static_cast<std::size_t>(sites), one));
  }

  MultipartiteShape shape() const {
    std::vector<Index> dims;
    dims.reserve(locals.size());
    for (const ComplexVector& v : locals) dims.push_back(v.size());
    return MultipartiteShape(std::move(dims));
  }
};

inline ComplexVector mott_state_vector(const MottSpec& m) {
  ComplexVector psi = m.locals.front();
  for (std::size_t s = 1; s < m.locals.size(); ++s) {
    check_dense_dim(psi.size() * m.locals[s].size(), "mott_state_vector");
    ComplexVector next(psi.size() * m.locals[s].size());
    for (Index i = 0; i < psi.size(); ++i)
      next.segment(i * m.locals[s].size(), m.locals[s].size()) = psi(i) * m.locals[s];
    psi = std::move(next);
  }
  return psi;
}

// Schmidt coefficients of the one-site-vs-rest cut in closed form:
// lambda_k = sqrt(C(N,k) p^k (1-p)^(N-k)), p = 1/M, descending.
inline SchmidtSpectrum superfluid_schmidt(const SuperfluidSpec& s) {
  if (s.sites == 1) return SchmidtSpectrum{{1.0}};
  const double log_p = -std::log(static_cast<double>(s.sites));
  const double log_q = std::log1p(-s.hopping_fraction());
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(s.atoms) + 1);
  for (long long k = 0; k <= s.atoms; ++k)
    coeffs.push_back(std::exp(0.5 * (log_binomial(s.atoms, k) + static_cast<double>(k) * log_p +
                                     static_cast<double>(s.atoms - k) * log_q)));
  std::sort(coeffs.begin(), coeffs.end(), std::greater<double>());
  return SchmidtSpectrum{std::move(coeffs)};
}

// Exact one-site-vs-rest negativity, Eq.-(23)-style:
//   ( (sum_k sqrt(C(N,k) p^k (1-p)^(N-k)))^2 - 1 ) / 2,
// evaluated in log space with compensated summation; good up to N ~ 1e6.
inline double superfluid_negativity_exact(const SuperfluidSpec& s) {
  if (s.sites == 1) return 0.0;
  const double log_p = -std::log(static_cast<double>(s.sites));
  const double log_q = std::log1p(-s.hopping_fraction());
  KahanSum sum;
  for (long long k = 0; k <= s.atoms; ++k)
    sum.add(std::exp(0.5 * (log_binomial(s.atoms, k) + static_cast<double>(k) * log_p +
                            static_cast<double>(s.atoms - k) * log_q)));
  const double total = sum.value();
  return (total * total - 1.0) / 2.0;
}

enum class CltVariant { paper, corrected };

struct CltEstimate {
  double value = 0.0;
  // The Gaussian replacement is only trustworthy for a wide binomial; flagged
  // when N p (1-p) < 25.
  bool low_confidence = false;
};

// Central-limit approximations to the exact sum. `paper` reproduces the
// as-published constant ((8 N p (1-p))^(1/2) - 1)/2 verbatim; `corrected`
// carries the Gaussian integral with its minus-sign exponent and pi factor,
// giving sqrt(2 pi N p (1-p)) - 1/2. The two are never merged; the exact sum
// is the arbiter.
inline CltEstimate superfluid_negativity_clt(const SuperfluidSpec& s, CltVariant variant) {
  const double p = s.hopping_fraction();
  const double q = 1.0 - p;
  const double npq = static_cast<double>(s.atoms) * p * q;
  if (npq == 0.0)
    throw std::domain_error("superfluid_negativity_clt: degenerate binomial (p in {0,1})");
  CltEstimate est;
  est.low_confidence = npq < 25.0;
  if (variant == CltVariant::paper)
    est.value = (std::sqrt(8.0 * npq) - 1.0) / 2.0;
  else
    est.value = std::sqrt(2.0 * std::numbers::pi * npq) - 0.5;
  return est;
}

// Fixed-filling thermodynamic limit of the exact sum: the binomial becomes
// Poisson with mean lambda = N/M, so
//   negativity -> ( (sum_k e^(-lambda/2) lambda^(k/2) / sqrt(k!))^2 - 1 ) / 2.
inline double superfluid_negativity_poisson_limit(double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("superfluid_negativity_poisson_limit: lambda must be >= 0");
  if (lambda == 0.0) return 0.0;
  KahanSum sum;
  const double log_lambda = std::log(lambda);
  for (long long k = 0;; ++k) {
    const double term = std::exp(-0.5 * lambda + 0.5 * static_cast<double>(k) * log_lambda -
                                 0.5 * std::lgamma(static_cast<double>(k) + 1.0));
    sum.add(term);
    if (static_cast<double>(k) > lambda && term < series_tail_tol) break;
  }
  const double total = sum.value();
  return (total * total - 1.0) / 2.0;
}

// ODLRO correlator <a_i^dag a_j> (i != j) on the superfluid state; N/M in
// closed form, independent of the pair by translation symmetry.
inline double bh_odlro_correlator(const SuperfluidSpec& s) {
  return static_cast<double>(s.atoms) / static_cast<double>(s.sites);
}

// Thermodynamic order parameter r = sqrt(N/M) = sqrt(<a_i^dag a_j>), the
// finite-size surrogate for the superfluid <a_m> = r.
inline double bh_order_parameter_r(const SuperfluidSpec& s) {
  return std::sqrt(bh_odlro_correlator(s));
}

// Truncated boson annihilation operator on a local register: a|n> = sqrt(n)|n-1>.
inline ComplexMatrix boson_annihilation(Index local_dim) {
  ComplexMatrix a = ComplexMatrix::Zero(local_dim, local_dim);
  for (Index n = 1; n < local_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// |<a_m>| on the explicit superfluid vector. Identically zero: the state has
// fixed total atom number, so a_m maps it into an orthogonal sector.
inline double superfluid_annihilation_expectation(const SuperfluidSpec& s) {
  const MultipartiteShape shape = superfluid_shape(s);
  if (shape.total() > max_dense_dim) return 0.0;  // number conservation, no dense check possible
  const ComplexVector psi = superfluid_state_vector(s);
  const ComplexVector lowered = apply_local_operator(psi, shape, 0, boson_annihilation(shape.local_dims[0]));
  return std::abs(psi.dot(lowered));
}

}  // namespace entorder
