#pragma once

// Eta-pairing states: k on-site Cooper pairs created coherently across n
// sites. In the occupation mapping each site is a qubit (0 = empty,
// 1 = doubly occupied), and the k-pair state is the Dicke state of weight k.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "entorder/measures.hpp"
#include "entorder/numeric.hpp"
#include "entorder/tensor.hpp"

namespace entorder {

struct DickeSpec {
  int sites = 1;  // n
  int pairs = 0;  // k

  DickeSpec(int n, int k) : sites(n), pairs(k) {
    if (n < 1) throw std::invalid_argument("DickeSpec: need at least one site");
    if (k < 0 || k > n) throw std::invalid_argument("DickeSpec: need 0 <= k <= n");
  }
};

// Equal-amplitude superposition of all n-bit strings of weight k. Site 0 is
// the slowest index, i.e. bit n-1-s of the basis integer belongs to site s.
inline ComplexVector dicke_state_vector(const DickeSpec& s) {
  if (s.sites > 14) throw std::length_error("dicke_state_vector: n > 14 exceeds the dense cap");
  const Index dim = Index{1} << s.sites;
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial_exact(s.sites, s.pairs)));
  ComplexVector psi = ComplexVector::Zero(dim);
  for (Index idx = 0; idx < dim; ++idx)
    if (std::popcount(static_cast<std::uint64_t>(idx)) == s.pairs) psi(idx) = amp;
  return psi;
}

// Two-site reduced state of the Dicke state, named by occupation pattern:
//   p_empty_empty |00><00| + p_occ_occ |11><11| + w_psi_plus |psi+><psi+|.
struct TwoSiteRdm {
  double p_empty_empty = 0.0;
  double p_occ_occ = 0.0;
  double w_psi_plus = 0.0;

  ComplexMatrix to_matrix() const {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = p_empty_empty;
    rho(3, 3) = p_occ_occ;
    rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5 * w_psi_plus;
    return rho;
  }
};

// Closed form; identical for every site pair by permutation symmetry.
inline TwoSiteRdm eta_two_site_rdm(const DickeSpec& s) {
  if (s.sites < 2) throw std::invalid_argument("eta_two_site_rdm: need at least two sites");
  const double n = static_cast<double>(s.sites);
  const double k = static_cast<double>(s.pairs);
  const double den = n * (n - 1.0);
  return TwoSiteRdm{(n - k) * (n - k - 1.0) / den, k * (k - 1.0) / den, 2.0 * k * (n - k) / den};
}

// The ODLRO order parameter alpha: the |psi+> weight of the two-site state.
inline double alpha_order_parameter(const DickeSpec& s) { return eta_two_site_rdm(s).w_psi_plus; }

// Two-site pair correlator <01|sigma_ij|10> = k(n-k)/(n(n-1)); equals half of
// alpha.
inline double odlro_pair_correlator(const DickeSpec& s) {
  if (s.sites < 2) throw std::invalid_argument("odlro_pair_correlator: need at least two sites");
  const double n = static_cast<double>(s.sites);
  const double k = static_cast<double>(s.pairs);
  return k * (n - k) / (n * (n - 1.0));
}

// Geometric measure of the Dicke state in bits:
//   LR_G = -log2 [ C(n,k) (k/n)^k ((n-k)/n)^(n-k) ],
// evaluated in log space so it stays exact for n up to 1e8 and is
// bit-symmetric under k <-> n-k.
inline double gme_dicke_closed_form(long long n, long long k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("gme_dicke_closed_form: need 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  const double nd = static_cast<double>(n);
  const double t_occ = static_cast<double>(k) * std::log(static_cast<double>(k) / nd);
  const double t_emp = static_cast<double>(n - k) * std::log(static_cast<double>(n - k) / nd);
  const double ln_overlap_sq = log_binomial(n, k) + (t_occ + t_emp);
  return -ln_overlap_sq / std::numbers::ln2;
}

inline double gme_dicke_closed_form(const DickeSpec& s) {
  return gme_dicke_closed_form(s.sites, s.pairs);
}

// Maximal squared product overlap of the Dicke state in closed form.
inline double dicke_product_overlap_closed_form(long long n, long long k) {
  return std::exp2(-gme_dicke_closed_form(n, k));
}

// Thermodynamic-limit order parameter at filling ratio r = k/n.
inline double alpha_from_r(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("alpha_from_r: r outside [0,1]");
  return 2.0 * r * (1.0 - r);
}

// Entanglement density as a function of alpha, exactly as printed in the
// source derivation: h((1 - sqrt(1 - alpha))/2). Coincides with the
// entanglement-of-formation/concurrence functional at C = sqrt(alpha).
inline double de_from_alpha_paper(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("de_from_alpha_paper: alpha outside [0,1]");
  return binary_entropy((1.0 - std::sqrt(1.0 - alpha)) / 2.0);
}

struct DickeAsymptoticsRow {
  long long n = 0;
  long long k = 0;
  double lrg = 0.0;            // exact LR_G(n, k)
  double lrg_per_site = 0.0;   // LR_G / n
  double de_claimed = 0.0;     // extensive-density candidate h(r)
  double log_asymptote = 0.0;  // logarithmic candidate (1/2) log2(2 pi n r (1-r))
};

// Tabulates the exact geometric measure against both candidate asymptotes so
// callers can see which one the exact values approach. k = round-half-even
// of r*n.
inline std::vector<DickeAsymptoticsRow> dicke_asymptotics_report(double r,
                                                                 std::vector<long long> n_grid) {
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("dicke_asymptotics_report: r must lie strictly inside (0,1)");
  std::sort(n_grid.begin(), n_grid.end());
  std::vector<DickeAsymptoticsRow> rows;
  rows.reserve(n_grid.size());
  for (long long n : n_grid) {
    if (n < 1 || n > 100000000LL)
      throw std::domain_error("dicke_asymptotics_report: n outside [1, 1e8]");
    const long long k = std::clamp(round_half_even(r * static_cast<double>(n)), 0LL, n);
    DickeAsymptoticsRow row;
    row.n = n;
    row.k = k;
    row.lrg = gme_dicke_closed_form(n, k);
    row.lrg_per_site = row.lrg / static_cast<double>(n);
    row.de_claimed = binary_entropy(r);
    row.log_asymptote = 0.5 * std::log2(2.0 * std::numbers::pi * static_cast<double>(n) * r * (1.0 - r));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace entorder
