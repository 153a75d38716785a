#pragma once

// BCS pair states in momentum space. Each mode pairs an electron with its
// time-reversed partner; the mode list holds one representative per pair and
// the two paired members share the amplitudes (u, v). The per-pair state in
// the occupation basis of (alpha, -alpha) is u|00> + v|11>.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entorder/numeric.hpp"
#include "entorder/tensor.hpp"
#include "entorder/tolerances.hpp"

namespace entorder {

struct PairAmplitudes {
  double u = 1.0;
  double v = 0.0;

  PairAmplitudes(double u_in, double v_in) : u(u_in), v(v_in) {
    if (u < 0.0 || v < 0.0) throw std::invalid_argument("PairAmplitudes: u, v must be nonnegative");
    if (std::abs(u * u + v * v - 1.0) > tol::structural)
      throw std::invalid_argument("PairAmplitudes: u^2 + v^2 must equal 1");
  }

  // Rescales (u, v) onto the unit circle; accepts unnormalized input.
  static PairAmplitudes normalized(double u_in, double v_in) {
    if (u_in < 0.0 || v_in < 0.0) throw std::invalid_argument("PairAmplitudes: u, v must be nonnegative");
    const double norm = std::hypot(u_in, v_in);
    if (norm == 0.0) throw std::invalid_argument("PairAmplitudes: u and v cannot both be zero");
    return PairAmplitudes(u_in / norm, v_in / norm);
  }
};

struct GapTriple {
  double delta = 0.0;    // pairing gap, >= 0
  double epsilon = 0.0;  // pair energy
  double mu = 0.0;       // chemical potential

  GapTriple(double d, double e, double m) : delta(d), epsilon(e), mu(m) {
    if (delta < 0.0) throw std::invalid_argument("GapTriple: delta must be nonnegative");
  }

  double quasiparticle_energy() const { return std::hypot(epsilon - mu, delta); }
};

// Mean-field amplitudes from a gap triple: v^2 = (1 - (eps-mu)/E)/2 with
// E = sqrt((eps-mu)^2 + delta^2). This branch reproduces the Hartree-Fock
// limit v -> 0 far above the Fermi level and satisfies 2uv = delta/E.
inline PairAmplitudes uv_from_gap(const GapTriple& g) {
  const double e = g.quasiparticle_energy();
  if (e == 0.0)
    throw std::domain_error("uv_from_gap: degenerate mode (delta = 0 and epsilon = mu)");
  const double xi = (g.epsilon - g.mu) / e;
  return PairAmplitudes(std::sqrt(0.5 * (1.0 + xi)), std::sqrt(0.5 * (1.0 - xi)));
}

// The dimensionless gap ratio delta/E expressed through the amplitudes.
inline double gap_ratio_from_uv(const PairAmplitudes& p) { return 2.0 * p.u * p.v; }

// u|00> + v|11> on the occupation basis of the (alpha, -alpha) pair.
inline ComplexVector pair_state_vector(const PairAmplitudes& p) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = p.u;
  psi(3) = p.v;
  return psi;
}

struct BcsMode {
  std::string label;
  PairAmplitudes amplitudes;
  std::optional<GapTriple> gap;
  double t_diag = 0.0;  // kinetic matrix element T_aa

  static BcsMode from_amplitudes(std::string label, PairAmplitudes amps, double t_diag = 0.0) {
    return BcsMode{std::move(label), amps, std::nullopt, t_diag};
  }

  static BcsMode from_gap(std::string label, GapTriple gap, double t_diag = 0.0) {
    BcsMode mode{std::move(label), uv_from_gap(gap), gap, t_diag};
    return mode;
  }
};

struct BcsModel {
  std::vector<BcsMode> modes;
};

namespace detail {

// Fixed evaluation order: ascending label, so sums are reproducible.
inline std::vector<std::size_t> label_order(const BcsModel& model) {
  std::vector<std::size_t> order(model.modes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&model](std::size_t a, std::size_t b) {
    return model.modes[a].label < model.modes[b].label;
  });
  return order;
}

}  // namespace detail

// Total momentum-space logarithmic negativity: sum over pair modes of
// log2(1 + 2 u v), which equals sum of log2(1 + delta/E) when gaps are given.
inline double bcs_log_negativity_total(const BcsModel& model) {
  KahanSum total;
  for (std::size_t i : detail::label_order(model)) {
    const PairAmplitudes& p = model.modes[i].amplitudes;
    total.add(std::log2(1.0 + 2.0 * p.u * p.v));
  }
  return total.value();
}

struct InteractionTerm {
  std::string partner_label;
  double v_element = 0.0;  // <alpha beta|V|alpha beta>
  double occupation = 0.0; // v_beta^2 in [0, 1]
};

using InteractionRow = std::vector<InteractionTerm>;

// Pair energy eps_alpha = T_aa + sum_beta <ab|V|ab> v_b^2, in the given term
// order (compensated).
inline double pair_energy_epsilon(double t_diag, const InteractionRow& row) {
  KahanSum sum;
  sum.add(t_diag);
  for (const InteractionTerm& term : row) {
    if (term.occupation < 0.0 || term.occupation > 1.0)
      throw std::invalid_argument("pair_energy_epsilon: occupation outside [0,1]");
    sum.add(term.v_element * term.occupation);
  }
  return sum.value();
}

// Ground-state energy. The mode list holds pair representatives; the sum over
// all paired members appears as a factor-2 weight per representative:
//   E0 = sum_reps (T_aa + eps) v^2  -  (1/2) sum_reps delta^2 / E.
// Every mode must carry its gap triple.
inline double bcs_ground_state_energy(const BcsModel& model) {
  KahanSum first;
  KahanSum second;
  for (std::size_t i : detail::label_order(model)) {
    const BcsMode& mode = model.modes[i];
    if (!mode.gap.has_value())
      throw std::invalid_argument("bcs_ground_state_energy: mode '" + mode.label +
                                  "' has no gap data (delta, epsilon, mu required)");
    const GapTriple& g = *mode.gap;
    const double e = g.quasiparticle_energy();
    if (e == 0.0)
      throw std::domain_error("bcs_ground_state_energy: degenerate mode '" + mode.label + "'");
    const double v2 = mode.amplitudes.v * mode.amplitudes.v;
    first.add((mode.t_diag + g.epsilon) * v2);
    second.add(g.delta * g.delta / e);
  }
  return first.value() - 0.5 * second.value();
}

}  // namespace entorder
