#pragma once

// Numerical tolerances shared by the library and its test suites.

namespace entorder::tol {

// Structural identities: hermiticity, trace preservation, state normalization.
inline constexpr double structural = 1e-12;

// Dense eigenvalue / singular-value accuracy.
inline constexpr double spectral = 1e-10;

// Eigenvalue floor below which a density matrix is rejected as non-PSD.
inline constexpr double psd_floor = -1e-10;

// Partial-transpose eigenvalues in [-clip, 0) are treated as zero so that
// separable inputs do not acquire spurious negativity.
inline constexpr double negativity_clip = 1e-12;

}  // namespace entorder::tol
