#pragma once

#include "qtrans/params.hpp"

namespace qtrans {

/// Highest oscillator level the evaluators accept. The normalized recurrence
/// is stable far beyond this, but nothing in the transport analysis needs
/// more, and the perturbation prefactors are validated only up to here.
inline constexpr int kMaxOscillatorLevel = 50;

/// Normalized harmonic-oscillator eigenfunction phi_n(xi) for displacement
/// xi from the trap center, evaluated with the normalized three-term
/// recurrence (no factorials are formed). Underflows cleanly to 0 in the far
/// Gaussian tail.
double oscillator_eigenfunction(int n, double xi, const PhysicalParams& params);

/// E_n = (n + 1/2) hbar omega0.
double oscillator_energy(int n, const PhysicalParams& params);

}  // namespace qtrans
