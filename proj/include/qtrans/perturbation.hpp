#pragma once

#include <complex>

#include "qtrans/params.hpp"
#include "qtrans/trajectories.hpp"

namespace qtrans {

/// Gaussian-beam trap constants for the anharmonicity analysis.
struct BeamParams {
    double v0 = 0.0;   // well depth
    double x_r = 1.0;  // Rayleigh length

    /// Depth tied to the trap frequency: V0 = m omega0^2 xR^2 / 2.
    static BeamParams from_frequency(const PhysicalParams& params, double x_r);

    /// From optical beam geometry: xR = pi w0^2 / lambda.
    static BeamParams from_beam(double v0, double waist, double wavelength);

    void validate() const;
};

/// First-order anharmonic action F for the bang-bang trap trajectory at the
/// discrete perfect times tf = 4 pi N / omega0. Assumes the depth/frequency
/// tie-in V0 = m omega0^2 xR^2/2.
double f_bang_bang(int big_n, int n, const PhysicalParams& params, double distance,
                   const BeamParams& beam);

/// Same quantity for the inverse-engineered quintic at arbitrary tf.
double f_inverse(double t_f, int n, const PhysicalParams& params, double distance,
                 const BeamParams& beam);

/// f_inverse specialized to tf = 4 pi N / omega0 via its own closed form;
/// agrees with f_inverse at those times to rounding.
double f_inverse_discrete(int big_n, int n, const PhysicalParams& params, double distance,
                          const BeamParams& beam);

/// Quadrature route, independent of the closed forms: integrates the quartic
/// moment -(V0/xR^4) int <(q - q0)^4> dt along the trajectory using the
/// oscillator Gaussian moments.
double f_numeric(const Trajectory& traj, int n, const BeamParams& beam, double quad_tol = 1e-12);

struct PerturbationReport {
    double f_closed = 0.0;
    double f_numeric = 0.0;
    std::complex<double> first_order_overlap;  // 1 - i F/hbar
    double relative_discrepancy = 0.0;
};

PerturbationReport make_perturbation_report(double f_closed, double f_num,
                                            const PhysicalParams& params);

}  // namespace qtrans
