#pragma once

#include <cstddef>
#include <numbers>

namespace qtrans {

/// Physical constants of a single 1D trapped particle. All quantities are in
/// a consistent unit system chosen by the caller; the library never assumes
/// SI. The trap period T0 = 2*pi/omega0 is always derived, never stored.
struct PhysicalParams {
    double mass = 1.0;
    double omega0 = 1.0;
    double hbar = 1.0;
    double gravity = 0.0;

    double period() const { return 2.0 * std::numbers::pi / omega0; }

    /// Ground-state position width sigma0 = sqrt(hbar / 2 m omega0).
    double sigma0() const;

    /// Oscillator length sqrt(hbar / m omega0) = sqrt(2) * sigma0.
    double length_scale() const;

    /// Throws std::invalid_argument unless mass, omega0 and hbar are > 0.
    void validate() const;
};

/// Transport task: move the trap a distance `distance` in time `duration`,
/// with optional nonzero atom velocity at either end (stopping/launching).
struct TransportSpec {
    double distance = 0.0;
    double duration = 0.0;
    double v_initial = 0.0;
    double v_final = 0.0;

    /// a = v0 * tf / d. Only defined for distance != 0.
    double velocity_parameter() const;

    /// b = omega0 * tf.
    double duration_parameter(const PhysicalParams& params) const
    {
        return params.omega0 * duration;
    }

    void validate() const;
};

struct Tolerances {
    double norm = 1e-10;
    double fidelity = 1e-6;
    double quadrature = 1e-10;
};

/// Grid and stepping controls shared by the propagator and mode evaluation.
struct NumericsConfig {
    std::size_t grid_points = 2048;  // power of two
    double grid_padding = 8.0;       // in units of sigma0, added on both sides
    double dt_per_period = 0.01 / (2.0 * std::numbers::pi);  // omega0*dt = 0.01
    Tolerances tolerances;

    double time_step(const PhysicalParams& params) const
    {
        return dt_per_period * params.period();
    }

    void validate() const;
};

struct UnitScales {
    double length = 1.0;
    double time = 1.0;
    double energy = 1.0;
    double mass = 1.0;

    double velocity() const { return length / time; }
    double acceleration() const { return length / (time * time); }
};

/// Parameters expressed in oscillator units (m = hbar = omega0 = 1) together
/// with the scale factors needed to round-trip back to the original system.
struct OscillatorFrame {
    PhysicalParams params;  // {1, 1, 1, scaled gravity}
    UnitScales scale;       // multiply a dimensionless value by these to go back

    TransportSpec to_oscillator(const TransportSpec& spec) const;
    TransportSpec from_oscillator(const TransportSpec& spec) const;
};

/// Nondimensionalizes params: length scale sqrt(hbar/m omega0), time 1/omega0,
/// energy hbar*omega0. The returned frame converts specs in either direction.
OscillatorFrame oscillator_units(const PhysicalParams& params);

}  // namespace qtrans
