#include "qtrans/params.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qtrans {

double PhysicalParams::sigma0() const
{
    return std::sqrt(hbar / (2.0 * mass * omega0));
}

double PhysicalParams::length_scale() const
{
    return std::sqrt(hbar / (mass * omega0));
}

void PhysicalParams::validate() const
{
    if (!(mass > 0.0)) throw std::invalid_argument("params: mass must be > 0");
    if (!(omega0 > 0.0)) throw std::invalid_argument("params: omega0 must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("params: hbar must be > 0");
    if (!std::isfinite(gravity)) throw std::invalid_argument("params: gravity must be finite");
}

double TransportSpec::velocity_parameter() const
{
    if (distance == 0.0) throw std::domain_error("spec: a = v0*tf/d undefined for d = 0");
    return v_initial * duration / distance;
}

void TransportSpec::validate() const
{
    if (!(duration > 0.0)) throw std::invalid_argument("spec: duration must be > 0");
    if (!std::isfinite(distance) || !std::isfinite(v_initial) || !std::isfinite(v_final))
        throw std::invalid_argument("spec: fields must be finite");
}

void NumericsConfig::validate() const
{
    if (grid_points < 2 || !std::has_single_bit(grid_points))
        throw std::invalid_argument("numerics: grid_points must be a power of two >= 2");
    if (!(grid_padding > 0.0))
        throw std::invalid_argument("numerics: grid_padding must be > 0");
    if (!(dt_per_period > 0.0))
        throw std::invalid_argument("numerics: dt_per_period must be > 0");
}

TransportSpec OscillatorFrame::to_oscillator(const TransportSpec& spec) const
{
    return TransportSpec{spec.distance / scale.length, spec.duration / scale.time,
                         spec.v_initial / scale.velocity(), spec.v_final / scale.velocity()};
}

TransportSpec OscillatorFrame::from_oscillator(const TransportSpec& spec) const
{
    return TransportSpec{spec.distance * scale.length, spec.duration * scale.time,
                         spec.v_initial * scale.velocity(), spec.v_final * scale.velocity()};
}

OscillatorFrame oscillator_units(const PhysicalParams& params)
{
    params.validate();
    OscillatorFrame frame;
    frame.scale.length = params.length_scale();
    frame.scale.time = 1.0 / params.omega0;
    frame.scale.energy = params.hbar * params.omega0;
    frame.scale.mass = params.mass;
    frame.params = PhysicalParams{1.0, 1.0, 1.0,
                                  params.gravity * frame.scale.time * frame.scale.time /
                                      frame.scale.length};
    return frame;
}

}  // namespace qtrans
