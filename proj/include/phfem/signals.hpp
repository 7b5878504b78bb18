#pragma once

#include <cmath>
#include <numbers>

namespace phfem {

enum class SignalShape { Constant, Pulse, Sine };

/// Scalar boundary input declared symbolically; evaluation policy (where in
/// time it is sampled) belongs to the integrator.
template <typename Scalar>
struct BoundarySignal {
    SignalShape shape{SignalShape::Constant};
    Scalar amplitude{0};
    Scalar duration{0};      // pulse length, seconds
    Scalar frequency_hz{0};  // sine only

    static BoundarySignal constant(Scalar amplitude) {
        return {SignalShape::Constant, amplitude, Scalar(0), Scalar(0)};
    }
    static BoundarySignal pulse(Scalar amplitude, Scalar duration) {
        return {SignalShape::Pulse, amplitude, duration, Scalar(0)};
    }
    static BoundarySignal sine(Scalar amplitude, Scalar frequency_hz) {
        return {SignalShape::Sine, amplitude, Scalar(0), frequency_hz};
    }

    Scalar operator()(Scalar t) const {
        switch (shape) {
            case SignalShape::Constant:
                return amplitude;
            case SignalShape::Pulse:
                return t <= duration ? amplitude : Scalar(0);
            case SignalShape::Sine:
                return amplitude * std::sin(Scalar(2) * std::numbers::pi_v<Scalar> *
                                            frequency_hz * t);
        }
        return Scalar(0);
    }

    bool is_piecewise_constant() const { return shape != SignalShape::Sine; }
    bool is_zero() const { return amplitude == Scalar(0); }
};

}  // namespace phfem
