#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "phfem/numerics.hpp"
#include "phfem/ph_core.hpp"
#include "phfem/types.hpp"

namespace phfem {

/// Time-sampled co-energy trajectory. Column k of `states` is the state at
/// times[k]; inputs and outputs hold the midpoint samples of the step ending
/// at times[k+1].
template <typename Scalar>
struct Trajectory {
    Scalar dt{0};
    VectorX<Scalar> times;         // n_steps + 1
    MatrixX<Scalar> states;        // dim x (n_steps + 1)
    MatrixX<Scalar> inputs;        // n_inputs x n_steps
    MatrixX<Scalar> outputs;       // n_inputs x n_steps, taken at state midpoints
    VectorX<Scalar> hamiltonians;  // n_steps + 1
    VectorX<Scalar> boundary_work; // n_steps + 1, cumulative, starts at 0
    VectorX<Scalar> residuals;     // n_steps + 1, hamiltonian minus work

    Index n_steps() const { return times.size() > 0 ? times.size() - 1 : 0; }
};

/// Implicit midpoint rule for M de/dt = J e + G u. The step matrix
/// (M - dt/2 J) is factored once per stepper; a symmetric diagonal
/// equilibration keeps the factorization well conditioned when the metric
/// blocks live on very different unit scales. Holds a reference to the
/// model, which must outlive the stepper.
template <typename Scalar>
class MidpointStepper {
public:
    MidpointStepper(const PHModel<Scalar>& model, Scalar dt) : model_(model), dt_(dt) {
        if (!(dt != Scalar(0)) || !std::isfinite(dt)) {
            throw std::invalid_argument("midpoint stepper: dt must be finite and nonzero");
        }
        const Index n = model.dim();
        if (model.J.rows() != n || model.J.cols() != n || model.G.rows() != n) {
            throw DimensionError("midpoint stepper: model dimensions are inconsistent");
        }
        if ((model.M.diagonal().array() <= Scalar(0)).any()) {
            throw NotPositiveDefiniteError(0);
        }
        scale_ = model.M.diagonal().cwiseSqrt();
        inv_scale_ = scale_.cwiseInverse();
        const MatrixX<Scalar> a =
            inv_scale_.asDiagonal() * (model.M - (dt / Scalar(2)) * model.J) *
            inv_scale_.asDiagonal();
        solver_.emplace(a);
        forward_ = model.M + (dt / Scalar(2)) * model.J;
    }

    Scalar dt() const { return dt_; }
    const PHModel<Scalar>& model() const { return model_; }

    /// Advance one step with the input sampled at the interval midpoint.
    VectorX<Scalar> step(const VectorRef<Scalar>& e,
                         const VectorRef<Scalar>& u_mid) const {
        detail::check_state_dim(model_, e.size(), "step");
        if (u_mid.size() != model_.n_inputs()) {
            throw DimensionError("step: input has " + std::to_string(u_mid.size()) +
                                 " entries, model expects " + std::to_string(model_.n_inputs()));
        }
        const VectorX<Scalar> rhs = forward_ * e + dt_ * (model_.G * u_mid);
        return inv_scale_.cwiseProduct(solver_->solve(inv_scale_.cwiseProduct(rhs).eval()));
    }

private:
    const PHModel<Scalar>& model_;
    Scalar dt_;
    VectorX<Scalar> scale_, inv_scale_;
    std::optional<LuSolver<Scalar>> solver_;
    MatrixX<Scalar> forward_;  // M + dt/2 J
};

/// One-shot midpoint step.
template <typename Scalar>
VectorX<Scalar> step(const PHModel<Scalar>& model, const VectorRef<Scalar>& e,
                     const VectorRef<Scalar>& u_mid, Scalar dt) {
    return MidpointStepper<Scalar>(model, dt).step(e, u_mid);
}

/// Energy residual series: stored energy minus cumulative boundary work.
template <typename Scalar>
VectorX<Scalar> energy_residual(const Trajectory<Scalar>& traj) {
    if (traj.hamiltonians.size() != traj.boundary_work.size()) {
        throw DimensionError("energy_residual: trajectory is incomplete");
    }
    return traj.hamiltonians - traj.boundary_work;
}

/// Integrate over [0, t_final] with uniform steps. Inputs are sampled at
/// interval midpoints and outputs recorded at state midpoints, which makes
/// the discrete power balance H_{k+1} - H_k = dt * y_mid^T u_mid hold to
/// solver roundoff.
template <typename Scalar>
Trajectory<Scalar> simulate(const PHModel<Scalar>& model,
                            const std::function<VectorX<Scalar>(Scalar)>& input,
                            const VectorRef<Scalar>& e0, Scalar dt,
                            Scalar t_final) {
    if (!(dt > Scalar(0))) {
        throw std::invalid_argument("simulate: dt must be positive");
    }
    const Scalar steps_real = t_final / dt;
    const auto n_steps = Index(std::llround(double(steps_real)));
    if (n_steps < 1 || std::abs(steps_real - Scalar(n_steps)) > Scalar(1e-9) * steps_real) {
        throw std::invalid_argument("simulate: t_final must be a multiple of dt");
    }
    detail::check_state_dim(model, e0.size(), "simulate");

    MidpointStepper<Scalar> stepper(model, dt);
    const Index n_in = model.n_inputs();

    Trajectory<Scalar> traj;
    traj.dt = dt;
    traj.times = VectorX<Scalar>::LinSpaced(n_steps + 1, Scalar(0), Scalar(n_steps) * dt);
    traj.states.resize(model.dim(), n_steps + 1);
    traj.inputs.resize(n_in, n_steps);
    traj.outputs.resize(n_in, n_steps);
    traj.hamiltonians.resize(n_steps + 1);
    traj.boundary_work.resize(n_steps + 1);

    VectorX<Scalar> e = e0;
    traj.states.col(0) = e;
    traj.hamiltonians[0] = hamiltonian(model, e);
    traj.boundary_work[0] = Scalar(0);

    for (Index k = 0; k < n_steps; ++k) {
        const Scalar t_mid = (Scalar(k) + Scalar(0.5)) * dt;
        const VectorX<Scalar> u_mid = input(t_mid);
        const VectorX<Scalar> e_next = stepper.step(e, u_mid);
        if (!e_next.allFinite()) {
            throw std::runtime_error("simulate: non-finite state at step " + std::to_string(k));
        }
        const VectorX<Scalar> e_mid = Scalar(0.5) * (e + e_next);
        const VectorX<Scalar> y_mid = output(model, e_mid);

        e = e_next;
        traj.states.col(k + 1) = e;
        traj.inputs.col(k) = u_mid;
        traj.outputs.col(k) = y_mid;
        traj.hamiltonians[k + 1] = hamiltonian(model, e);
        traj.boundary_work[k + 1] = traj.boundary_work[k] + dt * y_mid.dot(u_mid);
    }
    traj.residuals = energy_residual(traj);
    return traj;
}

}  // namespace phfem
