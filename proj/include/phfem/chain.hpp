#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phfem/ph_core.hpp"
#include "phfem/signals.hpp"
#include "phfem/types.hpp"

namespace phfem {

/// Spring-mass chain: N springs, N moving masses, prescribed velocity at the
/// left terminal (whose mass carries no kinetic energy) and prescribed force
/// at the right terminal.
template <typename Scalar>
struct ChainConfig {
    std::vector<Scalar> masses;       // kg, one per moving mass
    std::vector<Scalar> stiffnesses;  // N/m, one per spring
    BoundarySignal<Scalar> dirichlet_velocity = BoundarySignal<Scalar>::constant(Scalar(0));
    BoundarySignal<Scalar> neumann_force = BoundarySignal<Scalar>::constant(Scalar(0));

    int n_springs() const { return int(stiffnesses.size()); }

    static ChainConfig uniform(int n, Scalar mass, Scalar stiffness) {
        ChainConfig c;
        c.masses.assign(n, mass);
        c.stiffnesses.assign(n, stiffness);
        return c;
    }

    std::function<VectorX<Scalar>(Scalar)> input_signal() const {
        auto tau = neumann_force;
        auto nu = dirichlet_velocity;
        return [tau, nu](Scalar t) {
            VectorX<Scalar> u(2);
            u << tau(t), nu(t);
            return u;
        };
    }
};

/// Chain model with co-energy state (v_1..v_N, F_1..F_N):
///   m_i dv_i/dt = F_{i+1} - F_i   with F_{N+1} the applied force,
///   (1/c_i) dF_i/dt = v_i - v_{i-1}   with v_0 the prescribed velocity.
/// The interconnection uses the bidiagonal difference matrix D (D[i][i] = 1,
/// D[i][i+1] = -1) as J = [[0, -D], [D^T, 0]]; outputs are (v_N, -F_1).
template <typename Scalar>
PHModel<Scalar> build_chain(const ChainConfig<Scalar>& config) {
    const int n = config.n_springs();
    if (n < 1) {
        throw std::invalid_argument("build_chain: need at least one spring");
    }
    if (int(config.masses.size()) != n) {
        throw std::invalid_argument("build_chain: mass count must match spring count");
    }
    for (int i = 0; i < n; ++i) {
        if (!(config.masses[i] > Scalar(0)) || !(config.stiffnesses[i] > Scalar(0))) {
            throw std::invalid_argument("build_chain: masses and stiffnesses must be positive");
        }
    }

    PHModel<Scalar> m;
    const Index dim = 2 * n;
    m.M = MatrixX<Scalar>::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        m.M(i, i) = config.masses[i];
        m.M(n + i, n + i) = Scalar(1) / config.stiffnesses[i];
    }

    MatrixX<Scalar> diff = MatrixX<Scalar>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        diff(i, i) = Scalar(1);
        if (i + 1 < n) {
            diff(i, i + 1) = Scalar(-1);
        }
    }
    m.J = MatrixX<Scalar>::Zero(dim, dim);
    m.J.topRightCorner(n, n) = -diff;
    m.J.bottomLeftCorner(n, n) = diff.transpose();

    m.G = MatrixX<Scalar>::Zero(dim, 2);
    m.G(n - 1, 0) = Scalar(1);   // applied force drives the last mass
    m.G(n, 1) = Scalar(-1);      // prescribed velocity enters the first spring

    m.n_velocity = n;
    m.n_stress = n;
    m.n_neumann = 1;
    m.n_dirichlet = 1;
    return m;
}

template <typename Scalar>
struct VirtualPowerResiduals {
    VectorX<Scalar> velocity_variations;  // coefficient of each delta v_i
    VectorX<Scalar> force_variations;     // coefficient of each delta F_i
};

/// Coefficients of the virtual-power sums, written out term by term from the
/// momentum and elongation balances rather than from the assembled matrices.
/// All coefficients vanish exactly when (e, de/dt, u) satisfies the chain ODEs.
template <typename Scalar>
VirtualPowerResiduals<Scalar> virtual_power_residuals(
    const ChainConfig<Scalar>& config, const VectorRef<Scalar>& e,
    const VectorRef<Scalar>& e_dot,
    const VectorRef<Scalar>& u) {
    const int n = config.n_springs();
    if (e.size() != 2 * n || e_dot.size() != 2 * n || u.size() != 2) {
        throw DimensionError("virtual_power_residuals: dimension mismatch");
    }
    const auto v = e.head(n);
    const auto f = e.tail(n);
    const auto v_dot = e_dot.head(n);
    const auto f_dot = e_dot.tail(n);
    const Scalar applied_force = u[0];
    const Scalar prescribed_velocity = u[1];

    VirtualPowerResiduals<Scalar> r;
    r.velocity_variations.resize(n);
    r.force_variations.resize(n);
    for (int i = 0; i < n; ++i) {
        const Scalar momentum_rate = config.masses[i] * v_dot[i];
        const Scalar force_ahead = (i + 1 < n) ? f[i + 1] : applied_force;
        r.velocity_variations[i] = momentum_rate + f[i] - force_ahead;

        const Scalar elongation_rate = f_dot[i] / config.stiffnesses[i];
        const Scalar velocity_behind = (i > 0) ? v[i - 1] : prescribed_velocity;
        r.force_variations[i] = elongation_rate - v[i] + velocity_behind;
    }
    return r;
}

}  // namespace phfem
