#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "phfem/basis.hpp"
#include "phfem/ph_core.hpp"
#include "phfem/signals.hpp"
#include "phfem/types.hpp"

namespace phfem {

/// Elastic rod with prescribed velocity at x = 0 and prescribed traction at
/// x = L. All quantities SI.
template <typename Scalar>
struct RodConfig {
    Scalar length{1};              // m
    Scalar density_per_length{1};  // kg/m
    Scalar youngs_modulus{1};      // N/m^2
    Scalar area{1};                // m^2
    int n_elements{1};
    BoundarySignal<Scalar> dirichlet_velocity = BoundarySignal<Scalar>::constant(Scalar(0));
    BoundarySignal<Scalar> neumann_traction = BoundarySignal<Scalar>::constant(Scalar(0));

    Scalar axial_stiffness() const { return youngs_modulus * area; }
    Scalar wave_speed() const { return std::sqrt(axial_stiffness() / density_per_length); }

    /// Steel rod benchmark: L = 1 m, rho = 0.785 kg/m, E = 2e11 N/m^2,
    /// A = 1e-4 m^2, zero prescribed velocity, 1000 N traction pulse for the
    /// first 0.5 ms.
    static RodConfig benchmark(int n_elements = 100) {
        RodConfig c;
        c.length = Scalar(1);
        c.density_per_length = Scalar(0.785);
        c.youngs_modulus = Scalar(2e11);
        c.area = Scalar(1e-4);
        c.n_elements = n_elements;
        c.dirichlet_velocity = BoundarySignal<Scalar>::constant(Scalar(0));
        c.neumann_traction = BoundarySignal<Scalar>::pulse(Scalar(1000), Scalar(0.5e-3));
        return c;
    }
};

/// Assembled rod model plus the blocks it was built from.
/// State layout: velocity dofs first (2n+1), then stress dofs (2n).
/// Input layout: traction at x = L first, then prescribed velocity at x = 0.
template <typename Scalar>
struct AssembledRod {
    PHModel<Scalar> model;
    RodConfig<Scalar> config;
    Mesh1D<Scalar> mesh;
    Basis1D<Scalar> velocity_basis;
    Basis1D<Scalar> stress_basis;

    MatrixX<Scalar> mass_velocity;  // n_v x n_v, int phi rho phi^T
    MatrixX<Scalar> mass_stress;    // n_s x n_s, int psi (EA)^-1 psi^T
    MatrixX<Scalar> coupling;       // n_v x n_s, int phi' psi^T + weak Dirichlet term
    VectorX<Scalar> input_velocity; // n_v, trace of phi at x = L
    VectorX<Scalar> input_stress;   // n_s, signed trace of psi at x = 0

    Index n_velocity_dofs() const { return velocity_basis.dof_count(); }
    Index n_stress_dofs() const { return stress_basis.dof_count(); }

    Index velocity_dof_at_left() const { return 0; }
    Index velocity_dof_at_right() const { return n_velocity_dofs() - 1; }
    Index stress_dof_at_left() const { return 0; }
    Index stress_dof_at_right() const { return n_stress_dofs() - 1; }

    /// Boundary inputs as one vector signal u(t) = (traction, velocity).
    std::function<VectorX<Scalar>(Scalar)> input_signal() const {
        auto tau = config.neumann_traction;
        auto nu = config.dirichlet_velocity;
        return [tau, nu](Scalar t) {
            VectorX<Scalar> u(2);
            u << tau(t), nu(t);
            return u;
        };
    }

    /// Pointwise velocity field of a state vector.
    Scalar velocity_at(const VectorX<Scalar>& state, Scalar x) const {
        return field_at(state, x, velocity_basis, 0);
    }

    /// Pointwise stress field of a state vector.
    Scalar stress_at(const VectorX<Scalar>& state, Scalar x) const {
        return field_at(state, x, stress_basis, n_velocity_dofs());
    }

private:
    Scalar field_at(const VectorX<Scalar>& state, Scalar x, const Basis1D<Scalar>& basis,
                    Index offset) const {
        const Scalar h = mesh.element_size();
        int element = std::min(int(x / h), mesh.n_elements - 1);
        element = std::max(element, 0);
        const Scalar xi = x / h - Scalar(element);
        const auto shapes = shape_eval(basis, element, std::clamp(xi, Scalar(0), Scalar(1)));
        Scalar value = 0;
        for (int a = 0; a < basis.dofs_per_element(); ++a) {
            value += shapes.values[a] * state[offset + basis.global_dof(element, a)];
        }
        return value;
    }
};

/// Mixed Galerkin assembly: continuous P2 velocities against broken P1
/// stresses, both boundary conditions imposed weakly. The Dirichlet side
/// enters the coupling block through its boundary trace (outward normal -1
/// at x = 0), the Neumann side through the input column.
template <typename Scalar>
AssembledRod<Scalar> assemble_rod(const RodConfig<Scalar>& config, const Mesh1D<Scalar>& mesh,
                                  int quadrature_order = 3) {
    if (!(config.length > Scalar(0)) || !(config.density_per_length > Scalar(0)) ||
        !(config.youngs_modulus > Scalar(0)) || !(config.area > Scalar(0)) ||
        config.n_elements < 1) {
        throw std::invalid_argument("assemble_rod: physical parameters must be positive");
    }
    if (!std::isfinite(config.axial_stiffness())) {
        throw std::invalid_argument("assemble_rod: axial stiffness is not finite");
    }
    if (mesh.n_elements != config.n_elements ||
        std::abs(mesh.length - config.length) > Scalar(1e-12) * config.length) {
        throw std::invalid_argument("assemble_rod: mesh does not match configuration");
    }

    AssembledRod<Scalar> rod;
    rod.config = config;
    rod.mesh = mesh;
    rod.velocity_basis = Basis1D<Scalar>::p2_continuous(mesh);
    rod.stress_basis = Basis1D<Scalar>::p1_discontinuous(mesh);

    const Index nv = rod.velocity_basis.dof_count();
    const Index ns = rod.stress_basis.dof_count();
    const Scalar h = mesh.element_size();
    const Scalar rho = config.density_per_length;
    const Scalar compliance = Scalar(1) / config.axial_stiffness();

    rod.mass_velocity = MatrixX<Scalar>::Zero(nv, nv);
    rod.mass_stress = MatrixX<Scalar>::Zero(ns, ns);
    rod.coupling = MatrixX<Scalar>::Zero(nv, ns);

    const auto quad = gauss_rule<Scalar>(quadrature_order);
    for (int e = 0; e < mesh.n_elements; ++e) {
        for (Index g = 0; g < quad.points.size(); ++g) {
            const Scalar xi = quad.points[g];
            const Scalar w = quad.weights[g] * h;  // physical measure
            const auto phi = shape_eval(rod.velocity_basis, e, xi);
            const auto psi = shape_eval(rod.stress_basis, e, xi);
            const Scalar w_rho = w * rho;
            const Scalar w_compliance = w * compliance;
            for (int a = 0; a < 3; ++a) {
                const Index i = rod.velocity_basis.global_dof(e, a);
                for (int b = 0; b < 3; ++b) {
                    const Index j = rod.velocity_basis.global_dof(e, b);
                    rod.mass_velocity(i, j) += w_rho * (phi.values[a] * phi.values[b]);
                }
                for (int b = 0; b < 2; ++b) {
                    const Index j = rod.stress_basis.global_dof(e, b);
                    rod.coupling(i, j) += w * (phi.derivatives[a] * psi.values[b]);
                }
            }
            for (int a = 0; a < 2; ++a) {
                const Index i = rod.stress_basis.global_dof(e, a);
                for (int b = 0; b < 2; ++b) {
                    const Index j = rod.stress_basis.global_dof(e, b);
                    rod.mass_stress(i, j) += w_compliance * (psi.values[a] * psi.values[b]);
                }
            }
        }
    }

    // Weak Dirichlet boundary term at x = 0: -phi(0) n(0) psi(0)^T with n(0) = -1.
    // Only the corner pairing of the first element is nonzero.
    rod.coupling(0, 0) += Scalar(1);

    // Boundary input traces: traction acts on the velocity dof at x = L,
    // prescribed velocity on the stress dof at x = 0 with the normal's sign.
    rod.input_velocity = VectorX<Scalar>::Zero(nv);
    rod.input_velocity[nv - 1] = Scalar(1);
    rod.input_stress = VectorX<Scalar>::Zero(ns);
    rod.input_stress[0] = Scalar(-1);

    PHModel<Scalar>& m = rod.model;
    const Index dim = nv + ns;
    m.M = MatrixX<Scalar>::Zero(dim, dim);
    m.M.topLeftCorner(nv, nv) = rod.mass_velocity;
    m.M.bottomRightCorner(ns, ns) = rod.mass_stress;
    m.J = MatrixX<Scalar>::Zero(dim, dim);
    m.J.topRightCorner(nv, ns) = -rod.coupling;
    m.J.bottomLeftCorner(ns, nv) = rod.coupling.transpose();
    m.G = MatrixX<Scalar>::Zero(dim, 2);
    m.G.col(0).head(nv) = rod.input_velocity;
    m.G.col(1).tail(ns) = rod.input_stress;
    m.n_velocity = nv;
    m.n_stress = ns;
    m.n_neumann = 1;
    m.n_dirichlet = 1;
    m.energy_scaling = EnergyScaling<Scalar>{rho, config.axial_stiffness()};

    return rod;
}

template <typename Scalar>
AssembledRod<Scalar> assemble_rod(const RodConfig<Scalar>& config, int quadrature_order = 3) {
    return assemble_rod(config, Mesh1D<Scalar>::uniform(config.length, config.n_elements),
                        quadrature_order);
}

}  // namespace phfem
