#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "phfem/numerics.hpp"
#include "phfem/types.hpp"

namespace phfem {

/// Per-dof map from co-energy states (velocity, stress) to energy states
/// (momentum, strain). Set by builders whose fields scale uniformly.
template <typename Scalar>
struct EnergyScaling {
    Scalar density{1};          // momentum = density * velocity
    Scalar axial_stiffness{1};  // strain = stress / axial_stiffness
};

/// Explicit state-space model M de/dt = J e + G u in co-energy form.
/// J is built skew-symmetric by construction, never symmetrized afterwards.
template <typename Scalar>
struct PHModel {
    MatrixX<Scalar> M;  // symmetric positive definite energy metric
    MatrixX<Scalar> J;  // skew-symmetric interconnection
    MatrixX<Scalar> G;  // input map, one column per boundary input

    Index n_velocity{0};  // leading velocity-like states
    Index n_stress{0};    // trailing stress-like states
    Index n_neumann{0};   // leading traction inputs
    Index n_dirichlet{0}; // trailing velocity inputs

    std::optional<EnergyScaling<Scalar>> energy_scaling;

    Index dim() const { return M.rows(); }
    Index n_inputs() const { return G.cols(); }

    auto velocity_part(const VectorX<Scalar>& e) const { return e.head(n_velocity); }
    auto stress_part(const VectorX<Scalar>& e) const { return e.tail(n_stress); }
};

namespace detail {

template <typename Scalar>
void check_state_dim(const PHModel<Scalar>& model, Index state_size, const char* who) {
    if (state_size != model.dim()) {
        throw DimensionError(std::string(who) + ": state has " + std::to_string(state_size) +
                             " entries, model dimension is " + std::to_string(model.dim()));
    }
}

}  // namespace detail

/// H = 1/2 e^T M e.
template <typename Scalar>
Scalar hamiltonian(const PHModel<Scalar>& model, const VectorRef<Scalar>& e) {
    detail::check_state_dim(model, e.size(), "hamiltonian");
    return Scalar(0.5) * e.dot(model.M * e);
}

/// Power-conjugated outputs y = G^T e.
template <typename Scalar>
VectorX<Scalar> output(const PHModel<Scalar>& model,
                       const VectorRef<Scalar>& e) {
    detail::check_state_dim(model, e.size(), "output");
    return model.G.transpose() * e;
}

template <typename Scalar>
struct EnergyVariables {
    VectorX<Scalar> momenta;  // per velocity dof
    VectorX<Scalar> strains;  // per stress dof
};

template <typename Scalar>
EnergyVariables<Scalar> energy_variables(const PHModel<Scalar>& model,
                                         const VectorRef<Scalar>& e) {
    detail::check_state_dim(model, e.size(), "energy_variables");
    if (!model.energy_scaling) {
        throw std::logic_error("energy_variables: model carries no energy scaling metadata");
    }
    EnergyVariables<Scalar> ev;
    ev.momenta = model.energy_scaling->density * e.head(model.n_velocity);
    ev.strains = e.tail(model.n_stress) / model.energy_scaling->axial_stiffness;
    return ev;
}

/// Inverse of energy_variables.
template <typename Scalar>
VectorX<Scalar> co_energy_state(const PHModel<Scalar>& model, const EnergyVariables<Scalar>& ev) {
    if (!model.energy_scaling) {
        throw std::logic_error("co_energy_state: model carries no energy scaling metadata");
    }
    VectorX<Scalar> e(model.dim());
    e.head(model.n_velocity) = ev.momenta / model.energy_scaling->density;
    e.tail(model.n_stress) = ev.strains * model.energy_scaling->axial_stiffness;
    return e;
}

/// Voigt layout used throughout: symmetric 3x3 tensors flatten to the
/// component order (11, 22, 33, 12, 23, 13), with engineering shear angles
/// on the strain side.
///
/// Isotropic Hooke matrix in that layout.
template <typename Scalar>
Matrix6<Scalar> elasticity_matrix(Scalar lambda, Scalar shear_modulus) {
    if (!(shear_modulus > Scalar(0))) {
        throw std::invalid_argument("elasticity_matrix: shear modulus must be positive");
    }
    Matrix6<Scalar> e = Matrix6<Scalar>::Zero();
    e.template topLeftCorner<3, 3>().setConstant(lambda);
    e.template topLeftCorner<3, 3>().diagonal().array() += Scalar(2) * shear_modulus;
    e.template bottomRightCorner<3, 3>().diagonal().setConstant(shear_modulus);
    return e;
}

/// Boundary traction map N^T for an outward unit normal: traction = N^T sigma
/// with sigma in Voigt layout.
template <typename Scalar>
Matrix36<Scalar> normal_matrix(const Vector3<Scalar>& n) {
    if (std::abs(n.norm() - Scalar(1)) > Scalar(1e-12)) {
        throw std::invalid_argument("normal_matrix: normal vector must have unit length");
    }
    Matrix36<Scalar> nt = Matrix36<Scalar>::Zero();
    nt(0, 0) = n[0]; nt(0, 3) = n[1]; nt(0, 5) = n[2];
    nt(1, 1) = n[1]; nt(1, 3) = n[0]; nt(1, 4) = n[2];
    nt(2, 2) = n[2]; nt(2, 4) = n[1]; nt(2, 5) = n[0];
    return nt;
}

template <typename Scalar>
struct Material3D {
    Scalar lambda{0};
    Scalar shear_modulus{0};
    Scalar density{0};
    Matrix6<Scalar> hooke;

    static Material3D isotropic(Scalar lambda, Scalar shear_modulus, Scalar density) {
        return Material3D{lambda, shear_modulus, density,
                          elasticity_matrix(lambda, shear_modulus)};
    }

    bool is_positive_definite() const {
        return shear_modulus > Scalar(0) &&
               lambda > -Scalar(2) / Scalar(3) * shear_modulus;
    }
};

template <typename Scalar>
struct BoundaryNormal3D {
    Vector3<Scalar> normal;
    Matrix36<Scalar> traction_map;  // N^T

    static BoundaryNormal3D from_normal(const Vector3<Scalar>& n) {
        return BoundaryNormal3D{n, normal_matrix(n)};
    }
};

/// Structural report: skew defect of J, symmetry defect of M, smallest
/// Cholesky pivot of M, dimension consistency. Report-only, never throws.
template <typename Scalar>
struct ValidationReport {
    Scalar skew_defect{0};           // max |J + J^T|
    Scalar metric_symmetry_defect{0}; // max |M - M^T| relative to max |M|
    bool metric_spd{false};
    Scalar min_metric_pivot{0};      // smallest diagonal entry of chol(M)
    Index failed_pivot{-1};          // set when the factorization fails
    bool dims_consistent{false};

    bool ok() const {
        return skew_defect == Scalar(0) && metric_spd &&
               metric_symmetry_defect <= Scalar(1e-12) && dims_consistent;
    }
};

template <typename Scalar>
ValidationReport<Scalar> validate(const PHModel<Scalar>& model) {
    ValidationReport<Scalar> report;
    report.skew_defect = (model.J + model.J.transpose()).cwiseAbs().maxCoeff();
    const Scalar m_scale = model.M.cwiseAbs().maxCoeff();
    report.metric_symmetry_defect =
        (model.M - model.M.transpose()).cwiseAbs().maxCoeff() / std::max(m_scale, Scalar(1e-300));
    try {
        const MatrixX<Scalar> l = cholesky(model.M);
        report.metric_spd = true;
        report.min_metric_pivot = l.diagonal().minCoeff();
    } catch (const NotPositiveDefiniteError& err) {
        report.metric_spd = false;
        report.failed_pivot = err.pivot();
    } catch (const DimensionError&) {
        report.metric_spd = false;
    }
    report.dims_consistent = model.M.rows() == model.M.cols() &&
                             model.J.rows() == model.J.cols() &&
                             model.J.rows() == model.M.rows() &&
                             model.G.rows() == model.M.rows() &&
                             model.n_velocity + model.n_stress == model.dim() &&
                             model.n_neumann + model.n_dirichlet == model.n_inputs();
    return report;
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const ValidationReport<Scalar>& r) {
    os << "skew defect |J + J^T|        : " << r.skew_defect << '\n'
       << "metric symmetry defect (rel) : " << r.metric_symmetry_defect << '\n'
       << "metric positive definite     : " << (r.metric_spd ? "yes" : "no");
    if (r.metric_spd) {
        os << " (min pivot " << r.min_metric_pivot << ")";
    } else if (r.failed_pivot >= 0) {
        os << " (failed at pivot " << r.failed_pivot << ")";
    }
    os << '\n' << "dimensions consistent        : " << (r.dims_consistent ? "yes" : "no");
    return os;
}

}  // namespace phfem
