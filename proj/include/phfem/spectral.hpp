#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "phfem/numerics.hpp"
#include "phfem/rod.hpp"
#include "phfem/types.hpp"

namespace phfem {

/// Scaled spectrum lambda = (rho / EA) omega^2 of the assembled rod, with the
/// structural zero modes listed first.
template <typename Scalar>
struct SpectrumReport {
    VectorX<Scalar> scaled_eigenvalues;  // ascending, zero modes leading
    int zero_mode_count{0};
    VectorX<Scalar> exact;               // fixed-free continuum values, 0 in zero-mode slots
    VectorX<Scalar> abs_error;
    VectorX<Scalar> rel_error;           // 0 where exact vanishes
    VectorX<Scalar> omega_squared;       // all n_sigma squared frequencies, ascending
    VectorX<Scalar> zero_mode_vector;    // velocity-dof combination spanning ker K^T
};

/// Continuum eigenvalues of the fixed-free rod: lambda_k = ((2k-1) pi / 2L)^2.
template <typename Scalar>
VectorX<Scalar> exact_rod_eigenvalues(Scalar length, int k_max) {
    if (!(length > Scalar(0))) {
        throw std::invalid_argument("exact_rod_eigenvalues: length must be positive");
    }
    VectorX<Scalar> lam(k_max);
    for (int k = 1; k <= k_max; ++k) {
        const Scalar w = Scalar(2 * k - 1) * std::numbers::pi_v<Scalar> / (Scalar(2) * length);
        lam[k - 1] = w * w;
    }
    return lam;
}

/// Frequencies of the full model M de/dt = J e come in pairs +-i omega plus
/// the structural zero. The omega^2 are computed from the stress-sized
/// symmetric pencil (K^T M_v^-1 K, M_sigma) obtained by eliminating the
/// velocity block; a successful Cholesky of the reduced matrix certifies
/// full column rank of K, which pins the zero-mode count at n_v - n_sigma.
template <typename Scalar>
SpectrumReport<Scalar> rod_spectrum(const AssembledRod<Scalar>& rod, int k_max) {
    const Index nv = rod.n_velocity_dofs();
    const Index ns = rod.n_stress_dofs();
    if (k_max < 1 || Index(k_max) > ns) {
        throw std::invalid_argument("rod_spectrum: k_max must lie in [1, " +
                                    std::to_string(ns) + "]");
    }

    const MatrixX<Scalar> lv = cholesky(rod.mass_velocity);
    const MatrixX<Scalar> x =
        lv.template triangularView<Eigen::Lower>().solve(rod.coupling);
    MatrixX<Scalar> reduced = x.transpose() * x;  // K^T M_v^-1 K, s.p.d. iff K full rank
    reduced = Scalar(0.5) * (reduced + MatrixX<Scalar>(reduced.transpose()));

    cholesky(reduced);  // throws if K is rank deficient
    const int zero_modes = int(nv - ns);

    const auto eig = sym_generalized_eig(reduced, rod.mass_stress);
    const Scalar scale = rod.config.density_per_length / rod.config.axial_stiffness();

    SpectrumReport<Scalar> report;
    report.zero_mode_count = zero_modes;
    report.omega_squared = eig.eigenvalues;
    report.scaled_eigenvalues = VectorX<Scalar>::Zero(k_max);
    for (int i = zero_modes; i < k_max; ++i) {
        report.scaled_eigenvalues[i] = scale * eig.eigenvalues[i - zero_modes];
    }

    report.exact = VectorX<Scalar>::Zero(k_max);
    if (k_max > zero_modes) {
        report.exact.tail(k_max - zero_modes) =
            exact_rod_eigenvalues(rod.config.length, k_max - zero_modes);
    }
    report.abs_error = (report.scaled_eigenvalues - report.exact).cwiseAbs();
    report.rel_error = VectorX<Scalar>::Zero(k_max);
    for (int i = 0; i < k_max; ++i) {
        if (report.exact[i] > Scalar(0)) {
            report.rel_error[i] = report.abs_error[i] / report.exact[i];
        }
    }

    // The zero eigenvector lives in the velocity space: K^T v = 0.
    Eigen::FullPivLU<MatrixX<Scalar>> lu(rod.coupling.transpose());
    MatrixX<Scalar> kernel = lu.kernel();
    VectorX<Scalar> z = kernel.col(0);
    z.normalize();
    for (Index i = 0; i < z.size(); ++i) {
        if (std::abs(z[i]) > Scalar(1e-12)) {
            if (z[i] < Scalar(0)) z = -z;
            break;
        }
    }
    report.zero_mode_vector = z;
    return report;
}

}  // namespace phfem
