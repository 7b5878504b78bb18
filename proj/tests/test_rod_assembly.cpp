#include <functional>

#include "doctest.h"
#include "phfem/numerics.hpp"
#include "phfem/rod.hpp"

using namespace phfem;

namespace {

// Independent quadrature oracle: composite Simpson on [0,1], plenty accurate
// for the low-degree shape products.
double simpson(const std::function<double(double)>& f, int cells = 2048) {
    double sum = f(0.0) + f(1.0);
    for (int i = 1; i < cells; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * f(double(i) / cells);
    }
    return sum / (3.0 * cells);
}

RodConfig<double> unit_rod(int n) {
    RodConfig<double> c;
    c.length = 1.0;
    c.density_per_length = 1.0;
    c.youngs_modulus = 1.0;
    c.area = 1.0;
    c.n_elements = n;
    return c;
}

}  // namespace

TEST_CASE("single element velocity mass matrix against quadrature oracle") {
    const auto rod = assemble_rod(unit_rod(1));
    auto p2 = rod.velocity_basis;

    MatrixX<double> expected(3, 3);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            expected(a, b) = simpson([&](double xi) {
                auto s = shape_eval(p2, 0, xi);
                return s.values[a] * s.values[b];
            });
        }
    }
    CHECK((rod.mass_velocity - expected).cwiseAbs().maxCoeff() < 1e-12);

    MatrixX<double> frozen(3, 3);
    frozen << 4, 2, -1, 2, 16, 2, -1, 2, 4;
    frozen /= 30.0;
    CHECK((rod.mass_velocity - frozen).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("single element coupling entry carries the weak Dirichlet term") {
    const auto rod = assemble_rod(unit_rod(1));
    // int_0^1 (4 xi - 3)(1 - xi) d xi = -5/6, plus the boundary trace 1.
    CHECK(rod.coupling(0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    const double volume_part = simpson([&](double xi) {
        auto phi = shape_eval(rod.velocity_basis, 0, xi);
        auto psi = shape_eval(rod.stress_basis, 0, xi);
        return phi.derivatives[0] * psi.values[0];
    });
    CHECK(volume_part == doctest::Approx(-5.0 / 6.0).epsilon(1e-12));
    CHECK(rod.coupling(0, 0) == doctest::Approx(volume_part + 1.0).epsilon(1e-12));
}

TEST_CASE("benchmark dof counts") {
    const auto rod = assemble_rod(RodConfig<double>::benchmark(100));
    CHECK(rod.n_velocity_dofs() == 201);
    CHECK(rod.n_stress_dofs() == 200);
    CHECK(rod.model.dim() == 401);
    CHECK(rod.model.n_inputs() == 2);
}

TEST_CASE("boundary input traces are unit selectors") {
    const auto rod = assemble_rod(RodConfig<double>::benchmark(10));
    VectorX<double> gv = rod.input_velocity;
    CHECK(gv[gv.size() - 1] == 1.0);
    gv[gv.size() - 1] = 0.0;
    CHECK(gv.cwiseAbs().maxCoeff() == 0.0);

    VectorX<double> gs = rod.input_stress;
    CHECK(gs[0] == -1.0);
    gs[0] = 0.0;
    CHECK(gs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quadrature exactness: 3-point and 4-point Gauss agree") {
    const auto cfg = RodConfig<double>::benchmark(13);
    const auto r3 = assemble_rod(cfg, 3);
    const auto r4 = assemble_rod(cfg, 4);
    const auto rel = [](const MatrixX<double>& a, const MatrixX<double>& b) {
        return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
    };
    CHECK(rel(r3.mass_velocity, r4.mass_velocity) < 1e-13);
    CHECK(rel(r3.mass_stress, r4.mass_stress) < 1e-13);
    CHECK(rel(r3.coupling, r4.coupling) < 1e-13);
}

TEST_CASE("mass matrices integrate the constant field exactly") {
    for (int n : {1, 7, 100}) {
        const auto cfg = RodConfig<double>::benchmark(n);
        const auto rod = assemble_rod(cfg);
        const double rho_l = cfg.density_per_length * cfg.length;
        const double compliance_l = cfg.length / cfg.axial_stiffness();
        CHECK(rod.mass_velocity.sum() == doctest::Approx(rho_l).epsilon(1e-12));
        CHECK(rod.mass_stress.sum() == doctest::Approx(compliance_l).epsilon(1e-12));
    }
}

TEST_CASE("mass matrices are symmetric positive definite") {
    const auto rod = assemble_rod(RodConfig<double>::benchmark(20));
    CHECK_NOTHROW(cholesky(rod.mass_velocity));
    CHECK_NOTHROW(cholesky(rod.mass_stress));
    CHECK((rod.mass_velocity - rod.mass_velocity.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rod.mass_stress - rod.mass_stress.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling has full column rank for every mesh") {
    for (int n : {1, 2, 3, 5, 16, 64}) {
        const auto rod = assemble_rod(unit_rod(n));
        const MatrixX<double> lv = cholesky(rod.mass_velocity);
        const MatrixX<double> x =
            lv.triangularView<Eigen::Lower>().solve(rod.coupling);
        MatrixX<double> reduced = x.transpose() * x;
        reduced = 0.5 * (reduced + MatrixX<double>(reduced.transpose()));
        CHECK_NOTHROW(cholesky(reduced));
    }
}

TEST_CASE("row sums without the boundary term reproduce the endpoint traces") {
    // Applying the pure volume part of the coupling to a unit stress field
    // must integrate each basis derivative exactly: phi_i(L) - phi_i(0).
    for (int n : {1, 4, 9}) {
        const auto rod = assemble_rod(unit_rod(n));
        MatrixX<double> volume = rod.coupling;
        volume(0, 0) -= 1.0;  // remove the weak Dirichlet trace
        VectorX<double> sums = volume * VectorX<double>::Ones(rod.n_stress_dofs());
        VectorX<double> expected = VectorX<double>::Zero(rod.n_velocity_dofs());
        expected[rod.n_velocity_dofs() - 1] = 1.0;  // phi at x = L
        expected[0] -= 1.0;                         // phi at x = 0
        CHECK((sums - expected).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("model blocks assemble into the skew structure") {
    const auto rod = assemble_rod(RodConfig<double>::benchmark(5));
    const Index nv = rod.n_velocity_dofs();
    const Index ns = rod.n_stress_dofs();
    CHECK((rod.model.J + rod.model.J.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rod.model.J.topRightCorner(nv, ns) + rod.coupling).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rod.model.M.topLeftCorner(nv, nv) - rod.mass_velocity).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rod.model.M.bottomRightCorner(ns, ns) - rod.mass_stress).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK(rod.model.J.topLeftCorner(nv, nv).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly rejects bad input") {
    auto cfg = unit_rod(4);
    CHECK_THROWS_AS(assemble_rod(cfg, Mesh1D<double>::uniform(1.0, 5)), std::invalid_argument);
    CHECK_THROWS_AS(assemble_rod(cfg, Mesh1D<double>::uniform(2.0, 4)), std::invalid_argument);
    cfg.density_per_length = -1.0;
    CHECK_THROWS_AS(assemble_rod(cfg), std::invalid_argument);
    auto cfg2 = unit_rod(4);
    cfg2.area = 0.0;
    CHECK_THROWS_AS(assemble_rod(cfg2), std::invalid_argument);
}

TEST_CASE("field sampling interpolates the dof values") {
    const auto rod = assemble_rod(unit_rod(4));
    VectorX<double> state = VectorX<double>::Zero(rod.model.dim());
    state[2] = 3.0;  // velocity node at x = 0.25
    CHECK(rod.velocity_at(state, 0.25) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(rod.velocity_at(state, 0.75) == doctest::Approx(0.0));
    state.setZero();
    state[rod.n_velocity_dofs() + 1] = 2.0;  // stress dof at right end of first element
    CHECK(rod.stress_at(state, 0.2) == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(rod.stress_at(state, 0.3) == doctest::Approx(0.0));
}
