#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "phfem/types.hpp"

namespace phfem {

/// Uniform 1D mesh on [0, L].
template <typename Scalar>
struct Mesh1D {
    Scalar length{1};
    int n_elements{1};

    static Mesh1D uniform(Scalar length, int n_elements) {
        if (!(length > Scalar(0))) {
            throw std::invalid_argument("mesh: length must be positive");
        }
        if (n_elements < 1) {
            throw std::invalid_argument("mesh: need at least one element");
        }
        return Mesh1D{length, n_elements};
    }

    Scalar element_size() const { return length / Scalar(n_elements); }

    std::vector<Scalar> node_coordinates() const {
        std::vector<Scalar> x(n_elements + 1);
        for (int i = 0; i <= n_elements; ++i) {
            x[i] = length * Scalar(i) / Scalar(n_elements);
        }
        return x;
    }
};

enum class BasisKind {
    P2Continuous,     // second-order Lagrange, continuous across elements
    P1Discontinuous,  // first-order, nodal at element endpoints, broken across elements
};

template <typename Scalar>
struct Basis1D {
    BasisKind kind{BasisKind::P2Continuous};
    Mesh1D<Scalar> mesh;

    static Basis1D p2_continuous(const Mesh1D<Scalar>& mesh) {
        return Basis1D{BasisKind::P2Continuous, mesh};
    }
    static Basis1D p1_discontinuous(const Mesh1D<Scalar>& mesh) {
        return Basis1D{BasisKind::P1Discontinuous, mesh};
    }

    int dofs_per_element() const { return kind == BasisKind::P2Continuous ? 3 : 2; }

    Index dof_count() const {
        const Index n = mesh.n_elements;
        return kind == BasisKind::P2Continuous ? 2 * n + 1 : 2 * n;
    }

    /// Global dof of a local shape function. P2 shares element-boundary nodes,
    /// the broken P1 basis does not.
    Index global_dof(int element, int local) const {
        check_element(element);
        return 2 * Index(element) + local;
    }

    Scalar dof_coordinate(Index dof) const {
        const Scalar h = mesh.element_size();
        if (kind == BasisKind::P2Continuous) {
            return Scalar(0.5) * h * Scalar(dof);
        }
        return h * Scalar(dof / 2) + h * Scalar(dof % 2);
    }

    void check_element(int element) const {
        if (element < 0 || element >= mesh.n_elements) {
            throw std::out_of_range("basis: element " + std::to_string(element) +
                                    " out of range [0," + std::to_string(mesh.n_elements) + ")");
        }
    }
};

template <typename Scalar>
struct ShapeValues {
    VectorX<Scalar> values;       // shape functions at the reference point
    VectorX<Scalar> derivatives;  // d/dx, scaled by 1/h
};

/// Evaluate all shape functions of one element at a reference coordinate in [0,1].
template <typename Scalar>
ShapeValues<Scalar> shape_eval(const Basis1D<Scalar>& basis, int element, Scalar xi) {
    basis.check_element(element);
    if (!(xi >= Scalar(0) && xi <= Scalar(1))) {
        throw std::invalid_argument("shape_eval: reference coordinate outside [0,1]");
    }
    const Scalar inv_h = Scalar(1) / basis.mesh.element_size();
    ShapeValues<Scalar> s;
    if (basis.kind == BasisKind::P2Continuous) {
        s.values.resize(3);
        s.derivatives.resize(3);
        s.values << (Scalar(1) - xi) * (Scalar(1) - Scalar(2) * xi),
            Scalar(4) * xi * (Scalar(1) - xi), xi * (Scalar(2) * xi - Scalar(1));
        s.derivatives << (Scalar(4) * xi - Scalar(3)) * inv_h,
            (Scalar(4) - Scalar(8) * xi) * inv_h, (Scalar(4) * xi - Scalar(1)) * inv_h;
    } else {
        s.values.resize(2);
        s.derivatives.resize(2);
        s.values << Scalar(1) - xi, xi;
        s.derivatives << -inv_h, inv_h;
    }
    return s;
}

template <typename Scalar>
struct QuadratureRule {
    VectorX<Scalar> points;   // on [0,1]
    VectorX<Scalar> weights;  // sum to 1
};

/// Gauss-Legendre rule on [0,1], exact for polynomials of degree 2*order - 1.
template <typename Scalar>
QuadratureRule<Scalar> gauss_rule(int order) {
    QuadratureRule<Scalar> q;
    q.points.resize(order);
    q.weights.resize(order);
    switch (order) {
        case 1:
            q.points << Scalar(0.5);
            q.weights << Scalar(1);
            break;
        case 2: {
            const Scalar d = Scalar(0.5) / std::sqrt(Scalar(3));
            q.points << Scalar(0.5) - d, Scalar(0.5) + d;
            q.weights << Scalar(0.5), Scalar(0.5);
            break;
        }
        case 3: {
            const Scalar d = Scalar(0.5) * std::sqrt(Scalar(3) / Scalar(5));
            q.points << Scalar(0.5) - d, Scalar(0.5), Scalar(0.5) + d;
            q.weights << Scalar(5) / Scalar(18), Scalar(4) / Scalar(9), Scalar(5) / Scalar(18);
            break;
        }
        case 4: {
            const Scalar r = std::sqrt(Scalar(6) / Scalar(5));
            const Scalar d1 = Scalar(0.5) * std::sqrt((Scalar(3) - Scalar(2) * r) / Scalar(7));
            const Scalar d2 = Scalar(0.5) * std::sqrt((Scalar(3) + Scalar(2) * r) / Scalar(7));
            const Scalar w1 = (Scalar(18) + std::sqrt(Scalar(30))) / Scalar(72);
            const Scalar w2 = (Scalar(18) - std::sqrt(Scalar(30))) / Scalar(72);
            q.points << Scalar(0.5) - d2, Scalar(0.5) - d1, Scalar(0.5) + d1, Scalar(0.5) + d2;
            q.weights << w2, w1, w1, w2;
            break;
        }
        default:
            throw std::invalid_argument("gauss_rule: unsupported order " + std::to_string(order));
    }
    return q;
}

}  // namespace phfem
