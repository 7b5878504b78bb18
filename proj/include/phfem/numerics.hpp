#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "phfem/types.hpp"

namespace phfem {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(Index pivot)
        : std::runtime_error("singular matrix: pivot " + std::to_string(pivot) +
                             " is zero to working precision"),
          pivot_(pivot) {}
    Index pivot() const { return pivot_; }

private:
    Index pivot_;
};

class NotPositiveDefiniteError : public std::runtime_error {
public:
    explicit NotPositiveDefiniteError(Index pivot)
        : std::runtime_error("not positive definite: pivot " + std::to_string(pivot) +
                             " is non-positive"),
          pivot_(pivot) {}
    Index pivot() const { return pivot_; }

private:
    Index pivot_;
};

/// LU factorization with partial pivoting. The factorization is computed once
/// and may serve any number of right-hand sides.
template <typename Scalar>
class LuSolver {
public:
    explicit LuSolver(const MatrixX<Scalar>& a) : lu_(a) {
        if (a.rows() != a.cols()) {
            throw DimensionError("lu: matrix must be square, got " + std::to_string(a.rows()) +
                                 "x" + std::to_string(a.cols()));
        }
        const Scalar scale = a.cwiseAbs().maxCoeff();
        const Scalar tol =
            Scalar(a.rows()) * std::numeric_limits<Scalar>::epsilon() * scale;
        const auto diag = lu_.matrixLU().diagonal();
        for (Index i = 0; i < diag.size(); ++i) {
            if (!(std::abs(diag[i]) > tol)) {
                throw SingularMatrixError(i);
            }
        }
    }

    template <typename Derived>
    typename Derived::PlainObject solve(const Eigen::MatrixBase<Derived>& rhs) const {
        if (rhs.rows() != lu_.rows()) {
            throw DimensionError("lu solve: rhs has " + std::to_string(rhs.rows()) +
                                 " rows, expected " + std::to_string(lu_.rows()));
        }
        return lu_.solve(rhs);
    }

    Index rows() const { return lu_.rows(); }

private:
    Eigen::PartialPivLU<MatrixX<Scalar>> lu_;
};

/// One-shot factor-and-solve.
template <typename Scalar, typename Derived>
typename Derived::PlainObject lu_solve(const MatrixX<Scalar>& a,
                                       const Eigen::MatrixBase<Derived>& rhs) {
    return LuSolver<Scalar>(a).solve(rhs);
}

namespace detail {

template <typename Scalar>
void require_symmetric(const Eigen::Ref<const MatrixX<Scalar>>& a, const char* who) {
    const Scalar scale = a.cwiseAbs().maxCoeff();
    const Scalar defect = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (defect > Scalar(1e-12) * std::max(scale, Scalar(1))) {
        throw DimensionError(std::string(who) + ": matrix is not symmetric (defect " +
                             std::to_string(double(defect)) + ")");
    }
}

}  // namespace detail

/// Dense Cholesky factorization A = L L^T, L lower triangular.
/// Throws NotPositiveDefiniteError naming the first non-positive pivot.
template <typename Derived>
MatrixX<typename Derived::Scalar> cholesky(const Eigen::MatrixBase<Derived>& a_expr) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Ref<const MatrixX<Scalar>> a(a_expr.derived());
    if (a.rows() != a.cols()) {
        throw DimensionError("cholesky: matrix must be square");
    }
    detail::require_symmetric<Scalar>(a, "cholesky");
    const Index n = a.rows();
    MatrixX<Scalar> l = MatrixX<Scalar>::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        Scalar d = a(j, j) - l.row(j).head(j).squaredNorm();
        if (!(d > Scalar(0))) {
            throw NotPositiveDefiniteError(j);
        }
        l(j, j) = std::sqrt(d);
        for (Index i = j + 1; i < n; ++i) {
            l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
        }
    }
    return l;
}

/// Eigen decomposition of the symmetric pencil A v = lambda B v.
template <typename Scalar>
struct SymEigResult {
    VectorX<Scalar> eigenvalues;   // ascending
    MatrixX<Scalar> eigenvectors;  // column k pairs with eigenvalue k; v^T B v = 1
};

/// Solves A v = lambda B v for symmetric A and s.p.d. B by reducing with
/// B = L L^T to a standard symmetric problem. Eigenvalues come out ascending
/// and eigenvectors B-orthonormal.
template <typename DerivedA, typename DerivedB>
SymEigResult<typename DerivedA::Scalar> sym_generalized_eig(
    const Eigen::MatrixBase<DerivedA>& a_expr, const Eigen::MatrixBase<DerivedB>& b_expr) {
    using Scalar = typename DerivedA::Scalar;
    const Eigen::Ref<const MatrixX<Scalar>> a(a_expr.derived());
    const Eigen::Ref<const MatrixX<Scalar>> b(b_expr.derived());
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionError("sym_generalized_eig: dimension mismatch");
    }
    detail::require_symmetric<Scalar>(a, "sym_generalized_eig");

    const MatrixX<Scalar> l = cholesky(b);  // propagates NotPositiveDefiniteError
    // C = L^-1 A L^-T is symmetric; diagonalize and map vectors back.
    MatrixX<Scalar> c = l.template triangularView<Eigen::Lower>().solve(a);
    c = l.template triangularView<Eigen::Lower>().solve(MatrixX<Scalar>(c.transpose()));
    c = Scalar(0.5) * (c + MatrixX<Scalar>(c.transpose()));

    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(c);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("sym_generalized_eig: eigensolver did not converge");
    }
    SymEigResult<Scalar> result;
    result.eigenvalues = es.eigenvalues();
    result.eigenvectors =
        l.transpose().template triangularView<Eigen::Upper>().solve(es.eigenvectors());
    return result;
}

}  // namespace phfem
