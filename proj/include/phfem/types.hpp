#pragma once

#include <type_traits>

#include <Eigen/Dense>

namespace phfem {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Read-only vector argument: binds plain vectors, matrix columns and
/// expressions. Non-deduced, so the scalar type comes from the primary
/// argument of the function.
template <typename Scalar>
using VectorRef = Eigen::Ref<const VectorX<std::type_identity_t<Scalar>>>;

template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

template <typename Scalar>
using Matrix36 = Eigen::Matrix<Scalar, 3, 6>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

}  // namespace phfem
