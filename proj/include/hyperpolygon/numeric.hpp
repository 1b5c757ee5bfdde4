/**
 * @file numeric.hpp
 * @brief Bridges between the float-flavor Matrix<Complex> and Eigen.
 */
#pragma once

#include "hyperpolygon/exactalg/matrix.hpp"

#include <Eigen/Dense>

namespace hyperpolygon {

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m)
{
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

inline Matrix<Complex> from_eigen(const Eigen::MatrixXcd& e)
{
    Matrix<Complex> m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(i, j) = e(i, j);
    return m;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0)
        return {};
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

/// Number of singular values above threshold * sigma_max.
inline std::size_t numeric_rank(const Eigen::VectorXd& sigma, double threshold)
{
    if (sigma.size() == 0 || sigma(0) == 0.0)
        return 0;
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        rank += sigma(k) > threshold * sigma(0);
    return rank;
}

inline std::size_t numeric_rank(const Matrix<Complex>& m, double threshold)
{
    return numeric_rank(singular_values(to_eigen(m)), threshold);
}

template <class S>
Matrix<Complex> to_complex_matrix(const Matrix<S>& m)
{
    Matrix<Complex> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = scalar_traits<S>::to_complex(m(i, j));
    return out;
}

}  // namespace hyperpolygon
