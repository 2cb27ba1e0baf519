#pragma once

#include "nilcalc/rational.hpp"

#include <Eigen/Dense>

namespace nilcalc {

Eigen::MatrixXd to_eigen(const QMatrix &m);
Eigen::VectorXd to_eigen(const QVec &v);

// inverse square root of a symmetric positive definite matrix
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd &spd);

} // namespace nilcalc
