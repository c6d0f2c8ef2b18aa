#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qwspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

}  // namespace qwspec
