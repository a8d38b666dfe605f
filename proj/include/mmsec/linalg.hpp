#pragma once

#include <Eigen/Dense>

#include <complex>

namespace mmsec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace mmsec
