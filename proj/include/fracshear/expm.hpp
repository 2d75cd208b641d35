#pragma once

// Matrix exponential by scaling and squaring with the degree-13 Padé approximant.

#include <Eigen/Dense>

namespace fracshear {

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace fracshear
