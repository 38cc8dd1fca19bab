#pragma once

#include <Eigen/Core>

namespace acgm {

using Vector = Eigen::VectorXd;

}  // namespace acgm
