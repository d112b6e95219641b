#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace pyra {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A graph signal: one real value per vertex, aligned with vertex indices.
using Signal = Eigen::VectorXd;

} // namespace pyra
