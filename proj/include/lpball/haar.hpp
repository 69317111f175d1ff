#pragma once

#include "lpball/quasinorm.hpp"

namespace lpball {

// Orthonormal multilevel 2D Haar transform on square images. Each level
// transforms rows then columns of the current top-left approximation block,
// leaving the approximation in the top-left quarter. The side length must be
// divisible by 2^levels.

Matrix haar2d_forward(const Matrix& image, int levels);
Matrix haar2d_inverse(const Matrix& coeffs, int levels);

} // namespace lpball
