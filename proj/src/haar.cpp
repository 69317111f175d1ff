#include "lpball/haar.hpp"

#include <cmath>
#include <numbers>

#include "lpball/errors.hpp"

namespace lpball {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_shape(const Matrix& m, int levels) {
    if (m.rows() != m.cols())
        throw InvalidInput("haar2d: image must be square");
    if (levels < 1)
        throw InvalidInput("haar2d: levels must be positive");
    if (levels >= 63 || m.rows() == 0 || m.rows() % (Eigen::Index{1} << levels) != 0)
        throw InvalidInput("haar2d: side length must be divisible by 2^levels");
}

// One analysis step on the first `len` entries of a row or column.
template <class Line>
void analyze(Line line, Eigen::Index len, Vector& scratch) {
    const Eigen::Index half = len / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
        scratch[i] = (line(2 * i) + line(2 * i + 1)) * kInvSqrt2;
        scratch[half + i] = (line(2 * i) - line(2 * i + 1)) * kInvSqrt2;
    }
    for (Eigen::Index i = 0; i < len; ++i)
        line(i) = scratch[i];
}

template <class Line>
void synthesize(Line line, Eigen::Index len, Vector& scratch) {
    const Eigen::Index half = len / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
        scratch[2 * i] = (line(i) + line(half + i)) * kInvSqrt2;
        scratch[2 * i + 1] = (line(i) - line(half + i)) * kInvSqrt2;
    }
    for (Eigen::Index i = 0; i < len; ++i)
        line(i) = scratch[i];
}

} // namespace

Matrix haar2d_forward(const Matrix& image, int levels) {
    check_shape(image, levels);
    Matrix out = image;
    Vector scratch(image.rows());
    for (Eigen::Index len = image.rows(), l = 0; l < levels; ++l, len /= 2) {
        for (Eigen::Index r = 0; r < len; ++r)
            analyze([&](Eigen::Index i) -> double& { return out(r, i); }, len, scratch);
        for (Eigen::Index c = 0; c < len; ++c)
            analyze([&](Eigen::Index i) -> double& { return out(i, c); }, len, scratch);
    }
    return out;
}

Matrix haar2d_inverse(const Matrix& coeffs, int levels) {
    check_shape(coeffs, levels);
    Matrix out = coeffs;
    Vector scratch(coeffs.rows());
    for (int l = levels - 1; l >= 0; --l) {
        const Eigen::Index len = coeffs.rows() >> l;
        for (Eigen::Index c = 0; c < len; ++c)
            synthesize([&](Eigen::Index i) -> double& { return out(i, c); }, len, scratch);
        for (Eigen::Index r = 0; r < len; ++r)
            synthesize([&](Eigen::Index i) -> double& { return out(r, i); }, len, scratch);
    }
    return out;
}

} // namespace lpball
