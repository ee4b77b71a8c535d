#pragma once

#include <functional>

#include "rbfqmc/types.hpp"

namespace rbfqmc {

// 5-point (2D) / 7-point (3D) finite-difference Laplacian.
double fd_laplacian(const std::function<double(const Vec3&)>& u, const Vec3& x, double h,
                    int dim);

// Format a double with 17 significant digits ("%.17g"), enough to round-trip
// bit exactly through text.
std::string format_g17(double v);

}  // namespace rbfqmc
