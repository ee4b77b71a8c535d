#include "rbfqmc/numerics.hpp"

#include <cstdio>

namespace rbfqmc {

double fd_laplacian(const std::function<double(const Vec3&)>& u, const Vec3& x, double h,
                    int dim) {
    const double center = u(x);
    double sum = u({x.x + h, x.y, x.z}) + u({x.x - h, x.y, x.z}) + u({x.x, x.y + h, x.z}) +
                 u({x.x, x.y - h, x.z});
    double n = 4.0;
    if (dim == 3) {
        sum += u({x.x, x.y, x.z + h}) + u({x.x, x.y, x.z - h});
        n = 6.0;
    }
    return (sum - n * center) / (h * h);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace rbfqmc
