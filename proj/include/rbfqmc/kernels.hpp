#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "rbfqmc/types.hpp"

namespace rbfqmc {

enum class KernelFamily { Linear, PolyharmonicOdd, Tps, TpsModified, Mq, Gaussian, GsRbf };

// Kernel selection grammar:
//   linear | phs:<N> | tps | tps-mod | mq:<c> | gauss:<c> | gsrbf:<m>
// with optional suffix `+pre:<c>` applying the prewavelet shift
// r -> sqrt(r^2 + c^2). A single shape parameter c is shared between the
// family and the shift; when both are given the suffix wins.
struct KernelSpec {
    KernelFamily family = KernelFamily::Tps;
    double shape_c = 0.0;  // mq/gauss width and prewavelet shift
    int order = 0;         // m in r^(2m) weights (gsrbf); N in r^(2N+1) (phs)
    int dim = 2;
    bool prewavelet = false;

    static KernelSpec parse(std::string_view grammar, int dim = 2);
    std::string grammar() const;
    void validate() const;  // throws std::invalid_argument
};

// phi(r) for the selected family. With the prewavelet flag the distance
// inside the singular/log factor becomes sqrt(r^2 + c^2) (TPS turns into
// r^2 ln sqrt(r^2 + c^2)); families without such a factor are evaluated at
// the shifted radius wholesale.
double eval_phi(const KernelSpec& kernel, double r);

// psi(r) with the d-dimensional radial Laplacian of psi equal to phi. Only
// analytically registered pairs are served; anything else throws
// unsupported_pair_error (never a silent fallback).
double eval_psi(const KernelSpec& kernel, double r);
bool has_psi(const KernelSpec& kernel);

// Free-space fundamental solution under -lap(u*) = delta:
// 2D: -ln(r)/(2 pi); 3D: 1/(4 pi r). r = 0 is rejected.
double fundamental_solution(int dim, double r);

// phi = r^(2m) * u*(r) * f(source); pass include_f = false for boundary
// sources where the forcing factor is dropped.
double gs_rbf_phi(int m, int dim, double r, double f_at_source, bool include_f = true);

// sqrt(||x - x_j||^2 + c (t - t_j)^2) with c the wave velocity, the squared
// time gap entering linearly in c.
double timespace_radius(const Vec3& x, double t, const Vec3& x_j, double t_j, double c);

namespace detail {

template <class T>
T ustar_impl(int dim, T r) {
    const T pi = T(3.14159265358979323846264338327950288L);
    if (dim == 2) return -std::log(r) / (2 * pi);
    return 1 / (4 * pi * r);
}

// psi for phi = r^q in d dimensions: r^(q+2) / ((q+2)(q+d)).
template <class T>
T power_psi(int q, int dim, T r) {
    return std::pow(r, q + 2) / (T(q + 2) * T(q + dim));
}

// psi for phi = r^q ln r in d dimensions:
// r^(q+2) [ ln r / A - (2q+d+2) / A^2 ],  A = (q+2)(q+d).
template <class T>
T powerlog_psi(int q, int dim, T r) {
    if (r == 0) return T(0);
    const T a = T(q + 2) * T(q + dim);
    return std::pow(r, q + 2) * (std::log(r) / a - T(2 * q + dim + 2) / (a * a));
}

template <class T>
T phi_impl(const KernelSpec& k, T r) {
    if (r < 0) throw std::invalid_argument("eval_phi: negative radius");
    const T c = T(k.shape_c);
    const T s = k.prewavelet ? std::sqrt(r * r + c * c) : r;
    switch (k.family) {
        case KernelFamily::Linear:
            return s;
        case KernelFamily::PolyharmonicOdd:
            return std::pow(s, 2 * k.order + 1);
        case KernelFamily::Tps:
        case KernelFamily::TpsModified: {
            // r^2 ln r, shifted inside the log only: r^2 ln sqrt(r^2+c^2).
            T v;
            if (k.prewavelet) {
                v = r * r * T(0.5) * std::log(r * r + c * c);
            } else {
                v = (r == 0) ? T(0) : r * r * std::log(r);
            }
            if (k.family == KernelFamily::TpsModified) v += r * r + 1;
            return v;
        }
        case KernelFamily::Mq:
            return std::sqrt(s * s + c * c);
        case KernelFamily::Gaussian:
            return std::exp(-(s / c) * (s / c));
        case KernelFamily::GsRbf: {
            // r^(2m) u*(r), shifted inside u* only. The forcing factor is 1
            // here; gs_rbf_phi exposes it for interior-source construction.
            const int m = k.order;
            if (!k.prewavelet && r == 0) {
                if (m == 0) throw singularity_error("gsrbf: m = 0 is unbounded at r = 0");
                return T(0);
            }
            const T arg = k.prewavelet ? std::sqrt(r * r + c * c) : r;
            T h = 1;
            for (int i = 0; i < m; ++i) h *= r * r;
            return h * ustar_impl<T>(k.dim, arg);
        }
    }
    throw std::logic_error("eval_phi: unknown family");
}

[[noreturn]] inline void throw_unsupported_pair(const KernelSpec& k) {
    throw unsupported_pair_error("no particular-solution pair registered for kernel '" +
                                 k.grammar() + "' in " + std::to_string(k.dim) + "D");
}

template <class T>
T psi_impl(const KernelSpec& k, T r) {
    if (r < 0) throw std::invalid_argument("eval_psi: negative radius");
    if (k.prewavelet) throw_unsupported_pair(k);
    const T c = T(k.shape_c);
    const int d = k.dim;
    switch (k.family) {
        case KernelFamily::Linear:
            return power_psi<T>(1, d, r);
        case KernelFamily::PolyharmonicOdd:
            return power_psi<T>(2 * k.order + 1, d, r);
        case KernelFamily::Tps:
            return powerlog_psi<T>(2, d, r);
        case KernelFamily::TpsModified:
            return powerlog_psi<T>(2, d, r) + power_psi<T>(2, d, r) + power_psi<T>(0, d, r);
        case KernelFamily::Mq: {
            const T s = std::sqrt(r * r + c * c);
            if (d == 2) {
                return (r * r + 4 * c * c) * s / 9 - c * c * c / 3 * std::log(c + s);
            }
            if (d == 3) {
                if (r == 0) return c * c * c / 3;
                // log1p keeps the last term stable for r << c.
                const T u = (r + r * r / (s + c)) / c;
                return s * s * s / 12 + c * c * s / 8 + c * c * c * c / (8 * r) * std::log1p(u);
            }
            throw_unsupported_pair(k);
        }
        case KernelFamily::GsRbf: {
            const T pi = T(3.14159265358979323846264338327950288L);
            const int m = k.order;
            if (d == 2) return -powerlog_psi<T>(2 * m, d, r) / (2 * pi);
            if (d == 3) return power_psi<T>(2 * m - 1, d, r) / (4 * pi);
            throw_unsupported_pair(k);
        }
        case KernelFamily::Gaussian:
            throw_unsupported_pair(k);
    }
    throw_unsupported_pair(k);
}

}  // namespace detail
}  // namespace rbfqmc
