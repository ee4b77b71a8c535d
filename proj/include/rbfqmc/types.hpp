#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rbfqmc {

// Point in R^2 or R^3; z stays 0 in 2D so distances work uniformly.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Numerical failures (singular systems, singular evaluations, rank loss).
// The CLI maps these to exit code 2; bad configuration (std::invalid_argument)
// maps to exit code 1.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class singular_system_error : public numerical_error {
  public:
    explicit singular_system_error(const std::string& what) : numerical_error(what) {}
};

class singularity_error : public numerical_error {
  public:
    explicit singularity_error(const std::string& what) : numerical_error(what) {}
};

// Requesting a particular-solution pair (or analytic oracle) that is not
// registered is a configuration problem, not a numerical one.
class unsupported_pair_error : public std::invalid_argument {
  public:
    explicit unsupported_pair_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rbfqmc
