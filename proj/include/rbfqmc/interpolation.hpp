#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "rbfqmc/geometry.hpp"
#include "rbfqmc/kernels.hpp"

namespace rbfqmc {

struct InterpolationModel {
    NodeSet nodes;
    KernelSpec kernel;
    Eigen::VectorXd alpha;
    double condition_estimate = 0.0;  // 1-norm based
    double residual_at_nodes = 0.0;   // max |A alpha - f|
    bool condition_warning = false;   // condition estimate > 1e14
};

// Entry (i,k) = phi(||x_i - x_k||); each unordered pair is evaluated once and
// mirrored, so the matrix is bitwise symmetric. Duplicate nodes are rejected.
Eigen::MatrixXd assemble_matrix(const NodeSet& nodes, const KernelSpec& kernel);

// Dense LU with partial pivoting plus iterative refinement of the residual.
// A pivot below 1e-14 * max|A| raises singular_system_error naming the kernel
// and node count; a condition estimate above 1e14 only sets the warning flag.
// The optional ridge is added to the diagonal (default 0, no regularization).
InterpolationModel fit(const NodeSet& nodes, std::span<const double> f_values,
                       const KernelSpec& kernel, double ridge = 0.0);

// sum_k alpha_k phi(||x - x_k||)
double evaluate_interpolant(const InterpolationModel& model, const Vec3& x);

struct ErrorStats {
    double rms = 0.0;
    double max = 0.0;
    std::vector<double> pointwise;
};

// Pointwise |interpolant - reference| over the evaluation set, reduced to RMS
// and max. Evaluation points are expected to exclude the fitting nodes.
ErrorStats interpolation_error(const InterpolationModel& model,
                               const std::function<double(const Vec3&)>& reference,
                               const NodeSet& evaluation);

// CSV `index,x,y[,z],alpha` plus a one-line JSON metadata sidecar carrying the
// kernel grammar string, condition estimate and residual.
void write_model_csv(std::ostream& out, const InterpolationModel& model);
void write_model_metadata(std::ostream& out, const InterpolationModel& model);

}  // namespace rbfqmc
