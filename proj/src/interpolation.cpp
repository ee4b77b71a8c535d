#include "rbfqmc/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "rbfqmc/numerics.hpp"

namespace rbfqmc {

Eigen::MatrixXd assemble_matrix(const NodeSet& nodes, const KernelSpec& kernel) {
    const auto m = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd a(m, m);
    const double diag = eval_phi(kernel, 0.0);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = diag;
        for (Eigen::Index k = i + 1; k < m; ++k) {
            const double r = distance(nodes.points[static_cast<std::size_t>(i)],
                                      nodes.points[static_cast<std::size_t>(k)]);
            if (r == 0.0)
                throw std::invalid_argument("assemble_matrix: duplicate nodes at rows " +
                                            std::to_string(i) + " and " + std::to_string(k));
            const double v = eval_phi(kernel, r);
            a(i, k) = v;
            a(k, i) = v;
        }
    }
    return a;
}

InterpolationModel fit(const NodeSet& nodes, std::span<const double> f_values,
                       const KernelSpec& kernel, double ridge) {
    if (f_values.size() != nodes.size())
        throw std::invalid_argument("fit: f_values length " + std::to_string(f_values.size()) +
                                    " does not match node count " + std::to_string(nodes.size()));
    Eigen::MatrixXd a = assemble_matrix(nodes, kernel);
    const auto m = a.rows();
    if (ridge != 0.0) a.diagonal().array() += ridge;

    const double max_abs = a.cwiseAbs().maxCoeff();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < 1e-14 * max_abs)
        throw singular_system_error("fit: numerically singular interpolation matrix for kernel '" +
                                    kernel.grammar() + "' with M = " + std::to_string(m));

    Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(f_values.data(), m);
    Eigen::VectorXd alpha = lu.solve(f);

    double max_f = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
    const double target = 1e-9 * (1.0 + max_f);
    double residual = (a * alpha - f).cwiseAbs().maxCoeff();
    for (int iter = 0; iter < 3 && residual > target; ++iter) {
        const Eigen::VectorXd r = f - a * alpha;
        const Eigen::VectorXd refined = alpha + lu.solve(r);
        const double refined_residual = (a * refined - f).cwiseAbs().maxCoeff();
        if (refined_residual >= residual) break;
        alpha = refined;
        residual = refined_residual;
    }

    InterpolationModel model;
    model.nodes = nodes;
    model.kernel = kernel;
    model.alpha = std::move(alpha);
    const double rcond = lu.rcond();
    model.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    model.residual_at_nodes = residual;
    model.condition_warning = model.condition_estimate > 1e14;
    return model;
}

double evaluate_interpolant(const InterpolationModel& model, const Vec3& x) {
    double value = 0.0;
    for (std::size_t k = 0; k < model.nodes.size(); ++k)
        value += model.alpha(static_cast<Eigen::Index>(k)) *
                 eval_phi(model.kernel, distance(x, model.nodes.points[k]));
    return value;
}

ErrorStats interpolation_error(const InterpolationModel& model,
                               const std::function<double(const Vec3&)>& reference,
                               const NodeSet& evaluation) {
    ErrorStats stats;
    stats.pointwise.reserve(evaluation.size());
    double sq = 0.0;
    for (const Vec3& p : evaluation.points) {
        const double err = std::abs(evaluate_interpolant(model, p) - reference(p));
        stats.pointwise.push_back(err);
        stats.max = std::max(stats.max, err);
        sq += err * err;
    }
    if (!stats.pointwise.empty())
        stats.rms = std::sqrt(sq / static_cast<double>(stats.pointwise.size()));
    return stats;
}

void write_model_csv(std::ostream& out, const InterpolationModel& model) {
    const bool threed = model.nodes.dim == 3;
    out << (threed ? "index,x,y,z,alpha\n" : "index,x,y,alpha\n");
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
        const Vec3& p = model.nodes.points[i];
        out << i << ',' << format_g17(p.x) << ',' << format_g17(p.y);
        if (threed) out << ',' << format_g17(p.z);
        out << ',' << format_g17(model.alpha(static_cast<Eigen::Index>(i))) << '\n';
    }
}

void write_model_metadata(std::ostream& out, const InterpolationModel& model) {
    out << "{\"kernel\":\"" << model.kernel.grammar()
        << "\",\"condition_estimate\":" << format_g17(model.condition_estimate)
        << ",\"residual\":" << format_g17(model.residual_at_nodes)
        << ",\"condition_warning\":" << (model.condition_warning ? "true" : "false") << "}\n";
}

}  // namespace rbfqmc
