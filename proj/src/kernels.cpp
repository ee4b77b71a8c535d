#include "rbfqmc/kernels.hpp"

#include <charconv>
#include <cmath>

#include "rbfqmc/numerics.hpp"

namespace rbfqmc {

namespace {

double parse_number(std::string_view text, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument(std::string("kernel grammar: bad ") + what + " '" +
                                    std::string(text) + "'");
    return value;
}

int parse_int(std::string_view text, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument(std::string("kernel grammar: bad ") + what + " '" +
                                    std::string(text) + "'");
    return value;
}

}  // namespace

KernelSpec KernelSpec::parse(std::string_view grammar, int dim) {
    KernelSpec spec;
    spec.dim = dim;
    std::string_view head = grammar;
    std::string_view suffix;
    if (const auto plus = grammar.find('+'); plus != std::string_view::npos) {
        head = grammar.substr(0, plus);
        suffix = grammar.substr(plus + 1);
    }
    std::string_view name = head;
    std::string_view param;
    if (const auto colon = head.find(':'); colon != std::string_view::npos) {
        name = head.substr(0, colon);
        param = head.substr(colon + 1);
    }
    if (name == "linear") {
        spec.family = KernelFamily::Linear;
    } else if (name == "phs") {
        spec.family = KernelFamily::PolyharmonicOdd;
        spec.order = parse_int(param, "phs order");
        if (spec.order < 0) throw std::invalid_argument("kernel grammar: phs order must be >= 0");
    } else if (name == "tps") {
        spec.family = KernelFamily::Tps;
    } else if (name == "tps-mod") {
        spec.family = KernelFamily::TpsModified;
    } else if (name == "mq") {
        spec.family = KernelFamily::Mq;
        spec.shape_c = parse_number(param, "mq shape");
    } else if (name == "gauss") {
        spec.family = KernelFamily::Gaussian;
        spec.shape_c = parse_number(param, "gauss shape");
    } else if (name == "gsrbf") {
        spec.family = KernelFamily::GsRbf;
        spec.order = parse_int(param, "gsrbf order");
        if (spec.order < 0) throw std::invalid_argument("kernel grammar: gsrbf order must be >= 0");
    } else {
        throw std::invalid_argument(
            "kernel grammar: unknown family '" + std::string(name) +
            "' (expected linear|phs:<N>|tps|tps-mod|mq:<c>|gauss:<c>|gsrbf:<m>)");
    }
    if (!suffix.empty()) {
        if (suffix.rfind("pre:", 0) != 0)
            throw std::invalid_argument("kernel grammar: unknown suffix '+" + std::string(suffix) +
                                        "' (expected +pre:<c>)");
        spec.prewavelet = true;
        spec.shape_c = parse_number(suffix.substr(4), "prewavelet shift");
    }
    spec.validate();
    return spec;
}

std::string KernelSpec::grammar() const {
    std::string g;
    switch (family) {
        case KernelFamily::Linear: g = "linear"; break;
        case KernelFamily::PolyharmonicOdd: g = "phs:" + std::to_string(order); break;
        case KernelFamily::Tps: g = "tps"; break;
        case KernelFamily::TpsModified: g = "tps-mod"; break;
        case KernelFamily::Mq: g = "mq:" + format_g17(shape_c); break;
        case KernelFamily::Gaussian: g = "gauss:" + format_g17(shape_c); break;
        case KernelFamily::GsRbf: g = "gsrbf:" + std::to_string(order); break;
    }
    if (prewavelet) g += "+pre:" + format_g17(shape_c);
    return g;
}

void KernelSpec::validate() const {
    const bool needs_c =
        family == KernelFamily::Mq || family == KernelFamily::Gaussian || prewavelet;
    if (needs_c && !(shape_c > 0.0))
        throw std::invalid_argument("kernel '" + grammar() + "': shape parameter must be > 0");
    if (dim != 2 && dim != 3) throw std::invalid_argument("kernel: dim must be 2 or 3");
    if (order < 0) throw std::invalid_argument("kernel: order must be >= 0");
}

double eval_phi(const KernelSpec& kernel, double r) { return detail::phi_impl<double>(kernel, r); }

double eval_psi(const KernelSpec& kernel, double r) { return detail::psi_impl<double>(kernel, r); }

bool has_psi(const KernelSpec& kernel) {
    if (kernel.prewavelet) return false;
    switch (kernel.family) {
        case KernelFamily::Linear:
        case KernelFamily::PolyharmonicOdd:
        case KernelFamily::Tps:
        case KernelFamily::TpsModified:
            return true;
        case KernelFamily::Mq:
        case KernelFamily::GsRbf:
            return kernel.dim == 2 || kernel.dim == 3;
        case KernelFamily::Gaussian:
            return false;
    }
    return false;
}

double fundamental_solution(int dim, double r) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("fundamental_solution: dim must be 2 or 3");
    if (!(r > 0.0))
        throw singularity_error("fundamental_solution: r = 0 hits the singularity");
    return detail::ustar_impl<double>(dim, r);
}

double gs_rbf_phi(int m, int dim, double r, double f_at_source, bool include_f) {
    if (m < 0) throw std::invalid_argument("gs_rbf_phi: m must be >= 0");
    if (r < 0) throw std::invalid_argument("gs_rbf_phi: negative radius");
    if (r == 0.0) {
        if (m == 0) throw singularity_error("gs_rbf_phi: m = 0 is unbounded at r = 0");
        return 0.0;  // r^(2m) u*(r) -> 0 for m >= 1
    }
    double h = 1.0;
    for (int i = 0; i < m; ++i) h *= r * r;
    double value = h * detail::ustar_impl<double>(dim, r);
    if (include_f) value *= f_at_source;
    return value;
}

double timespace_radius(const Vec3& x, double t, const Vec3& x_j, double t_j, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("timespace_radius: c must be > 0");
    const double dt = t - t_j;
    return std::sqrt(dot(x - x_j, x - x_j) + c * dt * dt);
}

}  // namespace rbfqmc
