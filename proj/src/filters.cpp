#include "gfrisk/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace gfrisk {

namespace {

constexpr double kLambdaTol = 1e-9;

void check_lambda(double lambda, const GraphContext& ctx) {
    if (lambda < -kLambdaTol || lambda > ctx.lambda_max + kLambdaTol)
        throw std::invalid_argument("lambda outside [0, lambda_max]");
}

double pbar_response(double lambda, double pbar) {
    // Spectral response of (D+I)^{-1/2}(A+I)(D+I)^{-1/2} under the
    // approximate-regularity assumption.
    return 1.0 - lambda * pbar / (pbar + 1.0);
}

}  // namespace

FilterSpec FilterSpec::mlp() { return {Architecture::MLP}; }
FilterSpec FilterSpec::gcn() { return {Architecture::GCN}; }

FilterSpec FilterSpec::gin(double eps) {
    FilterSpec s{Architecture::GIN};
    s.eps = eps;
    return s;
}

FilterSpec FilterSpec::ppnp(double alpha) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("PPNP alpha must be in (0, 1]");
    FilterSpec s{Architecture::PPNP};
    s.alpha = alpha;
    return s;
}

FilterSpec FilterSpec::gprgnn(std::vector<double> gamma) {
    if (gamma.empty()) throw std::invalid_argument("GPR-GNN needs coefficients");
    FilterSpec s{Architecture::GPRGNN};
    s.order = static_cast<int>(gamma.size()) - 1;
    s.gamma = std::move(gamma);
    return s;
}

FilterSpec FilterSpec::gprgnn_ppr(double alpha, int K) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("GPR-GNN alpha must be in (0, 1]");
    if (K < 0) throw std::invalid_argument("GPR-GNN K must be >= 0");
    std::vector<double> gamma(K + 1);
    double w = alpha;
    for (int k = 0; k <= K; ++k) {
        gamma[k] = w;
        w *= (1.0 - alpha);
    }
    return gprgnn(std::move(gamma));
}

FilterSpec FilterSpec::highpass() { return {Architecture::Highpass}; }
FilterSpec FilterSpec::highlow() { return {Architecture::HighLowConcat}; }

FilterSpec FilterSpec::fagcn(double alpha, double eps) {
    FilterSpec s{Architecture::FAGCN};
    s.alpha = alpha;
    s.eps = eps;
    return s;
}

FilterSpec FilterSpec::sage() { return {Architecture::GraphSAGE}; }

FilterSpec FilterSpec::cayleynet(double h, int r_max) {
    if (h <= 0.0) throw std::invalid_argument("CayleyNet h must be > 0");
    if (r_max < 1) throw std::invalid_argument("CayleyNet r_max must be >= 1");
    FilterSpec s{Architecture::CayleyNet};
    s.h = h;
    s.order = r_max;
    return s;
}

FilterSpec FilterSpec::chebnet(int K) {
    if (K < 1) throw std::invalid_argument("ChebNet K must be >= 1");
    FilterSpec s{Architecture::ChebNet};
    s.order = K;
    return s;
}

FilterSpec FilterSpec::chebnet2(int K) {
    if (K < 1) throw std::invalid_argument("ChebNet/s K must be >= 1");
    FilterSpec s{Architecture::ChebNetII};
    s.order = K;
    return s;
}

FilterSpec FilterSpec::with_layers(int l) const {
    if (l < 1) throw std::invalid_argument("layers must be >= 1");
    FilterSpec s = *this;
    s.layers = l;
    return s;
}

bool FilterSpec::multi_support() const {
    switch (arch) {
        case Architecture::HighLowConcat:
        case Architecture::GraphSAGE:
        case Architecture::CayleyNet:
        case Architecture::ChebNet:
        case Architecture::ChebNetII:
            return true;
        default:
            return false;
    }
}

std::string FilterSpec::name() const {
    switch (arch) {
        case Architecture::MLP: return "mlp";
        case Architecture::GCN: return "gcn";
        case Architecture::GIN: return "gin";
        case Architecture::PPNP: return "ppnp";
        case Architecture::GPRGNN: return "gprgnn";
        case Architecture::Highpass: return "highpass";
        case Architecture::HighLowConcat: return "highlow";
        case Architecture::FAGCN: return "fagcn";
        case Architecture::GraphSAGE: return "sage";
        case Architecture::CayleyNet: return "cayleynet";
        case Architecture::ChebNet: return "chebnet";
        case Architecture::ChebNetII: return "chebnet2";
    }
    return "unknown";
}

FilterResponse response(const FilterSpec& spec, double lambda,
                        const GraphContext& ctx) {
    check_lambda(lambda, ctx);
    const double pbar = ctx.mean_degree;
    FilterResponse r;

    switch (spec.arch) {
        case Architecture::MLP:
            r.supports = {1.0};
            break;
        case Architecture::GCN:
            r.supports = {2.0 * (1.0 - lambda / 2.0)};
            break;
        case Architecture::GIN:
            r.supports = {pbar * ((1.0 + spec.eps) / pbar + 1.0 - lambda)};
            break;
        case Architecture::PPNP: {
            const double denom =
                1.0 - (1.0 - spec.alpha) * pbar_response(lambda, pbar);
            if (denom <= 0.0)
                throw std::domain_error("PPNP response denominator <= 0");
            r.supports = {spec.alpha / denom};
            break;
        }
        case Architecture::GPRGNN: {
            const double base = pbar_response(lambda, pbar);
            double g = 0.0, p = 1.0;
            for (double gk : spec.gamma) {
                g += gk * p;
                p *= base;
            }
            r.supports = {g};
            break;
        }
        case Architecture::Highpass:
            r.supports = {lambda};
            break;
        case Architecture::HighLowConcat:
            r.supports = {1.0 - lambda / 2.0, lambda / 2.0};
            break;
        case Architecture::FAGCN:
            r.supports = {spec.alpha * ((1.0 + spec.eps) - lambda) +
                          (1.0 - spec.alpha) * ((spec.eps - 1.0) + lambda)};
            break;
        case Architecture::GraphSAGE:
            r.supports = {1.0, 1.0 - lambda};
            break;
        case Architecture::CayleyNet: {
            // theta(x) = arg((x - i)/(x + i)) for real x
            const double x = spec.h * lambda;
            const double theta = std::atan2(-2.0 * x, x * x - 1.0);
            r.supports.push_back(1.0);
            for (int k = 1; k <= spec.order; ++k) {
                r.supports.push_back(std::cos(k * theta));
                r.supports.push_back(-std::sin(k * theta));
            }
            break;
        }
        case Architecture::ChebNet:
        case Architecture::ChebNetII: {
            const bool divide = spec.arch == Architecture::ChebNetII;
            const double g2 = 2.0 * lambda / ctx.lambda_max - 1.0;
            r.supports.push_back(1.0);
            if (spec.order >= 2) r.supports.push_back(g2);
            for (int s = 3; s <= spec.order; ++s) {
                double gs = 2.0 * g2 * r.supports[s - 2] - r.supports[s - 3];
                if (divide) gs /= s;
                r.supports.push_back(gs);
            }
            break;
        }
    }

    for (double g : r.supports) r.combined_sq += g * g;
    return r;
}

double response_sq(const FilterSpec& spec, double lambda,
                   const GraphContext& ctx) {
    return response(spec, lambda, ctx).combined_sq;
}

NormalizedResponse::NormalizedResponse(FilterSpec spec, GraphContext ctx,
                                       const std::vector<double>& grid)
    : spec_(std::move(spec)), ctx_(ctx), scale_(0.0) {
    for (double lambda : grid)
        scale_ = std::max(scale_, std::sqrt(response_sq(spec_, lambda, ctx_)));
    if (scale_ <= 0.0)
        throw std::invalid_argument("response is identically zero on the grid");
}

double NormalizedResponse::magnitude(double lambda) const {
    return std::sqrt(response_sq(spec_, lambda, ctx_)) / scale_;
}

double NormalizedResponse::combined_sq(double lambda) const {
    return response_sq(spec_, lambda, ctx_) / (scale_ * scale_);
}

std::vector<double> NormalizedResponse::supports(double lambda) const {
    auto r = response(spec_, lambda, ctx_);
    for (double& g : r.supports) g /= scale_;
    return r.supports;
}

std::vector<double> effective_spectrum(
    const FilterSpec& spec, const std::vector<double>& eigenvalues,
    const std::function<double(double)>& feature_fn, const GraphContext& ctx,
    bool normalized, bool allow_nonzero_f0) {
    if (!allow_nonzero_f0 && std::abs(feature_fn(0.0)) > 1e-12)
        throw std::invalid_argument("feature spectrum must satisfy f(0) = 0");

    double scale_sq = 1.0;
    if (normalized) {
        NormalizedResponse norm(spec, ctx, eigenvalues);
        scale_sq = norm.scale() * norm.scale();
    }

    std::vector<double> tilde;
    tilde.reserve(eigenvalues.size());
    for (double lambda : eigenvalues) {
        if (lambda == 0.0 && !allow_nonzero_f0) {
            tilde.push_back(0.0);
            continue;
        }
        const double gsq = response_sq(spec, lambda, ctx) / scale_sq;
        tilde.push_back(std::pow(gsq, spec.layers) * feature_fn(lambda));
    }
    return tilde;
}

DepthResponseTable depth_response(const FilterSpec& base, int max_layers,
                                  bool skip, const std::vector<double>& grid,
                                  const GraphContext& ctx) {
    if (max_layers < 1) throw std::invalid_argument("max_layers must be >= 1");
    NormalizedResponse norm(base, ctx, grid);

    DepthResponseTable table;
    table.grid = grid;
    table.per_layer.assign(max_layers, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double g = norm.magnitude(grid[i]);
        const double per_layer = skip ? (g + 1.0) / 2.0 : g;
        double acc = 1.0;
        for (int l = 1; l <= max_layers; ++l) {
            acc *= per_layer;
            table.per_layer[l - 1][i] = acc;
        }
    }
    return table;
}

}  // namespace gfrisk
