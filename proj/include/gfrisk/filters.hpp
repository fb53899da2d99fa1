#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gfrisk {

enum class Architecture {
    MLP,
    GCN,
    GIN,
    PPNP,
    GPRGNN,
    Highpass,
    HighLowConcat,
    FAGCN,
    GraphSAGE,
    CayleyNet,
    ChebNet,
    ChebNetII,
};

/// Degree/spectrum context a response may depend on: the average-degree
/// approximation used by GIN/PPNP/GPR-GNN and lambda_max used by ChebNet.
struct GraphContext {
    double mean_degree = 2.0;
    double lambda_max = 2.0;
};

/// Architecture plus hyperparameters; maps lambda -> per-support responses.
struct FilterSpec {
    Architecture arch = Architecture::MLP;
    int layers = 1;
    double alpha = 0.0;   // PPNP / FAGCN mixing weight
    double eps = 0.0;     // GIN / FAGCN epsilon
    double h = 1.0;       // CayleyNet zoom
    int order = 1;        // ChebNet K / CayleyNet r_max
    std::vector<double> gamma;  // GPR-GNN coefficients, size K+1

    static FilterSpec mlp();
    static FilterSpec gcn();
    static FilterSpec gin(double eps);
    static FilterSpec ppnp(double alpha);
    static FilterSpec gprgnn(std::vector<double> gamma);
    /// gamma_k = alpha (1-alpha)^k for k = 0..K (personalized-pagerank weights).
    static FilterSpec gprgnn_ppr(double alpha, int K);
    static FilterSpec highpass();
    static FilterSpec highlow();
    static FilterSpec fagcn(double alpha, double eps);
    static FilterSpec sage();
    static FilterSpec cayleynet(double h, int r_max);
    static FilterSpec chebnet(int K);
    static FilterSpec chebnet2(int K);

    FilterSpec with_layers(int l) const;

    bool multi_support() const;
    std::string name() const;
};

struct FilterResponse {
    std::vector<double> supports;  // signed per-support responses
    double combined_sq = 0.0;      // sum of squared supports
};

/// Per-support responses at lambda per the architecture catalogue.
/// lambda must lie in [0, ctx.lambda_max] (small tolerance).
FilterResponse response(const FilterSpec& spec, double lambda,
                        const GraphContext& ctx);

/// Combined squared response sum_j g_j(lambda)^2.
double response_sq(const FilterSpec& spec, double lambda,
                   const GraphContext& ctx);

/// Response rescaled so the combined magnitude sqrt(sum g_j^2) peaks at 1
/// on the given grid. Sign structure is preserved.
class NormalizedResponse {
public:
    NormalizedResponse(FilterSpec spec, GraphContext ctx,
                       const std::vector<double>& grid);

    double scale() const { return scale_; }
    double magnitude(double lambda) const;     // sqrt(combined_sq), rescaled
    double combined_sq(double lambda) const;   // rescaled combined g^2
    std::vector<double> supports(double lambda) const;
    const FilterSpec& spec() const { return spec_; }

private:
    FilterSpec spec_;
    GraphContext ctx_;
    double scale_;
};

/// Effective student spectrum lambda_tilde_i = (g^2(lambda_i))^layers * f(lambda_i).
/// Enforces f(0) = 0 unless allow_nonzero_f0 (the homophily teacher keeps
/// f(0) = q); normalized = true rescales g to peak magnitude 1 on the grid.
std::vector<double> effective_spectrum(
    const FilterSpec& spec, const std::vector<double>& eigenvalues,
    const std::function<double(double)>& feature_fn, const GraphContext& ctx,
    bool normalized = false, bool allow_nonzero_f0 = false);

struct DepthResponseTable {
    std::vector<double> grid;
    std::vector<std::vector<double>> per_layer;  // per_layer[l-1][grid index]
};

/// Per-layer filter magnitude on the grid: g_norm(lambda)^l, or the
/// residual-averaged variant ((g_norm(lambda)+1)/2)^l when skip is set.
DepthResponseTable depth_response(const FilterSpec& base, int max_layers,
                                  bool skip, const std::vector<double>& grid,
                                  const GraphContext& ctx);

}  // namespace gfrisk
