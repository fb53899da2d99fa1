#include "doctest.h"

#include <cmath>
#include <vector>

#include "gfrisk/filters.hpp"

using namespace gfrisk;

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

const GraphContext kCtx{4.0, 2.0};

}  // namespace

TEST_CASE("catalogue single-support responses") {
    CHECK(response(FilterSpec::gcn(), 0.0, kCtx).supports[0] ==
          doctest::Approx(2.0));
    CHECK(response(FilterSpec::gcn(), 2.0, kCtx).supports[0] ==
          doctest::Approx(0.0));
    CHECK(response(FilterSpec::highpass(), 1.3, kCtx).supports[0] ==
          doctest::Approx(1.3));
    CHECK(response(FilterSpec::mlp(), 1.7, kCtx).supports[0] ==
          doctest::Approx(1.0));

    // GIN: pbar ((1+eps)/pbar + 1 - lambda)
    const double eps = 0.5;
    CHECK(response(FilterSpec::gin(eps), 0.3, kCtx).supports[0] ==
          doctest::Approx(4.0 * ((1.0 + eps) / 4.0 + 1.0 - 0.3)));

    // FAGCN: alpha((1+eps)-lambda) + (1-alpha)((eps-1)+lambda)
    CHECK(response(FilterSpec::fagcn(0.3, 0.2), 1.1, kCtx).supports[0] ==
          doctest::Approx(0.3 * (1.2 - 1.1) + 0.7 * (-0.8 + 1.1)));
}

TEST_CASE("PPNP response and guard") {
    const double alpha = 0.2, pbar = 4.0;
    const double base = 1.0 - 1.0 * pbar / (pbar + 1.0);
    CHECK(response(FilterSpec::ppnp(alpha), 1.0, kCtx).supports[0] ==
          doctest::Approx(alpha / (1.0 - (1.0 - alpha) * base)));
    CHECK_THROWS_AS(FilterSpec::ppnp(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FilterSpec::ppnp(1.5), std::invalid_argument);
}

TEST_CASE("lambda domain guard") {
    CHECK_THROWS_AS(response(FilterSpec::gcn(), -0.5, kCtx),
                    std::invalid_argument);
    CHECK_THROWS_AS(response(FilterSpec::gcn(), 2.5, kCtx),
                    std::invalid_argument);
}

TEST_CASE("multi-support combination rule") {
    auto at0 = response(FilterSpec::sage(), 0.0, kCtx);
    CHECK(at0.supports == std::vector<double>{1.0, 1.0});
    CHECK(at0.combined_sq == doctest::Approx(2.0));

    auto at2 = response(FilterSpec::sage(), 2.0, kCtx);
    CHECK(at2.supports == std::vector<double>{1.0, -1.0});
    CHECK(at2.combined_sq == doctest::Approx(2.0));

    // combined g^2 equals sum of squared supports everywhere
    for (double lambda : linspace(0.0, 2.0, 11)) {
        for (const auto& spec :
             {FilterSpec::highlow(), FilterSpec::chebnet(4),
              FilterSpec::cayleynet(1.0, 2)}) {
            auto r = response(spec, lambda, kCtx);
            double sum = 0.0;
            for (double g : r.supports) sum += g * g;
            CHECK(r.combined_sq == doctest::Approx(sum).epsilon(1e-12));
            CHECK(r.combined_sq >= 0.0);
        }
    }
}

TEST_CASE("ChebNet recursion matches the trigonometric closed form") {
    auto spec = FilterSpec::chebnet(6);
    for (double lambda : linspace(0.0, 2.0, 21)) {
        auto r = response(spec, lambda, kCtx);
        const double x = 2.0 * lambda / kCtx.lambda_max - 1.0;
        // supports are Chebyshev polynomials T_{s-1}(x)
        for (int s = 1; s <= 6; ++s) {
            const double expected = std::cos((s - 1) * std::acos(x));
            CHECK(r.supports[s - 1] == doctest::Approx(expected).epsilon(1e-9));
        }
    }

    auto k3 = response(FilterSpec::chebnet(3), 0.0, kCtx);
    CHECK(k3.supports == std::vector<double>{1.0, -1.0, 1.0});
    CHECK(k3.combined_sq == doctest::Approx(3.0));
}

TEST_CASE("ChebNet/s damps the recursion") {
    auto r = response(FilterSpec::chebnet2(3), 0.0, kCtx);
    // g3 = (2 g2^2 - g1) / 3 = 1/3 at lambda = 0
    CHECK(r.supports[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("CayleyNet support pairs lie on the unit circle") {
    auto spec = FilterSpec::cayleynet(0.7, 3);
    for (double lambda : linspace(0.0, 2.0, 9)) {
        auto r = response(spec, lambda, kCtx);
        REQUIRE(r.supports.size() == 7);
        for (int k = 1; k <= 3; ++k) {
            const double c = r.supports[2 * k - 1], s = r.supports[2 * k];
            CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("GPR-GNN with PPR coefficients converges to PPNP") {
    auto gpr = FilterSpec::gprgnn_ppr(0.2, 64);
    auto ppnp = FilterSpec::ppnp(0.2);
    for (double lambda : linspace(0.0, 2.0, 41)) {
        CHECK(response(gpr, lambda, kCtx).supports[0] ==
              doctest::Approx(response(ppnp, lambda, kCtx).supports[0])
                  .epsilon(1e-6));
    }
}

TEST_CASE("GCN decreasing, Highpass increasing") {
    auto grid = linspace(0.0, 2.0, 50);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(response(FilterSpec::gcn(), grid[i], kCtx).supports[0] <
              response(FilterSpec::gcn(), grid[i - 1], kCtx).supports[0]);
        CHECK(response(FilterSpec::highpass(), grid[i], kCtx).supports[0] >
              response(FilterSpec::highpass(), grid[i - 1], kCtx).supports[0]);
    }
}

TEST_CASE("normalize_response") {
    auto grid = std::vector<double>{0.0, 1.0, 2.0};
    NormalizedResponse gcn(FilterSpec::gcn(), kCtx, grid);
    CHECK(gcn.magnitude(0.0) == doctest::Approx(1.0));
    CHECK(gcn.magnitude(1.0) == doctest::Approx(0.5));
    CHECK(gcn.magnitude(2.0) == doctest::Approx(0.0));

    NormalizedResponse hp(FilterSpec::highpass(), kCtx, grid);
    CHECK(hp.magnitude(2.0) == doctest::Approx(1.0));

    NormalizedResponse mlp(FilterSpec::mlp(), kCtx, grid);
    CHECK(mlp.magnitude(0.7) == doctest::Approx(1.0));

    // identically-zero response on the grid
    CHECK_THROWS_AS(NormalizedResponse(FilterSpec::highpass(), kCtx, {0.0}),
                    std::invalid_argument);
}

TEST_CASE("effective_spectrum") {
    std::vector<double> eigs{0.0, 0.5, 1.0, 2.0};
    auto f = [](double l) { return l / 2.0; };

    SUBCASE("MLP passes the feature spectrum through") {
        auto tilde = effective_spectrum(FilterSpec::mlp(), eigs, f, kCtx);
        for (std::size_t i = 0; i < eigs.size(); ++i)
            CHECK(tilde[i] == doctest::Approx(f(eigs[i])));
    }

    SUBCASE("GCN one layer: (2 - lambda)^2 lambda / 2") {
        auto tilde = effective_spectrum(FilterSpec::gcn(), eigs, f, kCtx);
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            const double l = eigs[i];
            CHECK(tilde[i] ==
                  doctest::Approx((2.0 - l) * (2.0 - l) * l / 2.0));
        }
    }

    SUBCASE("zero eigenvalue maps to zero for every architecture") {
        for (const auto& spec :
             {FilterSpec::gcn(), FilterSpec::gin(0.1), FilterSpec::sage(),
              FilterSpec::chebnet(4), FilterSpec::mlp()}) {
            auto tilde = effective_spectrum(spec, eigs, f, kCtx);
            CHECK(tilde[0] == 0.0);
        }
    }

    SUBCASE("nonzero f(0) is rejected unless relaxed") {
        auto bad = [](double) { return 1.0; };
        CHECK_THROWS_AS(effective_spectrum(FilterSpec::gcn(), eigs, bad, kCtx),
                        std::invalid_argument);
        auto ok = effective_spectrum(FilterSpec::gcn(), eigs, bad, kCtx, false,
                                     true);
        CHECK(ok[0] == doctest::Approx(4.0));  // g(0)^2 * 1
    }

    SUBCASE("layers exponentiate the squared response") {
        auto l2 = effective_spectrum(FilterSpec::gcn().with_layers(2), eigs, f,
                                     kCtx);
        auto l1 = effective_spectrum(FilterSpec::gcn(), eigs, f, kCtx);
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            const double gsq = response_sq(FilterSpec::gcn(), eigs[i], kCtx);
            CHECK(l2[i] == doctest::Approx(l1[i] * gsq));
        }
    }
}

TEST_CASE("depth_response") {
    auto grid = linspace(0.0, 2.0, 41);

    SUBCASE("GCN high frequencies shrink with depth") {
        auto table = depth_response(FilterSpec::gcn(), 4, false, grid, kCtx);
        // lambda = 1 sits at grid index 20; normalized g = 0.5
        CHECK(table.per_layer[0][20] == doctest::Approx(0.5));
        CHECK(table.per_layer[3][20] == doctest::Approx(0.0625));
    }

    SUBCASE("skip connections never fully suppress") {
        auto table = depth_response(FilterSpec::gcn(), 3, true, grid, kCtx);
        CHECK(table.per_layer[2][40] == doctest::Approx(0.125));  // (1/2)^3
    }

    SUBCASE("MLP unchanged at any depth") {
        auto table = depth_response(FilterSpec::mlp(), 5, false, grid, kCtx);
        for (double v : table.per_layer[4]) CHECK(v == doctest::Approx(1.0));
    }
}
