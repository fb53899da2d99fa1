#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gfrisk/graph.hpp"
#include "gfrisk/spectral.hpp"

using namespace gfrisk;

namespace {

Graph random_connected_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    std::uniform_int_distribution<int> node(0, n - 1);
    for (int extra = 0; extra < n; ++extra) {
        int u = node(rng), v = node(rng);
        if (u != v) edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("normalized Laplacian of a single edge") {
    Graph g(2, {{0, 1}});
    auto L = normalized_laplacian(g);
    CHECK(L.entries(0, 0) == doctest::Approx(1.0));
    CHECK(L.entries(0, 1) == doctest::Approx(-1.0));
    CHECK(L.entries(1, 0) == doctest::Approx(-1.0));

    auto s = eigendecompose(L, false);
    CHECK(s.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
}

TEST_CASE("normalized Laplacian rejects isolated nodes") {
    Graph g(3, {{0, 1}});
    CHECK_THROWS_WITH_AS(normalized_laplacian(g), doctest::Contains("node 2"),
                         std::invalid_argument);
}

TEST_CASE("triangle spectrum is {0, 1.5, 1.5}") {
    auto L = normalized_laplacian(cycle_block_graph(1, 3));
    CHECK(L.entries(0, 1) == doctest::Approx(-0.5));
    auto s = eigendecompose(L, false);
    CHECK(s.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.5));
    CHECK(s.eigenvalues(2) == doctest::Approx(1.5));
}

TEST_CASE("cycle C_n eigenvalues match 1 - cos(2 pi k / n)") {
    const int n = 6;
    auto s = eigendecompose(normalized_laplacian(cycle_block_graph(1, n)), false);
    std::vector<double> expected;
    for (int k = 0; k < n; ++k)
        expected.push_back(1.0 - std::cos(2.0 * std::numbers::pi * k / n));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < n; ++i)
        CHECK(s.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("eigendecompose of identity") {
    LaplacianMatrix L{Eigen::MatrixXd::Identity(4, 4)};
    auto s = eigendecompose(L, true);
    for (int i = 0; i < 4; ++i) CHECK(s.eigenvalues(i) == doctest::Approx(1.0));
}

TEST_CASE("connected graph kernel is D^{1/2} 1") {
    auto g = random_connected_graph(8, 42);
    auto L = normalized_laplacian(g);
    auto s = eigendecompose(L, true);
    CHECK(std::abs(s.eigenvalues(0)) < 1e-10);
    // exactly one eigenvalue below threshold
    CHECK(s.eigenvalues(1) > 1e-8);

    Eigen::VectorXd v = s.eigenvectors->col(0);
    CHECK((L.entries * v).norm() < 1e-10);
    Eigen::VectorXd kernel(8);
    auto deg = g.degrees();
    for (int i = 0; i < 8; ++i) kernel(i) = std::sqrt(double(deg[i]));
    kernel.normalize();
    CHECK(std::abs(std::abs(kernel.dot(v)) - 1.0) < 1e-10);
}

TEST_CASE("spectrum diagnostics and invariants on random graphs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto g = random_connected_graph(12, seed);
        auto L = normalized_laplacian(g);
        auto s = eigendecompose(L, true);

        // trace(L) = n so eigenvalues sum to n
        CHECK(s.eigenvalues.sum() == doctest::Approx(12.0).epsilon(1e-9));
        CHECK(s.eigenvalues(0) > -1e-8);
        CHECK(s.lambda_max() < 2.0 + 1e-8);

        // orthonormality and reconstruction
        const auto& U = *s.eigenvectors;
        CHECK((U.transpose() * U - Eigen::MatrixXd::Identity(12, 12)).norm() <
              1e-8);
        Eigen::MatrixXd rec = U * s.eigenvalues.asDiagonal() * U.transpose();
        CHECK((rec - L.entries).norm() <= 1e-8 * L.entries.norm());
    }
}

TEST_CASE("spectral_symmetry_defect") {
    Spectrum s1{Eigen::Vector3d(0.0, 1.0, 2.0), std::nullopt};
    CHECK(spectral_symmetry_defect(s1) == doctest::Approx(0.0));

    // middle element pairs with itself: |0.5 + 0.5 - 2| = 1
    Spectrum s2{Eigen::Vector3d(0.0, 0.5, 2.0), std::nullopt};
    CHECK(spectral_symmetry_defect(s2) == doctest::Approx(1.0));

    auto edge = eigendecompose(normalized_laplacian(Graph(2, {{0, 1}})), false);
    CHECK(spectral_symmetry_defect(edge) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("multiplicity_profile grouping") {
    Spectrum s{Eigen::Vector4d(0.0, 1.0, 1.0, 2.0), std::nullopt};
    auto prof = multiplicity_profile(s, 1e-9);
    REQUIRE(prof.groups.size() == 3);
    CHECK(prof.groups[0].indices == std::vector<int>{0});
    CHECK(prof.groups[1].indices == std::vector<int>{1, 2});
    CHECK(prof.groups[2].indices == std::vector<int>{3});

    Spectrum distinct{Eigen::Vector3d(0.0, 0.7, 1.9), std::nullopt};
    CHECK(multiplicity_profile(distinct, 1e-9).groups.size() == 3);
}

TEST_CASE("cycle blocks replicate multiplicities") {
    for (int k : {1, 2, 3}) {
        auto s =
            eigendecompose(normalized_laplacian(cycle_block_graph(k, 8)), false);
        auto prof = multiplicity_profile(s, default_multiplicity_tol(s));
        for (const auto& group : prof.groups)
            CHECK(group.indices.size() % k == 0);
    }
}
