#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ifh/eval.hpp"
#include "synthetic.hpp"

using namespace ifh;

TEST_CASE("degree descriptor: P3 has mass 2/3 at degree 1 and 1/3 at degree 2") {
    DescriptorConfig cfg;
    cfg.degree_cap = 2;
    auto hist = descriptor(synth::path_graph(3), DescriptorKind::Degree, cfg);
    REQUIRE(hist.size() == 3);
    CHECK(hist[0] == doctest::Approx(0.0));
    CHECK(hist[1] == doctest::Approx(2.0 / 3));
    CHECK(hist[2] == doctest::Approx(1.0 / 3));
}

TEST_CASE("clustering descriptor: triangle puts all mass in the bin containing 1.0") {
    auto hist = descriptor(synth::cycle_graph(3), DescriptorKind::Clustering, {});
    REQUIRE(hist.size() == 100);
    CHECK(hist[99] == doctest::Approx(1.0));
    CHECK(std::accumulate(hist.begin(), hist.end() - 1, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("clustering: isolated and degree-1 nodes get coefficient 0") {
    Graph g({0, 0, 0}, {{0, 1, 0}}, true);  // edge + isolated node
    auto hist = descriptor(g, DescriptorKind::Clustering, {});
    CHECK(hist[0] == doctest::Approx(1.0));
}

TEST_CASE("spectrum: C4 normalized Laplacian eigenvalues are {0,1,1,2}") {
    auto eig = normalized_laplacian_spectrum(synth::cycle_graph(4));
    REQUIRE(eig.size() == 4);
    CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eig[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eig[3] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("spectrum eigenvalues always lie in [0, 2]") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 20));
        auto eig = normalized_laplacian_spectrum(synth::random_graph(n, 0.3, rng));
        for (double v : eig) {
            CHECK(v >= 0.0);
            CHECK(v <= 2.0);
        }
        CHECK(std::is_sorted(eig.begin(), eig.end()));
    }
}

TEST_CASE("descriptor histograms are normalized per graph; empty graph all-zero") {
    Rng rng(23);
    for (auto kind :
         {DescriptorKind::Degree, DescriptorKind::Clustering, DescriptorKind::Spectrum}) {
        DescriptorConfig cfg;
        cfg.degree_cap = 20;
        for (int trial = 0; trial < 30; ++trial) {
            int n = 1 + static_cast<int>(uniform_below(rng, 15));
            auto hist = descriptor(synth::random_graph(n, 0.4, rng), kind, cfg);
            CHECK(std::accumulate(hist.begin(), hist.end(), 0.0) == doctest::Approx(1.0));
        }
        auto empty_hist = descriptor(Graph::empty(), kind, cfg);
        CHECK(std::accumulate(empty_hist.begin(), empty_hist.end(), 0.0) == doctest::Approx(0.0));
    }
}

TEST_CASE("mmd: identity, symmetry, nonnegativity") {
    auto x = synth::random_set(30, 5, 15, 0.3, 3);
    auto y = synth::random_set(30, 5, 15, 0.7, 4);
    for (auto kind :
         {DescriptorKind::Degree, DescriptorKind::Clustering, DescriptorKind::Spectrum}) {
        CHECK(std::abs(mmd_rbf(x, x, kind)) <= 1e-12);
        double xy = mmd_rbf(x, y, kind);
        double yx = mmd_rbf(y, x, kind);
        CHECK(xy == yx);
        CHECK(xy >= -1e-12);
    }
    CHECK_THROWS(mmd_rbf({}, x, DescriptorKind::Degree));
}

TEST_CASE("mmd separates ER p=0.2 from p=0.8 by >= 10x over self-splits") {
    auto a = synth::random_set(100, 20, 20, 0.2, 10);
    auto b = synth::random_set(100, 20, 20, 0.8, 20);

    auto self_split = [](const std::vector<Graph>& set) {
        std::vector<Graph> h1(set.begin(), set.begin() + set.size() / 2);
        std::vector<Graph> h2(set.begin() + set.size() / 2, set.end());
        return mmd_rbf(h1, h2, DescriptorKind::Degree);
    };
    double cross = mmd_rbf(a, b, DescriptorKind::Degree);
    CHECK(cross >= 10 * self_split(a));
    CHECK(cross >= 10 * self_split(b));
}

TEST_CASE("uniqueness and novelty") {
    std::vector<Graph> same(5, synth::path_graph(4));
    CHECK(uniqueness(same) == doctest::Approx(1.0 / 5));

    std::vector<Graph> varied = {synth::path_graph(2), synth::path_graph(3),
                                 synth::cycle_graph(4)};
    CHECK(uniqueness(varied) == doctest::Approx(1.0));

    CHECK(novelty(varied, {synth::star_graph(7)}) == doctest::Approx(1.0));
    CHECK(novelty(varied, varied) == doctest::Approx(0.0));
    // permuted copies are not novel (hash is canonical)
    Graph permuted = relabel(synth::cycle_graph(4), {2, 3, 0, 1});
    CHECK(novelty({permuted}, {synth::cycle_graph(4)}) == doctest::Approx(0.0));
}

TEST_CASE("node count distance: exact Wasserstein on small fixtures") {
    std::vector<Graph> a = {synth::path_graph(2), synth::path_graph(4)};
    std::vector<Graph> b = {synth::path_graph(3), synth::path_graph(5)};
    // both distributions shifted by one node -> distance 1
    CHECK(node_count_distance(a, b) == doctest::Approx(1.0));
    CHECK(node_count_distance(a, a) == doctest::Approx(0.0));
    CHECK(node_count_distance(a, b) == node_count_distance(b, a));
}
