#pragma once

#include <optional>
#include <vector>

#include "ifh/graph.hpp"

namespace ifh {

enum class DescriptorKind { Degree, Clustering, Spectrum };

struct DescriptorConfig {
    int degree_cap = 1;  // shared across the compared sets
};

// Per-graph descriptor histogram, mass summing to 1 (all-zero for the empty
// graph). Degree: one bin per degree in [0, cap]; clustering: 100 bins on
// [0, 1]; spectrum: normalized-Laplacian eigenvalues, 200 bins on [0, 2].
std::vector<double> descriptor(const Graph& g, DescriptorKind kind, const DescriptorConfig& cfg);

// Eigenvalues of the symmetric normalized Laplacian, ascending; all in [0, 2].
std::vector<double> normalized_laplacian_spectrum(const Graph& g);

// Biased MMD^2 estimate with an RBF kernel over descriptor histograms.
// Bandwidth defaults to the median pairwise distance over the pooled sets;
// the value actually used is written to bandwidth_out when given.
double mmd_rbf(const std::vector<Graph>& a, const std::vector<Graph>& b, DescriptorKind kind,
               std::optional<double> bandwidth = std::nullopt, double* bandwidth_out = nullptr);

double uniqueness(const std::vector<Graph>& set);
double novelty(const std::vector<Graph>& set, const std::vector<Graph>& train);

// 1-Wasserstein distance between empirical node-count distributions.
double node_count_distance(const std::vector<Graph>& a, const std::vector<Graph>& b);

}  // namespace ifh
