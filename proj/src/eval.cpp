#include "ifh/eval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ifh {

namespace {

std::vector<double> histogram(const std::vector<double>& values, int bins, double lo, double hi,
                              int weight_total) {
    std::vector<double> mass(bins, 0.0);
    if (weight_total == 0) return mass;  // empty graph: all-zero, flagged by convention
    for (double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        mass[b] += 1.0 / weight_total;
    }
    return mass;
}

std::vector<double> local_clustering(const Graph& g) {
    auto adj = g.symmetric_adjacency();
    std::vector<std::set<int>> nb(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (auto [j, lbl] : adj[i]) nb[i].insert(j);

    std::vector<double> coeff(g.n(), 0.0);
    for (int i = 0; i < g.n(); ++i) {
        int d = static_cast<int>(nb[i].size());
        if (d < 2) continue;  // isolated or degree-1 nodes get coefficient 0
        long triangles = 0;
        for (int j : nb[i])
            for (int k : nb[i])
                if (j < k && nb[j].count(k)) ++triangles;
        coeff[i] = 2.0 * triangles / (static_cast<double>(d) * (d - 1));
    }
    return coeff;
}

}  // namespace

std::vector<double> normalized_laplacian_spectrum(const Graph& g) {
    const int n = g.n();
    if (n == 0) return {};
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        adj(e.u, e.v) = 1.0;
        adj(e.v, e.u) = 1.0;
    }
    Eigen::VectorXd deg = adj.rowwise().sum();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                lap(i, j) = deg(i) > 0 ? 1.0 : 0.0;
            else if (adj(i, j) > 0)
                lap(i, j) = -1.0 / std::sqrt(deg(i) * deg(j));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    for (double& v : eig) v = std::clamp(v, 0.0, 2.0);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> descriptor(const Graph& g, DescriptorKind kind, const DescriptorConfig& cfg) {
    switch (kind) {
        case DescriptorKind::Degree: {
            auto deg = g.degrees();
            std::vector<double> vals(deg.begin(), deg.end());
            return histogram(vals, cfg.degree_cap + 1, 0.0, cfg.degree_cap + 1.0, g.n());
        }
        case DescriptorKind::Clustering:
            return histogram(local_clustering(g), 100, 0.0, 1.0, g.n());
        case DescriptorKind::Spectrum:
            return histogram(normalized_laplacian_spectrum(g), 200, 0.0, 2.0, g.n());
    }
    throw std::logic_error("unknown descriptor kind");
}

namespace {

double sq_distance(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

}  // namespace

double mmd_rbf(const std::vector<Graph>& a, const std::vector<Graph>& b, DescriptorKind kind,
               std::optional<double> bandwidth, double* bandwidth_out) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mmd_rbf: empty graph set");

    DescriptorConfig cfg;
    if (kind == DescriptorKind::Degree) {
        int cap = 1;
        for (const auto& g : a)
            for (int d : g.degrees()) cap = std::max(cap, d);
        for (const auto& g : b)
            for (int d : g.degrees()) cap = std::max(cap, d);
        cfg.degree_cap = cap;
    }

    std::vector<std::vector<double>> da, db;
    da.reserve(a.size());
    db.reserve(b.size());
    for (const auto& g : a) da.push_back(descriptor(g, kind, cfg));
    for (const auto& g : b) db.push_back(descriptor(g, kind, cfg));

    double sigma;
    if (bandwidth) {
        sigma = *bandwidth;
    } else {
        std::vector<const std::vector<double>*> pooled;
        for (const auto& d : da) pooled.push_back(&d);
        for (const auto& d : db) pooled.push_back(&d);
        std::vector<double> dists;
        for (std::size_t i = 0; i < pooled.size(); ++i)
            for (std::size_t j = i + 1; j < pooled.size(); ++j)
                dists.push_back(std::sqrt(sq_distance(*pooled[i], *pooled[j])));
        if (dists.empty()) {
            if (bandwidth_out) *bandwidth_out = 1.0;
            return 0.0;
        }
        std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
        sigma = dists[dists.size() / 2];
        if (sigma <= 0.0) sigma = 1.0;
    }
    if (bandwidth_out) *bandwidth_out = sigma;
    const double gamma = 1.0 / (2.0 * sigma * sigma);

    // Kernel values are sorted before summation so the reduction order (and
    // hence the result) is identical under argument swap: mmd(a,b) == mmd(b,a)
    // exactly.
    auto kernel_mean = [&](const std::vector<std::vector<double>>& x,
                           const std::vector<std::vector<double>>& y) {
        std::vector<double> vals;
        vals.reserve(x.size() * y.size());
        for (const auto& xi : x)
            for (const auto& yj : y) vals.push_back(std::exp(-gamma * sq_distance(xi, yj)));
        std::sort(vals.begin(), vals.end());
        double s = 0.0;
        for (double v : vals) s += v;
        return s / (static_cast<double>(x.size()) * y.size());
    };

    return kernel_mean(da, da) + kernel_mean(db, db) - 2.0 * kernel_mean(da, db);
}

double uniqueness(const std::vector<Graph>& set) {
    if (set.empty()) throw std::invalid_argument("uniqueness: empty set");
    std::unordered_set<std::uint64_t> hashes;
    for (const auto& g : set) hashes.insert(canonical_hash(g));
    return static_cast<double>(hashes.size()) / set.size();
}

double novelty(const std::vector<Graph>& set, const std::vector<Graph>& train) {
    if (set.empty()) throw std::invalid_argument("novelty: empty set");
    std::unordered_set<std::uint64_t> train_hashes;
    for (const auto& g : train) train_hashes.insert(canonical_hash(g));
    long novel = 0;
    for (const auto& g : set)
        if (!train_hashes.count(canonical_hash(g))) ++novel;
    return static_cast<double>(novel) / set.size();
}

double node_count_distance(const std::vector<Graph>& a, const std::vector<Graph>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("node_count_distance: empty set");
    int max_n = 0;
    for (const auto& g : a) max_n = std::max(max_n, g.n());
    for (const auto& g : b) max_n = std::max(max_n, g.n());
    std::vector<double> fa(max_n + 1, 0.0), fb(max_n + 1, 0.0);
    for (const auto& g : a) fa[g.n()] += 1.0 / a.size();
    for (const auto& g : b) fb[g.n()] += 1.0 / b.size();
    double dist = 0.0, cdf_a = 0.0, cdf_b = 0.0;
    for (int k = 0; k <= max_n; ++k) {
        cdf_a += fa[k];
        cdf_b += fb[k];
        dist += std::abs(cdf_a - cdf_b);
    }
    return dist;
}

}  // namespace ifh
