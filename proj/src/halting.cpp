#include "ifh/halting.hpp"

#include <map>
#include <stdexcept>

namespace ifh {

std::vector<int> halting_labels(int total_steps) {
    if (total_steps < 1) throw std::invalid_argument("sequence length must be >= 1");
    std::vector<int> labels(total_steps, 0);
    labels[0] = 1;  // t = 1
    return labels;
}

int simulate_halt(const HaltingChain& chain, Rng& rng, int max_steps) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    for (int t = 1; t <= max_steps; ++t) {
        if (uniform01(rng) < chain.lambda(t)) return t;
    }
    return max_steps;
}

namespace {

class OracleHalter final : public Halter {
public:
    explicit OracleHalter(int target_n) : target_n_(target_n) {}
    double halt_probability(const Graph& g, int) const override {
        return g.n() >= target_n_ ? 1.0 : 0.0;
    }

private:
    int target_n_;
};

class FixedLambdaHalter final : public Halter {
public:
    explicit FixedLambdaHalter(double lambda) : lambda_(lambda) {
        if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda outside [0,1]");
    }
    double halt_probability(const Graph&, int) const override { return lambda_; }

private:
    double lambda_;
};

class EmpiricalHalter final : public Halter {
public:
    explicit EmpiricalHalter(const std::vector<RemovalRecord>& records) {
        if (records.empty()) throw std::invalid_argument("no records to fit halter on");
        for (const auto& rec : records) {
            auto& [halts, total] = counts_[rec.n_prev()];
            halts += rec.h_t;
            total += 1;
        }
    }

    double halt_probability(const Graph& g, int) const override {
        const int n = g.n();
        auto it = counts_.find(n);
        if (it != counts_.end())
            return static_cast<double>(it->second.first) / it->second.second;
        long halts = 0, total = 0;
        for (auto lo = counts_.lower_bound(n); lo != counts_.end(); ++lo) {
            halts += lo->second.first;
            total += lo->second.second;
        }
        if (total == 0) return 1.0;  // beyond every training graph
        return static_cast<double>(halts) / total;
    }

private:
    std::map<int, std::pair<long, long>> counts_;  // node count -> (halts, total)
};

}  // namespace

std::unique_ptr<Halter> make_oracle_halter(int target_n) {
    return std::make_unique<OracleHalter>(target_n);
}

std::unique_ptr<Halter> make_fixed_lambda_halter(double lambda) {
    return std::make_unique<FixedLambdaHalter>(lambda);
}

std::unique_ptr<Halter> make_empirical_halter(const std::vector<RemovalRecord>& records) {
    return std::make_unique<EmpiricalHalter>(records);
}

}  // namespace ifh
