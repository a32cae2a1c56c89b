#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ifh/graph.hpp"

namespace ifh {

// Discrete distribution over integer values, support sorted ascending,
// probabilities summing to 1 within 1e-12.
struct Pmf {
    std::vector<int> values;
    std::vector<double> probs;

    static Pmf point_mass(int v) { return {{v}, {1.0}}; }

    double prob_of(int v) const;
    double mean() const;
    int sample(Rng& rng) const;
    void check_normalized(double tol = 1e-9) const;
};

// KL(p || q) over p's support; +inf when q misses mass where p has some.
double kl_divergence(const Pmf& p, const Pmf& q);

// Survival schedule for the binomial removal process. pi(t) is the
// probability that a node of the original graph is still alive at step t;
// pi(0) = 1, pi(T) = 0, strictly decreasing.
class BinomialSchedule {
public:
    static BinomialSchedule linear(int steps);
    // T = ceil(n0 / v), pi_t = max(0, 1 - v t / n0).
    static BinomialSchedule adaptive(int n0, double v);

    int steps() const { return static_cast<int>(pi_.size()) - 1; }
    double survival(int t) const;        // pi_t, 0 <= t <= T
    double removal_prob(int t) const;    // q_t = 1 - pi_t / pi_{t-1}, 1 <= t <= T
    double reinsertion_prob(int t) const;  // qbar_t = 1 - (1 - pi_{t-1}) / (1 - pi_t)

private:
    explicit BinomialSchedule(std::vector<double> pi);
    std::vector<double> pi_;
};

struct CoinSolution {
    int count = 0;                  // minimal number of coins
    std::map<int, int> histogram;   // denomination -> count
};

// Minimal-cardinality change for `amount` over ascending denominations.
// Ties between equal-cardinality multisets are broken by preferring the
// largest feasible denomination at each DP cell, which makes the histogram a
// deterministic function of the amount. Throws on unreachable amounts.
CoinSolution coin_histogram(const std::vector<int>& denominations, int amount);

// Categorical removal process over a fixed denomination set. Requires 1 in D
// so every node count is reachable. The DP table is built once in the
// constructor; instances are immutable afterwards.
class CategoricalProcess {
public:
    explicit CategoricalProcess(std::vector<int> denominations, int max_amount = 4096);

    const std::vector<int>& denominations() const { return denoms_; }
    int max_amount() const { return static_cast<int>(min_coins_.size()) - 1; }

    int coin_count(int amount) const;               // T(amount)
    std::map<int, int> histogram(int amount) const;  // h(amount)

private:
    std::vector<int> denoms_;
    std::vector<int> min_coins_;
    std::vector<int> choice_;  // canonical denomination taken at each amount
};

Pmf binomial_transition_pmf(const BinomialSchedule& s, int t, int n_prev);
Pmf binomial_marginal_pmf(const BinomialSchedule& s, int t, int n0);
// Distribution of the reinserted count r_t given removed-so-far count,
// r_t ~ Binomial(removed_so_far, qbar_t).
Pmf binomial_posterior_pmf(const BinomialSchedule& s, int t, int removed_so_far);

Pmf categorical_transition_pmf(const CategoricalProcess& p, int n_prev, int t, int total_steps);
Pmf categorical_marginal_pmf(const CategoricalProcess& p, int n0, int t);
Pmf categorical_posterior_pmf(const CategoricalProcess& p, int n0, int n_t, int t);

// Process specification, parseable from CLI/config strings:
//   binomial:linear:T=<int> | binomial:adaptive:v=<float> | categorical:D=<d1,d2,...>
struct BinomialLinearSpec {
    int steps;
};
struct BinomialAdaptiveSpec {
    double velocity;
};
struct CategoricalSpec {
    std::vector<int> denominations;
};
using ProcessSpec = std::variant<BinomialLinearSpec, BinomialAdaptiveSpec, CategoricalSpec>;

ProcessSpec parse_process_spec(const std::string& text);
std::string to_string(const ProcessSpec& spec);

// One step of a sampled forward removal sequence. kept_ids are the surviving
// original node indices, ascending.
struct ForwardStep {
    int removed = 0;  // r_t
    std::vector<int> kept_ids;
};

// Samples a full forward removal sequence for g under the given process.
// Nodes are removed from the tail of `order`, so the reversed sequence
// inserts nodes in `order` order. The sequence always ends at the empty
// graph; with a binomial schedule it has exactly T steps.
std::vector<ForwardStep> sample_forward_sequence(const Graph& g, const ProcessSpec& spec,
                                                 const Permutation& order, Rng& rng);

}  // namespace ifh
