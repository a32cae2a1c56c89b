#include "ifh/removal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ifh {

double Pmf::prob_of(int v) const {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) return 0.0;
    return probs[static_cast<std::size_t>(it - values.begin())];
}

double Pmf::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * probs[i];
    return s;
}

int Pmf::sample(Rng& rng) const {
    if (values.empty()) throw std::logic_error("sampling from empty pmf");
    double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += probs[i];
        if (u < acc) return values[i];
    }
    return values.back();
}

void Pmf::check_normalized(double tol) const {
    if (values.size() != probs.size()) throw std::logic_error("pmf size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < -tol) throw std::logic_error("negative pmf entry");
        if (i > 0 && values[i] <= values[i - 1]) throw std::logic_error("pmf support not sorted");
        s += probs[i];
    }
    if (std::abs(s - 1.0) > tol) throw std::logic_error("pmf not normalized");
}

double kl_divergence(const Pmf& p, const Pmf& q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (p.probs[i] <= 0.0) continue;
        double qi = q.prob_of(p.values[i]);
        if (qi <= 0.0) return std::numeric_limits<double>::infinity();
        kl += p.probs[i] * std::log(p.probs[i] / qi);
    }
    return std::max(kl, 0.0);
}

BinomialSchedule::BinomialSchedule(std::vector<double> pi) : pi_(std::move(pi)) {}

BinomialSchedule BinomialSchedule::linear(int steps) {
    if (steps < 1) throw std::invalid_argument("linear schedule needs T >= 1");
    std::vector<double> pi(steps + 1);
    for (int t = 0; t <= steps; ++t) pi[t] = static_cast<double>(steps - t) / steps;
    return BinomialSchedule(std::move(pi));
}

BinomialSchedule BinomialSchedule::adaptive(int n0, double v) {
    if (n0 < 1) throw std::invalid_argument("adaptive schedule needs n0 >= 1");
    if (v < 1.0) throw std::invalid_argument("adaptive schedule needs v >= 1");
    int steps = static_cast<int>(std::ceil(static_cast<double>(n0) / v));
    std::vector<double> pi(steps + 1);
    for (int t = 0; t <= steps; ++t) pi[t] = std::max(0.0, 1.0 - v * t / n0);
    pi[steps] = 0.0;
    return BinomialSchedule(std::move(pi));
}

double BinomialSchedule::survival(int t) const {
    if (t < 0 || t > steps()) throw std::out_of_range("schedule step out of range");
    return pi_[t];
}

double BinomialSchedule::removal_prob(int t) const {
    if (t < 1 || t > steps()) throw std::out_of_range("schedule step out of range");
    return 1.0 - pi_[t] / pi_[t - 1];
}

double BinomialSchedule::reinsertion_prob(int t) const {
    if (t < 1 || t > steps()) throw std::out_of_range("schedule step out of range");
    return 1.0 - (1.0 - pi_[t - 1]) / (1.0 - pi_[t]);
}

CoinSolution coin_histogram(const std::vector<int>& denominations, int amount) {
    if (denominations.empty()) throw std::invalid_argument("empty denomination set");
    if (amount < 0) throw std::invalid_argument("negative amount");
    for (std::size_t i = 0; i < denominations.size(); ++i) {
        if (denominations[i] <= 0) throw std::invalid_argument("denominations must be positive");
        if (i > 0 && denominations[i] <= denominations[i - 1])
            throw std::invalid_argument("denominations must be strictly ascending");
    }
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> best(amount + 1, kInf), choice(amount + 1, -1);
    best[0] = 0;
    for (int a = 1; a <= amount; ++a) {
        // Largest denomination wins ties: iterate ascending, accept on <=.
        for (int d : denominations) {
            if (d > a || best[a - d] >= kInf) continue;
            if (best[a - d] + 1 <= best[a]) {
                best[a] = best[a - d] + 1;
                choice[a] = d;
            }
        }
    }
    if (best[amount] >= kInf)
        throw std::domain_error("amount " + std::to_string(amount) + " unreachable from denominations");
    CoinSolution sol;
    sol.count = best[amount];
    for (int a = amount; a > 0; a -= choice[a]) ++sol.histogram[choice[a]];
    return sol;
}

CategoricalProcess::CategoricalProcess(std::vector<int> denominations, int max_amount)
    : denoms_(std::move(denominations)) {
    if (std::find(denoms_.begin(), denoms_.end(), 1) == denoms_.end())
        throw std::invalid_argument("denomination set must contain 1");
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    min_coins_.assign(max_amount + 1, kInf);
    choice_.assign(max_amount + 1, -1);
    min_coins_[0] = 0;
    for (int a = 1; a <= max_amount; ++a) {
        for (int d : denoms_) {
            if (d > a) continue;
            if (min_coins_[a - d] + 1 <= min_coins_[a]) {
                min_coins_[a] = min_coins_[a - d] + 1;
                choice_[a] = d;
            }
        }
    }
}

int CategoricalProcess::coin_count(int amount) const {
    if (amount < 0 || amount > max_amount())
        throw std::out_of_range("amount outside tabulated range");
    return min_coins_[amount];
}

std::map<int, int> CategoricalProcess::histogram(int amount) const {
    if (amount < 0 || amount > max_amount())
        throw std::out_of_range("amount outside tabulated range");
    std::map<int, int> h;
    for (int a = amount; a > 0; a -= choice_[a]) ++h[choice_[a]];
    return h;
}

namespace {

// Full Binomial(n, p) pmf over 0..n, normalized.
Pmf binom_pmf(int n, double p) {
    Pmf pmf;
    if (n == 0 || p <= 0.0) return Pmf::point_mass(0);
    if (p >= 1.0) return Pmf::point_mass(n);
    pmf.values.resize(n + 1);
    pmf.probs.resize(n + 1);
    double q = 1.0 - p;
    double cur = std::pow(q, n);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        pmf.values[k] = k;
        pmf.probs[k] = cur;
        sum += cur;
        if (k < n) cur *= (static_cast<double>(n - k) / (k + 1)) * (p / q);
    }
    for (auto& x : pmf.probs) x /= sum;
    return pmf;
}

double binom_coeff(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

}  // namespace

Pmf binomial_transition_pmf(const BinomialSchedule& s, int t, int n_prev) {
    if (n_prev < 0) throw std::invalid_argument("negative node count");
    // survivors ~ Binomial(n_prev, 1 - q_t)
    return binom_pmf(n_prev, 1.0 - s.removal_prob(t));
}

Pmf binomial_marginal_pmf(const BinomialSchedule& s, int t, int n0) {
    if (n0 < 0) throw std::invalid_argument("negative node count");
    return binom_pmf(n0, s.survival(t));
}

Pmf binomial_posterior_pmf(const BinomialSchedule& s, int t, int removed_so_far) {
    if (removed_so_far < 0) throw std::invalid_argument("negative removed count");
    return binom_pmf(removed_so_far, s.reinsertion_prob(t));
}

Pmf categorical_transition_pmf(const CategoricalProcess& p, int n_prev, int t, int total_steps) {
    int coins = p.coin_count(n_prev);
    if (coins != total_steps - t + 1)
        throw std::runtime_error("inconsistent state: coin count of n_prev != T - t + 1");
    Pmf pmf;
    for (auto [d, c] : p.histogram(n_prev)) {
        pmf.values.push_back(d);
        pmf.probs.push_back(static_cast<double>(c) / coins);
    }
    return pmf;
}

Pmf categorical_marginal_pmf(const CategoricalProcess& p, int n0, int t) {
    int total = p.coin_count(n0);
    if (t < 0 || t > total) throw std::out_of_range("t outside 0..T");
    auto h0 = p.histogram(n0);
    std::vector<std::pair<int, int>> urn(h0.begin(), h0.end());

    // Enumerate the sums reachable by drawing t balls from the urn.
    std::vector<int> removed_sums;
    std::vector<int> stack;
    auto enumerate = [&](auto&& self, std::size_t idx, int left, int sum) -> void {
        if (idx == urn.size()) {
            if (left == 0) removed_sums.push_back(sum);
            return;
        }
        auto [d, c] = urn[idx];
        for (int k = 0; k <= std::min(c, left); ++k)
            self(self, idx + 1, left - k, sum + k * d);
    };
    enumerate(enumerate, 0, t, 0);
    std::sort(removed_sums.begin(), removed_sums.end());
    removed_sums.erase(std::unique(removed_sums.begin(), removed_sums.end()), removed_sums.end());

    double denom = binom_coeff(total, t);
    Pmf pmf;
    for (auto it = removed_sums.rbegin(); it != removed_sums.rend(); ++it) {
        int delta = *it;
        auto hd = p.histogram(delta);
        double num = 1.0;
        for (auto [d, c] : h0) {
            auto f = hd.find(d);
            num *= binom_coeff(c, f == hd.end() ? 0 : f->second);
        }
        pmf.values.push_back(n0 - delta);
        pmf.probs.push_back(num / denom);
    }
    pmf.check_normalized();
    return pmf;
}

Pmf categorical_posterior_pmf(const CategoricalProcess& p, int n0, int n_t, int t) {
    if (t < 1) throw std::invalid_argument("posterior undefined before any removal");
    int delta = n0 - n_t;
    if (delta < 0) throw std::runtime_error("inconsistent state: n_t > n0");
    auto hd = p.histogram(delta);
    auto h0 = p.histogram(n0);
    int coins = 0;
    for (auto [d, c] : hd) {
        auto f = h0.find(d);
        if (f == h0.end() || f->second < c)
            throw std::runtime_error("inconsistent state: n_t unreachable at step t");
        coins += c;
    }
    if (coins != t) throw std::runtime_error("inconsistent state: n_t unreachable at step t");
    Pmf pmf;
    for (auto [d, c] : hd) {
        pmf.values.push_back(d);
        pmf.probs.push_back(static_cast<double>(c) / t);
    }
    return pmf;
}

ProcessSpec parse_process_spec(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("bad process spec: " + text); };
    if (text.rfind("binomial:linear:T=", 0) == 0) {
        int steps = std::stoi(text.substr(18));
        if (steps < 1) fail();
        return BinomialLinearSpec{steps};
    }
    if (text.rfind("binomial:adaptive:v=", 0) == 0) {
        double v = std::stod(text.substr(20));
        if (v < 1.0) fail();
        return BinomialAdaptiveSpec{v};
    }
    if (text.rfind("categorical:D=", 0) == 0) {
        std::vector<int> denoms;
        std::string rest = text.substr(14);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            denoms.push_back(std::stoi(rest.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        if (denoms.empty()) fail();
        std::sort(denoms.begin(), denoms.end());
        return CategoricalSpec{std::move(denoms)};
    }
    fail();
    return BinomialLinearSpec{1};
}

std::string to_string(const ProcessSpec& spec) {
    if (const auto* lin = std::get_if<BinomialLinearSpec>(&spec))
        return "binomial:linear:T=" + std::to_string(lin->steps);
    if (const auto* ad = std::get_if<BinomialAdaptiveSpec>(&spec)) {
        std::string v = std::to_string(ad->velocity);
        return "binomial:adaptive:v=" + v;
    }
    const auto& cat = std::get<CategoricalSpec>(spec);
    std::string out = "categorical:D=";
    for (std::size_t i = 0; i < cat.denominations.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(cat.denominations[i]);
    }
    return out;
}

std::vector<ForwardStep> sample_forward_sequence(const Graph& g, const ProcessSpec& spec,
                                                 const Permutation& order, Rng& rng) {
    const int n0 = g.n();
    if (static_cast<int>(order.size()) != n0)
        throw std::invalid_argument("ordering is not a permutation of the graph nodes");

    std::vector<int> removals;  // r_t per step
    if (const auto* cat = std::get_if<CategoricalSpec>(&spec)) {
        if (n0 > 0) {
            CategoricalProcess proc(cat->denominations, std::max(n0, 64));
            std::vector<int> urn;
            for (auto [d, c] : proc.histogram(n0)) urn.insert(urn.end(), c, d);
            shuffle_vec(urn, rng);
            removals = std::move(urn);
        }
    } else {
        BinomialSchedule sched = std::holds_alternative<BinomialLinearSpec>(spec)
                                     ? BinomialSchedule::linear(std::get<BinomialLinearSpec>(spec).steps)
                                     : BinomialSchedule::adaptive(
                                           std::max(n0, 1), std::get<BinomialAdaptiveSpec>(spec).velocity);
        if (n0 > 0) {
            int alive = n0;
            for (int t = 1; t <= sched.steps(); ++t) {
                double q = sched.removal_prob(t);
                int r = 0;
                for (int i = 0; i < alive; ++i)
                    if (uniform01(rng) < q) ++r;
                removals.push_back(r);
                alive -= r;
            }
        }
    }

    std::vector<ForwardStep> steps;
    steps.reserve(removals.size());
    int alive = n0;
    for (int r : removals) {
        alive -= r;
        ForwardStep st;
        st.removed = r;
        st.kept_ids.assign(order.begin(), order.begin() + alive);
        std::sort(st.kept_ids.begin(), st.kept_ids.end());
        steps.push_back(std::move(st));
    }
    return steps;
}

}  // namespace ifh
