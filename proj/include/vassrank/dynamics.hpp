#pragma once

// Concrete semantics: single steps, replay of transition sequences, and an
// exhaustive longest-trace search over all N-bounded start states, used to
// cross-check the symbolic analysis.

#include "vassrank/vass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace vassrank {

/// nullopt when t does not leave s.location or a counter would go negative.
inline std::optional<VassState> step(const Vass& v, const VassState& s, TransId t) {
    const auto& tr = v.transition(t);
    if (tr.source != s.location) return std::nullopt;
    VassState next{tr.target, s.valuation};
    add_into(next.valuation.entries, tr.update);
    if (!all_nonnegative(next.valuation.entries)) return std::nullopt;
    return next;
}

/// All visited states, or nullopt if some step blocks.
inline std::optional<std::vector<VassState>> replay(const Vass& v, const VassState& start,
                                                    const std::vector<TransId>& steps) {
    std::vector<VassState> trace{start};
    for (auto t : steps) {
        auto next = step(v, trace.back(), t);
        if (!next) return std::nullopt;
        trace.push_back(std::move(*next));
    }
    return trace;
}

enum class TraceStatus { Finite, NonTerminationDetected, BudgetExceeded };

struct TraceResult {
    TraceStatus status = TraceStatus::Finite;
    /// comp_N when Finite.
    std::uint64_t length = 0;
    std::size_t explored_states = 0;
    /// For NonTerminationDetected: the transitions between the two states of
    /// the Dickson pair (a non-negative cycle).
    std::vector<TransId> cycle;
};

struct OracleLimits {
    /// Maximum number of transitions fired during the search.
    std::uint64_t step_budget = 20'000'000;
    /// Abort when a counter exceeds this value.
    std::int64_t value_ceiling = 1'000'000;
};

namespace detail {

struct StateHash {
    std::size_t operator()(const std::vector<std::int64_t>& s) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : s) {
            h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

class TraceSearch {
public:
    TraceSearch(const Vass& v, OracleLimits limits) : v_(v), limits_(limits) {
        const auto nl = v.locations().size();
        out_.resize(nl);
        for (std::size_t c = 0; c < v.transitions().size(); ++c) {
            const auto& t = v.transitions()[c];
            Edge e{t.id, v.location_index(t.target), {}};
            for (const auto& d : t.update) e.update.push_back(to_int64(d));
            out_[v.location_index(t.source)].push_back(std::move(e));
        }
        on_stack_.resize(nl);
    }

    TraceResult run(std::int64_t n_bound, const std::vector<LocId>& starts) {
        TraceResult res;
        const auto dim = v_.dim();
        std::vector<std::int64_t> key(dim + 1, 0);
        for (std::size_t l = 0; l < v_.locations().size(); ++l) {
            if (!starts.empty() && std::find(starts.begin(), starts.end(), v_.locations()[l]) == starts.end()) continue;
            std::fill(key.begin() + 1, key.end(), 0);
            key[0] = static_cast<std::int64_t>(l);
            for (;;) {
                auto r = longest_from(key, res);
                if (res.status != TraceStatus::Finite) {
                    res.explored_states = memo_.size();
                    return res;
                }
                res.length = std::max(res.length, r);
                std::size_t i = 1;
                while (i <= dim && key[i] == n_bound) key[i++] = 0;
                if (i > dim) break;
                ++key[i];
            }
        }
        res.explored_states = memo_.size();
        return res;
    }

private:
    struct Edge {
        TransId id;
        std::size_t target;
        std::vector<std::int64_t> update;
    };
    struct Frame {
        std::vector<std::int64_t> key;
        std::size_t next_edge = 0;
        std::uint64_t best = 0;
        std::optional<TransId> via;
    };

    bool dominated_by_ancestor(const std::vector<std::int64_t>& key) const {
        for (auto idx : on_stack_[static_cast<std::size_t>(key[0])]) {
            const auto& anc = stack_[idx].key;
            bool le = true;
            for (std::size_t i = 1; i < key.size() && le; ++i) le = anc[i] <= key[i];
            if (le) return true;
        }
        return false;
    }

    void push(std::vector<std::int64_t> key, std::optional<TransId> via) {
        on_stack_[static_cast<std::size_t>(key[0])].push_back(stack_.size());
        stack_.push_back(Frame{std::move(key), 0, 0, via});
    }

    std::uint64_t longest_from(const std::vector<std::int64_t>& start, TraceResult& res) {
        if (auto it = memo_.find(start); it != memo_.end()) return it->second;
        push(start, std::nullopt);
        std::uint64_t result = 0;
        while (!stack_.empty()) {
            auto& f = stack_.back();
            const auto loc = static_cast<std::size_t>(f.key[0]);
            if (f.next_edge == out_[loc].size()) {
                const auto done = f.best;
                memo_.emplace(f.key, done);
                on_stack_[loc].pop_back();
                stack_.pop_back();
                if (stack_.empty()) {
                    result = done;
                } else {
                    stack_.back().best = std::max(stack_.back().best, done + 1);
                }
                continue;
            }
            const auto& e = out_[loc][f.next_edge++];
            std::vector<std::int64_t> next(f.key.size());
            next[0] = static_cast<std::int64_t>(e.target);
            bool enabled = true;
            for (std::size_t i = 1; i < next.size(); ++i) {
                next[i] = f.key[i] + e.update[i - 1];
                if (next[i] < 0) enabled = false;
            }
            if (!enabled) continue;
            if (++steps_ > limits_.step_budget) return abort(res, TraceStatus::BudgetExceeded);
            for (std::size_t i = 1; i < next.size(); ++i) {
                if (next[i] > limits_.value_ceiling) return abort(res, TraceStatus::BudgetExceeded);
            }
            if (auto it = memo_.find(next); it != memo_.end()) {
                f.best = std::max(f.best, it->second + 1);
                continue;
            }
            if (dominated_by_ancestor(next)) {
                res.cycle = dickson_cycle(next, e.id);
                return abort(res, TraceStatus::NonTerminationDetected);
            }
            push(std::move(next), e.id);
        }
        return result;
    }

    std::vector<TransId> dickson_cycle(const std::vector<std::int64_t>& key, TransId last) const {
        // Deepest ancestor at the same location that is dominated by `key`.
        std::size_t from = stack_.size();
        for (auto idx : on_stack_[static_cast<std::size_t>(key[0])]) {
            const auto& anc = stack_[idx].key;
            bool le = true;
            for (std::size_t i = 1; i < key.size() && le; ++i) le = anc[i] <= key[i];
            if (le) from = idx;
        }
        std::vector<TransId> cycle;
        for (std::size_t k = from + 1; k < stack_.size(); ++k) cycle.push_back(*stack_[k].via);
        cycle.push_back(last);
        return cycle;
    }

    std::uint64_t abort(TraceResult& res, TraceStatus s) {
        res.status = s;
        stack_.clear();
        for (auto& v : on_stack_) v.clear();
        return 0;
    }

    const Vass& v_;
    OracleLimits limits_;
    std::vector<std::vector<Edge>> out_;
    std::unordered_map<std::vector<std::int64_t>, std::uint64_t, StateHash> memo_;
    std::vector<Frame> stack_;
    std::vector<std::vector<std::size_t>> on_stack_;
    std::uint64_t steps_ = 0;
};

}  // namespace detail

/// comp_N: the length of the longest trace from a state with all counters
/// in [0, N]. Exhaustive and memoised on full states. A non-empty
/// `start_locations` restricts the start states to those locations.
inline TraceResult longest_trace(const Vass& v, std::uint64_t n_bound, OracleLimits limits = {},
                                 const std::vector<LocId>& start_locations = {}) {
    if (n_bound > static_cast<std::uint64_t>(limits.value_ceiling)) {
        return TraceResult{TraceStatus::BudgetExceeded, 0, 0, {}};
    }
    return detail::TraceSearch(v, limits).run(static_cast<std::int64_t>(n_bound), start_locations);
}

class OracleFailure : public std::runtime_error {
public:
    OracleFailure(TraceStatus s, const std::string& what) : std::runtime_error(what), status(s) {}
    TraceStatus status;
};

struct ComplexitySample {
    std::uint64_t n = 0;
    std::uint64_t comp = 0;
    std::size_t explored_states = 0;
};

/// One finite sample per N; throws OracleFailure otherwise.
inline std::vector<ComplexitySample> sample_complexity(const Vass& v, const std::vector<std::uint64_t>& n_values,
                                                       OracleLimits limits = {}) {
    std::vector<ComplexitySample> out;
    for (auto n : n_values) {
        auto r = longest_trace(v, n, limits);
        if (r.status == TraceStatus::BudgetExceeded) {
            throw OracleFailure(r.status, "budget exceeded at N = " + std::to_string(n));
        }
        if (r.status == TraceStatus::NonTerminationDetected) {
            throw OracleFailure(r.status, "non-termination detected at N = " + std::to_string(n));
        }
        out.push_back({n, r.length, r.explored_states});
    }
    return out;
}

/// Least-squares slope of log comp_N against log N.
inline double fit_exponent(const std::vector<ComplexitySample>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("need at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        if (s.n == 0 || s.comp == 0) throw std::domain_error("log of zero in exponent fit");
        const double x = std::log(static_cast<double>(s.n));
        const double y = std::log(static_cast<double>(s.comp));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(samples.size());
    const double den = k * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("exponent fit needs two distinct N");
    return (k * sxy - sx * sy) / den;
}

inline double estimate_exponent(const Vass& v, const std::vector<std::uint64_t>& n_values, OracleLimits limits = {}) {
    return fit_exponent(sample_complexity(v, n_values, limits));
}

inline void write_csv(std::ostream& os, const std::vector<ComplexitySample>& samples) {
    os << "N,comp_N,explored_states\n";
    for (const auto& s : samples) os << s.n << ',' << s.comp << ',' << s.explored_states << '\n';
}

}  // namespace vassrank
