#pragma once

// Control-graph algorithms over a VASS: SCC decomposition with a topological
// order of the condensation, the full-decomposition test, and Eulerian
// circuits of transition multigraphs.

#include "vassrank/vass.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vassrank {

class NotBalanced : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotConnected : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SccDecomposition {
    /// Components as sub-VASSs, indexed in order of their smallest location.
    std::vector<Vass> components;
    std::map<LocId, std::size_t> component_of;
    /// Topological order of the condensation: a component is listed before
    /// every component it can reach. Position counted from the back is the
    /// reverse-topological index used for the constant ranking level.
    std::vector<std::size_t> reverse_topological_order;

    std::size_t reverse_topological_index(std::size_t component) const {
        for (std::size_t p = 0; p < reverse_topological_order.size(); ++p) {
            if (reverse_topological_order[p] == component) return reverse_topological_order.size() - 1 - p;
        }
        throw std::out_of_range("unknown component");
    }
};

/// Tarjan's algorithm, iterative, visiting locations and edges in id order.
inline SccDecomposition scc_decompose(const Vass& v) {
    const auto n = v.locations().size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& t : v.transitions()) {
        succ[v.location_index(t.source)].push_back(v.location_index(t.target));
    }

    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> emitted;  // sinks first
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.edge < succ[f.node].size()) {
                const auto w = succ[f.node][f.edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const auto node = f.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[node]);
            if (low[node] == index[node]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != node);
                std::sort(comp.begin(), comp.end());
                emitted.push_back(std::move(comp));
            }
        }
    }

    // Renumber components by smallest member for a stable index.
    std::vector<std::size_t> order(emitted.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return emitted[a].front() < emitted[b].front(); });
    std::vector<std::size_t> new_index(emitted.size());
    for (std::size_t k = 0; k < order.size(); ++k) new_index[order[k]] = k;

    std::vector<std::size_t> comp_of_pos(n);
    for (std::size_t e = 0; e < emitted.size(); ++e) {
        for (auto p : emitted[e]) comp_of_pos[p] = new_index[e];
    }

    SccDecomposition out;
    std::vector<std::vector<LocId>> locs(emitted.size());
    std::vector<std::vector<TransId>> trans(emitted.size());
    for (std::size_t p = 0; p < n; ++p) {
        locs[comp_of_pos[p]].push_back(v.locations()[p]);
        out.component_of[v.locations()[p]] = comp_of_pos[p];
    }
    for (const auto& t : v.transitions()) {
        const auto cs = comp_of_pos[v.location_index(t.source)];
        if (cs == comp_of_pos[v.location_index(t.target)]) trans[cs].push_back(t.id);
    }
    for (std::size_t k = 0; k < emitted.size(); ++k) out.components.push_back(v.sub_vass(locs[k], trans[k]));
    for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) {
        out.reverse_topological_order.push_back(comp_of_pos[it->front()]);
    }
    return out;
}

inline bool is_fully_decomposable(const Vass& v) {
    const auto scc = scc_decompose(v);
    return std::all_of(v.transitions().begin(), v.transitions().end(), [&](const Transition& t) {
        return scc.component_of.at(t.source) == scc.component_of.at(t.target);
    });
}

/// Every location reaches every other one.
inline bool is_strongly_connected(const Vass& v) {
    if (v.locations().size() <= 1) return true;
    return scc_decompose(v).components.size() == 1;
}

namespace detail {

inline std::map<TransId, std::size_t> machine_counts(const Vass& v, const Counts& counts) {
    std::map<TransId, std::size_t> out;
    for (const auto& [id, n] : counts) {
        if (!v.has_transition(id)) throw std::invalid_argument("count for unknown transition " + std::to_string(id.value));
        if (n < 0) throw std::invalid_argument("negative transition count");
        if (n == 0) continue;
        if (n > Integer(100'000'000)) throw std::length_error("transition count too large for an explicit circuit");
        out[id] = n.get_ui();
    }
    return out;
}

inline void require_balanced(const Vass& v, const std::map<TransId, std::size_t>& counts) {
    std::vector<long long> balance(v.locations().size(), 0);
    for (const auto& [id, n] : counts) {
        const auto& t = v.transition(id);
        balance[v.location_index(t.source)] -= static_cast<long long>(n);
        balance[v.location_index(t.target)] += static_cast<long long>(n);
    }
    for (std::size_t p = 0; p < balance.size(); ++p) {
        if (balance[p] != 0) {
            throw NotBalanced("location '" + v.name(v.locations()[p]) + "' has unequal in- and out-degree");
        }
    }
}

// Weakly connected groups of counted transitions, ordered by smallest id.
inline std::vector<std::vector<TransId>> edge_groups(const Vass& v, const std::map<TransId, std::size_t>& counts) {
    std::vector<std::size_t> parent(v.locations().size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [id, n] : counts) {
        const auto& t = v.transition(id);
        parent[find(v.location_index(t.source))] = find(v.location_index(t.target));
    }
    std::map<std::size_t, std::vector<TransId>> by_root;
    std::vector<std::size_t> roots_in_order;
    for (const auto& [id, n] : counts) {
        const auto root = find(v.location_index(v.transition(id).source));
        if (!by_root.count(root)) roots_in_order.push_back(root);
        by_root[root].push_back(id);
    }
    std::vector<std::vector<TransId>> groups;
    for (auto r : roots_in_order) groups.push_back(std::move(by_root[r]));
    return groups;
}

// Hierholzer on a balanced, connected counted multigraph.
inline Path hierholzer(const Vass& v, const std::map<TransId, std::size_t>& counts) {
    if (counts.empty()) return {};
    const auto n = v.locations().size();
    std::vector<std::vector<std::pair<TransId, std::size_t>>> out(n);
    for (const auto& [id, c] : counts) out[v.location_index(v.transition(id).source)].emplace_back(id, c);
    std::vector<std::size_t> cursor(n, 0);

    const auto start = v.location_index(v.transition(counts.begin()->first).source);
    struct Entry {
        std::size_t loc;
        std::optional<TransId> via;
    };
    std::vector<Entry> stack{{start, std::nullopt}};
    std::vector<TransId> circuit;
    while (!stack.empty()) {
        const auto loc = stack.back().loc;
        auto& edges = out[loc];
        auto& cur = cursor[loc];
        while (cur < edges.size() && edges[cur].second == 0) ++cur;
        if (cur < edges.size()) {
            --edges[cur].second;
            const auto id = edges[cur].first;
            stack.push_back({v.location_index(v.transition(id).target), id});
        } else {
            if (stack.back().via) circuit.push_back(*stack.back().via);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return Path{std::move(circuit)};
}

}  // namespace detail

/// A single cycle using every transition t exactly counts[t] times. All-zero
/// counts give the empty path.
inline Path euler_circuit(const Vass& v, const Counts& counts) {
    const auto mc = detail::machine_counts(v, counts);
    if (mc.empty()) return {};
    detail::require_balanced(v, mc);
    if (detail::edge_groups(v, mc).size() != 1) {
        throw NotConnected("counted transitions do not form a single connected multigraph");
    }
    return detail::hierholzer(v, mc);
}

/// One Eulerian cycle per connected component of the counted multigraph.
inline MultiCycle multicycle_from_counts(const Vass& v, const Counts& counts) {
    const auto mc = detail::machine_counts(v, counts);
    detail::require_balanced(v, mc);
    MultiCycle out;
    for (const auto& group : detail::edge_groups(v, mc)) {
        std::map<TransId, std::size_t> sub;
        for (auto id : group) sub[id] = mc.at(id);
        out.cycles.push_back(detail::hierholzer(v, sub));
    }
    for (const auto& [id, n] : mc) out.counts[id] = static_cast<unsigned long>(n);
    return out;
}

}  // namespace vassrank
