#pragma once

// The recursive ranking procedure. On a connected VASS it either builds a
// lexicographic ranking certificate (a tree of affine quasi-ranking levels,
// one subtree per SCC left after removing the strictly decreasing
// transitions) or finds a non-negative cycle through every transition of some
// sub-VASS. analyze() lifts this to arbitrary VASSs through the SCC
// condensation.

#include "vassrank/farkas.hpp"
#include "vassrank/graph.hpp"
#include "vassrank/vass.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace vassrank {

enum class Mode {
    Loop,        // one (B_t) / (A_t) solve per transition
    PrimalDual,  // a single (P)/(Q) pair per call
};

struct AnalysisOptions {
    Mode mode = Mode::PrimalDual;
    /// Re-solve each level for the smallest 1^T r + 1^T z.
    bool minimize_coefficients = false;
    /// Greedily drop sub-cycles from the witness while its value stays >= 0.
    bool minimize_witness = false;
};

struct RankingNode {
    std::vector<LocId> scope;
    IntVector r;
    std::map<LocId, Integer> z;
    std::vector<RankingNode> children;
};

struct RankingCertificate {
    /// Empty for a VASS without transitions (the empty-sequence ranking).
    std::optional<RankingNode> root;
    /// 1-based tree depth at which each transition strictly decreases.
    std::map<TransId, std::size_t> transition_levels;
    std::size_t order = 0;
};

struct CycleWitness {
    LocId start;
    Path cycle;
    IntVector value;
};

struct LevelRecord {
    std::size_t depth = 0;
    std::vector<LocId> scope;
    std::vector<TransId> transitions;
    std::vector<TransId> decreasing;
    /// Optimal values of (P) and (Q); primal-dual mode only.
    std::optional<std::pair<Rat, Rat>> objectives;
};

struct Diagnostics {
    std::size_t recursion_depth = 0;
    /// One record per call on a sub-VASS with transitions, in call order.
    std::vector<LevelRecord> levels;
    /// Largest order among the per-SCC certificates, i.e. the order without
    /// the constant level the driver adds for a non-connected VASS.
    std::size_t component_order = 0;
};

struct Terminating {
    RankingCertificate certificate;
};

struct NonTerminating {
    CycleWitness witness;
};

struct AnalysisResult {
    std::variant<Terminating, NonTerminating> verdict;
    Diagnostics diagnostics;

    bool terminating() const { return std::holds_alternative<Terminating>(verdict); }
    const RankingCertificate& certificate() const { return std::get<Terminating>(verdict).certificate; }
    const CycleWitness& witness() const { return std::get<NonTerminating>(verdict).witness; }
};

class NotFullyDecomposable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class CoverageGap : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Componentwise sum; strict rows are the union of the parts' strict rows.
inline AffineRankSolution sum_combinator(const std::vector<AffineRankSolution>& parts) {
    if (parts.empty()) throw std::invalid_argument("sum of no quasi-ranking functions");
    AffineRankSolution out;
    out.r.assign(parts.front().r.size(), Integer(0));
    for (const auto& p : parts) {
        add_into(out.r, p.r);
        for (const auto& [l, x] : p.z) out.z[l] += x;
        out.strict.insert(out.strict.end(), p.strict.begin(), p.strict.end());
    }
    std::sort(out.strict.begin(), out.strict.end());
    out.strict.erase(std::unique(out.strict.begin(), out.strict.end()), out.strict.end());
    return out;
}

/// Puts `qrank` on top of the certificates of the SCCs left after removing
/// its strict transitions. Child certificates without a root contribute
/// nothing but still count as order 0.
inline RankingCertificate combine_combinator(const Vass& v, const AffineRankSolution& qrank,
                                             const std::vector<RankingCertificate>& scc_certs) {
    if (!is_fully_decomposable(v.without(qrank.strict))) {
        throw NotFullyDecomposable("removing the strict transitions leaves transitions between SCCs");
    }
    RankingCertificate out;
    RankingNode node;
    node.scope = v.locations();
    node.r = qrank.r;
    for (auto l : v.locations()) {
        auto it = qrank.z.find(l);
        node.z[l] = it == qrank.z.end() ? Integer(0) : it->second;
    }
    for (auto t : qrank.strict) out.transition_levels[t] = 1;
    std::size_t child_order = 0;
    for (const auto& c : scc_certs) {
        child_order = std::max(child_order, c.order);
        if (c.root) node.children.push_back(*c.root);
        for (const auto& [t, level] : c.transition_levels) out.transition_levels[t] = level + 1;
    }
    out.root = std::move(node);
    out.order = 1 + child_order;
    return out;
}

/// Removes closed sub-walks from a witness cycle as long as the remainder is
/// non-empty and its value stays non-negative.
inline Path shorten_witness(const Vass& v, Path cycle) {
    auto nonneg_without = [&](std::size_t i, std::size_t j) {
        IntVector sum(v.dim(), Integer(0));
        for (std::size_t k = 0; k < cycle.steps.size(); ++k) {
            if (k < i || k > j) add_into(sum, v.transition(cycle.steps[k]).update);
        }
        return all_nonnegative(sum);
    };
    bool changed = true;
    while (changed) {
        changed = false;
        const auto n = cycle.steps.size();
        if (n <= 1) break;
        for (std::size_t len = n - 1; len >= 1 && !changed; --len) {
            for (std::size_t i = 0; i + len <= n && !changed; ++i) {
                const std::size_t j = i + len - 1;
                if (v.transition(cycle.steps[i]).source != v.transition(cycle.steps[j]).target) continue;
                if (!nonneg_without(i, j)) continue;
                cycle.steps.erase(cycle.steps.begin() + static_cast<std::ptrdiff_t>(i),
                                  cycle.steps.begin() + static_cast<std::ptrdiff_t>(j + 1));
                changed = true;
            }
        }
    }
    return cycle;
}

/// Euler circuit of the summed counts. Every transition of `v` must be counted.
inline CycleWitness extract_witness(const Vass& v, const std::vector<CycleSolution>& solutions) {
    Counts total;
    for (const auto& s : solutions) {
        for (const auto& [t, n] : s.mu) total[t] += n;
    }
    for (const auto& t : v.transitions()) {
        if (total[t.id] < 1) throw CoverageGap("transition " + std::to_string(t.id.value) + " is not covered");
    }
    auto path = euler_circuit(v, total);
    if (path.empty()) throw CoverageGap("no transitions to cover");
    CycleWitness w{v.transition(path.steps.front()).source, path, path_value(v, path)};
    return w;
}

namespace detail {

using RankOutcome = std::variant<RankingCertificate, CycleWitness>;

inline CycleWitness finish_witness(const Vass& v, CycleWitness w, const AnalysisOptions& opt) {
    if (opt.minimize_witness) {
        w.cycle = shorten_witness(v, std::move(w.cycle));
        w.start = v.transition(w.cycle.steps.front()).source;
        w.value = path_value(v, w.cycle);
    }
    return w;
}

inline RankOutcome rank_proc(const Vass& v, std::size_t depth, const AnalysisOptions& opt, Diagnostics& diag) {
    diag.recursion_depth = std::max(diag.recursion_depth, depth);
    if (v.transitions().empty()) return RankingCertificate{};

    LevelRecord rec;
    rec.depth = depth;
    rec.scope = v.locations();
    rec.transitions = v.transition_ids();

    AffineRankSolution qrank;
    if (opt.mode == Mode::Loop) {
        std::vector<AffineRankSolution> parts;
        std::vector<CycleSolution> cycles;
        for (const auto& t : v.transitions()) {
            if (auto b = solve_system_B(v, t.id)) {
                parts.push_back(std::move(*b));
            } else if (auto a = solve_system_A(v, t.id)) {
                cycles.push_back(std::move(*a));
            } else {
                throw std::logic_error("neither (A_t) nor (B_t) is feasible");
            }
        }
        if (parts.empty()) {
            diag.levels.push_back(std::move(rec));
            return finish_witness(v, extract_witness(v, cycles), opt);
        }
        qrank = sum_combinator(parts);
    } else {
        auto pd = solve_primal_dual(v);
        rec.objectives = std::make_pair(pd.primal_value, pd.dual_value);
        if (pd.decreasing.empty()) {
            diag.levels.push_back(std::move(rec));
            return finish_witness(v, extract_witness(v, {*pd.cycle_solution}), opt);
        }
        qrank = std::move(pd.rank_solution);
    }
    if (opt.minimize_coefficients) {
        if (auto tight = tighten_coefficients(v, qrank.strict)) qrank = std::move(*tight);
    }
    rec.decreasing = qrank.strict;
    diag.levels.push_back(std::move(rec));

    const auto rest = scc_decompose(v.without(qrank.strict));
    std::vector<RankingCertificate> children;
    for (const auto& scc : rest.components) {
        auto sub = rank_proc(scc, depth + 1, opt, diag);
        if (auto* w = std::get_if<CycleWitness>(&sub)) return std::move(*w);
        children.push_back(std::move(std::get<RankingCertificate>(sub)));
    }
    return combine_combinator(v, qrank, children);
}

inline AnalysisResult to_result(RankOutcome out, Diagnostics diag) {
    if (auto* w = std::get_if<CycleWitness>(&out)) return AnalysisResult{NonTerminating{std::move(*w)}, std::move(diag)};
    return AnalysisResult{Terminating{std::move(std::get<RankingCertificate>(out))}, std::move(diag)};
}

}  // namespace detail

/// Algorithm on a strongly connected VASS (or one without transitions).
inline AnalysisResult analyze_connected(const Vass& v, const AnalysisOptions& opt = {}) {
    if (!v.transitions().empty() && !is_strongly_connected(v)) {
        throw NotConnected("analyze_connected needs a strongly connected VASS");
    }
    Diagnostics diag;
    auto out = detail::rank_proc(v, 1, opt, diag);
    if (auto* c = std::get_if<RankingCertificate>(&out)) diag.component_order = c->order;
    return detail::to_result(std::move(out), std::move(diag));
}

/// Any VASS. Each SCC is analysed separately; a constant level (r = 0,
/// z = reverse-topological index of the SCC) orders the SCCs.
inline AnalysisResult analyze(const Vass& v, const AnalysisOptions& opt = {}) {
    if (v.transitions().empty()) {
        Diagnostics diag;
        diag.recursion_depth = 1;
        return AnalysisResult{Terminating{}, diag};
    }
    const auto scc = scc_decompose(v);
    if (scc.components.size() == 1) return analyze_connected(v, opt);

    Diagnostics diag;
    std::vector<RankingCertificate> children;
    for (const auto& comp : scc.components) {
        auto out = detail::rank_proc(comp, 1, opt, diag);
        if (auto* w = std::get_if<CycleWitness>(&out)) return detail::to_result(std::move(*w), std::move(diag));
        auto& cert = std::get<RankingCertificate>(out);
        diag.component_order = std::max(diag.component_order, cert.order);
        children.push_back(std::move(cert));
    }

    AffineRankSolution constant;
    constant.r.assign(v.dim(), Integer(0));
    for (auto l : v.locations()) {
        constant.z[l] = Integer(static_cast<unsigned long>(scc.reverse_topological_index(scc.component_of.at(l))));
    }
    for (const auto& t : v.transitions()) {
        if (scc.component_of.at(t.source) != scc.component_of.at(t.target)) constant.strict.push_back(t.id);
    }
    return AnalysisResult{Terminating{combine_combinator(v, constant, children)}, std::move(diag)};
}

}  // namespace vassrank
