#pragma once

// Integer-only checking of ranking certificates and cycle witnesses. Nothing
// here calls the LP solver: SCC scopes are recomputed from the VASS and
// every row condition is evaluated directly.

#include "vassrank/graph.hpp"
#include "vassrank/ranking.hpp"
#include "vassrank/vass.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vassrank {

enum class RejectKind {
    NonStrict,             // row value > -1 at the level where the transition is claimed strict
    Increasing,            // row value > 0 at a level above the claimed one
    SignViolation,         // negative coefficient
    ScopeViolation,        // scopes do not match the recomputed SCCs
    UnassignedTransition,  // transition without a level
    OrderMismatch,         // claimed order differs from the tree depth
    Malformed,             // wrong vector length, unknown transition, level 0
    BrokenPath,
    NotACycle,
    NegativeComponent,
};

inline const char* reject_kind_name(RejectKind k) {
    switch (k) {
        case RejectKind::NonStrict: return "NonStrict";
        case RejectKind::Increasing: return "Increasing";
        case RejectKind::SignViolation: return "SignViolation";
        case RejectKind::ScopeViolation: return "ScopeViolation";
        case RejectKind::UnassignedTransition: return "UnassignedTransition";
        case RejectKind::OrderMismatch: return "OrderMismatch";
        case RejectKind::Malformed: return "Malformed";
        case RejectKind::BrokenPath: return "BrokenPath";
        case RejectKind::NotACycle: return "NotACycle";
        case RejectKind::NegativeComponent: return "NegativeComponent";
    }
    return "Unknown";
}

struct Rejection {
    RejectKind kind;
    std::string reason;
    std::optional<TransId> transition;
    std::optional<std::size_t> level;
    /// Counter index for NegativeComponent.
    std::optional<std::size_t> component;
};

/// Verified when `rejection` is empty.
struct CheckResult {
    std::optional<Rejection> rejection;

    bool verified() const { return !rejection.has_value(); }
    explicit operator bool() const { return verified(); }
    static CheckResult ok() { return {}; }
    static CheckResult reject(Rejection r) { return CheckResult{std::move(r)}; }
};

namespace detail {

inline std::set<LocId> as_set(const std::vector<LocId>& v) { return {v.begin(), v.end()}; }

class RankingChecker {
public:
    RankingChecker(const Vass& v, const RankingCertificate& cert) : v_(v), cert_(cert) {}

    CheckResult run() {
        for (const auto& [t, level] : cert_.transition_levels) {
            if (!v_.has_transition(t)) return fail(RejectKind::Malformed, "level for unknown transition", t, level);
            if (level == 0) return fail(RejectKind::Malformed, "levels start at 1", t, level);
        }
        std::size_t depth = 0;
        if (cert_.root) {
            auto r = node(*cert_.root, v_, 1, depth);
            if (!r) return r;
        } else if (!v_.transitions().empty()) {
            const auto t = v_.transitions().front().id;
            if (!cert_.transition_levels.count(t)) {
                return fail(RejectKind::UnassignedTransition, "no ranking level for transition", t, std::nullopt);
            }
            return fail(RejectKind::ScopeViolation, "certificate has no levels but the VASS has transitions", t,
                        std::nullopt);
        }
        if (depth != cert_.order) {
            return fail(RejectKind::OrderMismatch,
                        "claimed order " + std::to_string(cert_.order) + " but the tree has depth " +
                            std::to_string(depth),
                        std::nullopt, std::nullopt);
        }
        return CheckResult::ok();
    }

private:
    static CheckResult fail(RejectKind k, std::string why, std::optional<TransId> t, std::optional<std::size_t> level) {
        return CheckResult::reject(Rejection{k, std::move(why), t, level, std::nullopt});
    }

    // `sub` is the sub-VASS this node must rank; returns the subtree depth via `depth`.
    CheckResult node(const RankingNode& n, const Vass& sub, std::size_t level, std::size_t& depth) {
        depth = std::max(depth, level);
        if (as_set(n.scope) != as_set(sub.locations())) {
            return fail(RejectKind::ScopeViolation, "node scope differs from the recomputed SCC", std::nullopt, level);
        }
        if (n.r.size() != v_.dim()) {
            return fail(RejectKind::Malformed, "coefficient vector has wrong length", std::nullopt, level);
        }
        for (const auto& x : n.r) {
            if (x < 0) return fail(RejectKind::SignViolation, "negative coefficient in r", std::nullopt, level);
        }
        for (const auto& [l, x] : n.z) {
            if (!sub.has_location(l)) {
                return fail(RejectKind::ScopeViolation, "offset for a location outside the scope", std::nullopt, level);
            }
            if (x < 0) return fail(RejectKind::SignViolation, "negative offset in z", std::nullopt, level);
        }

        std::vector<TransId> strict;
        for (const auto& t : sub.transitions()) {
            auto it = cert_.transition_levels.find(t.id);
            if (it == cert_.transition_levels.end()) {
                return fail(RejectKind::UnassignedTransition, "no ranking level for transition", t.id, std::nullopt);
            }
            const auto claimed = it->second;
            const auto row = row_value(sub, n.r, n.z, t.id);
            if (claimed < level) {
                return fail(RejectKind::ScopeViolation, "transition still present below its claimed level", t.id, level);
            }
            if (claimed == level) {
                if (row > -1) {
                    return fail(RejectKind::NonStrict, "row value " + to_string(row) + " is not <= -1", t.id, level);
                }
                strict.push_back(t.id);
            } else if (row > 0) {
                return fail(RejectKind::Increasing, "row value " + to_string(row) + " is positive", t.id, level);
            }
        }

        const auto rest = scc_decompose(sub.without(strict));
        for (const auto& t : sub.transitions()) {
            if (std::find(strict.begin(), strict.end(), t.id) != strict.end()) continue;
            if (rest.component_of.at(t.source) != rest.component_of.at(t.target)) {
                return fail(RejectKind::ScopeViolation, "non-strict transition connects two SCCs", t.id, level);
            }
        }
        std::vector<bool> matched(rest.components.size(), false);
        for (const auto& child : n.children) {
            if (child.scope.empty()) {
                return fail(RejectKind::ScopeViolation, "child with empty scope", std::nullopt, level + 1);
            }
            const auto k = rest.component_of.count(child.scope.front()) ? rest.component_of.at(child.scope.front())
                                                                       : rest.components.size();
            if (k == rest.components.size() || matched[k]) {
                return fail(RejectKind::ScopeViolation, "child scope does not match a fresh SCC", std::nullopt,
                            level + 1);
            }
            matched[k] = true;
            auto r = node(child, rest.components[k], level + 1, depth);
            if (!r) return r;
        }
        for (std::size_t k = 0; k < rest.components.size(); ++k) {
            if (!matched[k] && !rest.components[k].transitions().empty()) {
                const auto t = rest.components[k].transitions().front().id;
                return fail(RejectKind::ScopeViolation, "SCC with transitions has no ranking level", t, level + 1);
            }
        }
        return CheckResult::ok();
    }

    const Vass& v_;
    const RankingCertificate& cert_;
};

}  // namespace detail

inline CheckResult verify_ranking(const Vass& v, const RankingCertificate& cert) {
    return detail::RankingChecker(v, cert).run();
}

inline CheckResult verify_witness(const Vass& v, const CycleWitness& w) {
    auto fail = [](RejectKind k, std::string why, std::optional<std::size_t> comp = std::nullopt) {
        return CheckResult::reject(Rejection{k, std::move(why), std::nullopt, std::nullopt, comp});
    };
    if (w.cycle.empty()) return fail(RejectKind::NotACycle, "empty witness");
    try {
        validate_path(v, w.cycle);
    } catch (const InvalidPath& e) {
        return fail(RejectKind::BrokenPath, e.what());
    }
    const auto& first = v.transition(w.cycle.steps.front());
    const auto& last = v.transition(w.cycle.steps.back());
    if (first.source != w.start) return fail(RejectKind::NotACycle, "first step does not leave the start location");
    if (last.target != w.start) return fail(RejectKind::NotACycle, "last step does not return to the start location");
    const auto value = path_value(v, w.cycle);
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] < 0) {
            return fail(RejectKind::NegativeComponent,
                        "component " + std::to_string(i) + " of the cycle value is " + to_string(value[i]), i);
        }
    }
    return CheckResult::ok();
}

/// The tuple (r_1.nu + z_1(l), r_2.nu + z_2(l), ...) along the path from the
/// root to the deepest node whose scope contains l.
inline IntVector evaluate(const RankingCertificate& cert, LocId l, const Valuation& nu) {
    IntVector out;
    const RankingNode* n = cert.root ? &*cert.root : nullptr;
    auto contains = [&](const RankingNode& x) { return std::find(x.scope.begin(), x.scope.end(), l) != x.scope.end(); };
    while (n && contains(*n)) {
        Integer value = dot(n->r, nu.entries);
        if (auto it = n->z.find(l); it != n->z.end()) value += it->second;
        out.push_back(value);
        const RankingNode* next = nullptr;
        for (const auto& c : n->children) {
            if (contains(c)) {
                next = &c;
                break;
            }
        }
        n = next;
    }
    return out;
}

/// a >_lex b on the common prefix.
inline bool lex_greater(const IntVector& a, const IntVector& b) {
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

struct PumpTrace {
    std::vector<VassState> states;  // states.size() == steps.size() + 1
    std::vector<TransId> steps;
};

/// Runs `repetitions` traversals of a verified witness from the valuation
/// m*u*1 at its start, where m is the largest update magnitude on the cycle
/// and u its length. Throws std::logic_error if a step would go negative.
inline PumpTrace pump_witness(const Vass& v, const CycleWitness& w, std::size_t repetitions) {
    Integer m = 0;
    for (auto t : w.cycle.steps) m = std::max(m, max_abs(v.transition(t).update));
    const Integer start = m * Integer(static_cast<unsigned long>(w.cycle.length()));
    PumpTrace out;
    out.states.push_back(VassState{w.start, Valuation{IntVector(v.dim(), start)}});
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        for (auto t : w.cycle.steps) {
            const auto& tr = v.transition(t);
            auto next = out.states.back();
            if (next.location != tr.source) throw std::logic_error("witness is not a connected cycle");
            add_into(next.valuation.entries, tr.update);
            if (!all_nonnegative(next.valuation.entries)) throw std::logic_error("pumped trace went negative");
            next.location = tr.target;
            out.states.push_back(std::move(next));
            out.steps.push_back(t);
        }
    }
    return out;
}

}  // namespace vassrank
