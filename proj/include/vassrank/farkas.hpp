#pragma once

// The four constraint systems behind ranking-function synthesis:
//
//   (A_t)  D mu >= 0, F mu = 0, mu >= 0, mu(t) >= 1        non-negative multi-cycle through t
//   (B_t)  r >= 0, z >= 0, D^T r + F^T z <= 0, row t <= -1   affine quasi-ranking function strict on t
//   (P)    max 1^T a   s.t. 0 <= a <= 1, a <= mu, D mu >= 0, F mu = 0, mu >= 0
//   (Q)    min 1^T b   s.t. 0 <= b <= 1, r, z >= 0, D^T r + F^T z <= -1 + b
//
// Exactly one of (A_t), (B_t) is feasible. (P) and (Q) settle every
// transition at once: at an optimum a(t) = b(t) in {0, 1}.
//
// Row t of D^T r + F^T z is r.d_t + z(target t) - z(source t).

#include "vassrank/graph.hpp"
#include "vassrank/lp.hpp"
#include "vassrank/vass.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace vassrank {

/// Integral solution of constraints D mu >= 0, F mu = 0, mu >= 0.
struct CycleSolution {
    Counts mu;
};

/// Integral (r, z) with every row <= 0 and the rows in `strict` <= -1.
struct AffineRankSolution {
    IntVector r;
    std::map<LocId, Integer> z;
    std::vector<TransId> strict;
};

struct PrimalDualResult {
    std::vector<TransId> decreasing;
    AffineRankSolution rank_solution;
    std::optional<CycleSolution> cycle_solution;
    std::map<TransId, Rat> active_primal;
    std::map<TransId, Rat> active_dual;
    Rat primal_value;
    Rat dual_value;
};

/// r.d_t + z(target) - z(source); missing z entries count as 0.
inline Integer row_value(const Vass& v, const IntVector& r, const std::map<LocId, Integer>& z, TransId t) {
    const auto& tr = v.transition(t);
    Integer s = dot(r, tr.update);
    auto zt = z.find(tr.target);
    auto zs = z.find(tr.source);
    if (zt != z.end()) s += zt->second;
    if (zs != z.end()) s -= zs->second;
    return s;
}

inline Integer row_value(const Vass& v, const AffineRankSolution& s, TransId t) { return row_value(v, s.r, s.z, t); }

namespace detail {

inline lp::LinearProgram system_a_program(const Vass& v, std::optional<TransId> forced) {
    lp::LinearProgram prog;
    for (const auto& t : v.transitions()) {
        const bool is_forced = forced && *forced == t.id;
        prog.add_variable("mu" + std::to_string(t.id.value), Rat(is_forced ? 1 : 0));
    }
    for (std::size_t i = 0; i < v.dim(); ++i) {
        std::vector<std::pair<lp::VarId, Rat>> terms;
        for (std::size_t c = 0; c < v.transitions().size(); ++c) {
            const auto& d = v.transitions()[c].update[i];
            if (d != 0) terms.emplace_back(c, Rat(d));
        }
        prog.add_constraint(terms, lp::Relation::GreaterEqual, Rat(0));
    }
    const auto flow = build_flow_matrix(v);
    for (std::size_t l = 0; l < v.locations().size(); ++l) {
        std::vector<std::pair<lp::VarId, Rat>> terms;
        for (std::size_t c = 0; c < v.transitions().size(); ++c) {
            if (flow.entries(l, c) != 0) terms.emplace_back(c, Rat(flow.entries(l, c)));
        }
        prog.add_constraint(terms, lp::Relation::Equal, Rat(0));
    }
    return prog;
}

// Variables r_0..r_{dim-1}, then z for each location of v; one row per transition.
inline std::vector<std::pair<lp::VarId, Rat>> rank_row(const Vass& v, const Transition& t) {
    std::vector<std::pair<lp::VarId, Rat>> terms;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (t.update[i] != 0) terms.emplace_back(i, Rat(t.update[i]));
    }
    if (!t.is_self_loop()) {
        terms.emplace_back(v.dim() + v.location_index(t.target), Rat(1));
        terms.emplace_back(v.dim() + v.location_index(t.source), Rat(-1));
    }
    return terms;
}

inline void add_rank_variables(lp::LinearProgram& prog, const Vass& v) {
    for (std::size_t i = 0; i < v.dim(); ++i) prog.add_variable("r" + std::to_string(i));
    for (auto l : v.locations()) prog.add_variable("z_" + v.name(l));
}

inline AffineRankSolution scaled_rank(const Vass& v, std::span<const Rat> point, std::vector<TransId> strict) {
    const std::size_t width = v.dim() + v.locations().size();
    auto scaled = lp::scale_to_integer(point.subspan(0, width));
    AffineRankSolution s;
    s.r.assign(scaled.values.begin(), scaled.values.begin() + static_cast<std::ptrdiff_t>(v.dim()));
    for (std::size_t k = 0; k < v.locations().size(); ++k) s.z[v.locations()[k]] = scaled.values[v.dim() + k];
    s.strict = std::move(strict);
    return s;
}

inline Counts scaled_counts(const Vass& v, std::span<const Rat> mu) {
    auto scaled = lp::scale_to_integer(mu);
    Counts c;
    for (std::size_t k = 0; k < v.transitions().size(); ++k) c[v.transitions()[k].id] = scaled.values[k];
    return c;
}

}  // namespace detail

inline lp::LinearProgram system_a_program(const Vass& v, TransId t) {
    if (!v.has_transition(t)) throw std::invalid_argument("transition not in VASS");
    return detail::system_a_program(v, t);
}

/// (B_t); with `minimize` the objective min 1^T r + 1^T z picks small coefficients.
inline lp::LinearProgram system_b_program(const Vass& v, TransId t, bool minimize = false) {
    if (!v.has_transition(t)) throw std::invalid_argument("transition not in VASS");
    lp::LinearProgram prog;
    detail::add_rank_variables(prog, v);
    for (const auto& tr : v.transitions()) {
        prog.add_constraint(detail::rank_row(v, tr), lp::Relation::LessEqual, Rat(tr.id == t ? -1 : 0));
    }
    if (minimize) {
        std::vector<std::pair<lp::VarId, Rat>> all;
        for (std::size_t j = 0; j < prog.num_variables(); ++j) all.emplace_back(j, Rat(1));
        prog.set_objective(lp::Sense::Minimize, all);
    }
    return prog;
}

inline std::optional<CycleSolution> solve_system_A(const Vass& v, TransId t) {
    auto out = lp::solve(system_a_program(v, t));
    if (auto* opt = std::get_if<lp::Optimal>(&out)) {
        return CycleSolution{detail::scaled_counts(v, opt->point)};
    }
    return std::nullopt;
}

inline std::optional<AffineRankSolution> solve_system_B(const Vass& v, TransId t, bool minimize = false) {
    auto out = lp::solve(system_b_program(v, t, minimize));
    if (auto* opt = std::get_if<lp::Optimal>(&out)) {
        return detail::scaled_rank(v, opt->point, {t});
    }
    return std::nullopt;
}

/// Variables a_0.., then mu_0.. (one of each per transition).
inline lp::LinearProgram primal_program(const Vass& v) {
    const auto n = v.transitions().size();
    lp::LinearProgram prog;
    for (const auto& t : v.transitions()) prog.add_variable("a" + std::to_string(t.id.value), Rat(0), Rat(1));
    for (const auto& t : v.transitions()) prog.add_variable("mu" + std::to_string(t.id.value));
    for (std::size_t c = 0; c < n; ++c) {
        prog.add_constraint({{c, Rat(1)}, {n + c, Rat(-1)}}, lp::Relation::LessEqual, Rat(0));
    }
    auto cycles = detail::system_a_program(v, std::nullopt);
    for (const auto& row : cycles.constraints) {
        std::vector<std::pair<lp::VarId, Rat>> terms;
        for (std::size_t c = 0; c < n; ++c) {
            if (sgn(row.coefficients[c]) != 0) terms.emplace_back(n + c, row.coefficients[c]);
        }
        prog.add_constraint(terms, row.relation, row.rhs);
    }
    std::vector<std::pair<lp::VarId, Rat>> obj;
    for (std::size_t c = 0; c < n; ++c) obj.emplace_back(c, Rat(1));
    prog.set_objective(lp::Sense::Maximize, obj);
    return prog;
}

/// Variables r, z (as in (B_t)), then b_0.. per transition.
inline lp::LinearProgram dual_program(const Vass& v) {
    lp::LinearProgram prog;
    detail::add_rank_variables(prog, v);
    const auto first_b = prog.num_variables();
    for (const auto& t : v.transitions()) prog.add_variable("b" + std::to_string(t.id.value), Rat(0), Rat(1));
    for (std::size_t c = 0; c < v.transitions().size(); ++c) {
        auto terms = detail::rank_row(v, v.transitions()[c]);
        terms.emplace_back(first_b + c, Rat(-1));
        prog.add_constraint(terms, lp::Relation::LessEqual, Rat(-1));
    }
    std::vector<std::pair<lp::VarId, Rat>> obj;
    for (std::size_t c = 0; c < v.transitions().size(); ++c) obj.emplace_back(first_b + c, Rat(1));
    prog.set_objective(lp::Sense::Minimize, obj);
    return prog;
}

/// Solves (P) and (Q). Throws std::logic_error if either is not solved to
/// optimality or the 0/1 activity vectors disagree.
inline PrimalDualResult solve_primal_dual(const Vass& v) {
    const auto n = v.transitions().size();
    auto p_out = lp::solve(primal_program(v));
    auto q_out = lp::solve(dual_program(v));
    auto* p = std::get_if<lp::Optimal>(&p_out);
    auto* q = std::get_if<lp::Optimal>(&q_out);
    if (!p || !q) throw std::logic_error("primal/dual programs must have optimal solutions");

    PrimalDualResult res;
    res.primal_value = p->value;
    res.dual_value = q->value;
    const auto first_b = v.dim() + v.locations().size();
    for (std::size_t c = 0; c < n; ++c) {
        const auto id = v.transitions()[c].id;
        const Rat& a = p->point[c];
        const Rat& b = q->point[first_b + c];
        if ((a != 0 && a != 1) || a != b) {
            throw std::logic_error("primal and dual activity disagree on transition " + std::to_string(id.value));
        }
        res.active_primal[id] = a;
        res.active_dual[id] = b;
        if (b == 0) res.decreasing.push_back(id);
    }
    res.rank_solution = detail::scaled_rank(v, q->point, res.decreasing);
    RatVector mu(p->point.begin() + static_cast<std::ptrdiff_t>(n), p->point.end());
    res.cycle_solution = CycleSolution{detail::scaled_counts(v, mu)};
    return res;
}

/// Smallest-sum (r, z) strict on exactly the transitions in `strict`
/// (non-increasing on the rest). Returns nullopt if no such function exists.
inline std::optional<AffineRankSolution> tighten_coefficients(const Vass& v, const std::vector<TransId>& strict) {
    lp::LinearProgram prog;
    detail::add_rank_variables(prog, v);
    for (const auto& tr : v.transitions()) {
        const bool s = std::find(strict.begin(), strict.end(), tr.id) != strict.end();
        prog.add_constraint(detail::rank_row(v, tr), lp::Relation::LessEqual, Rat(s ? -1 : 0));
    }
    std::vector<std::pair<lp::VarId, Rat>> all;
    for (std::size_t j = 0; j < prog.num_variables(); ++j) all.emplace_back(j, Rat(1));
    prog.set_objective(lp::Sense::Minimize, all);
    auto out = lp::solve(prog);
    if (auto* opt = std::get_if<lp::Optimal>(&out)) return detail::scaled_rank(v, opt->point, strict);
    return std::nullopt;
}

class AlternativeViolation : public std::logic_error {
public:
    enum class Kind { BothFeasible, NeitherFeasible };
    AlternativeViolation(Kind k, const std::string& what) : std::logic_error(what), kind(k) {}
    Kind kind;
};

struct AlternativeReport {
    TransId transition;
    std::optional<CycleSolution> cycle;     // set iff (A_t) is feasible
    std::optional<AffineRankSolution> rank; // set iff (B_t) is feasible

    bool a_feasible() const { return cycle.has_value(); }
    bool b_feasible() const { return rank.has_value(); }
};

/// Solves (A_t) and (B_t) independently and throws AlternativeViolation unless
/// exactly one of them is feasible.
inline AlternativeReport check_alternative(const Vass& v, TransId t) {
    AlternativeReport rep{t, solve_system_A(v, t), solve_system_B(v, t)};
    if (rep.a_feasible() && rep.b_feasible()) {
        throw AlternativeViolation(AlternativeViolation::Kind::BothFeasible,
                                   "both (A_t) and (B_t) feasible for transition " + std::to_string(t.value));
    }
    if (!rep.a_feasible() && !rep.b_feasible()) {
        throw AlternativeViolation(AlternativeViolation::Kind::NeitherFeasible,
                                   "neither (A_t) nor (B_t) feasible for transition " + std::to_string(t.value));
    }
    return rep;
}

}  // namespace vassrank
