#pragma once

// Asymptotic complexity of terminating VASSs: conservativity checks, the
// dimension of the cone of multi-cycle values, the linear-complexity LP
//
//   (C)  max 1^T rho   s.t.  rho >= 0, D rho >= -1, F rho = 0
//
// and a report combining them with the order of the ranking certificate.

#include "vassrank/farkas.hpp"
#include "vassrank/graph.hpp"
#include "vassrank/lp.hpp"
#include "vassrank/ranking.hpp"
#include "vassrank/vass.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vassrank {

class NonTerminatingInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every update sums to zero.
inline bool is_conservative(const Vass& v) {
    return std::all_of(v.transitions().begin(), v.transitions().end(), [](const Transition& t) {
        return std::accumulate(t.update.begin(), t.update.end(), Integer(0)) == 0;
    });
}

namespace detail {

// mu >= 0, F mu = 0 and w^T D mu >= 1.
inline lp::LinearProgram directed_cycle_program(const Vass& v, const RatVector& w) {
    auto prog = detail::system_a_program(v, std::nullopt);
    // Keep the flow rows only.
    prog.constraints.erase(prog.constraints.begin(), prog.constraints.begin() + static_cast<std::ptrdiff_t>(v.dim()));
    std::vector<std::pair<lp::VarId, Rat>> terms;
    for (std::size_t c = 0; c < v.transitions().size(); ++c) {
        Rat coef = 0;
        for (std::size_t i = 0; i < v.dim(); ++i) coef += w[i] * Rat(v.transitions()[c].update[i]);
        if (sgn(coef) != 0) terms.emplace_back(c, coef);
    }
    prog.add_constraint(terms, lp::Relation::GreaterEqual, Rat(1));
    return prog;
}

inline std::optional<IntVector> directed_cycle_value(const Vass& v, const RatVector& w) {
    auto out = lp::solve(directed_cycle_program(v, w));
    auto* opt = std::get_if<lp::Optimal>(&out);
    if (!opt) return std::nullopt;
    auto mu = lp::scale_to_integer(opt->point).values;
    return build_update_matrix(v).entries.multiply(mu);
}

// Basis of {x | b.x = 0 for every row b}.
inline std::vector<RatVector> null_space(std::vector<RatVector> rows, std::size_t n) {
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && sgn(rows[p][col]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        const Rat inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || sgn(rows[i][col]) == 0) continue;
            const Rat f = rows[i][col];
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
        RatVector x(n, Rat(0));
        x[free] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = -rows[k][free];
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace detail

/// Every balanced mu >= 0 has a value D mu whose components sum to zero.
inline bool is_generalized_conservative(const Vass& v) {
    for (int s : {1, -1}) {
        if (detail::directed_cycle_value(v, RatVector(v.dim(), Rat(s)))) return false;
    }
    return true;
}

/// Dimension of the linear span of cone(V) = { D mu | F mu = 0, mu >= 0 }.
inline std::size_t cone_dimension(const Vass& v) {
    std::vector<RatVector> found;
    for (;;) {
        bool grew = false;
        for (const auto& w : detail::null_space(found, v.dim())) {
            for (int s : {1, -1}) {
                RatVector sw = w;
                for (auto& x : sw) x *= s;
                if (auto value = detail::directed_cycle_value(v, sw)) {
                    found.emplace_back(value->begin(), value->end());
                    grew = true;
                    break;
                }
            }
            if (grew) break;
        }
        if (!grew) return found.size();
    }
}

struct LinearVerdict {
    enum class Kind { ExactLinear, AtLeastQuadratic, NotApplicable };
    Kind kind = Kind::NotApplicable;
    /// Set for ExactLinear: comp_N(V) ~ c N.
    std::optional<Rat> c;
    /// Optimal rho for ExactLinear, the unbounded direction for AtLeastQuadratic.
    RatVector rho;
};

inline lp::LinearProgram linear_complexity_program(const Vass& v) {
    auto prog = detail::system_a_program(v, std::nullopt);
    for (std::size_t i = 0; i < v.dim(); ++i) prog.constraints[i].rhs = -1;
    std::vector<std::pair<lp::VarId, Rat>> obj;
    for (std::size_t c = 0; c < v.transitions().size(); ++c) obj.emplace_back(c, Rat(1));
    prog.set_objective(lp::Sense::Maximize, obj);
    return prog;
}

/// Solves (C) for a VASS already known to terminate.
inline LinearVerdict linear_complexity(const Vass& v, const AnalysisResult& result) {
    if (!result.terminating()) throw NonTerminatingInput("linear complexity needs a terminating VASS");
    auto out = lp::solve(linear_complexity_program(v));
    if (auto* opt = std::get_if<lp::Optimal>(&out)) {
        return LinearVerdict{LinearVerdict::Kind::ExactLinear, opt->value, opt->point};
    }
    if (auto* unb = std::get_if<lp::Unbounded>(&out)) {
        return LinearVerdict{LinearVerdict::Kind::AtLeastQuadratic, std::nullopt, unb->ray};
    }
    throw std::logic_error("(C) is always feasible at rho = 0");
}

inline LinearVerdict linear_complexity(const Vass& v) { return linear_complexity(v, analyze(v)); }

struct LevelBound {
    std::size_t depth = 0;  // 1-based, among the per-SCC levels
    Integer r_norm;
    Integer z_norm;
    std::size_t dim = 0;

    /// ||r|| * dim * N + ||z||
    std::string text() const {
        return to_string(r_norm) + "*" + std::to_string(dim) + "*N + " + to_string(z_norm);
    }
};

/// One factor per ranking level; their product bounds comp_N for a
/// conservative VASS.
struct SymbolicBound {
    std::vector<LevelBound> factors;
};

struct ComplexityReport {
    bool terminating = false;
    std::size_t order_k = 0;
    bool conservative_syntactic = false;
    bool conservative_generalized = false;
    /// O(N^k); known only for (generalized) conservative VASSs.
    std::optional<std::size_t> upper;
    /// Omega(N^k); absent for non-terminating input.
    std::optional<std::size_t> lower;
    LinearVerdict linear_verdict;
    SymbolicBound bound;

    /// "N^k" when upper and lower bound meet.
    std::optional<std::string> theta() const {
        if (!upper || !lower || *upper != *lower) return std::nullopt;
        if (*upper == 0) return "1";
        if (*upper == 1) return "N";
        return "N^" + std::to_string(*upper);
    }
};

namespace detail {

inline void collect_bounds(const RankingNode& n, std::size_t depth, std::size_t skip, std::size_t dim,
                           std::vector<LevelBound>& out) {
    if (depth > skip) {
        const auto idx = depth - skip - 1;
        if (out.size() <= idx) out.resize(idx + 1, LevelBound{idx + 1, Integer(0), Integer(0), dim});
        IntVector zs;
        for (const auto& [l, x] : n.z) zs.push_back(x);
        out[idx].r_norm = std::max(out[idx].r_norm, max_abs(n.r));
        out[idx].z_norm = std::max(out[idx].z_norm, max_abs(zs));
    }
    for (const auto& c : n.children) collect_bounds(c, depth + 1, skip, dim, out);
}

}  // namespace detail

inline ComplexityReport classify(const Vass& v, const AnalysisResult& result) {
    ComplexityReport rep;
    rep.conservative_syntactic = is_conservative(v);
    rep.conservative_generalized = is_generalized_conservative(v);
    if (!result.terminating()) return rep;
    rep.terminating = true;
    rep.order_k = result.diagnostics.component_order;
    rep.lower = rep.order_k;
    if (rep.conservative_generalized) rep.upper = rep.order_k;
    rep.linear_verdict = linear_complexity(v, result);
    if (const auto& root = result.certificate().root) {
        const bool driver = scc_decompose(v).components.size() > 1;
        detail::collect_bounds(*root, 1, driver ? 1 : 0, v.dim(), rep.bound.factors);
    }
    return rep;
}

}  // namespace vassrank
