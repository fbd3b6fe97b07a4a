#pragma once

// Exact rational linear programming: two-phase primal simplex on a dense
// tableau with Bland's smallest-index rule (finite on every input).
//
// Multiplier layout. Dual points and Farkas certificates carry one entry per
// "row" of the program in this order: the constraints as given, then for each
// variable j its lower-bound row (x_j >= l_j) if present followed by its
// upper-bound row (x_j <= u_j) if present. See bound_rows().
//
//  * Infeasible: y with sum_k y_k a_k = 0 and sum_k y_k b_k > 0, where y_k >= 0
//    on >= rows and y_k <= 0 on <= rows.
//  * Optimal: y with sum_k y_k a_k = c and sum_k y_k b_k = optimum; for a
//    maximisation y_k >= 0 on <= rows and y_k <= 0 on >= rows, reversed for a
//    minimisation.

#include "vassrank/integer.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vassrank::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

using VarId = std::size_t;

struct Constraint {
    RatVector coefficients;
    Relation relation = Relation::LessEqual;
    Rat rhs;
};

struct Objective {
    Sense sense = Sense::Maximize;
    RatVector coefficients;
};

class MalformedProgram : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Variables are free unless given bounds. add_variable() defaults to x >= 0,
/// which is what every constraint system in this project wants.
struct LinearProgram {
    std::vector<std::string> variables;
    std::vector<Constraint> constraints;
    std::optional<Objective> objective;
    std::vector<std::optional<Rat>> lower;
    std::vector<std::optional<Rat>> upper;

    std::size_t num_variables() const { return variables.size(); }

    VarId add_variable(std::string name, std::optional<Rat> lo = Rat(0), std::optional<Rat> hi = std::nullopt) {
        variables.push_back(std::move(name));
        lower.push_back(std::move(lo));
        upper.push_back(std::move(hi));
        for (auto& c : constraints) c.coefficients.emplace_back(0);
        if (objective) objective->coefficients.emplace_back(0);
        return variables.size() - 1;
    }

    void add_constraint(const std::vector<std::pair<VarId, Rat>>& terms, Relation rel, Rat rhs) {
        RatVector row(num_variables(), Rat(0));
        for (const auto& [var, coef] : terms) {
            if (var >= row.size()) throw MalformedProgram("constraint references unknown variable");
            row[var] += coef;
        }
        constraints.push_back(Constraint{std::move(row), rel, std::move(rhs)});
    }

    void set_objective(Sense sense, const std::vector<std::pair<VarId, Rat>>& terms) {
        RatVector c(num_variables(), Rat(0));
        for (const auto& [var, coef] : terms) {
            if (var >= c.size()) throw MalformedProgram("objective references unknown variable");
            c[var] += coef;
        }
        objective = Objective{sense, std::move(c)};
    }
};

struct Optimal {
    RatVector point;
    Rat value;
    std::optional<RatVector> dual_point;
};

struct Infeasible {
    std::optional<RatVector> farkas_certificate;
};

struct Unbounded {
    RatVector feasible_point;
    RatVector ray;
};

using LpOutcome = std::variant<Optimal, Infeasible, Unbounded>;

/// One implicit bound row, in multiplier-layout order.
struct BoundRow {
    VarId variable;
    Relation relation;  // GreaterEqual for a lower bound, LessEqual for an upper bound
    Rat rhs;
};

inline std::vector<BoundRow> bound_rows(const LinearProgram& lp) {
    std::vector<BoundRow> rows;
    for (VarId j = 0; j < lp.num_variables(); ++j) {
        if (j < lp.lower.size() && lp.lower[j]) rows.push_back({j, Relation::GreaterEqual, *lp.lower[j]});
        if (j < lp.upper.size() && lp.upper[j]) rows.push_back({j, Relation::LessEqual, *lp.upper[j]});
    }
    return rows;
}

inline void validate(const LinearProgram& lp) {
    const auto n = lp.num_variables();
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        if (lp.constraints[i].coefficients.size() != n) {
            throw MalformedProgram("constraint " + std::to_string(i) + " has " +
                                   std::to_string(lp.constraints[i].coefficients.size()) + " coefficients, expected " +
                                   std::to_string(n));
        }
    }
    if (lp.objective && lp.objective->coefficients.size() != n) {
        throw MalformedProgram("objective length does not match the number of variables");
    }
    if ((!lp.lower.empty() && lp.lower.size() != n) || (!lp.upper.empty() && lp.upper.size() != n)) {
        throw MalformedProgram("bound vectors must be empty or have one entry per variable");
    }
}

namespace detail {

enum class VarKind { Shifted, Flipped, Split };

// x_j = offset + x'  (Shifted),  offset - x'  (Flipped),  x'_col - x'_col2  (Split)
struct VarMapping {
    VarKind kind = VarKind::Split;
    std::size_t col = 0;
    std::size_t col2 = 0;
    Rat offset;
    std::optional<std::size_t> lower_slot;
    std::optional<std::size_t> upper_slot;
};

class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

    LpOutcome run() {
        if (has_artificials_) {
            RatVector cost(ncols_, Rat(0));
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (artificial_[j]) cost[j] = 1;
            }
            price(cost);
            iterate(false);
            if (sgn(value_) > 0) {
                return Infeasible{multipliers(cost)};
            }
            drive_out_artificials();
        }
        if (!lp_.objective) {
            return Optimal{primal_point(), Rat(0), std::nullopt};
        }
        RatVector cost(ncols_, Rat(0));
        const bool maximize = lp_.objective->sense == Sense::Maximize;
        for (std::size_t j = 0; j < mapping_.size(); ++j) {
            Rat c = lp_.objective->coefficients[j];
            if (maximize) c = -c;
            const auto& m = mapping_[j];
            switch (m.kind) {
                case VarKind::Shifted: cost[m.col] += c; break;
                case VarKind::Flipped: cost[m.col] -= c; break;
                case VarKind::Split:
                    cost[m.col] += c;
                    cost[m.col2] -= c;
                    break;
            }
        }
        price(cost);
        if (auto entering = iterate(true)) {
            return Unbounded{primal_point(), ray(*entering)};
        }
        RatVector x = primal_point();
        Rat value = 0;
        for (std::size_t j = 0; j < x.size(); ++j) value += lp_.objective->coefficients[j] * x[j];
        RatVector y = multipliers(cost);
        if (maximize) {
            for (auto& v : y) v = -v;
        }
        return Optimal{std::move(x), std::move(value), std::move(y)};
    }

private:
    void build() {
        const auto n = lp_.num_variables();
        const auto m_user = lp_.constraints.size();
        mapping_.resize(n);
        std::size_t ncols = 0;
        std::size_t slot = m_user;
        for (VarId j = 0; j < n; ++j) {
            const bool has_lo = j < lp_.lower.size() && lp_.lower[j].has_value();
            const bool has_hi = j < lp_.upper.size() && lp_.upper[j].has_value();
            auto& m = mapping_[j];
            if (has_lo) m.lower_slot = slot++;
            if (has_hi) m.upper_slot = slot++;
            if (has_lo) {
                m.kind = VarKind::Shifted;
                m.offset = *lp_.lower[j];
                m.col = ncols++;
            } else if (has_hi) {
                m.kind = VarKind::Flipped;
                m.offset = *lp_.upper[j];
                m.col = ncols++;
            } else {
                m.kind = VarKind::Split;
                m.col = ncols++;
                m.col2 = ncols++;
            }
        }
        num_slots_ = slot;
        nstruct_ = ncols;

        struct RawRow {
            RatVector coef;
            Relation rel;
            Rat rhs;
            std::size_t slot;
        };
        std::vector<RawRow> raw;
        for (std::size_t i = 0; i < m_user; ++i) {
            const auto& c = lp_.constraints[i];
            RawRow r{RatVector(nstruct_, Rat(0)), c.relation, c.rhs, i};
            for (VarId j = 0; j < n; ++j) {
                const Rat& a = c.coefficients[j];
                if (sgn(a) == 0) continue;
                const auto& m = mapping_[j];
                switch (m.kind) {
                    case VarKind::Shifted:
                        r.coef[m.col] += a;
                        r.rhs -= a * m.offset;
                        break;
                    case VarKind::Flipped:
                        r.coef[m.col] -= a;
                        r.rhs -= a * m.offset;
                        break;
                    case VarKind::Split:
                        r.coef[m.col] += a;
                        r.coef[m.col2] -= a;
                        break;
                }
            }
            raw.push_back(std::move(r));
        }
        for (VarId j = 0; j < n; ++j) {
            const auto& m = mapping_[j];
            if (m.kind == VarKind::Shifted && m.upper_slot) {
                RawRow r{RatVector(nstruct_, Rat(0)), Relation::LessEqual, *lp_.upper[j] - m.offset, *m.upper_slot};
                r.coef[m.col] = 1;
                raw.push_back(std::move(r));
            }
        }

        const std::size_t m = raw.size();
        // Column layout: structural, then one or two logical columns per row.
        std::size_t extra = 0;
        for (auto& r : raw) {
            if (sgn(r.rhs) < 0) {
                for (auto& a : r.coef) a = -a;
                r.rhs = -r.rhs;
                r.rel = r.rel == Relation::LessEqual      ? Relation::GreaterEqual
                        : r.rel == Relation::GreaterEqual ? Relation::LessEqual
                                                          : Relation::Equal;
                row_sign_.push_back(-1);
            } else {
                row_sign_.push_back(1);
            }
            extra += r.rel == Relation::GreaterEqual ? 2 : 1;
        }
        ncols_ = nstruct_ + extra;
        tab_.assign(m, RatVector(ncols_, Rat(0)));
        rhs_.resize(m);
        basis_.resize(m);
        unit_col_.resize(m);
        row_slot_.resize(m);
        artificial_.assign(ncols_, false);
        std::size_t col = nstruct_;
        for (std::size_t i = 0; i < m; ++i) {
            auto& r = raw[i];
            for (std::size_t j = 0; j < nstruct_; ++j) tab_[i][j] = std::move(r.coef[j]);
            rhs_[i] = std::move(r.rhs);
            row_slot_[i] = r.slot;
            if (r.rel == Relation::GreaterEqual) {
                tab_[i][col++] = -1;
            }
            tab_[i][col] = 1;
            unit_col_[i] = col;
            basis_[i] = col;
            if (r.rel != Relation::LessEqual) {
                artificial_[col] = true;
                has_artificials_ = true;
            }
            ++col;
        }
    }

    void price(const RatVector& cost) {
        reduced_ = cost;
        value_ = 0;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rat& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (sgn(tab_[i][j]) != 0) reduced_[j] -= cb * tab_[i][j];
            }
            value_ += cb * rhs_[i];
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        const Rat p = tab_[r][q];
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (sgn(tab_[r][j]) != 0) tab_[r][j] /= p;
        }
        rhs_[r] /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == r || sgn(tab_[i][q]) == 0) continue;
            const Rat f = tab_[i][q];
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (sgn(tab_[r][j]) != 0) tab_[i][j] -= f * tab_[r][j];
            }
            rhs_[i] -= f * rhs_[r];
        }
        if (sgn(reduced_[q]) != 0) {
            const Rat f = reduced_[q];
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (sgn(tab_[r][j]) != 0) reduced_[j] -= f * tab_[r][j];
            }
            value_ += f * rhs_[r];
        }
        basis_[r] = q;
    }

    // Minimises the priced cost. Returns the entering column of an unbounded
    // direction, or nullopt at an optimum.
    std::optional<std::size_t> iterate(bool forbid_artificials) {
        for (;;) {
            std::optional<std::size_t> q;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (forbid_artificials && artificial_[j]) continue;
                if (sgn(reduced_[j]) < 0) {
                    q = j;
                    break;
                }
            }
            if (!q) return std::nullopt;
            std::optional<std::size_t> r;
            Rat best;
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (sgn(tab_[i][*q]) <= 0) continue;
                Rat ratio = rhs_[i] / tab_[i][*q];
                if (!r || ratio < best || (ratio == best && basis_[i] < basis_[*r])) {
                    r = i;
                    best = std::move(ratio);
                }
            }
            if (!r) return q;
            pivot(*r, *q);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (!artificial_[basis_[i]]) continue;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!artificial_[j] && sgn(tab_[i][j]) != 0) {
                    pivot(i, j);
                    break;
                }
            }
            // A row with no non-artificial entry is redundant; its artificial
            // stays basic at zero and can never change.
        }
    }

    RatVector transformed_point() const {
        RatVector xs(nstruct_, Rat(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < nstruct_) xs[basis_[i]] = rhs_[i];
        }
        return xs;
    }

    RatVector map_back(const RatVector& xs, bool direction) const {
        RatVector x(mapping_.size());
        for (std::size_t j = 0; j < mapping_.size(); ++j) {
            const auto& m = mapping_[j];
            switch (m.kind) {
                case VarKind::Shifted: x[j] = direction ? Rat(xs[m.col]) : Rat(m.offset + xs[m.col]); break;
                case VarKind::Flipped: x[j] = direction ? Rat(-xs[m.col]) : Rat(m.offset - xs[m.col]); break;
                case VarKind::Split: x[j] = xs[m.col] - xs[m.col2]; break;
            }
        }
        return x;
    }

    RatVector primal_point() const { return map_back(transformed_point(), false); }

    RatVector ray(std::size_t q) const {
        RatVector d(nstruct_, Rat(0));
        if (q < nstruct_) d[q] = 1;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < nstruct_) d[basis_[i]] = -tab_[i][q];
        }
        return map_back(d, true);
    }

    // Row multipliers in min-form for the currently priced cost vector.
    RatVector multipliers(const RatVector& cost) const {
        RatVector y(num_slots_, Rat(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const std::size_t u = unit_col_[i];
            Rat pi = cost[u] - reduced_[u];
            if (row_sign_[i] < 0) pi = -pi;
            y[row_slot_[i]] = std::move(pi);
        }
        for (const auto& m : mapping_) {
            if (m.kind == VarKind::Shifted) {
                y[*m.lower_slot] = reduced_[m.col];
            } else if (m.kind == VarKind::Flipped) {
                y[*m.upper_slot] = -reduced_[m.col];
            }
        }
        return y;
    }

    const LinearProgram& lp_;
    std::vector<VarMapping> mapping_;
    std::size_t nstruct_ = 0;
    std::size_t ncols_ = 0;
    std::size_t num_slots_ = 0;
    std::vector<RatVector> tab_;
    RatVector rhs_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> unit_col_;
    std::vector<std::size_t> row_slot_;
    std::vector<int> row_sign_;
    std::vector<bool> artificial_;
    bool has_artificials_ = false;
    RatVector reduced_;
    Rat value_;
};

}  // namespace detail

inline LpOutcome solve(const LinearProgram& lp) {
    validate(lp);
    return detail::Simplex(lp).run();
}

/// m * x where m is the lcm of the denominators of x.
struct ScaledVector {
    IntVector values;
    Integer multiplier;
};

inline ScaledVector scale_to_integer(std::span<const Rat> x) {
    Integer m = 1;
    for (const auto& q : x) m = lcm(m, q.get_den());
    IntVector out;
    out.reserve(x.size());
    for (const auto& q : x) out.push_back(q.get_num() * (m / q.get_den()));
    return ScaledVector{std::move(out), std::move(m)};
}

inline bool is_optimal(const LpOutcome& o) { return std::holds_alternative<Optimal>(o); }
inline bool is_infeasible(const LpOutcome& o) { return std::holds_alternative<Infeasible>(o); }
inline bool is_unbounded(const LpOutcome& o) { return std::holds_alternative<Unbounded>(o); }

}  // namespace vassrank::lp
