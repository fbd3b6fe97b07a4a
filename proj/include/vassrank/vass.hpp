#pragma once

// Vector addition systems with states: locations, transitions, valuations,
// paths, multi-cycles and the two matrices every constraint system is built
// from (the update matrix D and the oriented incidence matrix F).

#include "vassrank/integer.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vassrank {

/// Interned location name; the value indexes the name table of the root VASS.
struct LocId {
    std::uint32_t value = 0;
    friend auto operator<=>(const LocId&, const LocId&) = default;
};

/// Index-stable transition id assigned at construction (0, 1, 2, ...).
struct TransId {
    std::uint32_t value = 0;
    friend auto operator<=>(const TransId&, const TransId&) = default;
};

struct Transition {
    TransId id;
    LocId source;
    LocId target;
    IntVector update;

    bool is_self_loop() const { return source == target; }
};

class InvalidVass : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidPath : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input form of a transition, addressed by location name.
struct TransitionSpec {
    std::string from;
    std::string to;
    IntVector update;
};

/// A VASS or a sub-VASS of one. Sub-VASSs share the location name table and
/// the transition ids of the VASS they were carved from. Immutable once built.
class Vass {
public:
    static Vass create(std::size_t dim, std::vector<std::string> locations, std::vector<TransitionSpec> transitions) {
        if (dim == 0) {
            throw InvalidVass("dimension must be positive");
        }
        auto names = std::make_shared<std::vector<std::string>>(std::move(locations));
        std::map<std::string, LocId> by_name;
        for (std::uint32_t i = 0; i < names->size(); ++i) {
            if (!by_name.emplace((*names)[i], LocId{i}).second) {
                throw InvalidVass("duplicate location '" + (*names)[i] + "'");
            }
        }
        std::vector<LocId> locs;
        for (std::uint32_t i = 0; i < names->size(); ++i) locs.push_back(LocId{i});

        std::vector<Transition> trans;
        trans.reserve(transitions.size());
        for (std::size_t k = 0; k < transitions.size(); ++k) {
            auto& spec = transitions[k];
            auto src = by_name.find(spec.from);
            auto tgt = by_name.find(spec.to);
            if (src == by_name.end() || tgt == by_name.end()) {
                throw InvalidVass("transition " + std::to_string(k) + " references an unknown location");
            }
            if (spec.update.size() != dim) {
                throw InvalidVass("transition " + std::to_string(k) + " has an update of length " +
                                  std::to_string(spec.update.size()) + ", expected " + std::to_string(dim));
            }
            trans.push_back(Transition{TransId{static_cast<std::uint32_t>(k)}, src->second, tgt->second,
                                       std::move(spec.update)});
        }
        return Vass(dim, std::move(names), std::move(locs), std::move(trans), transitions.size());
    }

    /// The sub-VASS with the given locations and transitions; transition
    /// endpoints must lie inside `locs`.
    Vass sub_vass(std::span<const LocId> locs, std::span<const TransId> trans) const {
        std::vector<LocId> l(locs.begin(), locs.end());
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        for (auto id : l) {
            if (!has_location(id)) throw InvalidVass("sub-VASS location outside parent");
        }
        std::vector<TransId> ids(trans.begin(), trans.end());
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        std::vector<Transition> t;
        t.reserve(ids.size());
        for (auto id : ids) {
            const auto& tr = transition(id);
            if (!std::binary_search(l.begin(), l.end(), tr.source) || !std::binary_search(l.begin(), l.end(), tr.target)) {
                throw InvalidVass("sub-VASS transition " + std::to_string(id.value) + " leaves the location set");
            }
            t.push_back(tr);
        }
        return Vass(dim_, names_, std::move(l), std::move(t), total_transitions_);
    }

    /// Same locations, without the given transitions.
    Vass without(std::span<const TransId> removed) const {
        std::vector<TransId> keep;
        for (const auto& t : transitions_) {
            if (std::find(removed.begin(), removed.end(), t.id) == removed.end()) keep.push_back(t.id);
        }
        return sub_vass(locations_, keep);
    }

    std::size_t dim() const { return dim_; }
    const std::vector<LocId>& locations() const { return locations_; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    bool has_location(LocId l) const { return l.value < loc_pos_.size() && loc_pos_[l.value] >= 0; }
    bool has_transition(TransId t) const { return t.value < trans_pos_.size() && trans_pos_[t.value] >= 0; }

    /// Position of `l` within locations().
    std::size_t location_index(LocId l) const {
        if (!has_location(l)) throw std::out_of_range("location not in VASS");
        return static_cast<std::size_t>(loc_pos_[l.value]);
    }
    std::size_t transition_index(TransId t) const {
        if (!has_transition(t)) throw std::out_of_range("transition " + std::to_string(t.value) + " not in VASS");
        return static_cast<std::size_t>(trans_pos_[t.value]);
    }
    const Transition& transition(TransId t) const { return transitions_[transition_index(t)]; }

    const std::string& name(LocId l) const { return names_->at(l.value); }
    std::optional<LocId> find_location(const std::string& n) const {
        for (auto l : locations_) {
            if ((*names_)[l.value] == n) return l;
        }
        return std::nullopt;
    }

    /// Size of the shared name table (locations of the root VASS).
    std::size_t total_locations() const { return names_->size(); }
    /// Number of transitions of the root VASS; ids are below this bound.
    std::size_t total_transitions() const { return total_transitions_; }

    std::vector<TransId> transition_ids() const {
        std::vector<TransId> ids;
        ids.reserve(transitions_.size());
        for (const auto& t : transitions_) ids.push_back(t.id);
        return ids;
    }

    /// Structural equality by location names and transition contents.
    friend bool operator==(const Vass& a, const Vass& b) {
        if (a.dim_ != b.dim_ || a.locations_.size() != b.locations_.size() ||
            a.transitions_.size() != b.transitions_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.locations_.size(); ++i) {
            if (a.name(a.locations_[i]) != b.name(b.locations_[i])) return false;
        }
        for (std::size_t i = 0; i < a.transitions_.size(); ++i) {
            const auto& x = a.transitions_[i];
            const auto& y = b.transitions_[i];
            if (x.id != y.id || a.name(x.source) != b.name(y.source) || a.name(x.target) != b.name(y.target) ||
                x.update != y.update) {
                return false;
            }
        }
        return true;
    }

private:
    Vass(std::size_t dim, std::shared_ptr<const std::vector<std::string>> names, std::vector<LocId> locs,
         std::vector<Transition> trans, std::size_t total_transitions)
        : dim_(dim),
          names_(std::move(names)),
          locations_(std::move(locs)),
          transitions_(std::move(trans)),
          total_transitions_(total_transitions),
          loc_pos_(names_->size(), -1),
          trans_pos_(total_transitions, -1) {
        for (std::size_t i = 0; i < locations_.size(); ++i) loc_pos_[locations_[i].value] = static_cast<int>(i);
        for (std::size_t i = 0; i < transitions_.size(); ++i) {
            trans_pos_[transitions_[i].id.value] = static_cast<int>(i);
        }
    }

    std::size_t dim_;
    std::shared_ptr<const std::vector<std::string>> names_;
    std::vector<LocId> locations_;
    std::vector<Transition> transitions_;
    std::size_t total_transitions_;
    std::vector<int> loc_pos_;
    std::vector<int> trans_pos_;
};

/// Natural-number valuation of the counters.
struct Valuation {
    IntVector entries;
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

struct VassState {
    LocId location;
    Valuation valuation;
    friend bool operator==(const VassState&, const VassState&) = default;
};

struct Path {
    std::vector<TransId> steps;
    bool empty() const { return steps.empty(); }
    std::size_t length() const { return steps.size(); }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Transition multiplicities keyed by transition id.
using Counts = std::map<TransId, Integer>;

struct MultiCycle {
    std::vector<Path> cycles;
    Counts counts;
};

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t c) const {
        IntVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    IntVector multiply(std::span<const Integer> x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
        IntVector out(rows_, Integer(0));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    IntVector data_;
};

/// D: one column per transition, holding its update.
struct UpdateMatrix {
    IntMatrix entries;
    std::vector<TransId> columns;

    const Integer& at(std::size_t dim_index, TransId t) const {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c] == t) return entries(dim_index, c);
        }
        throw std::out_of_range("unknown transition column");
    }
};

/// F: rows are locations, columns transitions. A non-loop column holds +1 at
/// the target and -1 at the source, so (F^T z)(t) = z(target) - z(source).
struct FlowMatrix {
    IntMatrix entries;
    std::vector<LocId> rows;
    std::vector<TransId> columns;

    const Integer& at(LocId l, TransId t) const {
        std::size_t r = 0;
        while (r < rows.size() && rows[r] != l) ++r;
        std::size_t c = 0;
        while (c < columns.size() && columns[c] != t) ++c;
        if (r == rows.size() || c == columns.size()) throw std::out_of_range("unknown flow matrix entry");
        return entries(r, c);
    }
};

inline UpdateMatrix build_update_matrix(const Vass& v) {
    UpdateMatrix d{IntMatrix(v.dim(), v.transitions().size()), v.transition_ids()};
    for (std::size_t c = 0; c < v.transitions().size(); ++c) {
        const auto& u = v.transitions()[c].update;
        for (std::size_t i = 0; i < v.dim(); ++i) d.entries(i, c) = u[i];
    }
    return d;
}

inline FlowMatrix build_flow_matrix(const Vass& v) {
    FlowMatrix f{IntMatrix(v.locations().size(), v.transitions().size()), v.locations(), v.transition_ids()};
    for (std::size_t c = 0; c < v.transitions().size(); ++c) {
        const auto& t = v.transitions()[c];
        if (t.is_self_loop()) continue;
        f.entries(v.location_index(t.target), c) = 1;
        f.entries(v.location_index(t.source), c) = -1;
    }
    return f;
}

/// Throws InvalidPath unless every step exists in `v` and consecutive steps
/// are connected.
inline void validate_path(const Vass& v, const Path& p) {
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        if (!v.has_transition(p.steps[i])) {
            throw InvalidPath("step " + std::to_string(i) + " uses unknown transition " +
                              std::to_string(p.steps[i].value));
        }
        if (i > 0 && v.transition(p.steps[i - 1]).target != v.transition(p.steps[i]).source) {
            throw InvalidPath("steps " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not connected");
        }
    }
}

inline IntVector path_value(const Vass& v, const Path& p) {
    validate_path(v, p);
    IntVector sum(v.dim(), Integer(0));
    for (auto t : p.steps) add_into(sum, v.transition(t).update);
    return sum;
}

inline bool is_cycle(const Vass& v, const Path& p) {
    validate_path(v, p);
    return !p.empty() && v.transition(p.steps.front()).source == v.transition(p.steps.back()).target;
}

/// Counts as a dense vector aligned with v.transitions(); absent ids are 0.
inline IntVector counts_vector(const Vass& v, const Counts& counts) {
    IntVector out(v.transitions().size(), Integer(0));
    for (const auto& [id, n] : counts) out[v.transition_index(id)] = n;
    return out;
}

inline Counts count_steps(const Path& p) {
    Counts c;
    for (auto t : p.steps) c[t] += 1;
    return c;
}

}  // namespace vassrank
