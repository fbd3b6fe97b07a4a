#pragma once

// JSON reading and writing for VASSs, certificates, witnesses and complexity
// reports. Integers are written as JSON numbers when they fit in 64 bits and
// as decimal strings otherwise; both forms are accepted on input.

#include "vassrank/certificate.hpp"
#include "vassrank/complexity.hpp"
#include "vassrank/ranking.hpp"
#include "vassrank/vass.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vassrank {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::optional<std::size_t> line = std::nullopt,
               std::optional<std::size_t> column = std::nullopt, std::string field = {})
        : std::runtime_error(format(message, line, column, field)),
          line(line),
          column(column),
          field(std::move(field)) {}

    std::optional<std::size_t> line;
    std::optional<std::size_t> column;
    std::string field;

private:
    static std::string format(const std::string& m, std::optional<std::size_t> line, std::optional<std::size_t> col,
                              const std::string& field) {
        std::string out;
        if (line) out += "line " + std::to_string(*line) + ", column " + std::to_string(col.value_or(0)) + ": ";
        if (!field.empty()) out += "field '" + field + "': ";
        return out + m;
    }
};

namespace detail {

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const auto end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        if (auto p = what.rfind(": "); p != std::string::npos) what = what.substr(p + 2);
        throw ParseError(what, line, col);
    }
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ParseError("expected an object", std::nullopt, std::nullopt, path);
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing field", std::nullopt, std::nullopt, path.empty() ? key : path + "." + key);
    return *it;
}

inline Integer parse_integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                      : Integer(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const std::size_t digits_from = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
        const bool ok = s.size() > digits_from &&
                        std::all_of(s.begin() + static_cast<std::ptrdiff_t>(digits_from), s.end(),
                                    [](char c) { return c >= '0' && c <= '9'; });
        if (ok) return Integer(s[0] == '+' ? s.substr(1) : s);
    }
    throw ParseError("expected an integer", std::nullopt, std::nullopt, path);
}

inline std::size_t parse_count(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw ParseError("expected a non-negative integer", std::nullopt, std::nullopt, path);
    }
    return j.get<std::size_t>();
}

inline std::string parse_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError("expected a string", std::nullopt, std::nullopt, path);
    return j.get<std::string>();
}

inline LocId parse_location(const Vass& v, const Json& j, const std::string& path) {
    const auto name = parse_string(j, path);
    auto l = v.find_location(name);
    if (!l) throw ParseError("unknown location '" + name + "'", std::nullopt, std::nullopt, path);
    return *l;
}

inline Json integer_json(const Integer& x) {
    if (fits_int64(x)) return Json(static_cast<std::int64_t>(x.get_si()));
    return Json(x.get_str());
}

inline Json int_vector_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer_json(x));
    return a;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

inline Vass vass_from_json(const Json& j) {
    using namespace detail;
    const auto dim_j = field(j, "dim", "");
    const auto dim = parse_count(dim_j, "dim");
    if (dim == 0) throw ParseError("dimension must be positive", std::nullopt, std::nullopt, "dim");

    const auto& locs_j = field(j, "locations", "");
    if (!locs_j.is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, "locations");
    std::vector<std::string> locs;
    for (std::size_t i = 0; i < locs_j.size(); ++i) {
        locs.push_back(parse_string(locs_j[i], "locations[" + std::to_string(i) + "]"));
    }

    const auto& trans_j = field(j, "transitions", "");
    if (!trans_j.is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, "transitions");
    std::vector<TransitionSpec> specs;
    for (std::size_t k = 0; k < trans_j.size(); ++k) {
        const auto path = "transitions[" + std::to_string(k) + "]";
        TransitionSpec s;
        s.from = parse_string(field(trans_j[k], "from", path), path + ".from");
        s.to = parse_string(field(trans_j[k], "to", path), path + ".to");
        const auto& u = field(trans_j[k], "update", path);
        if (!u.is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, path + ".update");
        if (u.size() != dim) {
            throw ParseError("update has " + std::to_string(u.size()) + " entries, expected " + std::to_string(dim),
                             std::nullopt, std::nullopt, path + ".update");
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            s.update.push_back(parse_integer(u[i], path + ".update[" + std::to_string(i) + "]"));
        }
        specs.push_back(std::move(s));
    }
    try {
        return Vass::create(dim, std::move(locs), std::move(specs));
    } catch (const InvalidVass& e) {
        throw ParseError(e.what());
    }
}

inline Vass parse_vass(const std::string& text) { return vass_from_json(detail::parse_json_text(text)); }
inline Vass load_vass(const std::string& path) { return parse_vass(detail::read_file(path)); }

inline Json vass_to_json(const Vass& v) {
    Json locs = Json::array();
    for (auto l : v.locations()) locs.push_back(v.name(l));
    Json trans = Json::array();
    for (const auto& t : v.transitions()) {
        trans.push_back({{"from", v.name(t.source)}, {"to", v.name(t.target)}, {"update", detail::int_vector_json(t.update)}});
    }
    return Json{{"dim", v.dim()}, {"locations", locs}, {"transitions", trans}};
}

// ---------------------------------------------------------------------------
// Certificates and witnesses

inline Json node_to_json(const Vass& v, const RankingNode& n) {
    Json scope = Json::array();
    for (auto l : n.scope) scope.push_back(v.name(l));
    Json z = Json::object();
    for (const auto& [l, x] : n.z) z[v.name(l)] = detail::integer_json(x);
    Json children = Json::array();
    for (const auto& c : n.children) children.push_back(node_to_json(v, c));
    return Json{{"scope", scope}, {"r", detail::int_vector_json(n.r)}, {"z", z}, {"children", children}};
}

inline Json certificate_to_json(const Vass& v, const RankingCertificate& c) {
    Json levels = Json::object();
    for (const auto& [t, level] : c.transition_levels) levels[std::to_string(t.value)] = level;
    return Json{{"verdict", "terminating"},
                {"order", c.order},
                {"levels", c.root ? node_to_json(v, *c.root) : Json(nullptr)},
                {"transition_levels", levels}};
}

inline Json witness_to_json(const Vass& v, const CycleWitness& w) {
    Json steps = Json::array();
    for (auto t : w.cycle.steps) steps.push_back(t.value);
    return Json{{"verdict", "non_terminating"},
                {"witness", {{"start", v.name(w.start)}, {"transitions", steps}, {"value", detail::int_vector_json(w.value)}}}};
}

inline Json result_to_json(const Vass& v, const AnalysisResult& r) {
    return r.terminating() ? certificate_to_json(v, r.certificate()) : witness_to_json(v, r.witness());
}

inline RankingNode node_from_json(const Vass& v, const Json& j, const std::string& path) {
    using namespace detail;
    RankingNode n;
    const auto& scope = field(j, "scope", path);
    if (!scope.is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, path + ".scope");
    for (std::size_t i = 0; i < scope.size(); ++i) {
        n.scope.push_back(parse_location(v, scope[i], path + ".scope[" + std::to_string(i) + "]"));
    }
    const auto& r = field(j, "r", path);
    if (!r.is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, path + ".r");
    for (std::size_t i = 0; i < r.size(); ++i) n.r.push_back(parse_integer(r[i], path + ".r[" + std::to_string(i) + "]"));
    const auto& z = field(j, "z", path);
    if (!z.is_object()) throw ParseError("expected an object", std::nullopt, std::nullopt, path + ".z");
    for (const auto& [name, x] : z.items()) {
        auto l = v.find_location(name);
        if (!l) throw ParseError("unknown location '" + name + "'", std::nullopt, std::nullopt, path + ".z");
        n.z[*l] = parse_integer(x, path + ".z." + name);
    }
    if (auto it = j.find("children"); it != j.end()) {
        if (!it->is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, path + ".children");
        for (std::size_t i = 0; i < it->size(); ++i) {
            n.children.push_back(node_from_json(v, (*it)[i], path + ".children[" + std::to_string(i) + "]"));
        }
    }
    return n;
}

using Certificate = std::variant<RankingCertificate, CycleWitness>;

inline Certificate certificate_from_json(const Vass& v, const Json& j) {
    using namespace detail;
    const auto verdict = parse_string(field(j, "verdict", ""), "verdict");
    if (verdict == "terminating") {
        RankingCertificate c;
        c.order = parse_count(field(j, "order", ""), "order");
        const auto& levels = field(j, "levels", "");
        if (!levels.is_null()) c.root = node_from_json(v, levels, "levels");
        const auto& tl = field(j, "transition_levels", "");
        if (!tl.is_object()) throw ParseError("expected an object", std::nullopt, std::nullopt, "transition_levels");
        for (const auto& [key, level] : tl.items()) {
            const auto path = "transition_levels." + key;
            if (key.empty() || !std::all_of(key.begin(), key.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
                key.size() > 9) {
                throw ParseError("transition keys are decimal ids", std::nullopt, std::nullopt, path);
            }
            c.transition_levels[TransId{static_cast<std::uint32_t>(std::stoul(key))}] = parse_count(level, path);
        }
        return c;
    }
    if (verdict == "non_terminating") {
        const auto& w = field(j, "witness", "");
        CycleWitness out;
        out.start = parse_location(v, field(w, "start", "witness"), "witness.start");
        const auto& steps = field(w, "transitions", "witness");
        if (!steps.is_array()) throw ParseError("expected an array", std::nullopt, std::nullopt, "witness.transitions");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto id = parse_count(steps[i], "witness.transitions[" + std::to_string(i) + "]");
            out.cycle.steps.push_back(TransId{static_cast<std::uint32_t>(id)});
        }
        if (auto it = w.find("value"); it != w.end() && it->is_array()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                out.value.push_back(parse_integer((*it)[i], "witness.value[" + std::to_string(i) + "]"));
            }
        }
        return out;
    }
    throw ParseError("verdict must be 'terminating' or 'non_terminating'", std::nullopt, std::nullopt, "verdict");
}

inline Certificate parse_certificate(const Vass& v, const std::string& text) {
    return certificate_from_json(v, detail::parse_json_text(text));
}

// ---------------------------------------------------------------------------
// Complexity reports

inline std::string poly_text(std::size_t k) {
    if (k == 0) return "1";
    if (k == 1) return "N";
    return "N^" + std::to_string(k);
}

inline Json linear_to_json(const LinearVerdict& l) {
    switch (l.kind) {
        case LinearVerdict::Kind::ExactLinear: return Json(l.c->get_str());
        case LinearVerdict::Kind::AtLeastQuadratic: return Json("at least quadratic");
        case LinearVerdict::Kind::NotApplicable: return Json(nullptr);
    }
    return Json(nullptr);
}

inline Json report_to_json(const ComplexityReport& rep) {
    Json bound = Json::array();
    for (const auto& f : rep.bound.factors) bound.push_back(f.text());
    const auto theta = rep.theta();
    return Json{{"terminating", rep.terminating},
                {"order", rep.order_k},
                {"conservative", rep.conservative_syntactic},
                {"generalized_conservative", rep.conservative_generalized},
                {"theta", theta ? Json(*theta) : Json(nullptr)},
                {"upper", rep.upper ? Json("O(" + poly_text(*rep.upper) + ")") : Json(nullptr)},
                {"lower", rep.lower ? Json("Omega(" + poly_text(*rep.lower) + ")") : Json(nullptr)},
                {"linear", linear_to_json(rep.linear_verdict)},
                {"bound_factors", bound}};
}

}  // namespace vassrank
