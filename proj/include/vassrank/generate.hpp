#pragma once

// Seeded random VASSs for property tests and the `generate` command.

#include "vassrank/vass.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vassrank {

struct GeneratorOptions {
    std::uint64_t seed = 1;
    std::size_t dim = 2;
    std::size_t locations = 2;
    std::size_t transitions = 3;
    std::int64_t max_update = 2;
    /// Start with a random Hamiltonian cycle so the result is strongly connected.
    bool connected = false;
    /// Last entry of every update is the negated sum of the others.
    bool conservative = false;
};

inline Vass generate_random(const GeneratorOptions& opt) {
    if (opt.dim == 0 || opt.locations == 0) throw std::invalid_argument("dimension and location count must be positive");
    if (opt.max_update < 0) throw std::invalid_argument("max_update must be non-negative");
    if (opt.connected && opt.locations > 1 && opt.transitions < opt.locations) {
        throw std::invalid_argument("a connected VASS on " + std::to_string(opt.locations) + " locations needs at least " +
                                    std::to_string(opt.locations) + " transitions");
    }
    std::mt19937_64 rng(opt.seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };

    std::vector<std::string> names;
    for (std::size_t i = 0; i < opt.locations; ++i) names.push_back("l" + std::to_string(i + 1));

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (opt.connected && opt.locations > 1) {
        std::vector<std::size_t> perm(opt.locations);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < perm.size(); ++i) edges.emplace_back(perm[i], perm[(i + 1) % perm.size()]);
    }
    const auto last_loc = static_cast<std::int64_t>(opt.locations) - 1;
    while (edges.size() < opt.transitions) {
        edges.emplace_back(static_cast<std::size_t>(uniform(0, last_loc)), static_cast<std::size_t>(uniform(0, last_loc)));
    }

    std::vector<TransitionSpec> specs;
    for (const auto& [s, t] : edges) {
        IntVector d;
        Integer sum = 0;
        for (std::size_t i = 0; i < opt.dim; ++i) {
            if (opt.conservative && i + 1 == opt.dim) {
                d.push_back(-sum);
            } else {
                d.emplace_back(static_cast<long>(uniform(-opt.max_update, opt.max_update)));
                sum += d.back();
            }
        }
        specs.push_back(TransitionSpec{names[s], names[t], std::move(d)});
    }
    return Vass::create(opt.dim, std::move(names), std::move(specs));
}

/// Size limits for a random corpus; each instance draws its shape uniformly
/// within them.
struct CorpusShape {
    std::size_t max_dim = 3;
    std::size_t max_locations = 4;
    std::size_t max_transitions = 6;
    std::int64_t max_update = 2;
    bool connected = true;
    bool conservative = false;
};

inline std::vector<Vass> random_corpus(std::uint64_t seed, std::size_t count, const CorpusShape& shape = {}) {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::vector<Vass> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        GeneratorOptions o;
        o.dim = pick(shape.conservative ? 2 : 1, shape.max_dim);
        o.locations = pick(1, shape.max_locations);
        o.transitions = pick(shape.connected ? o.locations : 1, shape.max_transitions);
        o.max_update = shape.max_update;
        o.connected = shape.connected;
        o.conservative = shape.conservative;
        o.seed = rng();
        out.push_back(generate_random(o));
    }
    return out;
}

}  // namespace vassrank
