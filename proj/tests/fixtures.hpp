#pragma once

#include "vassrank/vassrank.hpp"

#include <string>

namespace fixtures {

using namespace vassrank;

inline IntVector iv(std::initializer_list<long> xs) {
    IntVector out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

/// l1 -(-1,1)-> l2, l2 -(0,-1)-> l2, l2 -(0,0)-> l1
inline Vass vprog() {
    return Vass::create(2, {"l1", "l2"},
                        {{"l1", "l2", iv({-1, 1})}, {"l2", "l2", iv({0, -1})}, {"l2", "l1", iv({0, 0})}});
}

/// Two shared-memory locations, three process-local counters.
inline Vass vcsys() {
    return Vass::create(3, {"l_tt", "l_ff"},
                        {{"l_tt", "l_ff", iv({-1, 1, 0})},
                         {"l_ff", "l_ff", iv({-1, 1, 0})},
                         {"l_ff", "l_tt", iv({-1, 0, 1})},
                         {"l_tt", "l_tt", iv({1, -1, 0})}});
}

/// Terminating, but with exponentially long traces.
inline Vass vexp() {
    return Vass::create(3, {"l1", "l2"},
                        {{"l1", "l2", iv({0, 0, 0})},
                         {"l2", "l2", iv({2, -1, 0})},
                         {"l2", "l1", iv({0, 0, -1})},
                         {"l1", "l1", iv({-1, 1, 0})}});
}

inline Vass swap_cycle() {
    return Vass::create(2, {"A", "B"}, {{"A", "B", iv({1, -1})}, {"B", "A", iv({-1, 1})}});
}

inline Vass self_loop(std::initializer_list<long> d) {
    return Vass::create(d.size(), {"l"}, {{"l", "l", iv(d)}});
}

inline Vass single_edge(std::initializer_list<long> d) {
    return Vass::create(d.size(), {"l1", "l2"}, {{"l1", "l2", iv(d)}});
}

inline TransId tid(std::uint32_t k) { return TransId{k}; }

inline LocId loc(const Vass& v, const std::string& name) { return *v.find_location(name); }

inline std::string data_file(const std::string& name) { return std::string(VASSRANK_DATA_DIR) + "/" + name; }

}  // namespace fixtures
