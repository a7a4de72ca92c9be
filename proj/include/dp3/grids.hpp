#ifndef DP3_GRIDS_HPP
#define DP3_GRIDS_HPP

#include <map>

#include "dp3/fieldelem.hpp"

namespace dp3 {

/// Exact table of double-series coefficients indexed by (level, offset).
struct CoefficientGrid {
    RingPtr ring;
    std::map<std::pair<int, int>, FieldElement> entries;

    bool has(int k, int j) const { return entries.count({k, j}) != 0; }
    FieldElement at(int k, int j) const {
        auto it = entries.find({k, j});
        if (it == entries.end())
            fail(Errc::InvalidIndex,
                 "grid entry (" + std::to_string(k) + "," + std::to_string(j) + ") absent");
        return it->second;
    }
    FieldElement at_or_zero(int k, int j) const {
        auto it = entries.find({k, j});
        return it == entries.end() ? FieldElement(ring, GR(0)) : it->second;
    }
    void set(int k, int j, FieldElement v) { entries[{k, j}] = std::move(v); }
};

/// Trig-ansatz coefficients a_{k,j}; ring ["alpha","theta","a11","a1m1"].
using TrigCoeffGrid = CoefficientGrid;
/// Log-ansatz coefficients c~_{2k-1,m}, keyed by (2k-1, m); ring ["a","b","g3"].
using LogCoeffGrid = CoefficientGrid;

} // namespace dp3

#endif
