#ifndef DP3_LINSOLVE_HPP
#define DP3_LINSOLVE_HPP

#include "dp3/fieldelem.hpp"

namespace dp3 {

struct LinearSolution {
    bool consistent = false;
    std::vector<FieldElement> particular;            // one solution (if consistent)
    std::vector<std::vector<FieldElement>> nullspace; // basis of homogeneous solutions
    int rank = 0;
};

/// Exact solve of A x = rhs over the parameter fraction field. Rows are
/// cleared of denominators, then eliminated fraction-free (Bareiss).
LinearSolution solve_linear(std::vector<std::vector<FieldElement>> A,
                            std::vector<FieldElement> rhs);

FieldElement det2x2(const FieldElement& a, const FieldElement& b,
                    const FieldElement& c, const FieldElement& d);

} // namespace dp3

#endif
