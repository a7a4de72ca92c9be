#include "dp3/linsolve.hpp"

#include <algorithm>

namespace dp3 {

FieldElement det2x2(const FieldElement& a, const FieldElement& b,
                    const FieldElement& c, const FieldElement& d) {
    return a * d - b * c;
}

LinearSolution solve_linear(std::vector<std::vector<FieldElement>> A,
                            std::vector<FieldElement> rhs) {
    LinearSolution out;
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    RingPtr ring;
    for (auto& row : A)
        for (auto& e : row)
            if (e.ring()) { ring = e.ring(); break; }
    if (!ring)
        for (auto& e : rhs)
            if (e.ring()) { ring = e.ring(); break; }

    // clear denominators row-wise; keep the augmented column alongside
    std::vector<std::vector<ParamPoly>> M(m);
    for (std::size_t i = 0; i < m; ++i) {
        ParamPoly lcm(ring, GR(1));
        auto fold = [&](const ParamPoly& d) {
            if (d.is_constant()) return;
            ParamPoly g = poly_gcd(lcm, d);
            lcm = lcm * (g.is_constant() ? d : divexact(d, g));
        };
        for (auto& e : A[i]) fold(e.den());
        fold(rhs[i].den());
        M[i].reserve(n + 1);
        auto cleared = [&](const FieldElement& e) {
            if (e.is_zero()) return ParamPoly(ring);
            return e.den().is_constant()
                       ? e.num().scale(e.den().constant_value().inv()) * lcm
                       : e.num() * divexact(lcm, e.den());
        };
        for (auto& e : A[i]) M[i].push_back(cleared(e));
        M[i].push_back(cleared(rhs[i]));
    }

    // fraction-free elimination with column pivoting
    std::vector<int> pivot_col;
    std::vector<bool> col_used(n, false);
    ParamPoly prev(ring, GR(1));
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        // pick the pivot row with the sparsest nonzero entry in this column
        std::size_t best = m;
        std::size_t best_terms = static_cast<std::size_t>(-1);
        for (std::size_t r = row; r < m; ++r) {
            if (M[r][col].is_zero()) continue;
            if (M[r][col].term_count() < best_terms) {
                best = r;
                best_terms = M[r][col].term_count();
            }
        }
        if (best == m) continue;
        std::swap(M[row], M[best]);
        for (std::size_t r = row + 1; r < m; ++r) {
            // every lower row is updated, zero pivot entries included, or the
            // fraction-free division invariant breaks at later steps
            for (std::size_t c = 0; c <= n; ++c) {
                if (c == col) continue;
                ParamPoly t = M[row][col] * M[r][c] - M[r][col] * M[row][c];
                M[r][c] = divexact(t, prev);
            }
            M[r][col] = ParamPoly(ring);
        }
        prev = M[row][col];
        pivot_col.push_back(static_cast<int>(col));
        col_used[col] = true;
        ++row;
    }
    out.rank = static_cast<int>(row);

    // consistency of the remaining rows
    for (std::size_t r = row; r < m; ++r)
        if (!M[r][n].is_zero()) {
            out.consistent = false;
            return out;
        }
    out.consistent = true;

    auto back_solve = [&](const std::vector<FieldElement>& free_vals,
                          bool homogeneous) -> std::vector<FieldElement> {
        std::vector<FieldElement> x(n, FieldElement(ring, GR(0)));
        std::size_t fidx = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (!col_used[c]) x[c] = free_vals[fidx++];
        for (int r = static_cast<int>(row) - 1; r >= 0; --r) {
            std::size_t pc = static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)]);
            FieldElement acc = homogeneous ? FieldElement(ring, GR(0))
                                           : FieldElement(M[static_cast<std::size_t>(r)][n]);
            for (std::size_t c = pc + 1; c < n; ++c) {
                if (M[static_cast<std::size_t>(r)][c].is_zero() || x[c].is_zero()) continue;
                acc -= FieldElement(M[static_cast<std::size_t>(r)][c]) * x[c];
            }
            x[pc] = acc / FieldElement(M[static_cast<std::size_t>(r)][pc]);
        }
        return x;
    };

    std::size_t nfree = n - row;
    std::vector<FieldElement> zeros(nfree, FieldElement(ring, GR(0)));
    out.particular = back_solve(zeros, false);
    for (std::size_t f = 0; f < nfree; ++f) {
        std::vector<FieldElement> e(nfree, FieldElement(ring, GR(0)));
        e[f] = FieldElement(ring, GR(1));
        out.nullspace.push_back(back_solve(e, true));
    }
    return out;
}

} // namespace dp3
