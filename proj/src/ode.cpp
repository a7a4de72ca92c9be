#include "dp3/ode.hpp"

namespace dp3 {

RationalFunction LinearODE2::apply(const RationalFunction& f) const {
    RationalFunction fp = f.derivative();
    RationalFunction fpp = fp.derivative();
    return p2 * fpp + p1 * fp + p0 * f - rhs;
}

LinearODE2 LinearODE2::scaled(const FieldElement& c) const {
    return {var, ring, p2.scale(c), p1.scale(c), p0.scale(c), rhs.scale(c)};
}

LinearODE2 LinearODE2::cleared() const {
    // factored lcm of the denominators of p2, p1, p0
    std::vector<std::pair<Poly1, int>> lcm;
    for (auto* f : {&p2, &p1, &p0}) {
        for (auto& [g, m] : f->den()) {
            bool found = false;
            for (auto& [h, k] : lcm)
                if (p1_equal(g, h)) {
                    k = std::max(k, m);
                    found = true;
                    break;
                }
            if (!found) lcm.emplace_back(g, m);
        }
    }
    RationalFunction mult = RationalFunction::from_const(var, FieldElement(ring, GR(1)));
    for (auto& [g, m] : lcm)
        for (int k = 0; k < m; ++k)
            mult = mult * RationalFunction(var, g, {}, ring);
    LinearODE2 out;
    out.var = var;
    out.ring = ring;
    out.p2 = p2 * mult;
    out.p1 = p1 * mult;
    out.p0 = p0 * mult;
    out.rhs = rhs * mult;
    if (!out.p2.is_polynomial() || !out.p1.is_polynomial() || !out.p0.is_polynomial())
        fail(Errc::AlgorithmInvariantViolation, "denominator clearing failed");
    return out;
}

EulerSolveReport solve_euler_polynomial(int n, const Poly1& rhs, RingPtr ring) {
    EulerSolveReport rep;
    rep.hom_exp_high = n + 1;
    rep.hom_exp_low = n - 1;
    rep.log_high = FieldElement(ring, GR(0));
    rep.log_low = FieldElement(ring, GR(0));
    rep.particular.assign(rhs.size(), FieldElement(ring, GR(0)));
    for (std::size_t m = 0; m < rhs.size(); ++m) {
        if (rhs[m].is_zero()) continue;
        long chi = (static_cast<long>(m) - (n + 1)) * (static_cast<long>(m) - (n - 1));
        if (chi != 0) {
            rep.particular[m] = rhs[m] / FieldElement(ring, GR(chi));
        } else if (static_cast<int>(m) == n + 1) {
            rep.log_high = rhs[m] / FieldElement(ring, GR(2));
        } else {
            rep.log_low = rhs[m] / FieldElement(ring, GR(-2));
        }
    }
    p1_trim(rep.particular);
    return rep;
}

AnsatzFamily solve_rational_ansatz(const LinearODE2& ode_in, const RationalAnsatz& ansatz) {
    LinearODE2 ode = ode_in.cleared();
    const std::string& var = ode.var;
    RingPtr ring = ode.ring;

    int degree = ansatz.max_degree;
    {
        auto [at0, atinf] = indicial_integer_exponents(ode);
        for (int m : atinf) {
            // solutions can grow like x^m relative to the pole denominator
            int implied = m + ansatz.max_pole_order * std::max(0, p1_degree(ansatz.pole));
            degree = std::max(degree, implied);
        }
        (void)at0;
    }

    std::vector<RationalFunction> basis;
    std::vector<std::pair<Poly1, int>> den;
    if (!ansatz.pole.empty() && ansatz.max_pole_order > 0)
        den.emplace_back(ansatz.pole, ansatz.max_pole_order);
    for (int d = 0; d <= degree; ++d) {
        Poly1 num(static_cast<std::size_t>(d) + 1, FieldElement(ring, GR(0)));
        num[static_cast<std::size_t>(d)] = FieldElement(ring, GR(1));
        basis.emplace_back(var, num, den, ring);
    }

    // columns of the operator on the basis, over a common denominator
    std::vector<RationalFunction> images;
    images.reserve(basis.size() + 1);
    for (auto& e : basis) {
        RationalFunction fp = e.derivative();
        images.push_back(ode.p2 * fp.derivative() + ode.p1 * fp + ode.p0 * e);
    }
    images.push_back(ode.rhs);

    // common denominator across all images
    std::vector<std::pair<Poly1, int>> uden;
    for (auto& im : images)
        for (auto& [f, m] : im.den()) {
            bool found = false;
            for (auto& [g, k] : uden)
                if (p1_equal(f, g)) {
                    k = std::max(k, m);
                    found = true;
                    break;
                }
            if (!found) uden.emplace_back(f, m);
        }
    auto numerator_over = [&](const RationalFunction& f) {
        Poly1 n = f.num();
        for (auto& [g, k] : uden) {
            int have = f.pole_order(g);
            for (int j = have; j < k; ++j) n = p1_mul(n, g);
        }
        return n;
    };

    std::vector<Poly1> cols;
    std::size_t rows = 0;
    for (auto& im : images) {
        cols.push_back(numerator_over(im));
        rows = std::max(rows, cols.back().size());
    }

    std::vector<std::vector<FieldElement>> M(rows, std::vector<FieldElement>(basis.size(), FieldElement(ring, GR(0))));
    std::vector<FieldElement> b(rows, FieldElement(ring, GR(0)));
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) M[r][c] = cols[c][r];
    for (std::size_t r = 0; r < cols.back().size(); ++r) b[r] = cols.back()[r];

    LinearSolution sol = solve_linear(M, b);
    AnsatzFamily fam;
    if (!sol.consistent) return fam; // EmptySolutionSet
    fam.empty = false;

    auto assemble = [&](const std::vector<FieldElement>& coeffs) {
        Poly1 num(coeffs.begin(), coeffs.end());
        p1_trim(num);
        return RationalFunction(var, num, den, ring);
    };
    fam.particular = assemble(sol.particular);
    for (auto& v : sol.nullspace) {
        RationalFunction h = assemble(v);
        if (!h.is_zero()) fam.homogeneous.push_back(h);
    }
    if (!verify_solution(ode, fam.particular))
        fail(Errc::AlgorithmInvariantViolation, "ansatz particular fails re-substitution");
    for (auto& h : fam.homogeneous) {
        LinearODE2 hom = ode;
        hom.rhs = RationalFunction(ode.var, ring);
        if (!verify_solution(hom, h))
            fail(Errc::AlgorithmInvariantViolation, "ansatz homogeneous fails re-substitution");
    }
    return fam;
}

bool verify_solution(const LinearODE2& ode, const RationalFunction& f) {
    return ode.apply(f).is_zero();
}

std::pair<std::vector<int>, std::vector<int>> indicial_integer_exponents(const LinearODE2& ode) {
    // clear denominators of p2, p1, p0
    RingPtr ring = ode.ring;
    Poly1 q2 = ode.p2.num(), q1 = ode.p1.num(), q0 = ode.p0.num();
    Poly1 d2 = ode.p2.den_expanded(), d1 = ode.p1.den_expanded(), d0 = ode.p0.den_expanded();
    q2 = p1_mul(q2, p1_mul(d1, d0));
    q1 = p1_mul(q1, p1_mul(d2, d0));
    q0 = p1_mul(q0, p1_mul(d2, d1));

    auto val = [](const Poly1& p) {
        for (std::size_t k = 0; k < p.size(); ++k)
            if (!p[k].is_zero()) return static_cast<int>(k);
        return 1 << 20;
    };
    std::vector<int> at0, atinf;
    auto scan = [&](bool origin) {
        int e2, e1, e0;
        if (origin) {
            e2 = val(q2) - 2;
            e1 = val(q1) - 1;
            e0 = val(q0);
        } else {
            e2 = p1_degree(q2) - 2;
            e1 = p1_degree(q1) - 1;
            e0 = p1_degree(q0);
        }
        int ext = origin ? std::min({e2, e1, e0}) : std::max({e2, e1, e0});
        auto coef = [&](const Poly1& p, int shift) -> FieldElement {
            int idx = origin ? val(p) : p1_degree(p);
            (void)shift;
            if (idx < 0 || idx >= static_cast<int>(p.size())) return FieldElement(ring, GR(0));
            return p[static_cast<std::size_t>(idx)];
        };
        std::vector<int> roots;
        for (int m = -60; m <= 80; ++m) {
            FieldElement phi(ring, GR(0));
            if (e2 == ext && !p1_is_zero(q2))
                phi += coef(q2, 2) * FieldElement(ring, GR(static_cast<long>(m) * (m - 1)));
            if (e1 == ext && !p1_is_zero(q1))
                phi += coef(q1, 1) * FieldElement(ring, GR(m));
            if (e0 == ext && !p1_is_zero(q0)) phi += coef(q0, 0);
            if (phi.is_zero()) roots.push_back(m);
        }
        return roots;
    };
    at0 = scan(true);
    atinf = scan(false);
    return {at0, atinf};
}

LinearODE2 ode_from_linearization(
    const std::function<RationalFunction(const RationalFunction&)>& column,
    const RationalFunction& base, const std::string& var, RingPtr ring) {
    RationalFunction one = RationalFunction::from_const(var, FieldElement(ring, GR(1)));
    RationalFunction x = RationalFunction::variable(var, ring);
    RationalFunction p0 = column(one);
    RationalFunction p1 = column(x) - p0 * x;
    RationalFunction p2 = (column(x * x) - p0 * x * x - p1.scale(FieldElement(ring, GR(2))) * x)
                              .scale(FieldElement(ring, GR(1, 2)));
    LinearODE2 ode;
    ode.var = var;
    ode.ring = ring;
    ode.p2 = p2;
    ode.p1 = p1;
    ode.p0 = p0;
    ode.rhs = -base;
    return ode;
}

} // namespace dp3
