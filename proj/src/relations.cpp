#include "dp3/relations.hpp"

namespace dp3 {

namespace {

// One folding pass: every monomial with symbol-degree >= power gets
// value^(e/power) * symbol^(e%power). Values may carry denominators.
FieldElement fold_power_once(const ParamPoly& p, int var, int power, const FieldElement& value) {
    FieldElement acc(p.ring());
    for (auto& [e, c] : p.terms()) {
        int deg = e[static_cast<std::size_t>(var)];
        int q = deg / power, r = deg % power;
        Expvec m = e;
        m[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(r);
        FieldElement t(ParamPoly::monomial(p.ring(), m, c));
        if (q > 0) t = t * value.pow(q);
        acc += t;
    }
    return acc;
}

bool needs_power_fold(const ParamPoly& p, int var, int power) {
    return p.degree_in(var) >= power;
}

// Split a polynomial by symbol powers 0..power-1 (assumes already folded).
std::vector<ParamPoly> symbol_parts(const ParamPoly& p, int var, int power) {
    std::vector<ParamPoly> parts(static_cast<std::size_t>(power), ParamPoly(p.ring()));
    for (auto& [e, c] : p.terms()) {
        int deg = e[static_cast<std::size_t>(var)];
        Expvec m = e;
        m[static_cast<std::size_t>(var)] = 0;
        parts[static_cast<std::size_t>(deg)].add_term(m, c);
    }
    return parts;
}

} // namespace

ParamPoly reduce_power(const ParamPoly& p, const PowerRelation& rel) {
    int var = p.ring()->index_checked(rel.symbol);
    if (rel.power < 1) fail(Errc::UnsupportedRelation, "relation power must be positive");
    FieldElement fe = fold_power_once(p, var, rel.power, rel.value);
    if (!fe.den().is_constant() || !fe.den().constant_value().is_one())
        fail(Errc::UnsupportedRelation, "polynomial reduction produced a denominator");
    return fe.num();
}

ParamPoly reduce_pair(const ParamPoly& p, const PairRelation& rel) {
    int va = p.ring()->index_checked(rel.sym_a);
    int vb = p.ring()->index_checked(rel.sym_b);
    FieldElement acc(p.ring());
    for (auto& [e, c] : p.terms()) {
        int m = std::min<int>(e[static_cast<std::size_t>(va)], e[static_cast<std::size_t>(vb)]);
        Expvec f = e;
        f[static_cast<std::size_t>(va)] = static_cast<std::uint16_t>(f[static_cast<std::size_t>(va)] - m);
        f[static_cast<std::size_t>(vb)] = static_cast<std::uint16_t>(f[static_cast<std::size_t>(vb)] - m);
        FieldElement t(ParamPoly::monomial(p.ring(), f, c));
        if (m > 0) t = t * rel.value.pow(m);
        acc += t;
    }
    if (!acc.den().is_constant() || !acc.den().constant_value().is_one())
        fail(Errc::UnsupportedRelation, "pair reduction produced a denominator");
    return acc.num();
}

FieldElement reduce_modulo(const FieldElement& e, const PairRelation& rel) {
    ParamPoly n = reduce_pair(e.num(), rel);
    ParamPoly d = reduce_pair(e.den(), rel);
    if (d.is_zero()) fail(Errc::DivisionByZero, "denominator vanishes modulo relation");
    return FieldElement(n, d);
}

FieldElement reduce_modulo(const FieldElement& e, const PowerRelation& rel) {
    return reduce_modulo(e, std::vector<PowerRelation>{rel});
}

FieldElement reduce_modulo(const FieldElement& e, const std::vector<PowerRelation>& rels) {
    if (rels.empty()) return e;
    RingPtr ring = e.ring();
    std::vector<int> vars;
    vars.reserve(rels.size());
    for (auto& r : rels) {
        vars.push_back(ring->index_checked(r.symbol));
        if (r.power != 2 && r.power != 3)
            fail(Errc::UnsupportedRelation, "only square and cube relations supported");
    }

    auto fold_all = [&](FieldElement fe) {
        for (int round = 0; round < 64; ++round) {
            bool changed = false;
            for (std::size_t k = 0; k < rels.size(); ++k) {
                if (needs_power_fold(fe.num(), vars[k], rels[k].power) ||
                    needs_power_fold(fe.den(), vars[k], rels[k].power)) {
                    FieldElement n = fold_power_once(fe.num(), vars[k], rels[k].power, rels[k].value);
                    FieldElement d = fold_power_once(fe.den(), vars[k], rels[k].power, rels[k].value);
                    if (d.is_zero()) fail(Errc::DivisionByZero, "denominator vanishes modulo relation");
                    fe = n / d;
                    changed = true;
                }
            }
            if (!changed) return fe;
        }
        fail(Errc::UnsupportedRelation, "power relations do not terminate (cyclic values?)");
    };

    FieldElement fe = fold_all(e);

    // Clear relation symbols from the denominator by multiplying num and den
    // with the norm cofactor (exact in the quotient, no division needed).
    for (int round = 0; round < 64; ++round) {
        int active = -1;
        for (std::size_t k = 0; k < rels.size(); ++k)
            if (fe.den().uses_var(vars[k])) {
                active = static_cast<int>(k);
                break;
            }
        if (active < 0) return fe;
        const PowerRelation& rel = rels[static_cast<std::size_t>(active)];
        int var = vars[static_cast<std::size_t>(active)];
        auto parts = symbol_parts(fe.den(), var, rel.power);
        FieldElement sym = FieldElement::param(ring, rel.symbol);
        FieldElement cof;
        if (rel.power == 2) {
            // den = A + B*s, cofactor A - B*s
            cof = FieldElement(parts[0]) - FieldElement(parts[1]) * sym;
        } else {
            // den = A + B*t + C*t^2 with t^3 = v:
            // cofactor (A^2 - v*B*C) + (v*C^2 - A*B) t + (B^2 - A*C) t^2
            FieldElement A(parts[0]), B(parts[1]), C(parts[2]);
            const FieldElement& v = rel.value;
            cof = (A * A - v * B * C) + (v * C * C - A * B) * sym + (B * B - A * C) * sym * sym;
        }
        if (cof.is_zero()) fail(Errc::DivisionByZero, "denominator is a zero divisor modulo relation");
        FieldElement n = fold_all(FieldElement(fe.num()) * cof);
        FieldElement d = fold_all(FieldElement(fe.den()) * cof);
        if (d.is_zero()) fail(Errc::DivisionByZero, "denominator vanishes modulo relation");
        fe = fold_all(n / d);
    }
    fail(Errc::UnsupportedRelation, "denominator clearing did not terminate");
}

bool equal_modulo(const FieldElement& a, const FieldElement& b,
                  const std::vector<PowerRelation>& rels) {
    return reduce_modulo(a - b, rels).is_zero();
}

bool equal_modulo(const FieldElement& a, const FieldElement& b, const PairRelation& rel) {
    // the ideal is prime and pure monomial denominators stay outside it, so
    // equality reduces to the numerator of the difference
    return reduce_pair((a - b).num(), rel).is_zero();
}

} // namespace dp3
