#include "dp3/oracle.hpp"

#include "dp3/linsolve.hpp"

#include <algorithm>

namespace dp3 {

namespace {

const char* kTrigOuter = "t13"; // level k stands for tau^(-k/3)
const char* kTrigInner = "w";
const char* kLogOuter = "tau"; // level = integer power of tau
const char* kLogInner = "lam"; // lam = 1/log(tau)

RationalFunction w_power(RingPtr ring, int j, const FieldElement& c) {
    return RationalFunction::from_const(kTrigInner, c).shift(j);
}

RationalFunction lam_power(RingPtr ring, int m, const FieldElement& c) {
    (void)ring;
    return RationalFunction::from_const(kLogInner, c).shift(m);
}

// Solve an affine block; unknowns that stay free are deferred to later
// levels (their rows are dropped and retried).
struct BlockResult {
    std::vector<std::pair<std::size_t, FieldElement>> assigned; // index into unknowns
    std::vector<std::size_t> deferred;
};

BlockResult solve_block(const std::vector<std::map<int, FieldElement>>& cols,
                        const std::map<int, FieldElement>& K,
                        const std::vector<int>& slots, RingPtr ring, const char* what) {
    BlockResult out;
    std::vector<std::size_t> active(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) active[i] = i;

    auto row_of = [&](int s, const std::vector<std::size_t>& act,
                      std::vector<FieldElement>& row, FieldElement& rhs) {
        bool any = false;
        row.clear();
        for (std::size_t i : act) {
            row.push_back(cols[i].at(s));
            if (!row.back().is_zero()) any = true;
        }
        auto it = K.find(s);
        rhs = (it == K.end()) ? FieldElement(ring, 0) : -it->second;
        if (!rhs.is_zero()) any = true;
        return any;
    };

    for (int round = 0; round < 8; ++round) {
        std::vector<std::vector<FieldElement>> M;
        std::vector<FieldElement> b;
        std::vector<FieldElement> row;
        FieldElement rhs;
        for (int s : slots) {
            // rows touching deferred unknowns are unusable
            bool touches_deferred = false;
            for (std::size_t i : out.deferred)
                if (!cols[i].at(s).is_zero()) touches_deferred = true;
            if (touches_deferred) continue;
            if (row_of(s, active, row, rhs)) {
                M.push_back(row);
                b.push_back(rhs);
            }
        }
        if (active.empty()) {
            for (auto& v : b)
                if (!v.is_zero()) fail(Errc::OracleInconsistency, std::string(what) + ": uncancelled slot");
            return out;
        }
        LinearSolution sol = solve_linear(M, b);
        if (!sol.consistent) fail(Errc::OracleInconsistency, std::string(what) + ": inconsistent level system");
        if (sol.nullspace.empty()) {
            for (std::size_t i = 0; i < active.size(); ++i)
                out.assigned.push_back({active[i], sol.particular[i]});
            return out;
        }
        // defer unknowns with a free direction
        std::vector<bool> free_dir(active.size(), false);
        for (auto& nv : sol.nullspace)
            for (std::size_t i = 0; i < nv.size(); ++i)
                if (!nv[i].is_zero()) free_dir[i] = true;
        std::vector<std::size_t> still;
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (free_dir[i])
                out.deferred.push_back(active[i]);
            else
                still.push_back(active[i]);
        }
        if (still.size() == active.size())
            fail(Errc::OracleInconsistency, std::string(what) + ": defer loop stuck");
        active = still;
    }
    fail(Errc::OracleInconsistency, std::string(what) + ": defer loop did not converge");
}

} // namespace

RingPtr oracle_trig_ring() { return PolyRing::make({"alpha", "theta", "a11", "a1m1"}); }
RingPtr oracle_log_ring() { return PolyRing::make({"a", "b", "g3"}); }

// ---------------------------------------------------------------------------
// trig algebra: basis tau^(-k/3) w^j, Euler operator delta = tau d/dtau:
//   delta(tau^(-k/3) w^j) = ((-k + 2 j kappa)/3) tau^(-k/3) w^j
//                         + (2 i j/3) theta^2 tau^(-(k-2)/3) w^j,
// kappa eliminated by kappa = i theta^2 a11 a1m1 / 3.

namespace {

struct TrigAlgebra {
    RingPtr ring = oracle_trig_ring();
    FieldElement alpha = FieldElement::param(ring, "alpha");
    FieldElement theta = FieldElement::param(ring, "theta");
    FieldElement a11 = FieldElement::param(ring, "a11");
    FieldElement a1m1 = FieldElement::param(ring, "a1m1");
    FieldElement iu{ring, GR::i()};
    FieldElement kappa = iu * theta * theta * a11 * a1m1 / FieldElement(ring, 3);
    FieldElement c_cube = theta.pow(4).scale(GR(4, 27));
    FieldElement c_lin = (iu * alpha * theta * theta).scale(GR(2, 9));

    BiSeries delta(const BiSeries& s) const {
        FieldElement k23 = kappa.scale(GR(2, 3));
        BiSeries diag = s.map_shift(0, [&](int k, const RationalFunction& f) {
            RationalFunction euler = RationalFunction::variable(kTrigInner, ring) * f.derivative();
            return f.scale(FieldElement(ring, GR(-k, 3))) + euler.scale(k23);
        });
        FieldElement sh = (iu * theta * theta).scale(GR(2, 3));
        BiSeries shifted = s.map_shift(-2, [&](int, const RationalFunction& f) {
            RationalFunction euler = RationalFunction::variable(kTrigInner, ring) * f.derivative();
            return euler.scale(sh);
        });
        return diag + shifted;
    }

    BiSeries residual(const BiSeries& s) const {
        BiSeries ds = delta(s);
        BiSeries dds = delta(ds);
        BiSeries s3 = s * s * s;
        BiSeries one = BiSeries::constant(kTrigOuter, kTrigInner, FieldElement(ring, 1));
        return dds * s - ds * ds + (s3 - one).shift_outer(-4).scale(c_cube) +
               s.shift_outer(-2).scale(c_lin);
    }

    RationalFunction residual_level(const BiSeries& s, const BiSeries& ds, const BiSeries& dds,
                                    const BiSeries& s2, int L) const {
        RationalFunction v =
            BiSeries::mul_level(dds, s, L) - BiSeries::mul_level(ds, ds, L);
        RationalFunction s3 = BiSeries::mul_level(s2, s, L + 4);
        if (L + 4 == 0) s3 = s3 - RationalFunction::from_const(kTrigInner, FieldElement(ring, 1));
        v = v + s3.scale(c_cube);
        if (L + 2 <= s.hi_known()) v = v + s.level(L + 2).scale(c_lin);
        return v;
    }

    RationalFunction linearized_level(const BiSeries& s, const BiSeries& ds, const BiSeries& dds,
                                      const BiSeries& s2, const BiSeries& u, int L) const {
        BiSeries du = delta(u);
        BiSeries ddu = delta(du);
        RationalFunction v = BiSeries::mul_level(ddu, s, L) + BiSeries::mul_level(dds, u, L) -
                             BiSeries::mul_level(ds, du, L).scale(FieldElement(ring, 2));
        v = v + BiSeries::mul_level(s2, u, L + 4).scale(c_cube * FieldElement(ring, 3));
        if (u.levels().count(L + 2)) v = v + u.level(L + 2).scale(c_lin);
        return v;
    }
};

} // namespace

BiSeries trig_dp3_residual(const BiSeries& S) {
    TrigAlgebra alg;
    if (S.ring() != alg.ring)
        fail(Errc::IncompatibleMap, "trig residual expects the oracle trig ring");
    return alg.residual(S);
}

int residual_first_nonzero(const BiSeries& residual) { return residual.first_nonzero(); }

OracleRun oracle_trig_run(int depth) {
    TrigAlgebra alg;
    RingPtr ring = alg.ring;

    BiSeries S(kTrigOuter, kTrigInner, ring, 1);
    S.set_level(0, RationalFunction::from_const(kTrigInner, FieldElement(ring, 1)));
    S.set_level(1, w_power(ring, 1, alg.a11) + w_power(ring, -1, alg.a1m1));

    CoefficientGrid grid;
    grid.ring = ring;
    grid.set(0, 0, FieldElement(ring, 1));
    grid.set(1, 1, alg.a11);
    grid.set(1, -1, alg.a1m1);

    std::map<std::pair<int, int>, bool> assigned;
    assigned[{1, 1}] = assigned[{1, -1}] = true;

    // Offsets j != +-1 of level k are pinned at equation level k-4; the +-1
    // pair of level k becomes clean only at equation level k-2. The two
    // families are coupled across adjacent equation levels, so each sweep
    // step solves {(L+3, j != +-1)} and {(L+2, +-1)} jointly from the
    // non-(+-1) slots of level L-1 and the +-1 slots of level L.
    for (int L = -2; L <= depth - 2; ++L) {
        std::vector<std::pair<int, int>> unknowns;
        if (L + 3 >= 1)
            for (int j = -(L + 3); j <= L + 3; ++j)
                if (j != 1 && j != -1 && !assigned.count({L + 3, j}))
                    unknowns.push_back({L + 3, j});
        if (L + 2 >= 2) {
            unknowns.push_back({L + 2, 1});
            unknowns.push_back({L + 2, -1});
        }
        if (unknowns.empty()) continue;

        S.set_hi_known(L + 4);
        BiSeries ds = alg.delta(S);
        BiSeries dds = alg.delta(ds);
        BiSeries s2 = S * S;
        int wspan = std::abs(L) + 9;

        std::map<int, FieldElement> K; // slot -> value, slots encoded as
                                       // 1000*eqlevel_offset + w-power
        std::vector<std::map<int, FieldElement>> cols(unknowns.size());
        std::vector<int> slots;
        auto harvest = [&](int eqlevel, bool pm1_only, int tag) {
            auto Kl = alg.residual_level(S, ds, dds, s2, eqlevel).laurent(-wspan, wspan);
            std::vector<std::map<int, FieldElement>> colpart;
            for (auto& [k, j] : unknowns) {
                BiSeries U = BiSeries::monomial(kTrigOuter, kTrigInner, k,
                                                w_power(ring, j, FieldElement(ring, 1)));
                colpart.push_back(
                    alg.linearized_level(S, ds, dds, s2, U, eqlevel).laurent(-wspan, wspan));
            }
            for (int s = -wspan; s <= wspan; ++s) {
                bool is_pm1 = (s == 1 || s == -1);
                if (pm1_only != is_pm1) continue;
                int key = tag * 1000 + s;
                K[key] = Kl[s];
                for (std::size_t c = 0; c < unknowns.size(); ++c) cols[c][key] = colpart[c][s];
                slots.push_back(key);
            }
        };
        if (L - 1 >= -3) harvest(L - 1, false, 1);
        harvest(L, true, 2);

        BlockResult res = solve_block(cols, K, slots, ring, "trig oracle");
        if (!res.deferred.empty())
            fail(Errc::OracleInconsistency, "level system left coefficients free");
        for (auto& [idx, val] : res.assigned) {
            auto [k, j] = unknowns[idx];
            assigned[{k, j}] = true;
            if (k <= depth) grid.set(k, j, val);
            if (!val.is_zero()) {
                RationalFunction cur =
                    S.levels().count(k) ? S.level(k) : RationalFunction(kTrigInner, ring);
                S.set_level(k, cur + w_power(ring, j, val));
            }
        }
    }

    for (int k = 2; k <= depth; ++k)
        for (int j = -k; j <= k; ++j) {
            if (!assigned.count({k, j}))
                fail(Errc::OracleInconsistency,
                     "coefficient (" + std::to_string(k) + "," + std::to_string(j) +
                         ") was never determined");
            if (!grid.has(k, j)) grid.set(k, j, FieldElement(ring, 0));
        }

    OracleRun run;
    run.kind = "trig";
    run.depth = depth;
    run.grid = grid;
    run.residual_certificate = depth;
    return run;
}

TrigCoeffGrid oracle_trig_coeffs(int depth) { return oracle_trig_run(depth).grid; }

FieldElement to_oracle_basis(const FieldElement& e) {
    RingPtr tring = PolyRing::make({"alpha", "kappa", "b11", "b1m1", "theta"});
    RingPtr oring = oracle_trig_ring();
    if (e.ring() != tring) fail(Errc::RingMismatch, "expected the kappa-basis trig ring");
    RingPtr joint = PolyRing::make({"alpha", "kappa", "b11", "b1m1", "theta", "a11", "a1m1"});
    FieldElement x = e.map_to_ring(joint);
    FieldElement th = FieldElement::param(joint, "theta");
    FieldElement iu(joint, GR::i());
    FieldElement a11 = FieldElement::param(joint, "a11");
    FieldElement a1m1 = FieldElement::param(joint, "a1m1");
    x = x.substitute("kappa", iu * th * th * a11 * a1m1 / FieldElement(joint, 3));
    x = x.substitute("b11", th * a11);
    x = x.substitute("b1m1", th * a1m1);
    return x.map_to_ring(oring);
}

// ---------------------------------------------------------------------------
// log algebra: basis tau^l lam^m:
//   delta(tau^l lam^m) = l tau^l lam^m - m tau^l lam^(m+1)

namespace {

struct LogAlgebra {
    RingPtr ring = oracle_log_ring();
    FieldElement a = FieldElement::param(ring, "a");
    FieldElement b = FieldElement::param(ring, "b");
    FieldElement g3 = FieldElement::param(ring, "g3");

    BiSeries delta(const BiSeries& s) const {
        return s.map_shift(0, [&](int l, const RationalFunction& f) {
            RationalFunction lam = RationalFunction::variable(kLogInner, ring);
            return f.scale(FieldElement(ring, GR(l))) - lam * lam * f.derivative();
        });
    }

    BiSeries residual(const BiSeries& u) const {
        BiSeries du = delta(u);
        BiSeries ddu = delta(du);
        BiSeries u3 = u * u * u;
        BiSeries r = ddu * u - du * du + u3.shift_outer(1).scale(FieldElement(ring, 8)) -
                     u.shift_outer(1).scale(a * b * FieldElement(ring, 2));
        return r - BiSeries::monomial(kLogOuter, kLogInner, 2,
                                      RationalFunction::from_const(kLogInner, b * b));
    }

    RationalFunction residual_level(const BiSeries& u, const BiSeries& du, const BiSeries& ddu,
                                    const BiSeries& u2, int L) const {
        RationalFunction v =
            BiSeries::mul_level(ddu, u, L) - BiSeries::mul_level(du, du, L);
        v = v + BiSeries::mul_level(u2, u, L - 1).scale(FieldElement(ring, 8));
        if (L - 1 <= u.hi_known())
            v = v - u.level(L - 1).scale(a * b * FieldElement(ring, 2));
        if (L == 2) v = v - RationalFunction::from_const(kLogInner, b * b);
        return v;
    }

    RationalFunction linearized_level(const BiSeries& u, const BiSeries& du, const BiSeries& ddu,
                                      const BiSeries& u2, const BiSeries& v, int L) const {
        BiSeries dv = delta(v);
        BiSeries ddv = delta(dv);
        RationalFunction r = BiSeries::mul_level(ddv, u, L) + BiSeries::mul_level(ddu, v, L) -
                             BiSeries::mul_level(du, dv, L).scale(FieldElement(ring, 2));
        r = r + BiSeries::mul_level(u2, v, L - 1).scale(FieldElement(ring, 24));
        if (v.levels().count(L - 1))
            r = r - v.level(L - 1).scale(a * b * FieldElement(ring, 2));
        return r;
    }
};

} // namespace

BiSeries log_dp3_residual(const BiSeries& u) {
    LogAlgebra alg;
    if (u.ring() != alg.ring)
        fail(Errc::IncompatibleMap, "log residual expects the oracle log ring");
    return alg.residual(u);
}

OracleRun oracle_log_run(int depth_k, int depth_m) {
    LogAlgebra alg;
    RingPtr ring = alg.ring;

    // earlier levels feed later equations at higher inner depth
    auto mdepth = [&](int k) { return depth_m + 2 * (depth_k - k) + 6; };

    BiSeries u(kLogOuter, kLogInner, ring, -1);
    u.set_level(-1, lam_power(ring, 2, FieldElement(ring, GR(-1, 4))) +
                        lam_power(ring, 3, alg.g3));

    CoefficientGrid grid;
    grid.ring = ring;
    grid.set(-1, 0, FieldElement(ring, 0));
    grid.set(-1, 1, FieldElement(ring, 0));
    grid.set(-1, 2, FieldElement(ring, GR(-1, 4)));
    grid.set(-1, 3, alg.g3);

    for (int K = 0; K <= depth_k; ++K) {
        int level = 2 * K - 1;
        int eqlevel = 2 * K - 2;
        int mlow = -2 * (K / 2);
        int mhigh = mdepth(K);

        std::vector<int> unknowns;
        for (int m = mlow; m <= mhigh; ++m) {
            if (K == 0 && m <= 3) continue; // seeds and the free parameter
            unknowns.push_back(m);
        }

        u.set_hi_known(level);
        BiSeries du = alg.delta(u);
        BiSeries ddu = alg.delta(du);
        BiSeries u2 = u * u;

        // a level-K coefficient is first pinned at the inner slot m+2
        // (coefficient -K^2); at K = 0 the quadratic self-pairing cancels
        // that slot and the pin moves to m+4 (coefficient c2 m (m-3))
        int slot_hi = mhigh + (K == 0 ? 4 : 2);
        int slot_lo = -2 * depth_k - 6;
        auto Kl = alg.residual_level(u, du, ddu, u2, eqlevel).laurent(slot_lo, slot_hi);

        std::vector<std::map<int, FieldElement>> cols;
        cols.reserve(unknowns.size());
        for (int m : unknowns) {
            BiSeries V = BiSeries::monomial(kLogOuter, kLogInner, level,
                                            lam_power(ring, m, FieldElement(ring, 1)));
            cols.push_back(
                alg.linearized_level(u, du, ddu, u2, V, eqlevel).laurent(slot_lo, slot_hi));
        }

        std::vector<int> slots;
        for (int s = slot_lo; s <= slot_hi; ++s) slots.push_back(s);
        BlockResult res = solve_block(cols, Kl, slots, ring, "log oracle");
        if (!res.deferred.empty())
            fail(Errc::OracleInconsistency, "free coefficient in the log-level system");

        RationalFunction lvlf =
            u.levels().count(level) ? u.level(level) : RationalFunction(kLogInner, ring);
        for (auto& [idx, val] : res.assigned) {
            int m = unknowns[idx];
            if (m <= depth_m) grid.set(level, m, val);
            if (!val.is_zero()) lvlf = lvlf + lam_power(ring, m, val);
        }
        u.set_level(level, lvlf);
    }

    for (int K = 0; K <= depth_k; ++K)
        for (int m = -2 * (K / 2); m <= depth_m; ++m)
            if (!grid.has(2 * K - 1, m)) grid.set(2 * K - 1, m, FieldElement(ring, 0));

    OracleRun run;
    run.kind = "log";
    run.depth = depth_k;
    run.grid = grid;
    run.residual_certificate = 2 * depth_k - 2;
    return run;
}

LogCoeffGrid oracle_log_coeffs(int depth_k, int depth_m) {
    return oracle_log_run(depth_k, depth_m).grid;
}

} // namespace dp3
