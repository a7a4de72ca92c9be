#include "dp3/jacobi.hpp"

#include <cmath>
#include <vector>

namespace dp3 {

JacobiValue jacobi_eval(Cplx u, Cplx k2) {
    // descend k -> k1 = (1 - k')/(1 + k') until the modulus is negligible
    std::vector<Cplx> k1s;
    Cplx m = k2;
    const int depth_cap = 24;
    int depth = 0;
    while (std::abs(m) > 1e-28 && depth < depth_cap) {
        Cplx kp = std::sqrt(1.0 - m); // principal branch, Re >= 0
        Cplx k1 = (1.0 - kp) / (1.0 + kp);
        k1s.push_back(k1);
        m = k1 * k1;
        u /= (1.0 + k1);
        ++depth;
    }
    if (std::abs(m) > 1e-12)
        fail(Errc::EvaluationFailure, "Landen descent did not converge (modulus near 1?)");
    JacobiValue v;
    v.sn = std::sin(u);
    v.cn = std::cos(u);
    v.dn = 1.0;
    for (int i = static_cast<int>(k1s.size()) - 1; i >= 0; --i) {
        Cplx k1 = k1s[static_cast<std::size_t>(i)];
        Cplx s2 = v.sn * v.sn;
        Cplx den = 1.0 + k1 * s2;
        Cplx sn = (1.0 + k1) * v.sn / den;
        Cplx cn = v.cn * v.dn / den;
        Cplx dn = (1.0 - k1 * s2) / den;
        v.sn = sn;
        v.cn = cn;
        v.dn = dn;
    }
    v.E = v.cn + Cplx(0.0, 1.0) * v.sn;
    return v;
}

Cplx sqrt_continuous(Cplx z, Cplx previous) {
    Cplx r = std::sqrt(z);
    if (std::abs(r - previous) > std::abs(-r - previous)) r = -r;
    return r;
}

} // namespace dp3
