#ifndef DP3_JACOBI_HPP
#define DP3_JACOBI_HPP

#include <complex>

#include "dp3/errors.hpp"

namespace dp3 {

using Cplx = std::complex<double>;

/// Jacobi elliptic values at one point with complex modulus squared.
struct JacobiValue {
    Cplx sn, cn, dn;
    Cplx E; // cn + i sn = exp(i am) on the real locus
};

/// Descending Landen evaluation, trigonometric seed, depth cap 24.
JacobiValue jacobi_eval(Cplx u, Cplx k2);

/// sqrt with branch chosen for continuity against a previous value.
Cplx sqrt_continuous(Cplx z, Cplx previous);

} // namespace dp3

#endif
