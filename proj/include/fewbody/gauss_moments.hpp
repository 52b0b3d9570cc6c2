// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>

#include "fewbody/types.hpp"

namespace fewbody {

// G(p,a) = \int_0^inf r^p exp(-a r^2) dr = Gamma((p+1)/2) / (2 a^{(p+1)/2}),
// valid for Re(a) > 0 and p > -1 (principal branch for complex a).
inline double gauss_moment_half(int p, double a) {
    return 0.5 * std::tgamma(0.5 * (p + 1)) * std::pow(a, -0.5 * (p + 1));
}

inline cplx gauss_moment_half(int p, cplx a) {
    return 0.5 * std::tgamma(0.5 * (p + 1)) * std::pow(a, cplx(-0.5 * (p + 1)));
}

// Full-line moment; vanishes for odd p.
inline double gauss_moment_full(int p, double a) {
    return (p % 2 != 0) ? 0.0 : 2.0 * gauss_moment_half(p, a);
}

inline cplx gauss_moment_full(int p, cplx a) {
    return (p % 2 != 0) ? cplx(0.0) : 2.0 * gauss_moment_half(p, a);
}

} // namespace fewbody
