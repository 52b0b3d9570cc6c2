// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "fewbody/types.hpp"

namespace fewbody {

/// Geometric progression of Gaussian widths r_n; ranges are nu_n = 1/r_n^2.
struct RangeProgression {
    int nmax = 0;
    double r1 = 0.0;
    double rnmax = 0.0;
};

std::vector<double> geometric_ranges(int nmax, double r1, double rnmax);
inline std::vector<double> geometric_ranges(const RangeProgression& p) {
    return geometric_ranges(p.nmax, p.r1, p.rnmax);
}

enum class Oscillation { None, Cos, Sin };

/// One Gaussian basis function r^l exp(-nu r^2) (times cos/sin(nu w r^2) when
/// complex-ranged). Stored as a sum of complex-range Gaussian terms so every
/// matrix element reduces to moments of exp(-a r^2) with complex a.
struct BasisFunction {
    double nu = 0.0;       // base range
    int power = 0;         // l (1D: parity index, 2D: |m|, 3D: l)
    int dim = 3;
    double norm = 1.0;
    Oscillation osc = Oscillation::None;
    double omega_cr = 0.0;

    int nterms = 1;
    std::array<cplx, 2> coef{cplx(1.0), cplx(0.0)};
    std::array<cplx, 2> cnu{cplx(0.0), cplx(0.0)};

    double value(double r) const;
    cplx value(cplx r) const;
};

struct BasisSet {
    std::vector<BasisFunction> functions;
    int size() const { return static_cast<int>(functions.size()); }
};

/// Normalization constant N with N^2 * \int |r^l e^{-nu r^2} f_{l,m}|^2 d^d r = 1.
double normalization(double nu, int l, int dim);

/// Angular/measure factor multiplying the radial moment of r^{2l+d-1} on the
/// half line: 1 in 3D (normalized spherical harmonics), 2*pi in 2D, 2 in 1D
/// (even/odd monomials over the full line).
double measure_factor(int dim);

/// Geometric-progression basis. With cr = true each range contributes a
/// cos- and a sin-modulated member, giving 2*nmax functions.
BasisSet make_basis_2b(const RangeProgression& prog, int l, int dim,
                       bool cr = false, double omega_cr = 0.0);

/// Self-overlap of the (normalized) pair via analytic moments; used by tests
/// and by normalization of complex-ranged members.
double self_overlap(const BasisFunction& f);

} // namespace fewbody
