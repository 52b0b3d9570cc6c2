// SPDX-License-Identifier: Apache-2.0
#include "fewbody/basis.hpp"

#include <cmath>
#include <numbers>

#include "fewbody/gauss_moments.hpp"

namespace fewbody {

std::vector<double> geometric_ranges(int nmax, double r1, double rnmax) {
    if (nmax < 2)
        throw InvalidBasis("geometric_ranges: nmax must be >= 2");
    if (r1 <= 0.0 || rnmax <= r1)
        throw InvalidBasis("geometric_ranges: require 0 < r1 < rnmax");
    std::vector<double> r(nmax);
    const double a = std::pow(rnmax / r1, 1.0 / (nmax - 1));
    r[0] = r1;
    for (int n = 1; n < nmax; ++n)
        r[n] = r[n - 1] * a;
    r[nmax - 1] = rnmax; // pin the endpoint exactly
    return r;
}

double measure_factor(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 1.0;
        default: throw InvalidBasis("dim must be 1, 2 or 3");
    }
}

double normalization(double nu, int l, int dim) {
    if (nu <= 0.0)
        throw InvalidBasis("normalization: nu must be > 0");
    if (l < 0)
        throw InvalidBasis("normalization: l must be >= 0");
    const double mom = measure_factor(dim) * gauss_moment_half(2 * l + dim - 1, 2.0 * nu);
    return 1.0 / std::sqrt(mom);
}

double BasisFunction::value(double r) const {
    cplx s(0.0);
    for (int j = 0; j < nterms; ++j)
        s += coef[j] * std::exp(-cnu[j] * r * r);
    return norm * std::pow(r, power) * s.real();
}

cplx BasisFunction::value(cplx r) const {
    cplx s(0.0);
    for (int j = 0; j < nterms; ++j)
        s += coef[j] * std::exp(-cnu[j] * r * r);
    return norm * std::pow(r, cplx(static_cast<double>(power))) * s;
}

namespace {

// Unnormalized bilinear overlap of two term-decomposed functions of equal l.
cplx raw_overlap(const BasisFunction& a, const BasisFunction& b) {
    const int p = a.power + b.power + a.dim - 1;
    cplx s(0.0);
    for (int j = 0; j < a.nterms; ++j)
        for (int k = 0; k < b.nterms; ++k)
            s += a.coef[j] * b.coef[k] * gauss_moment_half(p, a.cnu[j] + b.cnu[k]);
    return measure_factor(a.dim) * s;
}

BasisFunction make_real(double nu, int l, int dim) {
    BasisFunction f;
    f.nu = nu;
    f.power = l;
    f.dim = dim;
    f.nterms = 1;
    f.coef = {cplx(1.0), cplx(0.0)};
    f.cnu = {cplx(nu), cplx(0.0)};
    f.norm = normalization(nu, l, dim);
    return f;
}

BasisFunction make_cr(double nu, int l, int dim, double omega, Oscillation osc) {
    BasisFunction f;
    f.nu = nu;
    f.power = l;
    f.dim = dim;
    f.osc = osc;
    f.omega_cr = omega;
    f.nterms = 2;
    f.cnu = {nu * cplx(1.0, omega), nu * cplx(1.0, -omega)};
    if (osc == Oscillation::Cos)
        f.coef = {cplx(0.5), cplx(0.5)};
    else
        f.coef = {cplx(0.0, 0.5), cplx(0.0, -0.5)};
    f.norm = 1.0 / std::sqrt(raw_overlap(f, f).real());
    return f;
}

} // namespace

double self_overlap(const BasisFunction& f) {
    return f.norm * f.norm * raw_overlap(f, f).real();
}

BasisSet make_basis_2b(const RangeProgression& prog, int l, int dim,
                       bool cr, double omega_cr) {
    BasisSet bs;
    if (!cr) {
        for (double r : geometric_ranges(prog))
            bs.functions.push_back(make_real(1.0 / (r * r), l, dim));
        return bs;
    }
    if (omega_cr <= 0.0)
        throw InvalidBasis("complex-ranged basis requires omega_cr > 0");
    // one cos and one sin member per range: 2*nmax functions in total
    for (double r : geometric_ranges(prog)) {
        const double nu = 1.0 / (r * r);
        bs.functions.push_back(make_cr(nu, l, dim, omega_cr, Oscillation::Cos));
        bs.functions.push_back(make_cr(nu, l, dim, omega_cr, Oscillation::Sin));
    }
    return bs;
}

} // namespace fewbody
