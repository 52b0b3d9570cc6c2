// SPDX-License-Identifier: Apache-2.0
#include "fewbody/isgl3d.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fewbody {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;
constexpr double kDeg = kPi / 180.0;

void validate_phys(const PhysParams3B3D& pp) {
    for (double m : pp.masses)
        if (!(m > 0.0))
            throw ConfigError("three-body 3D: masses must be > 0");
    bool any_pot = false;
    for (const auto& v : pp.vints)
        any_pot = any_pot || !v.empty();
    if (!any_pot)
        throw ConfigError("three-body 3D: need at least one pair potential");
    for (const auto& v : pp.vints)
        for (const auto& pot : v)
            if (pot.is_contact())
                throw NonCentralPotential(
                    "contact potential is not a central 3D interaction");
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            if (pp.svals[a] != pp.svals[b])
                continue;
            if (pp.svals[a] != "b" && pp.svals[a] != "f")
                throw InvalidSymmetry(
                    "identical particles must carry statistics label \"b\" or \"f\"");
            if (pp.masses[a] != pp.masses[b])
                throw InvalidSymmetry("identical particles must share the same mass");
            if (pp.vints[a].size() != pp.vints[b].size())
                throw InvalidSymmetry(
                    "identical particles need matching spectator potential lists");
            for (size_t q = 0; q < pp.vints[a].size(); ++q)
                for (double x : {0.17, 0.9, 2.3})
                    if (pp.vints[a][q](x) != pp.vints[b][q](x))
                        throw InvalidSymmetry(
                            "identical particles need matching spectator potentials");
        }
}

void validate_num(const NumParams3B3D& np) {
    if (!(np.theta_csm >= 0.0 && np.theta_csm < 45.0))
        throw ConfigError("three-body 3D: theta_csm must lie in [0, 45)");
    if (!(np.threshold > 0.0 && np.threshold < 1.0))
        throw ConfigError("three-body 3D: threshold must lie in (0, 1)");
    if (np.kmax_interpol < 4)
        throw ConfigError("three-body 3D: kmax_interpol must be >= 4");
}

// One weighted s-wave product Gaussian, tagged with its Jacobi set.
struct Comp3 {
    int set;
    double weight;
    double nu, lam;
    double norm;
};

struct Basis3 {
    std::vector<Channel1D> channels;
    std::vector<double> nus, lams;
    int nmax = 0, Nmax = 0;

    int dim() const { return static_cast<int>(channels.size()) * nmax * Nmax; }

    std::vector<Comp3> comps(int idx) const {
        const int ch = idx / (nmax * Nmax);
        const int rem = idx % (nmax * Nmax);
        const int n = rem / Nmax, N = rem % Nmax;
        std::vector<Comp3> cs;
        for (const auto& cc : channels[ch].components) {
            Comp3 c;
            c.set = cc.set;
            c.weight = cc.weight;
            c.nu = nus[n];
            c.lam = lams[N];
            c.norm = std::pow(2.0 * c.nu / kPi, 0.75) * std::pow(2.0 * c.lam / kPi, 0.75);
            cs.push_back(c);
        }
        return cs;
    }
};

Basis3 make_basis(const PhysParams3B3D& pp, const NumParams3B3D& np) {
    Basis3 bs;
    bs.channels = enumerate_channels_3d(pp);
    if (bs.channels.empty())
        throw InvalidBasis("three-body 3D: no s-wave channel satisfies the symmetry");
    bs.nmax = np.gem.nmax;
    bs.Nmax = np.gem.Nmax;
    for (double r : geometric_ranges(np.gem.nmax, np.gem.r1, np.gem.rnmax))
        bs.nus.push_back(1.0 / (r * r));
    for (double R : geometric_ranges(np.gem.Nmax, np.gem.R1, np.gem.RNmax))
        bs.lams.push_back(1.0 / (R * R));
    return bs;
}

// Combined exponent a r^2 + b R^2 + c r.R of a (bra, ket) component pair in
// bra-set coordinates; (ak, bk, ck) is the ket-only part.
struct Geom3 {
    double a, b, c;
    double ak, bk, ck;
};

Geom3 geometry(const Comp3& a, const Comp3& b, const JacobiFrame& jf) {
    Geom3 g;
    const Eigen::Matrix2d& m = jf.map[b.set][a.set];
    g.ak = b.nu * m(0, 0) * m(0, 0) + b.lam * m(1, 0) * m(1, 0);
    g.bk = b.nu * m(0, 1) * m(0, 1) + b.lam * m(1, 1) * m(1, 1);
    g.ck = 2.0 * (b.nu * m(0, 0) * m(0, 1) + b.lam * m(1, 0) * m(1, 1));
    g.a = a.nu + g.ak;
    g.b = a.lam + g.bk;
    g.c = g.ck;
    return g;
}

// Low moments of e^{-(a r^2 + b R^2 + c r.R)} over R^3 x R^3 from the
// correlated-Gaussian identity I = pi^3 (ab - c^2/4)^{-3/2} and its
// derivatives in a, b, c.
struct Moments3 {
    double i0, r2, R2, rR;

    Moments3(double a, double b, double c) {
        const double det = a * b - 0.25 * c * c;
        if (!(det > 0.0) || !(a > 0.0))
            throw IntegrationFailure("correlated Gaussian exponent not positive definite");
        const double d5 = kPi3 * std::pow(det, -2.5);
        i0 = kPi3 * std::pow(det, -1.5);
        r2 = 1.5 * d5 * b;
        R2 = 1.5 * d5 * a;
        rR = -0.75 * d5 * c;
    }
};

double overlap_el(const Comp3& a, const Comp3& b, const JacobiFrame& jf) {
    const Geom3 g = geometry(a, b, jf);
    return a.norm * b.norm * Moments3(g.a, g.b, g.c).i0;
}

double kinetic_el(const Comp3& a, const Comp3& b, const JacobiFrame& jf,
                  double mu_r, double mu_R) {
    const Geom3 g = geometry(a, b, jf);
    const Moments3 m(g.a, g.b, g.c);
    // grad_r f_a = -2 nu_a r f_a; grad_r f_b = -(2 ak r + ck R) f_b, etc.
    const double tr = a.nu * (2.0 * g.ak * m.r2 + g.ck * m.rR) / mu_r;
    const double tR = a.lam * (2.0 * g.bk * m.R2 + g.ck * m.rR) / mu_R;
    return a.norm * b.norm * (tr + tR);
}

// Reduce \int\int e^{-(a r^2 + b R^2 + c r.R)} W(|w1 r + w2 R|) to the
// half-line kernel with l_eff = 2: prefactor * \int t^2 e^{-alpha t^2} W(t) dt.
struct Aligned3 {
    double pref, alpha;
};

Aligned3 align(double a, double b, double c, double w1, double w2) {
    if (std::abs(w1) > std::abs(w2)) {
        std::swap(a, b);
        std::swap(w1, w2);
    }
    if (w2 == 0.0)
        throw IntegrationFailure("potential alignment: degenerate pair coordinate");
    const double ratio = w1 / w2;
    const double Bs = a + b * ratio * ratio - c * ratio;
    if (!(Bs > 0.0))
        throw IntegrationFailure("potential alignment: transverse exponent not positive");
    Aligned3 r;
    r.alpha = (a * b - 0.25 * c * c) / (w2 * w2 * Bs);
    r.pref = std::pow(kPi / Bs, 1.5) * 4.0 * kPi / std::pow(std::abs(w2), 3.0);
    return r;
}

// Matrix of the radial weight W(r_q) over the symmetrized basis; used both
// for pair potentials and for central observables.
Eigen::MatrixXcd radial_matrix(const Basis3& bs, const JacobiFrame& jf, int q,
                               const PotentialModel& pot, double theta,
                               int kmax_interpol) {
    if (pot.is_contact())
        throw NonCentralPotential("contact potential is not a central 3D weight");
    const int dim = bs.dim();
    AlphaInterpolant interp;
    const bool closed = has_closed_kernel(pot);
    if (!closed) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < dim; ++i) {
            const auto ca = bs.comps(i);
            for (int j = i; j < dim; ++j)
                for (const auto& a : ca)
                    for (const auto& b : bs.comps(j)) {
                        const Geom3 g = geometry(a, b, jf);
                        const Eigen::RowVector2d w = jf.pair_row(q, a.set);
                        const Aligned3 al = align(g.a, g.b, g.c, w(0), w(1));
                        lo = std::min(lo, al.alpha);
                        hi = std::max(hi, al.alpha);
                    }
        }
        interp = AlphaInterpolant(pot, 2, KernelDomain::HalfLine, lo / 10.0,
                                  hi * 10.0, kmax_interpol, theta);
    }
    auto kern = [&](double alpha) -> cplx {
        if (closed)
            return radial_kernel(pot, {2, cplx(alpha), KernelDomain::HalfLine, theta});
        return interp(alpha);
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto ca = bs.comps(i);
        for (int j = i; j < dim; ++j) {
            cplx v(0.0);
            for (const auto& a : ca)
                for (const auto& b : bs.comps(j)) {
                    const Geom3 g = geometry(a, b, jf);
                    const Eigen::RowVector2d w = jf.pair_row(q, a.set);
                    const Aligned3 al = align(g.a, g.b, g.c, w(0), w(1));
                    v += a.weight * b.weight * a.norm * b.norm * al.pref * kern(al.alpha);
                }
            out(i, j) = out(j, i) = v;
        }
    }
    return out;
}

// Matrix of |R_set|^2 over the symmetrized basis (closed Gaussian moments).
Eigen::MatrixXd r2_matrix(const Basis3& bs, const JacobiFrame& jf, int set) {
    const int dim = bs.dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto ca = bs.comps(i);
        for (int j = i; j < dim; ++j) {
            double v = 0.0;
            for (const auto& a : ca)
                for (const auto& b : bs.comps(j)) {
                    const Geom3 g = geometry(a, b, jf);
                    const Moments3 m(g.a, g.b, g.c);
                    const Eigen::RowVector2d w = jf.map[set][a.set].row(1);
                    v += a.weight * b.weight * a.norm * b.norm *
                         (w(0) * w(0) * m.r2 + w(1) * w(1) * m.R2 +
                          2.0 * w(0) * w(1) * m.rR);
                }
            out(i, j) = out(j, i) = v;
        }
    }
    return out;
}

Eigen::MatrixXd overlap_matrix(const Basis3& bs, const JacobiFrame& jf) {
    const int dim = bs.dim();
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto ca = bs.comps(i);
        for (int j = i; j < dim; ++j) {
            double s = 0.0;
            for (const auto& a : ca)
                for (const auto& b : bs.comps(j))
                    s += a.weight * b.weight * overlap_el(a, b, jf);
            S(i, j) = S(j, i) = s;
        }
    }
    return S;
}

} // namespace

std::vector<Channel1D> enumerate_channels_3d(const PhysParams3B3D& pp) {
    validate_phys(pp);
    std::vector<std::pair<int, int>> idpairs;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (pp.svals[a] == pp.svals[b])
                idpairs.push_back({a, b});

    std::vector<Channel1D> out;
    if (idpairs.empty()) {
        for (int set = 0; set < 3; ++set)
            out.push_back({{{set, 0, 0, 1.0}}});
        return out;
    }
    const int p = pp.svals[idpairs[0].first] == "b" ? 1 : -1;
    if (idpairs.size() == 1) {
        const int j = idpairs[0].first, k = idpairs[0].second;
        const int spect = 3 - j - k;
        // s-wave exchange leaves the pair-set Gaussian invariant
        if (p == 1)
            out.push_back({{{spect, 0, 0, 1.0}}});
        out.push_back({{{j, 0, 0, 1.0}, {k, 0, 0, static_cast<double>(p)}}});
        return out;
    }
    if (p == 1)
        out.push_back({{{0, 0, 0, 1.0}, {1, 0, 0, 1.0}, {2, 0, 0, 1.0}}});
    return out;
}

AssembledSystem assemble_3b3d(const PhysParams3B3D& pp, const NumParams3B3D& np,
                              bool csm) {
    validate_phys(pp);
    validate_num(np);
    const double theta = csm ? np.theta_csm : 0.0;
    if (theta != 0.0)
        for (const auto& plist : pp.vints)
            for (const auto& pot : plist)
                if (!pot.complex_capable())
                    throw UnsupportedComplexEvaluation(
                        "CSM requires complex-capable pair potentials");

    const JacobiFrame jf = jacobi_frames(pp.masses);
    const Basis3 bs = make_basis(pp, np);
    const int dim = bs.dim();

    AssembledSystem sys;
    sys.kind = theta != 0.0 ? MatrixKind::ComplexSymmetric : MatrixKind::RealSymmetric;
    sys.S = overlap_matrix(bs, jf);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto ca = bs.comps(i);
        for (int j = i; j < dim; ++j) {
            double t = 0.0;
            for (const auto& a : ca)
                for (const auto& b : bs.comps(j)) {
                    const auto [mu_r, mu_R] = reduced_masses_3b(pp.masses, a.set);
                    t += a.weight * b.weight * kinetic_el(a, b, jf, mu_r, mu_R);
                }
            T(i, j) = T(j, i) = t;
        }
    }
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim, dim);
    for (int pair = 0; pair < 3; ++pair)
        for (const auto& pot : pp.vints[pair])
            V += radial_matrix(bs, jf, pair, pot, theta, np.kmax_interpol);

    if (sys.kind == MatrixKind::RealSymmetric) {
        sys.H = T + V.real();
    } else {
        const cplx rot = std::polar(1.0, -2.0 * theta * kDeg);
        sys.Hc = rot * T.cast<cplx>() + V;
    }
    return sys;
}

Result3B3D solve_3b3d(const PhysParams3B3D& pp, const NumParams3B3D& np,
                      Flags3B flags, const ObservRequest* observ) {
    const bool want_obs = observ != nullptr && !observ->stateindices.empty();
    if (want_obs && flags.csm)
        throw ConfigError("observable means are not defined under complex scaling");

    const AssembledSystem sys = assemble_3b3d(pp, np, flags.csm);
    Result3B3D out;
    out.spectrum = solve_gevp(sys, np.threshold, flags.wf || want_obs);
    if (!want_obs)
        return out;

    const int nstates = out.spectrum.count();
    for (int si : observ->stateindices)
        if (si < 1 || si > nstates)
            throw InvalidIndex("observable request: state index out of range");

    const JacobiFrame jf = jacobi_frames(pp.masses);
    const Basis3 bs = make_basis(pp, np);
    std::array<std::vector<Eigen::MatrixXd>, 3> obs_mats;
    std::array<Eigen::MatrixXd, 3> r2_mats;
    for (int q = 0; q < 3; ++q) {
        for (const auto& o : observ->centobs[q])
            obs_mats[q].push_back(radial_matrix(bs, jf, q, o, 0.0, np.kmax_interpol).real());
        if (observ->R2_flags[q])
            r2_mats[q] = r2_matrix(bs, jf, q);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int si : observ->stateindices) {
        const Eigen::VectorXd c = out.spectrum.vectors.col(si - 1);
        const double nrm = c.dot(sys.S * c);
        std::array<std::vector<double>, 3> row;
        std::array<double, 3> row_r2{nan, nan, nan};
        for (int q = 0; q < 3; ++q) {
            for (const auto& m : obs_mats[q])
                row[q].push_back(c.dot(m * c) / nrm);
            if (observ->R2_flags[q])
                row_r2[q] = c.dot(r2_mats[q] * c) / nrm;
        }
        out.observ.centobs.push_back(std::move(row));
        out.observ.R2.push_back(row_r2);
    }
    return out;
}

double mean_R2(const Eigen::VectorXd& coeffs, int set_index,
               const PhysParams3B3D& pp, const NumParams3B3D& np) {
    if (set_index < 0 || set_index > 2)
        throw InvalidIndex("mean_R2: set index must lie in 0..2");
    validate_phys(pp);
    validate_num(np);
    const JacobiFrame jf = jacobi_frames(pp.masses);
    const Basis3 bs = make_basis(pp, np);
    if (coeffs.size() != bs.dim())
        throw ShapeMismatch("mean_R2: coefficient vector does not match the basis");
    const Eigen::MatrixXd S = overlap_matrix(bs, jf);
    const Eigen::MatrixXd M = r2_matrix(bs, jf, set_index);
    const double nrm = coeffs.dot(S * coeffs);
    if (!(nrm > 0.0))
        throw NumericalFailure("mean_R2: coefficient vector has non-positive norm");
    return coeffs.dot(M * coeffs) / nrm;
}

} // namespace fewbody
