// SPDX-License-Identifier: Apache-2.0
#include "fewbody/gem3b1d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "fewbody/gauss_moments.hpp"

namespace fewbody {

JacobiFrame jacobi_frames(const std::array<double, 3>& masses) {
    for (double m : masses)
        if (!(m > 0.0))
            throw ConfigError("jacobi_frames: masses must be > 0");
    // rows of (r_i, R_i) in particle coordinates (s1, s2, s3)
    auto rows = [&](int i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        Eigen::Matrix<double, 2, 3> m = Eigen::Matrix<double, 2, 3>::Zero();
        m(0, j) = 1.0;
        m(0, k) = -1.0;
        const double mjk = masses[j] + masses[k];
        m(1, i) = 1.0;
        m(1, j) = -masses[j] / mjk;
        m(1, k) = -masses[k] / mjk;
        return m;
    };
    JacobiFrame f;
    for (int from = 0; from < 3; ++from) {
        // invert (r_from, R_from, center of mass) -> particle coordinates
        Eigen::Matrix3d t;
        t.topRows<2>() = rows(from);
        t.row(2) << masses[0], masses[1], masses[2];
        const Eigen::Matrix3d tinv = t.inverse();
        for (int to = 0; to < 3; ++to)
            f.map[to][from] = (rows(to) * tinv).leftCols<2>();
    }
    return f;
}

std::pair<double, double> reduced_masses_3b(const std::array<double, 3>& masses, int set) {
    const int j = (set + 1) % 3, k = (set + 2) % 3;
    const double mu_r = masses[j] * masses[k] / (masses[j] + masses[k]);
    const double mu_R = masses[set] * (masses[j] + masses[k]) /
                        (masses[0] + masses[1] + masses[2]);
    return {mu_r, mu_R};
}

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void validate(const PhysParams3B1D& pp, const NumParams3B1D& np) {
    for (double m : pp.masses)
        if (!(m > 0.0))
            throw ConfigError("three-body 1D: masses must be > 0");
    if (pp.parity != -1 && pp.parity != 0 && pp.parity != 1)
        throw ConfigError("three-body 1D: parity must be -1, 0 or +1");
    if (np.lmin < 0 || np.lmax > 1 || np.lmin > np.lmax ||
        np.Lmin < 0 || np.Lmax > 1 || np.Lmin > np.Lmax)
        throw ConfigError("three-body 1D: parity-wave bounds must lie in {0, 1}");
    if (!(np.theta_csm >= 0.0 && np.theta_csm < 45.0))
        throw ConfigError("three-body 1D: theta_csm must lie in [0, 45)");
    if (!(np.threshold > 0.0 && np.threshold < 1.0))
        throw ConfigError("three-body 1D: threshold must lie in (0, 1)");
    if (np.kmax_interpol < 4)
        throw ConfigError("three-body 1D: kmax_interpol must be >= 4");
    bool any_pot = false;
    for (const auto& v : pp.vints)
        any_pot = any_pot || !v.empty();
    if (!any_pot)
        throw ConfigError("three-body 1D: need at least one pair potential");
    // identical particles: shared label => statistics tag, equal masses,
    // matching spectator potentials
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

// Dense bivariate polynomial; degrees stay small (products of parity-wave
// monomials and one kinetic derivative each).
constexpr int kPmax = 8;

struct Poly2 {
    double c[kPmax + 1][kPmax + 1] = {};

    static Poly2 monomial(int p, int q, double coef = 1.0) {
        Poly2 r;
        r.c[p][q] = coef;
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax - p; ++q) {
                if (c[p][q] == 0.0)
                    continue;
                for (int s = 0; s + p <= kPmax; ++s)
                    for (int t = 0; t + q <= kPmax - s - p; ++t)
                        r.c[p + s][q + t] += c[p][q] * o.c[s][t];
            }
        return r;
    }
    Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax; ++q)
                r.c[p][q] += o.c[p][q];
        return r;
    }
    Poly2 scaled(double s) const {
        Poly2 r = *this;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax; ++q)
                r.c[p][q] *= s;
        return r;
    }
    Poly2 dx() const {
        Poly2 r;
        for (int p = 1; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax; ++q)
                r.c[p - 1][q] = p * c[p][q];
        return r;
    }
    Poly2 dy() const {
        Poly2 r;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 1; q <= kPmax; ++q)
                r.c[p][q - 1] = q * c[p][q];
        return r;
    }
    Poly2 transposed() const {
        Poly2 r;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax; ++q)
                r.c[q][p] = c[p][q];
        return r;
    }
    int degree() const {
        int d = 0;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax; ++q)
                if (c[p][q] != 0.0)
                    d = std::max(d, p + q);
        return d;
    }
};

// (a x + b X)^n expanded
Poly2 linear_power(double a, double b, int n) {
    Poly2 r = Poly2::monomial(0, 0);
    for (int i = 0; i < n; ++i) {
        Poly2 lin;
        lin.c[1][0] = a;
        lin.c[0][1] = b;
        r = r * lin;
    }
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

// Full-plane Gaussian moments M(p,q) = \int x^p X^q e^{-(A x^2 + B X^2 + C xX)}
// with positive-definite exponent, via the covariance recurrence.
struct Moments2 {
    double m[kPmax + 1][kPmax + 1];

    Moments2(double A, double B, double C) {
        const double det = A * B - 0.25 * C * C;
        if (!(det > 0.0) || !(A > 0.0))
            throw IntegrationFailure("two-variable Gaussian exponent not positive definite");
        const double sxx = B / (2.0 * det);
        const double syy = A / (2.0 * det);
        const double sxy = -C / (4.0 * det);
        for (int d = 0; d <= kPmax; ++d)
            for (int p = 0; p <= d; ++p) {
                const int q = d - p;
                double v = 0.0;
                if (d == 0)
                    v = std::numbers::pi / std::sqrt(det);
                else if ((p + q) % 2 == 0) {
                    if (p >= 2)
                        v = (p - 1) * sxx * m[p - 2][q] + (p >= 1 && q >= 1
                                ? q * sxy * m[p - 1][q - 1] : 0.0);
                    else if (p == 1)
                        v = q * sxy * m[0][q - 1];
                    else
                        v = (q - 1) * syy * m[0][q - 2];
                }
                m[p][q] = v;
            }
    }

    double integrate(const Poly2& poly) const {
        double s = 0.0;
        for (int p = 0; p <= kPmax; ++p)
            for (int q = 0; q <= kPmax - p; ++q)
                if (poly.c[p][q] != 0.0)
                    s += poly.c[p][q] * m[p][q];
        return s;
    }
};

// One weighted product-Gaussian component of a basis member, tagged with its
// Jacobi set and parity-wave powers.
struct Comp {
    int set, l, L;
    double weight;
    double nu, lam;
    double norm;
};

struct Basis3B {
    std::vector<Channel1D> channels;
    std::vector<double> nus, lams;
    // comps[ch]: component templates of channel ch (weight/norm filled per member)
    int nmax = 0, Nmax = 0;

    int dim() const { return static_cast<int>(channels.size()) * nmax * Nmax; }

    Comp instantiate(const ChannelComponent& cc, int n, int N) const {
        Comp c;
        c.set = cc.set;
        c.l = cc.l;
        c.L = cc.L;
        c.weight = cc.weight;
        c.nu = nus[n];
        c.lam = lams[N];
        c.norm = normalization(c.nu, c.l, 1) * normalization(c.lam, c.L, 1);
        return c;
    }
};

// Geometry of a (bra, ket) component pair in the bra frame.
struct PairGeom {
    Poly2 poly;          // bra monomial * ket polynomial
    double A, B, C;      // combined exponent
    double Ak, Bk, Ck;   // ket-only exponent (for ket derivatives)
};

PairGeom pair_geometry(const Comp& a, const Comp& b, const JacobiFrame& jf) {
    PairGeom g;
    const Eigen::Matrix2d& m = jf.map[b.set][a.set];
    g.Ak = b.nu * m(0, 0) * m(0, 0) + b.lam * m(1, 0) * m(1, 0);
    g.Bk = b.nu * m(0, 1) * m(0, 1) + b.lam * m(1, 1) * m(1, 1);
    g.Ck = 2.0 * (b.nu * m(0, 0) * m(0, 1) + b.lam * m(1, 0) * m(1, 1));
    g.A = a.nu + g.Ak;
    g.B = a.lam + g.Bk;
    g.C = g.Ck;
    g.poly = Poly2::monomial(a.l, a.L) *
             (linear_power(m(0, 0), m(0, 1), b.l) * linear_power(m(1, 0), m(1, 1), b.L));
    return g;
}

double overlap_el(const Comp& a, const Comp& b, const JacobiFrame& jf) {
    const PairGeom g = pair_geometry(a, b, jf);
    return a.norm * b.norm * Moments2(g.A, g.B, g.C).integrate(g.poly);
}

double kinetic_el(const Comp& a, const Comp& b, const JacobiFrame& jf,
                  double mu_r, double mu_R) {
    const PairGeom g = pair_geometry(a, b, jf);
    const Eigen::Matrix2d& m = jf.map[b.set][a.set];
    const Poly2 bra = Poly2::monomial(a.l, a.L);
    const Poly2 ket = linear_power(m(0, 0), m(0, 1), b.l) * linear_power(m(1, 0), m(1, 1), b.L);

    // d/dx (P e^{-E}) = (dP/dx - P dE/dx) e^{-E}; exponents are quadratic
    Poly2 exa_x;
    exa_x.c[1][0] = 2.0 * a.nu;
    Poly2 exa_y;
    exa_y.c[0][1] = 2.0 * a.lam;
    Poly2 exk_x;
    exk_x.c[1][0] = 2.0 * g.Ak;
    exk_x.c[0][1] = g.Ck;
    Poly2 exk_y;
    exk_y.c[0][1] = 2.0 * g.Bk;
    exk_y.c[1][0] = g.Ck;

    const Poly2 dax = bra.dx() + (bra * exa_x).scaled(-1.0);
    const Poly2 day = bra.dy() + (bra * exa_y).scaled(-1.0);
    const Poly2 dbx = ket.dx() + (ket * exk_x).scaled(-1.0);
    const Poly2 dby = ket.dy() + (ket * exk_y).scaled(-1.0);

    const Moments2 mom(g.A, g.B, g.C);
    const double t = mom.integrate(dax * dbx) / (2.0 * mu_r) +
                     mom.integrate(day * dby) / (2.0 * mu_R);
    return a.norm * b.norm * t;
}

// \int\int P(x, X) e^{-(A x^2 + B X^2 + C xX)} V(w1 x + w2 X) dx dX reduced to
// full-line alpha-kernels by aligning the interaction coordinate; kern(m,
// alpha) supplies \int t^m e^{-alpha t^2} V(t) dt.
template <typename KernFn>
cplx aligned_potential(const Poly2& poly, double A, double B, double C,
                       double w1, double w2, KernFn&& kern) {
    if (std::abs(w1) > std::abs(w2))
        return aligned_potential(poly.transposed(), B, A, C, w2, w1, kern);
    if (w2 == 0.0)
        throw IntegrationFailure("potential alignment: degenerate pair coordinate");
    // substitute x = s, X = (t - w1 s)/w2 with t the pair coordinate
    const double iw = 1.0 / w2, ratio = w1 / w2;
    Poly2 pst; // powers of (s, t)
    for (int p = 0; p <= kPmax; ++p)
        for (int q = 0; q <= kPmax - p; ++q) {
            if (poly.c[p][q] == 0.0)
                continue;
            for (int k = 0; k <= q; ++k)
                pst.c[p + q - k][k] += poly.c[p][q] * binom(q, k) *
                                       std::pow(iw, k) * std::pow(-ratio, q - k);
        }
    const double Bs = A + B * ratio * ratio - C * ratio;
    const double At = B * iw * iw;
    const double Cs = C * iw - 2.0 * B * ratio * iw;
    if (!(Bs > 0.0))
        throw IntegrationFailure("potential alignment: transverse exponent not positive");
    // integrate the transverse direction: complete the square in s
    const double beta = Cs / (2.0 * Bs);
    const double alpha_eff = At - 0.25 * Cs * Cs / Bs;
    double tc[kPmax + 1] = {};
    for (int sg = 0; sg <= kPmax; ++sg)
        for (int m = 0; m <= kPmax - sg; ++m) {
            if (pst.c[sg][m] == 0.0)
                continue;
            for (int j = 0; j <= sg; j += 2) { // odd transverse moments vanish
                const double mom = gauss_moment_full(j, Bs);
                tc[m + sg - j] += pst.c[sg][m] * binom(sg, j) *
                                  std::pow(-beta, sg - j) * mom;
            }
        }
    cplx total(0.0);
    for (int m = 0; m <= kPmax; ++m)
        if (tc[m] != 0.0)
            total += tc[m] * kern(m, alpha_eff);
    return total / std::abs(w2);
}

struct InterpKey {
    const void* pot;
    int power;
    bool operator<(const InterpKey& o) const {
        return pot != o.pot ? pot < o.pot : power < o.power;
    }
};

struct AlphaRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    int max_power = 0;
};

} // namespace

std::vector<Channel1D> enumerate_channels_1d(const PhysParams3B1D& pp,
                                             const NumParams3B1D& np) {
    validate(pp, np);
    auto allowed = [&](int l, int L) {
        if (l < np.lmin || l > np.lmax || L < np.Lmin || L > np.Lmax)
            return false;
        if (pp.parity != 0 && ((l + L) % 2 == 0 ? 1 : -1) != pp.parity)
            return false;
        return true;
    };
    std::vector<std::pair<int, int>> idpairs;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (pp.svals[a] == pp.svals[b])
                idpairs.push_back({a, b});

    std::vector<Channel1D> out;
    if (idpairs.empty()) {
        for (int set = 0; set < 3; ++set)
            for (int l = 0; l <= 1; ++l)
                for (int L = 0; L <= 1; ++L)
                    if (allowed(l, L))
                        out.push_back({{{set, l, L, 1.0}}});
        return out;
    }
    const int p = pp.svals[idpairs[0].first] == "b" ? 1 : -1;
    if (idpairs.size() == 1) {
        const int j = idpairs[0].first, k = idpairs[0].second;
        const int spect = 3 - j - k;
        for (int l = 0; l <= 1; ++l)
            for (int L = 0; L <= 1; ++L) {
                if (!allowed(l, L))
                    continue;
                // pair set: exchange flips r -> -r
                if ((l % 2 == 0 ? 1 : -1) == p)
                    out.push_back({{{spect, l, L, 1.0}}});
                // equivalent sets j, k combined into one representative
                const double w = p * (l % 2 == 0 ? 1.0 : -1.0);
                out.push_back({{{j, l, L, 1.0}, {k, l, L, w}}});
            }
        return out;
    }
    // all three identical: equal-weight sum over the sets, l parity fixed by
    // the exchange eigenvalue
    for (int l = 0; l <= 1; ++l)
        for (int L = 0; L <= 1; ++L) {
            if (!allowed(l, L))
                continue;
            if ((l % 2 == 0 ? 1 : -1) != p)
                continue;
            out.push_back({{{0, l, L, 1.0}, {1, l, L, 1.0}, {2, l, L, 1.0}}});
        }
    return out;
}

namespace {

Basis3B make_basis_3b(const PhysParams3B1D& pp, const NumParams3B1D& np) {
    Basis3B bs;
    bs.channels = enumerate_channels_1d(pp, np);
    if (bs.channels.empty())
        throw InvalidBasis("three-body 1D: no channels satisfy the symmetry constraints");
    bs.nmax = np.gem.nmax;
    bs.Nmax = np.gem.Nmax;
    for (double r : geometric_ranges(np.gem.nmax, np.gem.r1, np.gem.rnmax))
        bs.nus.push_back(1.0 / (r * r));
    for (double R : geometric_ranges(np.gem.Nmax, np.gem.R1, np.gem.RNmax))
        bs.lams.push_back(1.0 / (R * R));
    return bs;
}

} // namespace

AssembledSystem assemble_3b1d(const PhysParams3B1D& pp, const NumParams3B1D& np,
                              bool csm) {
    validate(pp, np);
    const double theta = csm ? np.theta_csm : 0.0;
    if (theta != 0.0)
        for (const auto& plist : pp.vints)
            for (const auto& pot : plist)
                if (!pot.complex_capable())
                    throw UnsupportedComplexEvaluation(
                        "CSM requires complex-capable pair potentials");

    const JacobiFrame jf = jacobi_frames(pp.masses);
    const Basis3B bs = make_basis_3b(pp, np);
    const int nch = static_cast<int>(bs.channels.size());
    const int dim = bs.dim();
    std::array<std::pair<double, double>, 3> mus;
    for (int s = 0; s < 3; ++s)
        mus[s] = reduced_masses_3b(pp.masses, s);

    auto member_comps = [&](int idx) {
        const int ch = idx / (bs.nmax * bs.Nmax);
        const int rem = idx % (bs.nmax * bs.Nmax);
        const int n = rem / bs.Nmax, N = rem % bs.Nmax;
        std::vector<Comp> cs;
        for (const auto& cc : bs.channels[ch].components)
            cs.push_back(bs.instantiate(cc, n, N));
        return cs;
    };
    (void)nch;

    // interpolation ranges for potentials without closed-form kernels
    std::map<const void*, AlphaRange> ranges;
    bool need_interp = false;
    for (const auto& plist : pp.vints)
        for (const auto& pot : plist)
            if (!has_closed_kernel(pot)) {
                ranges[pot.id()];
                need_interp = true;
            }
    if (need_interp) {
        for (int i = 0; i < dim; ++i) {
            const auto ca = member_comps(i);
            for (int j = i; j < dim; ++j) {
                const auto cb = member_comps(j);
                for (const auto& a : ca)
                    for (const auto& b : cb) {
                        const PairGeom g = pair_geometry(a, b, jf);
                        for (int pair = 0; pair < 3; ++pair) {
                            if (pp.vints[pair].empty())
                                continue;
                            bool open = false;
                            for (const auto& pot : pp.vints[pair])
                                open = open || !has_closed_kernel(pot);
                            if (!open)
                                continue;
                            const Eigen::RowVector2d w = jf.pair_row(pair, a.set);
                            AlphaRange probe;
                            aligned_potential(
                                g.poly, g.A, g.B, g.C, w(0), w(1),
                                [&](int m, double alpha) -> cplx {
                                    probe.lo = std::min(probe.lo, alpha);
                                    probe.hi = std::max(probe.hi, alpha);
                                    probe.max_power = std::max(probe.max_power, m);
                                    return cplx(0.0);
                                });
                            for (const auto& pot : pp.vints[pair])
                                if (!has_closed_kernel(pot)) {
                                    auto& r = ranges[pot.id()];
                                    r.lo = std::min(r.lo, probe.lo);
                                    r.hi = std::max(r.hi, probe.hi);
                                    r.max_power = std::max(r.max_power, probe.max_power);
                                }
                        }
                    }
            }
        }
    }
    std::map<InterpKey, AlphaInterpolant> interp;
    for (const auto& plist : pp.vints)
        for (const auto& pot : plist) {
            if (has_closed_kernel(pot))
                continue;
            const AlphaRange& r = ranges[pot.id()];
            for (int m = 0; m <= r.max_power; ++m)
                interp.emplace(InterpKey{pot.id(), m},
                               AlphaInterpolant(pot, m, KernelDomain::FullLine,
                                                r.lo / 10.0, r.hi * 10.0,
                                                np.kmax_interpol, theta));
        }

    auto kernel_for = [&](const PotentialModel& pot) {
        return [&, theta](int m, double alpha) -> cplx {
            if (has_closed_kernel(pot))
                return radial_kernel(pot, {m, cplx(alpha), KernelDomain::FullLine, theta});
            return interp.at(InterpKey{pot.id(), m})(alpha);
        };
    };

    AssembledSystem sys;
    sys.kind = theta != 0.0 ? MatrixKind::ComplexSymmetric : MatrixKind::RealSymmetric;
    sys.S = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto ca = member_comps(i);
        for (int j = i; j < dim; ++j) {
            const auto cb = member_comps(j);
            double s = 0.0, t = 0.0;
            cplx v(0.0);
            for (const auto& a : ca)
                for (const auto& b : cb) {
                    const double wab = a.weight * b.weight;
                    s += wab * overlap_el(a, b, jf);
                    t += wab * kinetic_el(a, b, jf, mus[a.set].first, mus[a.set].second);
                    const PairGeom g = pair_geometry(a, b, jf);
                    const double nn = a.norm * b.norm;
                    for (int pair = 0; pair < 3; ++pair) {
                        if (pp.vints[pair].empty())
                            continue;
                        const Eigen::RowVector2d w = jf.pair_row(pair, a.set);
                        for (const auto& pot : pp.vints[pair])
                            v += wab * nn *
                                 aligned_potential(g.poly, g.A, g.B, g.C, w(0), w(1),
                                                   kernel_for(pot));
                    }
                }
            sys.S(i, j) = sys.S(j, i) = s;
            T(i, j) = T(j, i) = t;
            V(i, j) = V(j, i) = v;
        }
    }
    if (sys.kind == MatrixKind::RealSymmetric) {
        sys.H = T + V.real();
    } else {
        const cplx rot = std::polar(1.0, -2.0 * theta * kDeg);
        sys.Hc = rot * T.cast<cplx>() + V;
    }
    return sys;
}

Spectrum solve_3b1d(const PhysParams3B1D& pp, const NumParams3B1D& np, Flags3B flags) {
    const AssembledSystem sys = assemble_3b1d(pp, np, flags.csm);
    return solve_gevp(sys, np.threshold, flags.wf);
}

} // namespace fewbody
