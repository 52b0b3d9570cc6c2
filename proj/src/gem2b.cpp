// SPDX-License-Identifier: Apache-2.0
#include "fewbody/gem2b.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fewbody/gauss_moments.hpp"

namespace fewbody {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void validate(const PhysParams2B& pp, const NumParams2B& np) {
    if (!(pp.mur > 0.0))
        throw ConfigError("two-body: reduced mass must be > 0");
    if (pp.vints.empty())
        throw ConfigError("two-body: need at least one potential");
    if (pp.lmin > pp.lmax || pp.lmin < 0)
        throw ConfigError("two-body: invalid angular momentum window");
    if (pp.dim < 1 || pp.dim > 3)
        throw ConfigError("two-body: dim must be 1, 2 or 3");
    if (pp.dim < 3 && pp.lmax > 1 && pp.dim == 1)
        throw ConfigError("two-body 1D: parity index must be 0 or 1");
    if (!(np.theta_csm >= 0.0 && np.theta_csm < 45.0))
        throw ConfigError("two-body: theta_csm must lie in [0, 45)");
    if (!(np.threshold > 0.0 && np.threshold < 1.0))
        throw ConfigError("two-body: threshold must lie in (0, 1)");
}

// Angular contribution to the centrifugal term.
double angular_lambda(int l, int dim) {
    switch (dim) {
        case 3: return static_cast<double>(l) * (l + 1);
        case 2: return static_cast<double>(l) * l;
        default: return 0.0;
    }
}

cplx overlap_el(const BasisFunction& a, const BasisFunction& b) {
    const int p = a.power + b.power + a.dim - 1;
    cplx s(0.0);
    for (int j = 0; j < a.nterms; ++j)
        for (int k = 0; k < b.nterms; ++k)
            s += a.coef[j] * b.coef[k] * gauss_moment_half(p, a.cnu[j] + b.cnu[k]);
    return a.norm * b.norm * measure_factor(a.dim) * s;
}

cplx kinetic_el(const BasisFunction& a, const BasisFunction& b, double mur) {
    const int l = a.power, d = a.dim;
    const int p = 2 * l + d - 1;
    const double lam = angular_lambda(l, d);
    cplx s(0.0);
    for (int j = 0; j < a.nterms; ++j)
        for (int k = 0; k < b.nterms; ++k) {
            const cplx nn = a.cnu[j] + b.cnu[k];
            cplx term = 4.0 * a.cnu[j] * b.cnu[k] * gauss_moment_half(p + 2, nn);
            if (l > 0)
                term += (l * l + lam) * gauss_moment_half(p - 2, nn) -
                        2.0 * l * nn * gauss_moment_half(p, nn);
            s += a.coef[j] * b.coef[k] * term;
        }
    return a.norm * b.norm * measure_factor(d) * s / (2.0 * mur);
}

cplx potential_el(const BasisFunction& a, const BasisFunction& b,
                  const PotentialModel& v, double theta_deg) {
    cplx s(0.0);
    if (a.dim == 1) {
        const int p = a.power + b.power;
        for (int j = 0; j < a.nterms; ++j)
            for (int k = 0; k < b.nterms; ++k)
                s += a.coef[j] * b.coef[k] *
                     radial_kernel(v, {p, a.cnu[j] + b.cnu[k], KernelDomain::FullLine,
                                       theta_deg});
    } else {
        const int p = a.power + b.power + a.dim - 1;
        for (int j = 0; j < a.nterms; ++j)
            for (int k = 0; k < b.nterms; ++k)
                s += a.coef[j] * b.coef[k] *
                     radial_kernel(v, {p, a.cnu[j] + b.cnu[k], KernelDomain::HalfLine,
                                       theta_deg});
        s *= measure_factor(a.dim);
    }
    return a.norm * b.norm * s;
}

struct Parts2B {
    Eigen::MatrixXd S, T, V; // real path (no CSM)
};

Parts2B assemble_parts(const PhysParams2B& pp, const NumParams2B& np, int l, bool cr) {
    const BasisSet bs = make_basis_2b(np.gem, l, pp.dim, cr, np.omega_cr);
    const int n = bs.size();
    Parts2B parts;
    parts.S.resize(n, n);
    parts.T.resize(n, n);
    parts.V.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const auto& a = bs.functions[i];
            const auto& b = bs.functions[j];
            parts.S(i, j) = parts.S(j, i) = overlap_el(a, b).real();
            parts.T(i, j) = parts.T(j, i) = kinetic_el(a, b, pp.mur).real();
            cplx v(0.0);
            for (const auto& pot : pp.vints)
                v += potential_el(a, b, pot, 0.0);
            parts.V(i, j) = parts.V(j, i) = v.real();
        }
    return parts;
}

} // namespace

AssembledSystem assemble_2b(const PhysParams2B& pp, const NumParams2B& np, int l,
                            bool cr, bool csm) {
    validate(pp, np);
    if (!csm || np.theta_csm == 0.0) {
        const Parts2B parts = assemble_parts(pp, np, l, cr);
        AssembledSystem sys;
        sys.kind = MatrixKind::RealSymmetric;
        sys.S = parts.S;
        sys.H = parts.T + parts.V;
        return sys;
    }
    for (const auto& pot : pp.vints)
        if (!pot.complex_capable())
            throw UnsupportedComplexEvaluation("CSM requires complex-capable potentials");
    const BasisSet bs = make_basis_2b(np.gem, l, pp.dim, cr, np.omega_cr);
    const int n = bs.size();
    const cplx rot = std::polar(1.0, -2.0 * np.theta_csm * kDeg);
    AssembledSystem sys;
    sys.kind = MatrixKind::ComplexSymmetric;
    sys.S.resize(n, n);
    sys.Hc.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const auto& a = bs.functions[i];
            const auto& b = bs.functions[j];
            sys.S(i, j) = sys.S(j, i) = overlap_el(a, b).real();
            cplx h = rot * kinetic_el(a, b, pp.mur);
            for (const auto& pot : pp.vints)
                h += potential_el(a, b, pot, np.theta_csm);
            sys.Hc(i, j) = sys.Hc(j, i) = h;
        }
    return sys;
}

Spectrum2B solve_2b(const PhysParams2B& pp, const NumParams2B& np, Flags2B flags) {
    validate(pp, np);
    Spectrum2B out;
    out.is_complex = flags.csm && np.theta_csm != 0.0;
    const int nb = flags.cr ? 2 * np.gem.nmax : np.gem.nmax;
    std::vector<Eigen::VectorXd> vecs;
    std::vector<Eigen::VectorXcd> vecs_c;
    for (int l = pp.lmin; l <= pp.lmax; ++l) {
        const AssembledSystem sys = assemble_2b(pp, np, l, flags.cr, flags.csm);
        const Spectrum sp = solve_gevp(sys, np.threshold, flags.wf);
        out.kept_dims.push_back(sp.kept_dim);
        if (out.is_complex) {
            for (int k = 0; k < sp.count(); ++k) {
                out.energies_c.push_back(sp.energies_c[k]);
                out.lvals.push_back(l);
                if (flags.wf)
                    vecs_c.push_back(sp.vectors_c.col(k));
            }
        } else {
            for (int k = 0; k < sp.count(); ++k) {
                out.energies.push_back(sp.energies[k]);
                out.lvals.push_back(l);
                if (flags.wf)
                    vecs.push_back(sp.vectors.col(k));
            }
        }
    }
    if (flags.wf) {
        if (out.is_complex) {
            out.vectors_c.resize(nb, vecs_c.size());
            for (size_t k = 0; k < vecs_c.size(); ++k)
                out.vectors_c.col(k) = vecs_c[k];
        } else {
            out.vectors.resize(nb, vecs.size());
            for (size_t k = 0; k < vecs.size(); ++k)
                out.vectors.col(k) = vecs[k];
        }
    }
    return out;
}

std::vector<double> wavefunction_on_grid(const std::vector<double>& r_grid,
                                         const PhysParams2B& pp, const NumParams2B& np,
                                         const Eigen::VectorXd& coeffs, int l, bool cr) {
    const BasisSet bs = make_basis_2b(np.gem, l, pp.dim, cr, np.omega_cr);
    if (coeffs.size() != bs.size())
        throw ShapeMismatch("wavefunction_on_grid: coefficient length mismatch");
    std::vector<double> psi(r_grid.size(), 0.0);
    for (size_t g = 0; g < r_grid.size(); ++g)
        for (int i = 0; i < bs.size(); ++i)
            psi[g] += coeffs(i) * bs.functions[i].value(r_grid[g]);
    return psi;
}

namespace {

// Energy of the stateindex-th (1-based) level over the full l window.
double state_energy(const PhysParams2B& pp, const NumParams2B& np, int stateindex) {
    std::vector<double> all;
    for (int l = pp.lmin; l <= pp.lmax; ++l) {
        const Parts2B parts = assemble_parts(pp, np, l, false);
        AssembledSystem sys;
        sys.S = parts.S;
        sys.H = parts.T + parts.V;
        const Spectrum sp = solve_gevp(sys, np.threshold, false);
        all.insert(all.end(), sp.energies.begin(), sp.energies.end());
    }
    std::sort(all.begin(), all.end());
    if (stateindex < 1 || stateindex > static_cast<int>(all.size()))
        throw InvalidIndex("stateindex exceeds available spectrum");
    return all[stateindex - 1];
}

// 2D Nelder-Mead, tolerance on the spread of function values.
template <typename F>
std::pair<std::array<double, 2>, double> nelder_mead2(F&& f, std::array<double, 2> x0,
                                                      double scale, double ftol, int maxit) {
    std::array<std::array<double, 2>, 3> xs{
        x0, {x0[0] + scale, x0[1]}, {x0[0], x0[1] + scale}};
    std::array<double, 3> fs{f(xs[0]), f(xs[1]), f(xs[2])};
    auto order = [&]() {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (fs[j] < fs[i]) {
                    std::swap(fs[i], fs[j]);
                    std::swap(xs[i], xs[j]);
                }
    };
    order();
    for (int it = 0; it < maxit; ++it) {
        if (std::abs(fs[2] - fs[0]) < ftol)
            break;
        const std::array<double, 2> c{0.5 * (xs[0][0] + xs[1][0]), 0.5 * (xs[0][1] + xs[1][1])};
        auto mix = [&](double t) {
            return std::array<double, 2>{c[0] + t * (c[0] - xs[2][0]),
                                         c[1] + t * (c[1] - xs[2][1])};
        };
        const auto xr = mix(1.0);
        const double fr = f(xr);
        if (fr < fs[0]) {
            const auto xe = mix(2.0);
            const double fe = f(xe);
            if (fe < fr) { xs[2] = xe; fs[2] = fe; }
            else { xs[2] = xr; fs[2] = fr; }
        } else if (fr < fs[1]) {
            xs[2] = xr; fs[2] = fr;
        } else {
            const auto xc = mix(fr < fs[2] ? 0.5 : -0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fs[2])) { xs[2] = xc; fs[2] = fc; }
            else {
                for (int i = 1; i < 3; ++i) {
                    xs[i] = {0.5 * (xs[i][0] + xs[0][0]), 0.5 * (xs[i][1] + xs[0][1])};
                    fs[i] = f(xs[i]);
                }
            }
        }
        order();
    }
    return {xs[0], fs[0]};
}

} // namespace

OptimResult optimize_ranges(const PhysParams2B& pp, const NumParams2B& np, int stateindex) {
    validate(pp, np);
    if (stateindex < 1)
        throw InvalidIndex("stateindex must be >= 1");
    if (stateindex > np.gem.nmax * (pp.lmax - pp.lmin + 1))
        throw InvalidIndex("stateindex exceeds basis size");
    auto objective = [&](std::array<double, 2> x) -> double {
        NumParams2B trial = np;
        trial.gem.r1 = std::exp(x[0]);
        trial.gem.rnmax = std::exp(x[1]);
        if (!(trial.gem.r1 > 0.0 && trial.gem.rnmax > trial.gem.r1))
            return 1e100;
        try {
            return state_energy(pp, trial, stateindex);
        } catch (const Error&) {
            return 1e100; // degenerate basis at this corner of parameter space
        }
    };
    const auto [x, e] = nelder_mead2(objective,
                                     {std::log(np.gem.r1), std::log(np.gem.rnmax)},
                                     std::log(1.2), 1e-10, 200);
    return {std::exp(x[0]), std::exp(x[1]), e};
}

PotentialModel scale_potential(const PotentialModel& p, double s) {
    if (p.is_gaussian()) {
        auto g = p.gaussian();
        g.v0 *= s;
        return PotentialModel(g);
    }
    if (p.is_contact()) {
        auto c = p.contact();
        c.g *= s;
        return PotentialModel(c);
    }
    PotentialModel base = p;
    std::function<double(double)> f = [base, s](double r) { return s * base(r); };
    if (p.complex_capable()) {
        std::function<cplx(cplx)> fc = [base, s](cplx r) { return s * base.eval_complex(r); };
        return PotentialModel(std::move(f), std::move(fc));
    }
    return PotentialModel(std::move(f));
}

double scale_potential_to_energy(const PhysParams2B& pp, const NumParams2B& np,
                                 int stateindex, double target_E) {
    validate(pp, np);
    if (!(target_E < 0.0))
        throw ConfigError("inverse problem: target energy must be negative");
    // H(s) = T + s V assembled once; E(s) is monotone in the attraction strength.
    std::vector<Parts2B> parts;
    for (int l = pp.lmin; l <= pp.lmax; ++l)
        parts.push_back(assemble_parts(pp, np, l, false));
    auto energy_at = [&](double s) -> double {
        std::vector<double> all;
        for (const auto& pt : parts) {
            AssembledSystem sys;
            sys.S = pt.S;
            sys.H = pt.T + s * pt.V;
            const Spectrum sp = solve_gevp(sys, np.threshold, false);
            all.insert(all.end(), sp.energies.begin(), sp.energies.end());
        }
        std::sort(all.begin(), all.end());
        if (stateindex < 1 || stateindex > static_cast<int>(all.size()))
            throw InvalidIndex("stateindex exceeds available spectrum");
        return all[stateindex - 1];
    };
    auto g = [&](double s) { return energy_at(s) - target_E; };
    // bracket on a log grid
    double slo = 0.0, shi = 0.0, glo = 0.0, ghi = 0.0;
    double sprev = 1e-3, gprev = g(sprev);
    bool found = false;
    for (int k = 1; k <= 120 && !found; ++k) {
        const double s = 1e-3 * std::pow(1e6, k / 120.0);
        const double gs = g(s);
        if (gprev == 0.0 || gprev * gs <= 0.0) {
            slo = sprev; shi = s; glo = gprev; ghi = gs;
            found = true;
        }
        sprev = s;
        gprev = gs;
    }
    if (!found)
        throw NoSolution("no potential scaling in [1e-3, 1e3] reaches the target energy");
    const double tol = 1e-9 * std::abs(target_E);
    for (int it = 0; it < 300; ++it) {
        // secant step, guarded by bisection
        double s = (ghi != glo) ? shi - ghi * (shi - slo) / (ghi - glo) : 0.5 * (slo + shi);
        if (!(s > slo && s < shi))
            s = 0.5 * (slo + shi);
        const double gs = g(s);
        if (std::abs(gs) <= tol || shi - slo < 1e-16 * std::abs(s))
            return s;
        if (glo * gs <= 0.0) { shi = s; ghi = gs; }
        else { slo = s; glo = gs; }
    }
    return 0.5 * (slo + shi);
}

InverseResult scale_with_optim(const PhysParams2B& pp, const NumParams2B& np,
                               int stateindex, double target_E) {
    double s = scale_potential_to_energy(pp, np, stateindex, target_E);
    PhysParams2B scaled = pp;
    for (auto& v : scaled.vints)
        v = scale_potential(v, s);
    const OptimResult opt = optimize_ranges(scaled, np, stateindex);
    NumParams2B np_opt = np;
    np_opt.gem.r1 = opt.r1;
    np_opt.gem.rnmax = opt.rnmax;
    const double s2 = scale_potential_to_energy(pp, np_opt, stateindex, target_E);
    InverseResult out;
    out.vscale = s2;
    out.np_opt = np_opt;
    PhysParams2B final_pp = pp;
    for (auto& v : final_pp.vints)
        v = scale_potential(v, s2);
    out.energy = state_energy(final_pp, np_opt, stateindex);
    return out;
}

namespace {

// <a| P(r) d/dr |b> for the coupled-channel derivative term.
double derivative_el(const BasisFunction& a, const BasisFunction& b,
                     const PotentialModel& pot) {
    const int l = b.power, d = a.dim;
    const KernelDomain dom = (d == 1) ? KernelDomain::FullLine : KernelDomain::HalfLine;
    const int p = (d == 1) ? a.power + b.power : a.power + b.power + d - 1;
    cplx s(0.0);
    for (int j = 0; j < a.nterms; ++j)
        for (int k = 0; k < b.nterms; ++k) {
            cplx term = -2.0 * b.cnu[k] * radial_kernel(pot, {p + 1, a.cnu[j] + b.cnu[k], dom});
            if (l > 0)
                term += static_cast<double>(l) *
                        radial_kernel(pot, {p - 1, a.cnu[j] + b.cnu[k], dom});
            s += a.coef[j] * b.coef[k] * term;
        }
    const double omega = (d == 1) ? 1.0 : measure_factor(d);
    return (a.norm * b.norm * omega * s).real();
}

} // namespace

Spectrum solve_coupled_channels(const CoupledChannelSpec& cc, const NumParams2B& np,
                                bool want_vectors) {
    if (cc.nch < 1 || static_cast<int>(cc.mur.size()) != cc.nch)
        throw ConfigError("coupled channels: need one reduced mass per channel");
    if (static_cast<int>(cc.W.size()) != cc.nch)
        throw ConfigError("coupled channels: W must be nch x nch");
    const BasisSet bs = make_basis_2b(np.gem, cc.l, cc.dim);
    const int nb = bs.size();
    const int n = nb * cc.nch;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int ci = 0; ci < cc.nch; ++ci)
        for (int cj = 0; cj < cc.nch; ++cj)
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < nb; ++j) {
                    const auto& a = bs.functions[i];
                    const auto& b = bs.functions[j];
                    double h = 0.0;
                    if (ci == cj) {
                        S(ci * nb + i, cj * nb + j) = overlap_el(a, b).real();
                        h += kinetic_el(a, b, cc.mur[ci]).real();
                    }
                    for (const auto& pot : cc.W[ci][cj])
                        h += potential_el(a, b, pot, 0.0).real();
                    if (!cc.P.empty())
                        for (const auto& pot : cc.P[ci][cj])
                            h += derivative_el(a, b, pot);
                    H(ci * nb + i, cj * nb + j) = h;
                }
    // two-step solve without symmetrizing: derivative terms may leave H
    // non-symmetric in the truncated basis
    const OverlapTruncation t = truncate_overlap(S, np.threshold);
    Eigen::MatrixXcd Ht = (t.transform.transpose() * H * t.transform).cast<cplx>();
    Eigen::VectorXcd ev;
    Eigen::MatrixXcd V;
    gen_eig(Ht, ev, want_vectors ? &V : nullptr);
    std::vector<int> idx(ev.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int x, int y) {
        return ev(x).real() < ev(y).real();
    });
    Spectrum out;
    out.kind = MatrixKind::ComplexSymmetric;
    out.kept_dim = t.kept_dim;
    for (int i : idx)
        out.energies_c.push_back(ev(i));
    if (want_vectors) {
        out.vectors_c.resize(n, ev.size());
        for (int k = 0; k < static_cast<int>(idx.size()); ++k)
            out.vectors_c.col(k) = t.transform.cast<cplx>() * V.col(idx[k]);
    }
    return out;
}

bool is_in_resonance_wedge(cplx e, double theta_deg, const ResonanceFilter& filter) {
    if (e.imag() >= 0.0)
        return false;
    const double arg = std::arg(e);
    const double lo = -2.0 * theta_deg * kDeg + filter.delta_arg_deg * kDeg;
    const double hi = -filter.delta_arg_deg * kDeg;
    const double mag = std::abs(e);
    return arg > lo && arg < hi && mag >= filter.abs_min && mag <= filter.abs_max;
}

CsmResult csm_resonances(const PhysParams2B& pp, const NumParams2B& np, double theta_deg,
                         const ResonanceFilter& filter) {
    NumParams2B np2 = np;
    np2.theta_csm = theta_deg;
    CsmResult out;
    out.spectrum = solve_2b(pp, np2, {.wf = false, .cr = false, .csm = true});
    for (const cplx& e : out.spectrum.energies_c)
        if (is_in_resonance_wedge(e, theta_deg, filter))
            out.resonances.push_back(e);
    return out;
}

} // namespace fewbody
