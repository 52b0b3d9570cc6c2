// SPDX-License-Identifier: Apache-2.0
#include "fewbody/potentials.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fewbody/gauss_moments.hpp"

namespace fewbody {

namespace {
using Variant = std::variant<GaussianPotential, ContactPotential1D,
                             CallablePotential, TabulatedPotential>;

std::shared_ptr<const Variant> wrap(Variant v) {
    return std::make_shared<const Variant>(std::move(v));
}
} // namespace

PotentialModel::PotentialModel() : var_(wrap(GaussianPotential{})) {}

PotentialModel::PotentialModel(GaussianPotential g) : var_(wrap(std::move(g))) {
    if (gaussian().mu_g <= 0.0)
        throw ConfigError("GaussianPotential: mu_g must be > 0");
}
PotentialModel::PotentialModel(ContactPotential1D c) : var_(wrap(std::move(c))) {}
PotentialModel::PotentialModel(CallablePotential c) : var_(wrap(std::move(c))) {}
PotentialModel::PotentialModel(TabulatedPotential t) : var_(wrap(std::move(t))) {}
PotentialModel::PotentialModel(std::function<double(double)> f)
    : var_(wrap(CallablePotential{std::move(f), nullptr})) {}
PotentialModel::PotentialModel(std::function<double(double)> f, std::function<cplx(cplx)> fc)
    : var_(wrap(CallablePotential{std::move(f), std::move(fc)})) {}

double PotentialModel::operator()(double r) const {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GaussianPotential>) {
                return v.v0 * std::exp(-v.mu_g * r * r);
            } else if constexpr (std::is_same_v<T, ContactPotential1D>) {
                return r == v.x0 ? std::numeric_limits<double>::infinity() : 0.0;
            } else if constexpr (std::is_same_v<T, CallablePotential>) {
                return v.f(r);
            } else {
                if (r > v.r.back())
                    return 0.0; // beyond the tabulated support
                if (r < v.r.front())
                    return v.v.front();
                return v.spline(r);
            }
        },
        *var_);
}

cplx PotentialModel::eval_complex(cplx r) const {
    return std::visit(
        [&](const auto& v) -> cplx {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GaussianPotential>) {
                return v.v0 * std::exp(-v.mu_g * r * r);
            } else if constexpr (std::is_same_v<T, CallablePotential>) {
                if (r.imag() == 0.0 && v.f)
                    return v.f(r.real());
                if (!v.fc)
                    throw UnsupportedComplexEvaluation(
                        "callable potential lacks a complex-capable evaluator");
                return v.fc(r);
            } else {
                if (r.imag() == 0.0)
                    return (*this)(r.real());
                throw UnsupportedComplexEvaluation(
                    "potential variant cannot be evaluated at complex argument");
            }
        },
        *var_);
}

bool PotentialModel::complex_capable() const {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GaussianPotential>)
                return true;
            else if constexpr (std::is_same_v<T, CallablePotential>)
                return static_cast<bool>(v.fc);
            else
                return false;
        },
        *var_);
}

bool has_closed_kernel(const PotentialModel& p) {
    return p.is_gaussian() || p.is_contact();
}

PotentialModel load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open tabulated potential file: " + path);
    TabulatedPotential t;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        double r, v;
        if (ss >> r >> v) {
            if (!t.r.empty() && r <= t.r.back())
                throw ConfigError("tabulated potential: r grid must be strictly increasing");
            if (!std::isfinite(r) || !std::isfinite(v))
                throw ConfigError("tabulated potential: non-finite entry");
            t.r.push_back(r);
            t.v.push_back(v);
        }
    }
    if (t.r.size() < 2)
        throw ConfigError("tabulated potential: need at least two points");
    t.spline = CubicSpline<double>(t.r, t.v);
    return PotentialModel(std::move(t));
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

namespace {

struct GLRule {
    std::vector<double> x, w;
    GLRule() { gauss_legendre(64, x, w); }
};

const GLRule& gl64() {
    static const GLRule rule;
    return rule;
}

// Quadrature of f over [0, R] with geometrically shrinking panels toward 0;
// integrands are Gaussian-damped and may have an integrable power singularity
// at the origin. For complex alpha the factor e^{-i Im(alpha) r^2} oscillates,
// so each panel is subdivided to cap the phase swing a single rule must cover.
template <typename F>
cplx panel_quadrature(F&& f, double R, double osc_rate) {
    const GLRule& gl = gl64();
    constexpr int npanels = 26;
    constexpr double max_phase = 8.0 * 2.0 * std::numbers::pi; // per 64-node rule
    cplx total(0.0);
    double hi = R;
    for (int p = 0; p < npanels; ++p) {
        const double lo = (p == npanels - 1) ? 0.0 : hi * 0.5;
        const double phase = osc_rate * (hi * hi - lo * lo);
        const int nsub = 1 + static_cast<int>(phase / max_phase);
        for (int q = 0; q < nsub; ++q) {
            const double a = lo + (hi - lo) * q / nsub;
            const double b = lo + (hi - lo) * (q + 1) / nsub;
            const double c = 0.5 * (b + a), h = 0.5 * (b - a);
            cplx s(0.0);
            for (int k = 0; k < 64; ++k)
                s += gl.w[k] * f(c + h * gl.x[k]);
            total += h * s;
        }
        hi = lo;
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw IntegrationFailure("radial kernel quadrature produced non-finite panel sum");
    return total;
}

cplx quadrature_kernel(const PotentialModel& p, const KernelRequest& req) {
    const double theta = req.csm_theta * std::numbers::pi / 180.0;
    const bool rotated = theta != 0.0;
    if (rotated && !p.complex_capable())
        throw UnsupportedComplexEvaluation("CSM rotation requires a complex-capable potential");
    const double rea = req.alpha.real();
    if (!(rea > 0.0))
        throw IntegrationFailure("radial kernel requires Re(alpha) > 0");
    const double R = std::sqrt(std::log(1e30) / rea);
    const cplx phase = std::polar(1.0, theta);
    auto integrand = [&](double r, double sign) -> cplx {
        const double x = sign * r;
        const cplx v = rotated ? p.eval_complex(phase * x) : cplx((p)(x));
        return std::pow(r, req.l_eff) * std::exp(-req.alpha * r * r) * v *
               (sign < 0.0 && (req.l_eff % 2 != 0) ? -1.0 : 1.0);
    };
    const double osc = std::abs(req.alpha.imag());
    cplx total = panel_quadrature([&](double r) { return integrand(r, +1.0); }, R, osc);
    if (req.domain == KernelDomain::FullLine)
        total += panel_quadrature([&](double r) { return integrand(r, -1.0); }, R, osc);
    return total;
}

} // namespace

cplx radial_kernel(const PotentialModel& p, const KernelRequest& req) {
    const double theta = req.csm_theta * std::numbers::pi / 180.0;
    if (p.is_gaussian()) {
        const auto& g = p.gaussian();
        // V(r e^{i theta}) = v0 exp(-mu e^{2 i theta} r^2)
        const cplx mu = g.mu_g * std::polar(1.0, 2.0 * theta);
        const cplx a = req.alpha + mu;
        return req.domain == KernelDomain::HalfLine
                   ? g.v0 * gauss_moment_half(req.l_eff, a)
                   : g.v0 * gauss_moment_full(req.l_eff, a);
    }
    if (p.is_contact()) {
        if (theta != 0.0)
            throw UnsupportedComplexEvaluation("contact potential does not support CSM");
        const auto& c = p.contact();
        if (req.domain == KernelDomain::HalfLine && c.x0 < 0.0)
            return cplx(0.0);
        return c.g * std::pow(c.x0, req.l_eff) * std::exp(-req.alpha * c.x0 * c.x0);
    }
    return quadrature_kernel(p, req);
}

AlphaInterpolant::AlphaInterpolant(const PotentialModel& p, int l_eff, KernelDomain domain,
                                   double alpha_min, double alpha_max, int kmax_interpol,
                                   double csm_theta) {
    if (!(alpha_min > 0.0 && alpha_min < alpha_max))
        throw ConfigError("AlphaInterpolant: require 0 < alpha_min < alpha_max");
    if (kmax_interpol < 4)
        throw ConfigError("AlphaInterpolant: kmax_interpol must be >= 4");
    amin_ = alpha_min;
    amax_ = alpha_max;
    const double t0 = std::log(alpha_min), t1 = std::log(alpha_max);
    std::vector<double> t(kmax_interpol), re(kmax_interpol), im(kmax_interpol);
    for (int k = 0; k < kmax_interpol; ++k) {
        t[k] = t0 + (t1 - t0) * k / (kmax_interpol - 1);
        const cplx v = radial_kernel(p, {l_eff, cplx(std::exp(t[k])), domain, csm_theta});
        re[k] = v.real();
        im[k] = v.imag();
        if (im[k] != 0.0)
            complex_valued_ = true;
    }
    re_ = CubicSpline<double>(t, re);
    if (complex_valued_)
        im_ = CubicSpline<double>(std::move(t), std::move(im));
}

cplx AlphaInterpolant::operator()(double alpha) const {
    // tiny slack for round-off at the padded interval ends
    if (!(alpha >= amin_ * (1.0 - 1e-12) && alpha <= amax_ * (1.0 + 1e-12)))
        throw OutOfRange("AlphaInterpolant: alpha outside interpolation range");
    const double t = std::log(std::min(std::max(alpha, amin_), amax_));
    return complex_valued_ ? cplx(re_(t), im_(t)) : cplx(re_(t));
}

} // namespace fewbody
