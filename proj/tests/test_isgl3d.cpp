// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fewbody/isgl3d.hpp"

using namespace fewbody;

namespace {

constexpr double kPi = std::numbers::pi;

// \int\int e^{-(a r^2 + b R^2 + c r.R)} d^3r d^3R by radial-angular
// quadrature: the angular integral is 2 sinh(c r R)/(c r R), evaluated in a
// cancellation-free exponential form.
double corr_quad(double a, double b, double c) {
    const double lmin = 0.5 * ((a + b) - std::sqrt((a - b) * (a - b) + c * c));
    REQUIRE(lmin > 0.0);
    const double rmax = std::sqrt(40.0 / lmin);
    std::vector<double> x, w;
    gauss_legendre(200, x, w);
    double total = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double r = 0.5 * rmax * (x[i] + 1.0);
        for (int j = 0; j < 200; ++j) {
            const double R = 0.5 * rmax * (x[j] + 1.0);
            const double q = c * r * R;
            double ang;
            if (std::abs(q) < 1e-8)
                ang = 2.0 * std::exp(-a * r * r - b * R * R);
            else
                ang = (std::exp(-a * r * r - b * R * R + q) -
                       std::exp(-a * r * r - b * R * R - q)) / q;
            total += w[i] * w[j] * r * r * R * R * ang;
        }
    }
    return 8.0 * kPi * kPi * 0.25 * rmax * rmax * total;
}

PotentialModel coulomb(double q) {
    return PotentialModel([q](double r) { return q / r; },
                          [q](cplx r) { return q / r; });
}

PhysParams3B3D psminus() {
    PhysParams3B3D pp;
    pp.masses = {1.0, 1.0, 1.0};
    pp.svals = {"b", "b", "z"};
    pp.vints = {{{coulomb(-1.0)}, {coulomb(-1.0)}, {coulomb(1.0)}}};
    return pp;
}

NumParams3B3D ps_num() {
    NumParams3B3D np;
    np.gem = {10, 0.1, 25.0, 10, 0.1, 25.0};
    return np;
}

PhysParams3B3D benchmark_phys() {
    const auto vg = PotentialModel(GaussianPotential{-10.0, 1.0});
    PhysParams3B3D pp;
    pp.masses = {1.0, 2.0, 3.0};
    pp.vints = {{{vg}, {vg}, {vg}}};
    return pp;
}

} // namespace

TEST_CASE("correlated-Gaussian identity matches quadrature") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uab(0.3, 3.0), uc(-0.8, 0.8);
    for (int t = 0; t < 20; ++t) {
        const double a = uab(rng), b = uab(rng);
        const double c = 2.0 * std::sqrt(a * b) * uc(rng);
        const double exact = kPi * kPi * kPi * std::pow(a * b - 0.25 * c * c, -1.5);
        CHECK(corr_quad(a, b, c) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("zero cross term degenerates to the separable product") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uab(0.2, 4.0);
    for (int t = 0; t < 5; ++t) {
        const double a = uab(rng), b = uab(rng);
        const double ident = kPi * kPi * kPi * std::pow(a * b, -1.5);
        const double sep = std::pow(kPi / a, 1.5) * std::pow(kPi / b, 1.5);
        CHECK(ident == doctest::Approx(sep).epsilon(1e-14));
    }
}

TEST_CASE("channel enumeration (s-wave)") {
    PhysParams3B3D pp = benchmark_phys();
    CHECK(enumerate_channels_3d(pp).size() == 3);

    PhysParams3B3D bos = psminus();
    const auto chb = enumerate_channels_3d(bos);
    REQUIRE(chb.size() == 2);
    CHECK(chb[0].components.size() == 1);
    CHECK(chb[0].components[0].set == 2);
    REQUIRE(chb[1].components.size() == 2);
    CHECK(chb[1].components[1].weight == doctest::Approx(1.0));

    PhysParams3B3D fer = psminus();
    fer.svals = {"f", "f", "z"};
    const auto chf = enumerate_channels_3d(fer);
    REQUIRE(chf.size() == 1);
    REQUIRE(chf[0].components.size() == 2);
    CHECK(chf[0].components[1].weight == doctest::Approx(-1.0));

    PhysParams3B3D all = psminus();
    all.svals = {"b", "b", "b"};
    all.vints = {{{coulomb(-1.0)}, {coulomb(-1.0)}, {coulomb(-1.0)}}};
    const auto cha = enumerate_channels_3d(all);
    REQUIRE(cha.size() == 1);
    CHECK(cha[0].components.size() == 3);

    all.svals = {"f", "f", "f"};
    CHECK(enumerate_channels_3d(all).empty());
}

TEST_CASE("same-set overlap factorizes into radial Gaussian overlaps") {
    PhysParams3B3D pp = benchmark_phys();
    NumParams3B3D np;
    np.gem = {2, 0.7, 2.1, 2, 0.9, 3.0};
    const auto sys = assemble_3b3d(pp, np);
    std::vector<double> nus, lams;
    for (double r : geometric_ranges(2, 0.7, 2.1))
        nus.push_back(1.0 / (r * r));
    for (double R : geometric_ranges(2, 0.9, 3.0))
        lams.push_back(1.0 / (R * R));
    auto o = [](double a, double b) {
        return std::pow(2.0 * std::sqrt(a * b) / (a + b), 1.5);
    };
    CHECK(sys.S(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.S(0, 1) == doctest::Approx(o(lams[0], lams[1])).epsilon(1e-12));
    CHECK(sys.S(0, 2) == doctest::Approx(o(nus[0], nus[1])).epsilon(1e-12));
    CHECK(sys.S(0, 3) ==
          doctest::Approx(o(nus[0], nus[1]) * o(lams[0], lams[1])).epsilon(1e-12));
}

TEST_CASE("cross-set overlap matches radial-angular quadrature") {
    PhysParams3B3D pp = benchmark_phys();
    pp.masses = {1.0, 2.0, 3.3};
    NumParams3B3D np;
    np.gem = {2, 0.8, 1.8, 2, 1.0, 2.2};
    const auto sys = assemble_3b3d(pp, np);
    const JacobiFrame jf = jacobi_frames(pp.masses);
    std::vector<double> nus, lams;
    for (double r : geometric_ranges(2, 0.8, 1.8))
        nus.push_back(1.0 / (r * r));
    for (double R : geometric_ranges(2, 1.0, 2.2))
        lams.push_back(1.0 / (R * R));
    auto norm = [](double nu, double lam) {
        return std::pow(2.0 * nu / kPi, 0.75) * std::pow(2.0 * lam / kPi, 0.75);
    };
    const Eigen::Matrix2d m = jf.map[1][0];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double nu_a = nus[i / 2], lam_a = lams[i % 2];
            const double nu_b = nus[j / 2], lam_b = lams[j % 2];
            const double ak = nu_b * m(0, 0) * m(0, 0) + lam_b * m(1, 0) * m(1, 0);
            const double bk = nu_b * m(0, 1) * m(0, 1) + lam_b * m(1, 1) * m(1, 1);
            const double ck = 2.0 * (nu_b * m(0, 0) * m(0, 1) + lam_b * m(1, 0) * m(1, 1));
            const double ref = norm(nu_a, lam_a) * norm(nu_b, lam_b) *
                               corr_quad(nu_a + ak, lam_a + bk, ck);
            CHECK(sys.S(i, 4 + j) == doctest::Approx(ref).epsilon(1e-6));
        }
}

TEST_CASE("same-set kinetic diagonal is the analytic Gaussian value") {
    PhysParams3B3D pp = benchmark_phys();
    pp.masses = {1.0, 2.0, 3.3};
    pp.vints = {{{PotentialModel(GaussianPotential{0.0, 1.0})}, {}, {}}};
    NumParams3B3D np;
    np.gem = {2, 0.7, 2.1, 2, 0.9, 3.0};
    const auto sys = assemble_3b3d(pp, np);
    const double nu = 1.0 / (0.7 * 0.7), lam = 1.0 / (0.9 * 0.9);
    const auto [mu_r, mu_R] = reduced_masses_3b(pp.masses, 0);
    const double ref = 1.5 * nu / mu_r + 1.5 * lam / mu_R;
    CHECK(sys.H(0, 0) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("interpolated callable agrees with the closed Gaussian form") {
    PhysParams3B3D closed = benchmark_phys();
    PhysParams3B3D open = benchmark_phys();
    const auto vg = PotentialModel([](double r) { return -10.0 * std::exp(-r * r); });
    open.vints = {{{vg}, {vg}, {vg}}};
    NumParams3B3D np;
    np.gem = {6, 0.1, 100.0, 6, 0.1, 100.0};
    np.kmax_interpol = 2000;
    const auto a = solve_3b3d(closed, np);
    const auto b = solve_3b3d(open, np);
    for (int k = 0; k < 4; ++k)
        CHECK(a.spectrum.energies[k] ==
              doctest::Approx(b.spectrum.energies[k]).epsilon(1e-6));
}

TEST_CASE("Ps- ground state and observables") {
    const PhysParams3B3D pp = psminus();
    const NumParams3B3D np = ps_num();
    ObservRequest req;
    req.stateindices = {1};
    const auto rad = PotentialModel([](double r) { return r; });
    const auto invrad = PotentialModel([](double r) { return 1.0 / r; });
    const auto rad2 = PotentialModel([](double r) { return r * r; });
    const auto one = PotentialModel([](double r) { return 1.0 + 0.0 * r; });
    for (int q = 0; q < 3; ++q)
        req.centobs[q] = {rad, invrad, rad2, one};
    req.R2_flags = {true, true, true};

    const auto out = solve_3b3d(pp, np, {}, &req);
    const double e0 = out.spectrum.energies[0];
    CHECK(std::abs(e0 - (-0.262005)) / 0.262005 < 0.002);

    const auto& co = out.observ.centobs[0];
    // sets 0, 1: positron-electron pair; set 2: electron-electron pair
    CHECK(co[0][0] == doctest::Approx(5.499094).epsilon(0.01));
    CHECK(co[0][1] == doctest::Approx(0.339703).epsilon(0.01));
    CHECK(co[0][2] == doctest::Approx(48.633676).epsilon(0.01));
    CHECK(co[2][0] == doctest::Approx(8.542070).epsilon(0.01));
    CHECK(co[2][1] == doctest::Approx(0.155783).epsilon(0.01));
    CHECK(co[2][2] == doctest::Approx(93.050415).epsilon(0.01));
    CHECK(out.observ.R2[0][0] == doctest::Approx(58.6836).epsilon(0.01));
    CHECK(out.observ.R2[0][2] == doctest::Approx(25.3711).epsilon(0.01));

    // exchange symmetry between the two electron sets
    for (int k = 0; k < 3; ++k)
        CHECK(co[0][k] == doctest::Approx(co[1][k]).epsilon(1e-6));
    CHECK(out.observ.R2[0][0] == doctest::Approx(out.observ.R2[0][1]).epsilon(1e-6));

    // normalization and the Coulomb virial ratio <V>/E = 2
    for (int q = 0; q < 3; ++q)
        CHECK(co[q][3] == doctest::Approx(1.0).epsilon(1e-8));
    const double vmean = -co[0][1] - co[1][1] + co[2][1];
    CHECK(vmean / e0 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("benchmark sweep is variational and matches the reference column") {
    const PhysParams3B3D pp = benchmark_phys();
    const double ref[4] = {-11.620, -14.349, -14.435, -14.435};
    const int nn[4] = {6, 10, 20, 30};
    double prev = 0.0;
    for (int t = 0; t < 4; ++t) {
        NumParams3B3D np;
        np.gem = {nn[t], 0.1, 100.0, nn[t], 0.1, 100.0};
        np.kmax_interpol = 2000;
        const auto sp = solve_3b3d(pp, np);
        const double e0 = sp.spectrum.energies[0];
        CHECK(std::abs(e0 - ref[t]) < 0.01);
        if (t > 0)
            CHECK(e0 <= prev + 1e-12);
        prev = e0;
    }
}

TEST_CASE("mean_R2 closed form and consistency with the solver report") {
    PhysParams3B3D pp = benchmark_phys();
    NumParams3B3D np;
    np.gem = {2, 0.7, 2.1, 2, 0.9, 3.0};
    Eigen::VectorXd c = Eigen::VectorXd::Zero(12);
    c(0) = 1.0;
    const double lam = 1.0 / (0.9 * 0.9);
    CHECK(mean_R2(c, 0, pp, np) == doctest::Approx(3.0 / (4.0 * lam)).epsilon(1e-12));

    const PhysParams3B3D ps = psminus();
    const NumParams3B3D psnp = ps_num();
    ObservRequest req;
    req.stateindices = {1};
    req.R2_flags = {false, false, true};
    const auto out = solve_3b3d(ps, psnp, {}, &req);
    const Eigen::VectorXd g = out.spectrum.vectors.col(0);
    CHECK(mean_R2(g, 2, ps, psnp) ==
          doctest::Approx(out.observ.R2[0][2]).epsilon(1e-10));
    CHECK(std::isnan(out.observ.R2[0][0]));
}

TEST_CASE("error paths") {
    PhysParams3B3D pp = benchmark_phys();
    NumParams3B3D np;
    np.gem = {4, 0.5, 5.0, 4, 0.5, 5.0};

    PhysParams3B3D contact = pp;
    contact.vints[0] = {PotentialModel(ContactPotential1D{-1.0, 0.0})};
    CHECK_THROWS_AS(assemble_3b3d(contact, np), NonCentralPotential);

    PhysParams3B3D unequal = psminus();
    unequal.masses = {1.0, 2.0, 1.0};
    CHECK_THROWS_AS(enumerate_channels_3d(unequal), InvalidSymmetry);

    ObservRequest req;
    req.stateindices = {5000};
    CHECK_THROWS_AS(solve_3b3d(pp, np, {}, &req), InvalidIndex);

    Eigen::VectorXd c = Eigen::VectorXd::Ones(7);
    CHECK_THROWS_AS(mean_R2(c, 5, pp, np), InvalidIndex);
    CHECK_THROWS_AS(mean_R2(c, 0, pp, np), ShapeMismatch);

    PhysParams3B3D fer = psminus();
    fer.svals = {"f", "f", "f"};
    fer.vints = {{{coulomb(-1.0)}, {coulomb(-1.0)}, {coulomb(-1.0)}}};
    CHECK_THROWS_AS(assemble_3b3d(fer, np), InvalidBasis);
}

TEST_CASE("complex scaling: theta = 0 identity and bound-state invariance") {
    const PhysParams3B3D pp = benchmark_phys();
    NumParams3B3D np;
    np.gem = {14, 0.1, 60.0, 14, 0.1, 60.0};

    const auto plain = assemble_3b3d(pp, np, false);
    const auto rotated0 = assemble_3b3d(pp, np, true); // theta_csm defaults to 0
    CHECK(plain.kind == rotated0.kind);
    CHECK((plain.H - rotated0.H).cwiseAbs().maxCoeff() == 0.0);

    const auto sp0 = solve_3b3d(pp, np);
    np.theta_csm = 5.0;
    Flags3B flags;
    flags.csm = true;
    const auto spc = solve_3b3d(pp, np, flags);
    REQUIRE(spc.spectrum.kind == MatrixKind::ComplexSymmetric);
    double best = 1e30;
    for (const cplx& e : spc.spectrum.energies_c)
        best = std::min(best, std::abs(e - sp0.spectrum.energies[0]));
    // residual rotation error of the finite real-ranged basis
    CHECK(best < 1e-3);
}
