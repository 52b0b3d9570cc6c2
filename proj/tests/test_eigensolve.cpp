#include <random>

#include "doctest.h"
#include "fewbody/eigensolve.hpp"

using namespace fewbody;

namespace {

Eigen::MatrixXd random_spd(int n, std::mt19937& rng, double jitter = 1.0) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = g(rng);
    return A * A.transpose() + jitter * Eigen::MatrixXd::Identity(n, n);
}

Eigen::MatrixXd random_sym(int n, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = g(rng);
    return 0.5 * (A + A.transpose());
}

} // namespace

TEST_CASE("truncate_overlap on identity keeps everything") {
    const auto t = truncate_overlap(Eigen::MatrixXd::Identity(3, 3), 1e-10);
    CHECK(t.kept_dim == 3);
    CHECK((t.transform.transpose() * t.transform - Eigen::MatrixXd::Identity(3, 3))
              .cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncate_overlap drops a near-duplicate pair") {
    Eigen::MatrixXd S(2, 2);
    S << 1.0, 1.0 - 1e-14, 1.0 - 1e-14, 1.0;
    const auto t = truncate_overlap(S, 1e-10);
    CHECK(t.kept_dim == 1);
}

TEST_CASE("truncate_overlap orthonormalizes random SPD overlaps") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd S = random_spd(5, rng, 0.1);
        const auto t = truncate_overlap(S, 1e-12);
        const Eigen::MatrixXd I = t.transform.transpose() * S * t.transform;
        CHECK((I - Eigen::MatrixXd::Identity(t.kept_dim, t.kept_dim)).cwiseAbs().maxCoeff()
              < 1e-10);
    }
}

TEST_CASE("truncation monotonicity in the threshold") {
    std::mt19937 rng(11);
    Eigen::MatrixXd S = random_spd(8, rng, 1e-9);
    int prev = 9;
    for (double thr : {1e-14, 1e-10, 1e-6, 1e-2, 0.5}) {
        int kept = 0;
        try {
            kept = truncate_overlap(S, thr).kept_dim;
        } catch (const DegenerateBasis&) {
            kept = 0;
        }
        CHECK(kept <= prev);
        prev = kept;
    }
}

TEST_CASE("solve_gevp trivial examples") {
    AssembledSystem sys;
    sys.S = Eigen::MatrixXd::Identity(2, 2);
    sys.H.resize(2, 2);
    sys.H << 1, 0, 0, 2;
    auto sp = solve_gevp(sys, 1e-10, false);
    REQUIRE(sp.count() == 2);
    CHECK(sp.energies[0] == doctest::Approx(1.0));
    CHECK(sp.energies[1] == doctest::Approx(2.0));

    sys.H << 0, 1, 1, 0;
    sp = solve_gevp(sys, 1e-10, false);
    CHECK(sp.energies[0] == doctest::Approx(-1.0));
    CHECK(sp.energies[1] == doctest::Approx(1.0));
}

TEST_CASE("solve_gevp matches a direct dense solve") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        AssembledSystem sys;
        sys.H = random_sym(4, rng);
        sys.S = random_spd(4, rng);
        const auto sp = solve_gevp(sys, 1e-13, true);
        // independent oracle: eigenvalues of S^{-1} H
        Eigen::EigenSolver<Eigen::MatrixXd> es(sys.S.inverse() * sys.H);
        std::vector<double> ref;
        for (int i = 0; i < 4; ++i)
            ref.push_back(es.eigenvalues()(i).real());
        std::sort(ref.begin(), ref.end());
        REQUIRE(sp.count() == 4);
        for (int i = 0; i < 4; ++i)
            CHECK(sp.energies[i] == doctest::Approx(ref[i]).epsilon(1e-10));
        // residual + S-normalization contract
        for (int i = 0; i < 4; ++i) {
            const Eigen::VectorXd c = sp.vectors.col(i);
            const double resid = (sys.H * c - sp.energies[i] * sys.S * c).norm();
            CHECK(resid <= 1e-8 * (sys.H * c).norm() + 1e-12);
            CHECK(c.dot(sys.S * c) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("Cauchy interlacing under basis growth") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 5);
        Eigen::MatrixXd H = random_sym(n + 1, rng);
        Eigen::MatrixXd S = random_spd(n + 1, rng);
        AssembledSystem small, big;
        small.H = H.topLeftCorner(n, n);
        small.S = S.topLeftCorner(n, n);
        big.H = H;
        big.S = S;
        const auto sps = solve_gevp(small, 1e-14, false);
        const auto spb = solve_gevp(big, 1e-14, false);
        for (int k = 0; k < sps.count(); ++k)
            CHECK(spb.energies[k] <= sps.energies[k] + 1e-10);
    }
}

TEST_CASE("complex-symmetric solve of a purely real system is real") {
    std::mt19937 rng(31);
    AssembledSystem sys;
    Eigen::MatrixXd H = random_sym(5, rng);
    sys.kind = MatrixKind::ComplexSymmetric;
    sys.Hc = H.cast<cplx>();
    sys.S = random_spd(5, rng);
    const auto sp = solve_gevp(sys, 1e-13, true);

    AssembledSystem rsys;
    rsys.H = H;
    rsys.S = sys.S;
    const auto rsp = solve_gevp(rsys, 1e-13, false);
    REQUIRE(sp.count() == rsp.count());
    for (int i = 0; i < sp.count(); ++i) {
        CHECK(std::abs(sp.energies_c[i].imag()) <=
              1e-10 * std::max(1.0, std::abs(sp.energies_c[i].real())));
        CHECK(sp.energies_c[i].real() == doctest::Approx(rsp.energies[i]).epsilon(1e-10));
    }
}

TEST_CASE("degenerate overlap and non-finite input raise") {
    AssembledSystem sys;
    sys.S = Eigen::MatrixXd::Zero(2, 2);
    sys.H = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(solve_gevp(sys, 1e-10, false), DegenerateBasis);

    sys.S = Eigen::MatrixXd::Identity(2, 2);
    sys.H(0, 1) = sys.H(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_gevp(sys, 1e-10, false), NumericalFailure);
}
