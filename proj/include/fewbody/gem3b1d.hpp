// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "fewbody/basis.hpp"
#include "fewbody/eigensolve.hpp"
#include "fewbody/potentials.hpp"

namespace fewbody {

/// Pair interactions are indexed by the spectator particle: vints[0] acts on
/// pair (2,3), vints[1] on (3,1), vints[2] on (1,2). Equal svals entries mark
/// identical particles; the shared label must be "b" (bosons) or "f"
/// (fermions). parity 0 disables the parity filter.
struct PhysParams3B1D {
    std::array<double, 3> masses{1.0, 1.0, 1.0};
    std::array<std::string, 3> svals{"x", "y", "z"};
    std::array<std::vector<PotentialModel>, 3> vints;
    int parity = 1;
};

struct GemParams3B {
    int nmax = 0;
    double r1 = 0.0, rnmax = 0.0;
    int Nmax = 0;
    double R1 = 0.0, RNmax = 0.0;
};

struct NumParams3B1D {
    GemParams3B gem;
    int lmin = 0, lmax = 0; // parity waves on r, values in {0,1}
    int Lmin = 0, Lmax = 0; // parity waves on R
    double theta_csm = 0.0; // degrees
    double threshold = 1e-10;
    int kmax_interpol = 1000;
};

/// Linear maps between the three Jacobi sets: (r_to, R_to) = map[to][from] *
/// (r_from, R_from). Derived from the particle-coordinate definitions in the
/// center-of-mass frame.
struct JacobiFrame {
    std::array<std::array<Eigen::Matrix2d, 3>, 3> map;

    /// Row expressing the pair coordinate r_pair in the coordinates of
    /// `set`: r_pair = w(0) * r_set + w(1) * R_set.
    Eigen::RowVector2d pair_row(int pair, int set) const {
        return map[pair][set].row(0);
    }
};

JacobiFrame jacobi_frames(const std::array<double, 3>& masses);

/// Reduced mass of the pair (mu_r) and of the spectator against the pair
/// (mu_R) for the given Jacobi set.
std::pair<double, double> reduced_masses_3b(const std::array<double, 3>& masses, int set);

struct ChannelComponent {
    int set = 0; // Jacobi set index, 0-based
    int l = 0, L = 0;
    double weight = 1.0;
};

/// One symmetrized expansion channel; identical-particle sets appear as a
/// single representative carrying multiple weighted components.
struct Channel1D {
    std::vector<ChannelComponent> components;
};

std::vector<Channel1D> enumerate_channels_1d(const PhysParams3B1D& pp,
                                             const NumParams3B1D& np);

struct Flags3B {
    bool wf = false;
    bool csm = false;
};

AssembledSystem assemble_3b1d(const PhysParams3B1D& pp, const NumParams3B1D& np,
                              bool csm = false);

Spectrum solve_3b1d(const PhysParams3B1D& pp, const NumParams3B1D& np,
                    Flags3B flags = {});

} // namespace fewbody
