// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "fewbody/eigensolve.hpp"
#include "fewbody/gem3b1d.hpp"
#include "fewbody/potentials.hpp"

namespace fewbody {

/// Three-body system in 3D with central pair potentials, restricted to s-wave
/// (l = L = 0) channels on every Jacobi set. Pair interactions are indexed by
/// the spectator particle as in the 1D solver; only central (radial)
/// potentials are accepted.
struct PhysParams3B3D {
    std::array<double, 3> masses{1.0, 1.0, 1.0};
    std::array<std::string, 3> svals{"x", "y", "z"};
    std::array<std::vector<PotentialModel>, 3> vints;
};

struct NumParams3B3D {
    GemParams3B gem;
    double theta_csm = 0.0; // degrees
    double threshold = 1e-10;
    int kmax_interpol = 1000;
};

/// Mean-value request evaluated after the solve. State indices are 1-based;
/// centobs[i] holds radial observables O(r_i) evaluated on the pair
/// coordinate of Jacobi set i; R2_flags[i] requests the mean square distance
/// of particle i from the center of mass of the other two.
struct ObservRequest {
    std::vector<int> stateindices;
    std::array<std::vector<PotentialModel>, 3> centobs;
    std::array<bool, 3> R2_flags{false, false, false};
};

/// Observable means, indexed [state][set][observable]; R2 entries are NaN
/// for sets whose flag was off.
struct ObservReport {
    std::vector<std::array<std::vector<double>, 3>> centobs;
    std::vector<std::array<double, 3>> R2;
};

/// s-wave channel list: one channel per Jacobi set, with identical-particle
/// sets merged into weighted representatives (all l = L = 0).
std::vector<Channel1D> enumerate_channels_3d(const PhysParams3B3D& pp);

AssembledSystem assemble_3b3d(const PhysParams3B3D& pp, const NumParams3B3D& np,
                              bool csm = false);

struct Result3B3D {
    Spectrum spectrum;
    ObservReport observ;
};

Result3B3D solve_3b3d(const PhysParams3B3D& pp, const NumParams3B3D& np,
                      Flags3B flags = {}, const ObservRequest* observ = nullptr);

/// <R_set^2> for a coefficient vector over the assembled basis, normalized by
/// the overlap quadratic form. set_index is 0-based.
double mean_R2(const Eigen::VectorXd& coeffs, int set_index,
               const PhysParams3B3D& pp, const NumParams3B3D& np);

} // namespace fewbody
