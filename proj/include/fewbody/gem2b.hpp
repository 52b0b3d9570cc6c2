// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "fewbody/basis.hpp"
#include "fewbody/eigensolve.hpp"
#include "fewbody/potentials.hpp"

namespace fewbody {

struct PhysParams2B {
    double mur = 1.0;                  // reduced mass, hbar = 1
    std::vector<PotentialModel> vints; // summed
    int dim = 3;
    int lmin = 0;
    int lmax = 0;
};

struct NumParams2B {
    RangeProgression gem;
    double omega_cr = 0.0;
    double theta_csm = 0.0; // degrees
    double threshold = 1e-10;
};

struct Flags2B {
    bool wf = false;
    bool cr = false;
    bool csm = false;
};

AssembledSystem assemble_2b(const PhysParams2B& pp, const NumParams2B& np, int l,
                            bool cr = false, bool csm = false);

/// Concatenation of per-l spectra; lvals tags each energy with its channel.
struct Spectrum2B {
    bool is_complex = false;
    std::vector<double> energies;
    std::vector<cplx> energies_c;
    std::vector<int> lvals;
    Eigen::MatrixXd vectors;   // nmax x nstates, real path
    Eigen::MatrixXcd vectors_c;
    std::vector<int> kept_dims; // one entry per l channel

    int count() const {
        return static_cast<int>(is_complex ? energies_c.size() : energies.size());
    }
};

Spectrum2B solve_2b(const PhysParams2B& pp, const NumParams2B& np, Flags2B flags = {});

std::vector<double> wavefunction_on_grid(const std::vector<double>& r_grid,
                                         const PhysParams2B& pp, const NumParams2B& np,
                                         const Eigen::VectorXd& coeffs, int l,
                                         bool cr = false);

struct OptimResult {
    double r1 = 0.0;
    double rnmax = 0.0;
    double energy = 0.0;
};

/// Nelder-Mead over (log r1, log rnmax) minimizing the stateindex-th (1-based)
/// eigenvalue at fixed nmax.
OptimResult optimize_ranges(const PhysParams2B& pp, const NumParams2B& np, int stateindex);

/// Scaling factor s such that solving with all potentials multiplied by s puts
/// the stateindex-th eigenvalue at target_E.
double scale_potential_to_energy(const PhysParams2B& pp, const NumParams2B& np,
                                 int stateindex, double target_E);

struct InverseResult {
    double vscale = 1.0;
    NumParams2B np_opt;
    double energy = 0.0;
};

/// Inverse problem with range optimization interleaved: scale, optimize the
/// ranges for the target state, re-scale on the optimized basis.
InverseResult scale_with_optim(const PhysParams2B& pp, const NumParams2B& np,
                               int stateindex, double target_E);

PotentialModel scale_potential(const PotentialModel& p, double s);

struct CoupledChannelSpec {
    int nch = 1;
    std::vector<double> mur; // kinetic reduced mass per channel
    int dim = 3;
    int l = 0;
    // nch x nch potential lists; W symmetric in channel indices, P multiplies d/dr
    std::vector<std::vector<std::vector<PotentialModel>>> W;
    std::vector<std::vector<std::vector<PotentialModel>>> P;
};

Spectrum solve_coupled_channels(const CoupledChannelSpec& cc, const NumParams2B& np,
                                bool want_vectors = false);

struct ResonanceFilter {
    double delta_arg_deg = 5.0;
    double abs_min = 0.0;
    double abs_max = std::numeric_limits<double>::infinity();
};

struct CsmResult {
    Spectrum2B spectrum;
    std::vector<cplx> resonances;
};

/// Rotated spectrum plus the eigenvalues inside the wedge between the real
/// axis and the rotated continuum line at -2*theta (inset by delta_arg).
CsmResult csm_resonances(const PhysParams2B& pp, const NumParams2B& np, double theta_deg,
                         const ResonanceFilter& filter = {});

bool is_in_resonance_wedge(cplx e, double theta_deg, const ResonanceFilter& filter = {});

} // namespace fewbody
