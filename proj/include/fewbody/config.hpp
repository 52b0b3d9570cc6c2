// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "fewbody/gem2b.hpp"
#include "fewbody/gem3b1d.hpp"
#include "fewbody/isgl3d.hpp"

namespace fewbody {

/// Declarative potential description as it appears in a config document;
/// materialized into a PotentialModel only when a run starts.
struct PotentialSpec {
    std::string type; // gaussian | contact | expr | tabulated
    double v0 = 0.0, mu = 1.0; // gaussian
    double g = 0.0, x0 = 0.0;  // contact
    std::string expr;          // expr
    std::string path;          // tabulated

    bool operator==(const PotentialSpec&) const = default;
    PotentialModel build() const;
};

struct RunFlags {
    bool wf = false, cr = false, csm = false;
    bool optimize = false;
    int optimize_state = 1;
    bool invert = false;
    int invert_state = 1;
    double invert_target = 0.0;

    bool operator==(const RunFlags&) const = default;
};

struct ObservSpec {
    std::vector<int> stateindices;
    std::array<std::vector<std::string>, 3> centobs; // expression texts
    std::array<bool, 3> R2_flags{false, false, false};

    bool operator==(const ObservSpec&) const = default;
};

struct OutputSpec {
    std::string format = "json"; // json | csv
    std::string path;            // empty: caller prints

    bool operator==(const OutputSpec&) const = default;
};

enum class ProblemKind { TwoBody, ThreeBody1D, ThreeBody3D };

struct RunSpec {
    ProblemKind problem = ProblemKind::TwoBody;

    // two-body
    double mur = 1.0;
    int dim = 3, lmin = 0, lmax = 0;
    std::vector<PotentialSpec> pots2b;
    int nmax = 0;
    double r1 = 0.0, rnmax = 0.0;
    double omega_cr = 0.0;

    // three-body (shared fields: masses, svals, pair potentials, R progression)
    std::array<double, 3> masses{1.0, 1.0, 1.0};
    std::array<std::string, 3> svals{"x", "y", "z"};
    std::array<std::vector<PotentialSpec>, 3> pots3b;
    int parity = 1;
    int Nmax = 0;
    double R1 = 0.0, RNmax = 0.0;
    int wlmin = 0, wlmax = 0, wLmin = 0, wLmax = 0; // 1D parity waves

    double theta_csm = 0.0;
    double threshold = 1e-10;
    int kmax_interpol = 1000;

    RunFlags flags;
    bool has_observ = false;
    ObservSpec observ;
    OutputSpec output;

    bool operator==(const RunSpec&) const = default;
};

/// Parse and validate a JSON config document. Throws ConfigError with the
/// offending field path, or ParseError for malformed JSON/expressions.
RunSpec parse_config(const std::string& text);

/// Canonical JSON form; parse_config(canonical_config(s)) == s.
std::string canonical_config(const RunSpec& spec);

struct WfGrid {
    int state = 0; // 1-based
    int l = 0;
    std::vector<double> r, density;
};

struct Report {
    std::string problem;
    bool is_complex = false;
    std::vector<double> energies; // real parts
    std::vector<double> widths;   // -2 Im E, complex case only
    int kept_dim = 0;
    int basis_dim = 0;
    double wall_time_ms = 0.0;

    bool has_optim = false;
    double opt_r1 = 0.0, opt_rnmax = 0.0;
    bool has_invert = false;
    double vscale = 1.0;
    double inverted_energy = 0.0;

    bool has_observ = false;
    std::vector<int> observ_states;
    std::array<std::vector<std::string>, 3> observ_names;
    ObservReport observ;

    std::vector<WfGrid> wfs;
};

Report run(const RunSpec& spec);

std::string report_json(const Report& rep, bool with_walltime = true);
std::string report_csv(const Report& rep);

/// Write the report to path in the requested format; wavefunction grids go to
/// sidecar two-column files "<path>.wf<state>.dat".
void emit_report(const Report& rep, const std::string& format, const std::string& path);

struct BenchRow {
    int nmax = 0;
    int basis_dim = 0;
    double wall_time_ms = 0.0;
    double lowest = 0.0;
};

/// Re-run the spec with nmax (and Nmax for three-body problems) overridden by
/// each entry of nmax_list.
std::vector<BenchRow> run_bench(const RunSpec& spec, const std::vector<int>& nmax_list);

std::string bench_json(const std::vector<BenchRow>& rows);
std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace fewbody
