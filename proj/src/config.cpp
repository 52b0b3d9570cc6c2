// SPDX-License-Identifier: Apache-2.0
#include "fewbody/config.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fewbody/expr.hpp"
#include "json.hpp"

namespace fewbody {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void cfg_fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

const json& req(const json& o, const std::string& key, const std::string& path) {
    if (!o.is_object())
        cfg_fail(path, "expected an object");
    auto it = o.find(key);
    if (it == o.end())
        cfg_fail(path + "." + key, "missing required field");
    return *it;
}

double as_num(const json& v, const std::string& path) {
    if (!v.is_number())
        cfg_fail(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        cfg_fail(path, "expected an integer");
    return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean())
        cfg_fail(path, "expected a boolean");
    return v.get<bool>();
}

std::string as_str(const json& v, const std::string& path) {
    if (!v.is_string())
        cfg_fail(path, "expected a string");
    return v.get<std::string>();
}

double opt_num(const json& o, const std::string& key, double def, const std::string& path) {
    auto it = o.find(key);
    return it == o.end() ? def : as_num(*it, path + "." + key);
}

int opt_int(const json& o, const std::string& key, int def, const std::string& path) {
    auto it = o.find(key);
    return it == o.end() ? def : as_int(*it, path + "." + key);
}

bool opt_bool(const json& o, const std::string& key, bool def, const std::string& path) {
    auto it = o.find(key);
    return it == o.end() ? def : as_bool(*it, path + "." + key);
}

std::string opt_str(const json& o, const std::string& key, const std::string& def,
                    const std::string& path) {
    auto it = o.find(key);
    return it == o.end() ? def : as_str(*it, path + "." + key);
}

PotentialSpec parse_potential(const json& v, const std::string& path) {
    if (!v.is_object())
        cfg_fail(path, "expected a potential object");
    PotentialSpec p;
    p.type = as_str(req(v, "type", path), path + ".type");
    if (p.type == "gaussian") {
        p.v0 = as_num(req(v, "v0", path), path + ".v0");
        p.mu = opt_num(v, "mu", 1.0, path);
        if (!(p.mu > 0.0))
            cfg_fail(path + ".mu", "must be > 0");
    } else if (p.type == "contact") {
        p.g = as_num(req(v, "g", path), path + ".g");
        p.x0 = opt_num(v, "x0", 0.0, path);
    } else if (p.type == "expr") {
        p.expr = as_str(req(v, "expr", path), path + ".expr");
        parse_potential_expr(p.expr); // fail early, with the expression offset
    } else if (p.type == "tabulated") {
        p.path = as_str(req(v, "path", path), path + ".path");
    } else {
        cfg_fail(path + ".type", "unknown potential type '" + p.type + "'");
    }
    return p;
}

std::vector<PotentialSpec> parse_potential_list(const json& v, const std::string& path) {
    if (!v.is_array())
        cfg_fail(path, "expected an array of potentials");
    std::vector<PotentialSpec> out;
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_potential(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

json potential_json(const PotentialSpec& p) {
    json j;
    j["type"] = p.type;
    if (p.type == "gaussian") {
        j["v0"] = p.v0;
        j["mu"] = p.mu;
    } else if (p.type == "contact") {
        j["g"] = p.g;
        j["x0"] = p.x0;
    } else if (p.type == "expr") {
        j["expr"] = p.expr;
    } else {
        j["path"] = p.path;
    }
    return j;
}

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Materialized parameter structs for the three-body problems.
PhysParams3B1D phys_3b1d(const RunSpec& s) {
    PhysParams3B1D pp;
    pp.masses = s.masses;
    pp.svals = s.svals;
    pp.parity = s.parity;
    for (int q = 0; q < 3; ++q)
        for (const auto& p : s.pots3b[q])
            pp.vints[q].push_back(p.build());
    return pp;
}

NumParams3B1D num_3b1d(const RunSpec& s) {
    NumParams3B1D np;
    np.gem = {s.nmax, s.r1, s.rnmax, s.Nmax, s.R1, s.RNmax};
    np.lmin = s.wlmin;
    np.lmax = s.wlmax;
    np.Lmin = s.wLmin;
    np.Lmax = s.wLmax;
    np.theta_csm = s.theta_csm;
    np.threshold = s.threshold;
    np.kmax_interpol = s.kmax_interpol;
    return np;
}

PhysParams3B3D phys_3b3d(const RunSpec& s) {
    PhysParams3B3D pp;
    pp.masses = s.masses;
    pp.svals = s.svals;
    for (int q = 0; q < 3; ++q)
        for (const auto& p : s.pots3b[q])
            pp.vints[q].push_back(p.build());
    return pp;
}

NumParams3B3D num_3b3d(const RunSpec& s) {
    NumParams3B3D np;
    np.gem = {s.nmax, s.r1, s.rnmax, s.Nmax, s.R1, s.RNmax};
    np.theta_csm = s.theta_csm;
    np.threshold = s.threshold;
    np.kmax_interpol = s.kmax_interpol;
    return np;
}

PhysParams2B phys_2b(const RunSpec& s) {
    PhysParams2B pp;
    pp.mur = s.mur;
    pp.dim = s.dim;
    pp.lmin = s.lmin;
    pp.lmax = s.lmax;
    for (const auto& p : s.pots2b)
        pp.vints.push_back(p.build());
    return pp;
}

NumParams2B num_2b(const RunSpec& s) {
    NumParams2B np;
    np.gem = {s.nmax, s.r1, s.rnmax};
    np.omega_cr = s.omega_cr;
    np.theta_csm = s.theta_csm;
    np.threshold = s.threshold;
    return np;
}

// Consistency checks run at parse time, before any solve.
void validate_spec(const RunSpec& s) {
    if (s.nmax < 2)
        cfg_fail("num.nmax", "must be >= 2");
    if (!(s.r1 > 0.0 && s.rnmax > s.r1))
        cfg_fail("num.r1/rnmax", "require 0 < r1 < rnmax");
    if (!(s.threshold > 0.0 && s.threshold < 1.0))
        cfg_fail("num.threshold", "must lie in (0, 1)");
    if (s.output.format != "json" && s.output.format != "csv")
        cfg_fail("output.format", "must be json or csv");
    const bool two = s.problem == ProblemKind::TwoBody;
    if (!two && (s.flags.cr || s.flags.optimize || s.flags.invert))
        cfg_fail("flags", "cr/optimize/invert apply to two_body only");
    if (s.has_observ && s.problem != ProblemKind::ThreeBody3D)
        cfg_fail("observables", "only supported for three_body_3d");
    if (two) {
        if (!(s.mur > 0.0))
            cfg_fail("phys.mur", "must be > 0");
        if (s.dim < 1 || s.dim > 3)
            cfg_fail("phys.dim", "must be 1, 2 or 3");
        if (s.lmin < 0 || s.lmin > s.lmax)
            cfg_fail("phys.lmin/lmax", "require 0 <= lmin <= lmax");
        if (s.pots2b.empty())
            cfg_fail("phys.potentials", "need at least one potential");
        if (s.flags.cr && !(s.omega_cr > 0.0))
            cfg_fail("num.omega_cr", "must be > 0 when flags.cr is set");
        return;
    }
    if (s.Nmax < 2)
        cfg_fail("num.Nmax", "must be >= 2");
    if (!(s.R1 > 0.0 && s.RNmax > s.R1))
        cfg_fail("num.R1/RNmax", "require 0 < R1 < RNmax");
    // delegate symmetry/mass/potential consistency to the solver validators
    if (s.problem == ProblemKind::ThreeBody1D)
        enumerate_channels_1d(phys_3b1d(s), num_3b1d(s));
    else
        enumerate_channels_3d(phys_3b3d(s));
    if (s.has_observ) {
        if (s.observ.stateindices.empty())
            cfg_fail("observables.stateindices", "must not be empty");
        for (int si : s.observ.stateindices)
            if (si < 1)
                cfg_fail("observables.stateindices", "indices are 1-based");
    }
}

} // namespace

PotentialModel PotentialSpec::build() const {
    if (type == "gaussian")
        return PotentialModel(GaussianPotential{v0, mu});
    if (type == "contact")
        return PotentialModel(ContactPotential1D{g, x0});
    if (type == "expr")
        return parse_potential_expr(expr).to_potential();
    if (type == "tabulated")
        return load_tabulated(path);
    throw ConfigError("config: unknown potential type '" + type + "'");
}

RunSpec parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
    if (!j.is_object())
        cfg_fail("", "top level must be an object");

    RunSpec s;
    const std::string prob = as_str(req(j, "problem", ""), "problem");
    if (prob == "two_body")
        s.problem = ProblemKind::TwoBody;
    else if (prob == "three_body_1d")
        s.problem = ProblemKind::ThreeBody1D;
    else if (prob == "three_body_3d")
        s.problem = ProblemKind::ThreeBody3D;
    else
        cfg_fail("problem", "must be two_body, three_body_1d or three_body_3d");

    const json& phys = req(j, "phys", "");
    const json& num = req(j, "num", "");
    s.nmax = as_int(req(num, "nmax", "num"), "num.nmax");
    s.r1 = as_num(req(num, "r1", "num"), "num.r1");
    s.rnmax = as_num(req(num, "rnmax", "num"), "num.rnmax");
    s.theta_csm = opt_num(num, "theta_csm", 0.0, "num");
    s.threshold = opt_num(num, "threshold", 1e-10, "num");
    s.kmax_interpol = opt_int(num, "kmax_interpol", 1000, "num");

    if (s.problem == ProblemKind::TwoBody) {
        s.mur = opt_num(phys, "mur", 1.0, "phys");
        s.dim = opt_int(phys, "dim", 3, "phys");
        const int l = opt_int(phys, "l", 0, "phys");
        s.lmin = opt_int(phys, "lmin", l, "phys");
        s.lmax = opt_int(phys, "lmax", l, "phys");
        s.pots2b = parse_potential_list(req(phys, "potentials", "phys"), "phys.potentials");
        s.omega_cr = opt_num(num, "omega_cr", 0.0, "num");
    } else {
        const json& m = req(phys, "masses", "phys");
        if (!m.is_array() || m.size() != 3)
            cfg_fail("phys.masses", "expected an array of three numbers");
        for (int i = 0; i < 3; ++i)
            s.masses[i] = as_num(m[i], "phys.masses[" + std::to_string(i) + "]");
        auto it = phys.find("svals");
        if (it != phys.end()) {
            if (!it->is_array() || it->size() != 3)
                cfg_fail("phys.svals", "expected an array of three strings");
            for (int i = 0; i < 3; ++i)
                s.svals[i] = as_str((*it)[i], "phys.svals[" + std::to_string(i) + "]");
        }
        const json& pots = req(phys, "potentials", "phys");
        if (!pots.is_array() || pots.size() != 3)
            cfg_fail("phys.potentials", "expected three per-pair potential arrays");
        for (int q = 0; q < 3; ++q)
            s.pots3b[q] = parse_potential_list(pots[q],
                                               "phys.potentials[" + std::to_string(q) + "]");
        s.Nmax = as_int(req(num, "Nmax", "num"), "num.Nmax");
        s.R1 = as_num(req(num, "R1", "num"), "num.R1");
        s.RNmax = as_num(req(num, "RNmax", "num"), "num.RNmax");
        if (s.problem == ProblemKind::ThreeBody1D) {
            s.parity = opt_int(phys, "parity", 1, "phys");
            s.wlmin = opt_int(num, "lmin", 0, "num");
            s.wlmax = opt_int(num, "lmax", 0, "num");
            s.wLmin = opt_int(num, "Lmin", 0, "num");
            s.wLmax = opt_int(num, "Lmax", 0, "num");
        }
    }

    if (auto it = j.find("flags"); it != j.end()) {
        const json& f = *it;
        s.flags.wf = opt_bool(f, "wf", false, "flags");
        s.flags.cr = opt_bool(f, "cr", false, "flags");
        s.flags.csm = opt_bool(f, "csm", false, "flags");
        if (auto o = f.find("optimize"); o != f.end()) {
            s.flags.optimize = true;
            s.flags.optimize_state = as_int(req(*o, "stateindex", "flags.optimize"),
                                            "flags.optimize.stateindex");
        }
        if (auto o = f.find("invert"); o != f.end()) {
            s.flags.invert = true;
            s.flags.invert_state = as_int(req(*o, "stateindex", "flags.invert"),
                                          "flags.invert.stateindex");
            s.flags.invert_target = as_num(req(*o, "target_E", "flags.invert"),
                                           "flags.invert.target_E");
        }
    }

    if (auto it = j.find("observables"); it != j.end()) {
        s.has_observ = true;
        const json& o = *it;
        const json& si = req(o, "stateindices", "observables");
        if (!si.is_array())
            cfg_fail("observables.stateindices", "expected an array of integers");
        for (size_t i = 0; i < si.size(); ++i)
            s.observ.stateindices.push_back(
                as_int(si[i], "observables.stateindices[" + std::to_string(i) + "]"));
        if (auto c = o.find("centobs"); c != o.end()) {
            if (!c->is_array() || c->size() != 3)
                cfg_fail("observables.centobs", "expected three per-set arrays");
            for (int q = 0; q < 3; ++q) {
                const json& lst = (*c)[q];
                if (!lst.is_array())
                    cfg_fail("observables.centobs[" + std::to_string(q) + "]",
                             "expected an array of expressions");
                for (size_t i = 0; i < lst.size(); ++i) {
                    const std::string path = "observables.centobs[" + std::to_string(q) +
                                             "][" + std::to_string(i) + "]";
                    const std::string ex = as_str(lst[i], path);
                    parse_potential_expr(ex);
                    s.observ.centobs[q].push_back(ex);
                }
            }
        }
        if (auto r = o.find("R2"); r != o.end()) {
            if (!r->is_array() || r->size() != 3)
                cfg_fail("observables.R2", "expected an array of three booleans");
            for (int q = 0; q < 3; ++q)
                s.observ.R2_flags[q] =
                    as_bool((*r)[q], "observables.R2[" + std::to_string(q) + "]");
        }
    }

    if (auto it = j.find("output"); it != j.end()) {
        s.output.format = opt_str(*it, "format", "json", "output");
        s.output.path = opt_str(*it, "path", "", "output");
    }

    validate_spec(s);
    return s;
}

std::string canonical_config(const RunSpec& s) {
    json j;
    j["problem"] = s.problem == ProblemKind::TwoBody      ? "two_body"
                   : s.problem == ProblemKind::ThreeBody1D ? "three_body_1d"
                                                           : "three_body_3d";
    json phys, num;
    num["nmax"] = s.nmax;
    num["r1"] = s.r1;
    num["rnmax"] = s.rnmax;
    if (s.problem == ProblemKind::TwoBody) {
        phys["mur"] = s.mur;
        phys["dim"] = s.dim;
        phys["lmin"] = s.lmin;
        phys["lmax"] = s.lmax;
        json pots = json::array();
        for (const auto& p : s.pots2b)
            pots.push_back(potential_json(p));
        phys["potentials"] = pots;
        num["omega_cr"] = s.omega_cr;
    } else {
        phys["masses"] = s.masses;
        phys["svals"] = s.svals;
        if (s.problem == ProblemKind::ThreeBody1D)
            phys["parity"] = s.parity;
        json pots = json::array();
        for (int q = 0; q < 3; ++q) {
            json lst = json::array();
            for (const auto& p : s.pots3b[q])
                lst.push_back(potential_json(p));
            pots.push_back(lst);
        }
        phys["potentials"] = pots;
        num["Nmax"] = s.Nmax;
        num["R1"] = s.R1;
        num["RNmax"] = s.RNmax;
        if (s.problem == ProblemKind::ThreeBody1D) {
            num["lmin"] = s.wlmin;
            num["lmax"] = s.wlmax;
            num["Lmin"] = s.wLmin;
            num["Lmax"] = s.wLmax;
        }
    }
    num["theta_csm"] = s.theta_csm;
    num["threshold"] = s.threshold;
    num["kmax_interpol"] = s.kmax_interpol;
    j["phys"] = phys;
    j["num"] = num;

    json flags;
    flags["wf"] = s.flags.wf;
    flags["cr"] = s.flags.cr;
    flags["csm"] = s.flags.csm;
    if (s.flags.optimize)
        flags["optimize"] = {{"stateindex", s.flags.optimize_state}};
    if (s.flags.invert)
        flags["invert"] = {{"stateindex", s.flags.invert_state},
                           {"target_E", s.flags.invert_target}};
    j["flags"] = flags;

    if (s.has_observ) {
        json o;
        o["stateindices"] = s.observ.stateindices;
        o["centobs"] = s.observ.centobs;
        json r2 = json::array();
        for (bool b : s.observ.R2_flags)
            r2.push_back(b);
        o["R2"] = r2;
        j["observables"] = o;
    }
    j["output"] = {{"format", s.output.format}, {"path", s.output.path}};
    return j.dump(2);
}

Report run(const RunSpec& s) {
    Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    if (s.problem == ProblemKind::TwoBody) {
        rep.problem = "two_body";
        PhysParams2B pp = phys_2b(s);
        NumParams2B np = num_2b(s);
        if (s.flags.optimize) {
            const OptimResult o = optimize_ranges(pp, np, s.flags.optimize_state);
            np.gem.r1 = o.r1;
            np.gem.rnmax = o.rnmax;
            rep.has_optim = true;
            rep.opt_r1 = o.r1;
            rep.opt_rnmax = o.rnmax;
        }
        if (s.flags.invert) {
            const InverseResult ir =
                scale_with_optim(pp, np, s.flags.invert_state, s.flags.invert_target);
            np = ir.np_opt;
            for (auto& v : pp.vints)
                v = scale_potential(v, ir.vscale);
            rep.has_invert = true;
            rep.vscale = ir.vscale;
            rep.inverted_energy = ir.energy;
            rep.has_optim = true;
            rep.opt_r1 = np.gem.r1;
            rep.opt_rnmax = np.gem.rnmax;
        }
        Flags2B f;
        f.wf = s.flags.wf;
        f.cr = s.flags.cr;
        f.csm = s.flags.csm;
        const Spectrum2B sp = solve_2b(pp, np, f);
        rep.is_complex = sp.is_complex;
        if (sp.is_complex)
            for (const cplx& e : sp.energies_c) {
                rep.energies.push_back(e.real());
                rep.widths.push_back(-2.0 * e.imag());
            }
        else
            rep.energies = sp.energies;
        for (int k : sp.kept_dims)
            rep.kept_dim += k;
        rep.basis_dim = (pp.lmax - pp.lmin + 1) * (f.cr ? 2 * s.nmax : s.nmax);
        if (f.wf && !sp.is_complex) {
            const int npts = 1200;
            const double h = 2.0 * np.gem.rnmax / npts;
            std::vector<double> grid(npts);
            for (int i = 0; i < npts; ++i)
                grid[i] = (i + 0.5) * h;
            for (int k = 0; k < sp.count(); ++k) {
                WfGrid g;
                g.state = k + 1;
                g.l = sp.lvals[k];
                g.r = grid;
                const auto psi =
                    wavefunction_on_grid(grid, pp, np, sp.vectors.col(k), g.l, f.cr);
                g.density.resize(npts);
                for (int i = 0; i < npts; ++i)
                    g.density[i] = measure_factor(pp.dim) *
                                   std::pow(grid[i], pp.dim - 1) * psi[i] * psi[i];
                rep.wfs.push_back(std::move(g));
            }
        }
    } else if (s.problem == ProblemKind::ThreeBody1D) {
        rep.problem = "three_body_1d";
        const PhysParams3B1D pp = phys_3b1d(s);
        const NumParams3B1D np = num_3b1d(s);
        Flags3B f;
        f.wf = s.flags.wf;
        f.csm = s.flags.csm;
        const Spectrum sp = solve_3b1d(pp, np, f);
        rep.is_complex = sp.kind == MatrixKind::ComplexSymmetric;
        if (rep.is_complex)
            for (const cplx& e : sp.energies_c) {
                rep.energies.push_back(e.real());
                rep.widths.push_back(-2.0 * e.imag());
            }
        else
            rep.energies = sp.energies;
        rep.kept_dim = sp.kept_dim;
        rep.basis_dim = static_cast<int>(enumerate_channels_1d(pp, np).size()) *
                        s.nmax * s.Nmax;
    } else {
        rep.problem = "three_body_3d";
        const PhysParams3B3D pp = phys_3b3d(s);
        const NumParams3B3D np = num_3b3d(s);
        Flags3B f;
        f.wf = s.flags.wf;
        f.csm = s.flags.csm;
        ObservRequest oreq;
        if (s.has_observ) {
            oreq.stateindices = s.observ.stateindices;
            for (int q = 0; q < 3; ++q)
                for (const auto& ex : s.observ.centobs[q])
                    oreq.centobs[q].push_back(parse_potential_expr(ex).to_potential());
            oreq.R2_flags = s.observ.R2_flags;
        }
        const Result3B3D res = solve_3b3d(pp, np, f, s.has_observ ? &oreq : nullptr);
        rep.is_complex = res.spectrum.kind == MatrixKind::ComplexSymmetric;
        if (rep.is_complex)
            for (const cplx& e : res.spectrum.energies_c) {
                rep.energies.push_back(e.real());
                rep.widths.push_back(-2.0 * e.imag());
            }
        else
            rep.energies = res.spectrum.energies;
        rep.kept_dim = res.spectrum.kept_dim;
        rep.basis_dim = static_cast<int>(enumerate_channels_3d(pp).size()) *
                        s.nmax * s.Nmax;
        if (s.has_observ) {
            rep.has_observ = true;
            rep.observ_states = s.observ.stateindices;
            rep.observ_names = s.observ.centobs;
            rep.observ = res.observ;
        }
    }
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
}

std::string report_json(const Report& rep, bool with_walltime) {
    json j;
    j["problem"] = rep.problem;
    j["energies"] = rep.energies;
    if (rep.is_complex)
        j["widths"] = rep.widths;
    j["kept_dim"] = rep.kept_dim;
    j["basis_dim"] = rep.basis_dim;
    if (rep.has_optim)
        j["optimized"] = {{"r1", rep.opt_r1}, {"rnmax", rep.opt_rnmax}};
    if (rep.has_invert)
        j["inverse"] = {{"vscale", rep.vscale}, {"energy", rep.inverted_energy}};
    if (rep.has_observ) {
        json obs = json::array();
        for (size_t t = 0; t < rep.observ_states.size(); ++t) {
            json st;
            st["state"] = rep.observ_states[t];
            json sets = json::array();
            for (int q = 0; q < 3; ++q) {
                json one;
                json vals = json::object();
                for (size_t k = 0; k < rep.observ_names[q].size(); ++k)
                    vals[rep.observ_names[q][k]] = rep.observ.centobs[t][q][k];
                one["centobs"] = vals;
                if (std::isnan(rep.observ.R2[t][q]))
                    one["R2"] = nullptr;
                else
                    one["R2"] = rep.observ.R2[t][q];
                sets.push_back(one);
            }
            st["sets"] = sets;
            obs.push_back(st);
        }
        j["observables"] = obs;
    }
    if (!rep.wfs.empty()) {
        json wfs = json::array();
        for (const auto& g : rep.wfs)
            wfs.push_back({{"state", g.state}, {"l", g.l},
                           {"points", static_cast<int>(g.r.size())}});
        j["wavefunctions"] = wfs;
    }
    if (with_walltime)
        j["wall_time_ms"] = rep.wall_time_ms;
    return j.dump(2);
}

std::string report_csv(const Report& rep) {
    std::ostringstream out;
    out << (rep.is_complex ? "state,energy,width\n" : "state,energy\n");
    for (size_t k = 0; k < rep.energies.size(); ++k) {
        out << (k + 1) << ',' << shortest(rep.energies[k]);
        if (rep.is_complex)
            out << ',' << shortest(rep.widths[k]);
        out << '\n';
    }
    return out.str();
}

void emit_report(const Report& rep, const std::string& format, const std::string& path) {
    if (format != "json" && format != "csv")
        throw ConfigError("emit_report: format must be json or csv");
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open report file: " + path);
    out << (format == "json" ? report_json(rep) : report_csv(rep));
    if (!out)
        throw IoError("failed writing report file: " + path);
    for (const auto& g : rep.wfs) {
        const std::string wfpath = path + ".wf" + std::to_string(g.state) + ".dat";
        std::ofstream wf(wfpath);
        if (!wf)
            throw IoError("cannot open wavefunction file: " + wfpath);
        for (size_t i = 0; i < g.r.size(); ++i)
            wf << shortest(g.r[i]) << ' ' << shortest(g.density[i]) << '\n';
        if (!wf)
            throw IoError("failed writing wavefunction file: " + wfpath);
    }
}

std::vector<BenchRow> run_bench(const RunSpec& spec, const std::vector<int>& nmax_list) {
    if (nmax_list.empty())
        throw ConfigError("bench: nmax list must not be empty");
    std::vector<BenchRow> rows;
    for (int n : nmax_list) {
        RunSpec s = spec;
        s.nmax = n;
        if (s.problem != ProblemKind::TwoBody)
            s.Nmax = n;
        s.flags.wf = false;
        const Report rep = run(s);
        if (rep.energies.empty())
            throw NumericalFailure("bench: run produced no eigenvalues");
        rows.push_back({n, rep.basis_dim, rep.wall_time_ms, rep.energies.front()});
    }
    return rows;
}

std::string bench_json(const std::vector<BenchRow>& rows) {
    json j = json::array();
    for (const auto& r : rows)
        j.push_back({{"nmax", r.nmax},
                     {"basis_dim", r.basis_dim},
                     {"wall_time_ms", r.wall_time_ms},
                     {"lowest", r.lowest}});
    return j.dump(2);
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "nmax,basis_dim,wall_time_ms,lowest\n";
    for (const auto& r : rows)
        out << r.nmax << ',' << r.basis_dim << ',' << shortest(r.wall_time_ms) << ','
            << shortest(r.lowest) << '\n';
    return out.str();
}

} // namespace fewbody
