// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fewbody/spline.hpp"
#include "fewbody/types.hpp"

namespace fewbody {

struct GaussianPotential {
    double v0 = 0.0;
    double mu_g = 1.0; // > 0
};

/// g * delta(x - x0) on the full line.
struct ContactPotential1D {
    double g = 0.0;
    double x0 = 0.0;
};

struct CallablePotential {
    std::function<double(double)> f;
    std::function<cplx(cplx)> fc; // optional complex continuation
};

struct TabulatedPotential {
    std::vector<double> r;
    std::vector<double> v;
    CubicSpline<double> spline;
};

class PotentialModel {
public:
    PotentialModel();
    PotentialModel(GaussianPotential g);
    PotentialModel(ContactPotential1D c);
    PotentialModel(CallablePotential c);
    PotentialModel(TabulatedPotential t);
    /// Real-only callable.
    explicit PotentialModel(std::function<double(double)> f);
    /// Complex-capable callable (real path evaluates the same expression).
    PotentialModel(std::function<double(double)> f, std::function<cplx(cplx)> fc);

    double operator()(double r) const;
    cplx eval_complex(cplx r) const;
    bool complex_capable() const;

    bool is_gaussian() const { return std::holds_alternative<GaussianPotential>(*var_); }
    bool is_contact() const { return std::holds_alternative<ContactPotential1D>(*var_); }
    bool is_tabulated() const { return std::holds_alternative<TabulatedPotential>(*var_); }
    const GaussianPotential& gaussian() const { return std::get<GaussianPotential>(*var_); }
    const ContactPotential1D& contact() const { return std::get<ContactPotential1D>(*var_); }

    /// Stable identity for interpolant caching.
    const void* id() const { return var_.get(); }

private:
    std::shared_ptr<const std::variant<GaussianPotential, ContactPotential1D,
                                       CallablePotential, TabulatedPotential>> var_;
};

PotentialModel load_tabulated(const std::string& path);

enum class KernelDomain { HalfLine, FullLine };

struct KernelRequest {
    int l_eff = 0;
    cplx alpha{1.0, 0.0}; // Re(alpha) > 0
    KernelDomain domain = KernelDomain::HalfLine;
    double csm_theta = 0.0; // degrees; rotates the potential argument
};

/// \int r^{l_eff} e^{-alpha r^2} V(r e^{i theta}) dr over the requested domain.
/// Closed form for Gaussian and contact variants, composite Gauss-Legendre
/// quadrature otherwise.
cplx radial_kernel(const PotentialModel& p, const KernelRequest& req);

/// True when radial_kernel uses a closed form for this variant.
bool has_closed_kernel(const PotentialModel& p);

/// Cubic-spline interpolant of the kernel in log(alpha), real alpha only.
class AlphaInterpolant {
public:
    AlphaInterpolant() = default;
    AlphaInterpolant(const PotentialModel& p, int l_eff, KernelDomain domain,
                     double alpha_min, double alpha_max, int kmax_interpol,
                     double csm_theta = 0.0);

    cplx operator()(double alpha) const;
    double alpha_min() const { return amin_; }
    double alpha_max() const { return amax_; }

private:
    CubicSpline<double> re_, im_;
    double amin_ = 0.0, amax_ = 0.0;
    bool complex_valued_ = false;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace fewbody
