// Test-only numerical oracles, kept independent of the library's own
// quadrature and assembly paths.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// Composite Simpson rule on [a, b].
template <typename F>
auto simpson(F&& f, double a, double b, int n = 20000) {
    if (n % 2 != 0)
        ++n;
    const double h = (b - a) / n;
    auto acc = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// \int_0^inf f(r) dr for Gaussian-damped integrands: Simpson out to rmax with
// a log-spaced refinement near the origin to absorb mild singularities.
template <typename F>
auto half_line(F&& f, double rmax, int n = 40000) {
    const double split = std::min(1.0, 0.25 * rmax);
    // substitute r = e^t on (0, split] to resolve the origin
    auto inner = simpson([&](double t) { return f(std::exp(t)) * std::exp(t); },
                         std::log(split) - 30.0, std::log(split), n / 2);
    auto outer = simpson(f, split, rmax, n);
    return inner + outer;
}

} // namespace oracle
