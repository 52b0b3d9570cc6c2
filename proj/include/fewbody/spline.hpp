// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fewbody/types.hpp"

namespace fewbody {

/// Natural cubic spline on a strictly increasing knot grid.
template <typename Y>
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<Y> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const int n = static_cast<int>(x_.size());
        if (n < 2 || y_.size() != x_.size())
            throw ShapeMismatch("CubicSpline: need >= 2 knots, equal sizes");
        for (int i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw ShapeMismatch("CubicSpline: knots must be strictly increasing");
        y2_.assign(n, Y{});
        if (n == 2)
            return;
        std::vector<Y> u(n, Y{});
        std::vector<double> diag(n, 0.0);
        for (int i = 1; i < n - 1; ++i) {
            const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
            const double p = sig * diag[i - 1] + 2.0;
            diag[i] = (sig - 1.0) / p;
            Y d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
                  (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
            u[i] = (d * 6.0 / (x_[i + 1] - x_[i - 1]) - u[i - 1] * sig) / p;
            y2_[i] = u[i]; // provisional, fixed in back-substitution
        }
        for (int i = n - 2; i >= 1; --i)
            y2_[i] = y2_[i] + y2_[i + 1] * diag[i];
    }

    double xmin() const { return x_.front(); }
    double xmax() const { return x_.back(); }

    Y operator()(double x) const {
        int lo = 0, hi = static_cast<int>(x_.size()) - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (x_[mid] > x ? hi : lo) = mid;
        }
        const double h = x_[hi] - x_[lo];
        const double a = (x_[hi] - x) / h;
        const double b = (x - x_[lo]) / h;
        return y_[lo] * a + y_[hi] * b +
               (y2_[lo] * (a * a * a - a) + y2_[hi] * (b * b * b - b)) * (h * h / 6.0);
    }

private:
    std::vector<double> x_;
    std::vector<Y> y_;
    std::vector<Y> y2_;
};

} // namespace fewbody
