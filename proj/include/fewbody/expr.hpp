// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "fewbody/potentials.hpp"
#include "fewbody/types.hpp"

namespace fewbody {

struct ExprNode;

/// Parsed radial expression over the single free variable r. Grammar:
/// numbers, r, unary minus, + - * / ^ (caret binds tightest and associates
/// right), exp(x), sqrt(x), parentheses. All nodes are analytic, so the same
/// tree evaluates at complex r.
class PotentialExpr {
public:
    PotentialExpr() = default;
    explicit PotentialExpr(std::shared_ptr<const ExprNode> root);

    double eval(double r) const;
    cplx eval(cplx r) const;

    /// Wrap into a complex-capable potential/observable callable.
    PotentialModel to_potential() const;

private:
    std::shared_ptr<const ExprNode> root_;
};

/// Throws ParseError with the byte offset of the failure.
PotentialExpr parse_potential_expr(const std::string& text);

} // namespace fewbody
