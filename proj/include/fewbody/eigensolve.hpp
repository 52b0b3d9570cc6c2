// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fewbody/types.hpp"

namespace fewbody {

enum class MatrixKind { RealSymmetric, ComplexSymmetric };

/// Dense H, S pair over a (non-orthogonal) basis. The overlap S is real in
/// both kinds: complex scaling rotates operators, not the Gaussian ranges.
struct AssembledSystem {
    MatrixKind kind = MatrixKind::RealSymmetric;
    Eigen::MatrixXd H;   // real-symmetric case
    Eigen::MatrixXcd Hc; // complex-symmetric case
    Eigen::MatrixXd S;

    int size() const {
        return static_cast<int>(kind == MatrixKind::RealSymmetric ? H.rows() : Hc.rows());
    }
};

/// Rectangular transform T with T^t S T = I on the retained subspace.
struct OverlapTruncation {
    Eigen::MatrixXd transform;
    int kept_dim = 0;
};

/// Drop S-eigenvectors whose eigenvalue falls below threshold * max eigenvalue
/// (threshold is relative). Throws DegenerateBasis when nothing survives.
OverlapTruncation truncate_overlap(const Eigen::MatrixXd& S, double threshold);

struct Spectrum {
    MatrixKind kind = MatrixKind::RealSymmetric;
    std::vector<double> energies;      // ascending (real case)
    std::vector<cplx> energies_c;      // sorted by real part (complex case)
    Eigen::MatrixXd vectors;           // columns = coefficients in the original basis
    Eigen::MatrixXcd vectors_c;
    int kept_dim = 0;

    int count() const {
        return static_cast<int>(kind == MatrixKind::RealSymmetric ? energies.size()
                                                                  : energies_c.size());
    }
};

Spectrum solve_gevp(const AssembledSystem& sys, double threshold, bool want_vectors);

/// Standard dense symmetric eigensolve (ascending), used internally and by
/// the coupled-channel solver; exposed for tests.
void sym_eig(const Eigen::MatrixXd& A, Eigen::VectorXd& evals, Eigen::MatrixXd* evecs);

/// Dense general (non-Hermitian) eigensolve.
void gen_eig(const Eigen::MatrixXcd& A, Eigen::VectorXcd& evals, Eigen::MatrixXcd* evecs);

} // namespace fewbody
