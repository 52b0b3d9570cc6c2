// SPDX-License-Identifier: Apache-2.0
#include "fewbody/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <lapacke.h>

namespace fewbody {

void sym_eig(const Eigen::MatrixXd& A, Eigen::VectorXd& evals, Eigen::MatrixXd* evecs) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    Eigen::MatrixXd work = A; // column-major, overwritten with eigenvectors
    evals.resize(n);
    const char jobz = evecs ? 'V' : 'N';
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, work.data(), n,
                                     evals.data());
    if (info != 0)
        throw NumericalFailure("dsyevd failed, info=" + std::to_string(info));
    if (evecs)
        *evecs = std::move(work);
}

void gen_eig(const Eigen::MatrixXcd& A, Eigen::VectorXcd& evals, Eigen::MatrixXcd* evecs) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    Eigen::MatrixXcd work = A;
    evals.resize(n);
    Eigen::MatrixXcd vr(n, evecs ? n : 1);
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', evecs ? 'V' : 'N', n,
                                    reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                    reinterpret_cast<lapack_complex_double*>(evals.data()),
                                    nullptr, 1,
                                    reinterpret_cast<lapack_complex_double*>(vr.data()),
                                    evecs ? n : 1);
    if (info != 0)
        throw NumericalFailure("zgeev failed, info=" + std::to_string(info));
    if (evecs)
        *evecs = std::move(vr);
}

OverlapTruncation truncate_overlap(const Eigen::MatrixXd& S, double threshold) {
    if (S.rows() != S.cols())
        throw ShapeMismatch("truncate_overlap: S must be square");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw NumericalFailure("truncate_overlap: threshold must be in (0,1)");
    Eigen::VectorXd ev;
    Eigen::MatrixXd V;
    sym_eig(S, ev, &V);
    const int n = static_cast<int>(S.rows());
    const double cutoff = threshold * ev(n - 1);
    int first = 0;
    while (first < n && ev(first) < cutoff)
        ++first;
    const int kept = n - first;
    if (kept == 0 || ev(n - 1) <= 0.0)
        throw DegenerateBasis("overlap matrix has no eigenvalue above cutoff");
    OverlapTruncation t;
    t.kept_dim = kept;
    t.transform.resize(n, kept);
    for (int k = 0; k < kept; ++k)
        t.transform.col(k) = V.col(first + k) / std::sqrt(ev(first + k));
    return t;
}

namespace {

void check_finite(const Eigen::MatrixXd& M, const char* name) {
    if (!M.allFinite())
        throw NumericalFailure(std::string(name) + " contains non-finite entries");
}

void check_finite(const Eigen::MatrixXcd& M, const char* name) {
    if (!M.allFinite())
        throw NumericalFailure(std::string(name) + " contains non-finite entries");
}

} // namespace

Spectrum solve_gevp(const AssembledSystem& sys, double threshold, bool want_vectors) {
    check_finite(sys.S, "S");
    Spectrum out;
    out.kind = sys.kind;
    const OverlapTruncation t = truncate_overlap(sys.S, threshold);
    out.kept_dim = t.kept_dim;

    if (sys.kind == MatrixKind::RealSymmetric) {
        check_finite(sys.H, "H");
        Eigen::MatrixXd Ht = t.transform.transpose() * sys.H * t.transform;
        Ht = 0.5 * (Ht + Ht.transpose()).eval();
        Eigen::VectorXd ev;
        Eigen::MatrixXd V;
        sym_eig(Ht, ev, want_vectors ? &V : nullptr);
        out.energies.assign(ev.data(), ev.data() + ev.size());
        if (want_vectors)
            out.vectors = t.transform * V; // T^t S T = I keeps c^t S c = 1
        return out;
    }

    check_finite(sys.Hc, "H");
    Eigen::MatrixXcd Ht = t.transform.transpose() * sys.Hc * t.transform;
    Ht = 0.5 * (Ht + Ht.transpose()).eval();
    Eigen::VectorXcd ev;
    Eigen::MatrixXcd V;
    gen_eig(Ht, ev, want_vectors ? &V : nullptr);
    std::vector<int> idx(ev.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
        return ev(a).imag() < ev(b).imag();
    });
    out.energies_c.reserve(ev.size());
    for (int i : idx)
        out.energies_c.push_back(ev(i));
    if (want_vectors) {
        out.vectors_c.resize(sys.Hc.rows(), ev.size());
        for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
            Eigen::VectorXcd c = t.transform * V.col(idx[k]);
            // bilinear S-normalization: c^t S c = 1 (no conjugation)
            cplx q = c.transpose() * sys.S * c;
            out.vectors_c.col(k) = c / std::sqrt(q);
        }
    }
    return out;
}

} // namespace fewbody
