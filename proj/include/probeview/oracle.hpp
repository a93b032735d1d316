#ifndef PROBEVIEW_ORACLE_HPP
#define PROBEVIEW_ORACLE_HPP

// Brute-force verifier. States are built on the explicit product basis
// |n0, n1> by repeated application of the split creation operator and then
// traced numerically. Nothing here calls into reduction.hpp.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include "probeview/fock.hpp"

namespace probeview::oracle {

/// Upper limit on the per-mode cutoff of the oracle.
inline constexpr Index kMaxCutoff = 256;

enum class LadderKind { Creation, Annihilation };

template <typename Scalar = double>
struct LadderOperatorMatrix {
    DensityMatrix<Scalar> elems;
    LadderKind kind;
};

/// a^dagger (or a) on the single-mode basis |0>..|N>.
template <typename Scalar>
LadderOperatorMatrix<Scalar> ladder_operator(LadderKind kind, Index cutoff) {
    DensityMatrix<Scalar> a_dag = DensityMatrix<Scalar>::Zero(cutoff + 1, cutoff + 1);
    for (Index n = 0; n < cutoff; ++n) a_dag(n + 1, n) = std::sqrt(Scalar(n + 1));
    if (kind == LadderKind::Creation) return {std::move(a_dag), kind};
    return {a_dag.adjoint(), kind};
}

template <typename Scalar>
using SparseOperator = Eigen::SparseMatrix<Complex<Scalar>>;

/// Product-basis index of |n0, n1> with n1 running fastest.
inline Index two_mode_index(Index n0, Index n1, Index cutoff) { return n0 * (cutoff + 1) + n1; }

/// q0 (a^dagger x 1) + q1 (1 x a^dagger) on the (N+1)^2-dimensional product space.
template <typename Scalar>
SparseOperator<Scalar> build_split_creation(const ModeSplit<Scalar>& split, Index cutoff) {
    if (cutoff < 1 || cutoff > kMaxCutoff) throw ValidationError("oracle cutoff out of range");
    const SparseOperator<Scalar> a_dag =
        ladder_operator<Scalar>(LadderKind::Creation, cutoff).elems.sparseView();
    SparseOperator<Scalar> id(cutoff + 1, cutoff + 1);
    id.setIdentity();
    SparseOperator<Scalar> inside = Eigen::kroneckerProduct(a_dag, id);
    SparseOperator<Scalar> outside = Eigen::kroneckerProduct(id, a_dag);
    return Complex<Scalar>(split.q0()) * inside + Complex<Scalar>(split.q1()) * outside;
}

/// Amplitudes on |n0, n1>, 0 <= n0, n1 <= N.
template <typename Scalar = double>
class TwoModeVector {
public:
    TwoModeVector(Vector<Scalar> coeffs, Index cutoff) : coeffs_(std::move(coeffs)), cutoff_(cutoff) {
        if (coeffs_.size() != (cutoff + 1) * (cutoff + 1))
            throw ValidationError("two-mode vector size does not match its cutoff");
    }

    const Vector<Scalar>& coeffs() const { return coeffs_; }
    Index cutoff() const { return cutoff_; }
    Complex<Scalar> operator()(Index n0, Index n1) const { return coeffs_(two_mode_index(n0, n1, cutoff_)); }

    /// Rows indexed by n0 (inside), columns by n1 (outside).
    DensityMatrix<Scalar> as_matrix() const {
        DensityMatrix<Scalar> m(cutoff_ + 1, cutoff_ + 1);
        for (Index n0 = 0; n0 <= cutoff_; ++n0)
            for (Index n1 = 0; n1 <= cutoff_; ++n1) m(n0, n1) = (*this)(n0, n1);
        return m;
    }

private:
    Vector<Scalar> coeffs_;
    Index cutoff_;
};

/// |n_q> = (a_q^dagger)^n |0,0> / sqrt(n!) for n = 0..count-1, each obtained
/// from the previous one by one more application of the split creation operator.
template <typename Scalar>
std::vector<Vector<Scalar>> number_state_ladder(const ModeSplit<Scalar>& split, Index cutoff, Index count) {
    const SparseOperator<Scalar> create = build_split_creation(split, cutoff);
    std::vector<Vector<Scalar>> out;
    out.reserve(static_cast<std::size_t>(count));
    Vector<Scalar> v = Vector<Scalar>::Zero((cutoff + 1) * (cutoff + 1));
    v(two_mode_index(0, 0, cutoff)) = Scalar(1);
    for (Index n = 0; n < count; ++n) {
        if (n > 0) v = (create * v) / std::sqrt(Scalar(n));
        out.push_back(v);
    }
    return out;
}

template <typename Scalar>
TwoModeVector<Scalar> expand_two_mode(const FockVector<Scalar>& psi, const ModeSplit<Scalar>& split,
                                      Index cutoff) {
    if (psi.cutoff() > cutoff) throw ValidationError("state support exceeds the oracle cutoff");
    const auto ladder = number_state_ladder(split, cutoff, psi.size());
    Vector<Scalar> out = Vector<Scalar>::Zero((cutoff + 1) * (cutoff + 1));
    for (Index n = 0; n < psi.size(); ++n) out += psi(n) * ladder[static_cast<std::size_t>(n)];
    return {std::move(out), cutoff};
}

template <typename Scalar>
TwoModeVector<Scalar> expand_two_mode(const FockVector<Scalar>& psi, const ModeSplit<Scalar>& split) {
    return expand_two_mode(psi, split, std::max<Index>(psi.cutoff(), 1));
}

/// Which mode is summed over.
enum class TracedMode { Outside, Inside };

/// (rho0)_{ij} = sum_k Psi(i,k) Psi*(j,k) for a pure two-mode state.
template <typename Scalar>
DensityMatrix<Scalar> partial_trace_numeric(const TwoModeVector<Scalar>& state,
                                            TracedMode traced = TracedMode::Outside) {
    const Index d = state.cutoff() + 1;
    DensityMatrix<Scalar> rho = DensityMatrix<Scalar>::Zero(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            Complex<Scalar> acc = 0;
            for (Index k = 0; k < d; ++k)
                acc += traced == TracedMode::Outside ? state(i, k) * std::conj(state(j, k))
                                                     : state(k, i) * std::conj(state(k, j));
            rho(i, j) = acc;
        }
    return rho;
}

/// (rho0)_{ij} = sum_k rho_{(i,k),(j,k)} for a two-mode density matrix.
template <typename Derived>
auto partial_trace_numeric(const Eigen::MatrixBase<Derived>& rho, Index cutoff,
                           TracedMode traced = TracedMode::Outside) {
    using Scalar = typename Derived::RealScalar;
    const Index d = cutoff + 1;
    if (rho.rows() != d * d || rho.cols() != d * d)
        throw ValidationError("two-mode density matrix size does not match its cutoff");
    DensityMatrix<Scalar> out = DensityMatrix<Scalar>::Zero(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
                out(i, j) += traced == TracedMode::Outside
                                 ? rho(two_mode_index(i, k, cutoff), two_mode_index(j, k, cutoff))
                                 : rho(two_mode_index(k, i, cutoff), two_mode_index(k, j, cutoff));
    return out;
}

/// Oracle reduction of an arbitrary single-mode density matrix: decompose into
/// pure components, expand each on the product basis, trace, and sum.
template <typename Derived>
auto reduce_density_oracle(const Eigen::MatrixBase<Derived>& rho, const ModeSplit<typename Derived::RealScalar>& split,
                           TracedMode traced = TracedMode::Outside) {
    using Scalar = typename Derived::RealScalar;
    const DensityMatrix<Scalar> m = rho;
    const Index dim = m.rows();
    const Index cutoff = std::max<Index>(dim - 1, 1);
    const auto ladder = number_state_ladder(split, cutoff, dim);

    DensityMatrix<Scalar> out = DensityMatrix<Scalar>::Zero(cutoff + 1, cutoff + 1);
    const bool diagonal = (m - DensityMatrix<Scalar>(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == Scalar(0);
    if (diagonal) {
        for (Index n = 0; n < dim; ++n) {
            const Scalar w = std::real(m(n, n));
            if (w == Scalar(0)) continue;
            out += w * partial_trace_numeric(TwoModeVector<Scalar>(ladder[static_cast<std::size_t>(n)], cutoff),
                                             traced);
        }
    } else {
        Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> es(m);
        for (Index k = 0; k < dim; ++k) {
            const Scalar w = es.eigenvalues()(k);
            if (w == Scalar(0)) continue;
            Vector<Scalar> v = Vector<Scalar>::Zero((cutoff + 1) * (cutoff + 1));
            for (Index n = 0; n < dim; ++n) v += es.eigenvectors()(n, k) * ladder[static_cast<std::size_t>(n)];
            out += w * partial_trace_numeric(TwoModeVector<Scalar>(std::move(v), cutoff), traced);
        }
    }
    return DensityMatrix<Scalar>(out.topLeftCorner(dim, dim));
}

template <typename Scalar = double>
struct StateComparison {
    Scalar max_abs_diff = 0;
    Scalar trace_distance = 0;
    /// <psi|b|psi>, present only when `a` is rank one.
    std::optional<Scalar> fidelity;
};

/// Compares two states, padding the smaller one with zero rows and columns.
template <typename DerivedA, typename DerivedB>
auto compare_states(const Eigen::MatrixBase<DerivedA>& a_in, const Eigen::MatrixBase<DerivedB>& b_in) {
    using Scalar = typename DerivedA::RealScalar;
    const Index d = std::max(a_in.rows(), b_in.rows());
    DensityMatrix<Scalar> a = DensityMatrix<Scalar>::Zero(d, d);
    DensityMatrix<Scalar> b = DensityMatrix<Scalar>::Zero(d, d);
    a.topLeftCorner(a_in.rows(), a_in.cols()) = a_in;
    b.topLeftCorner(b_in.rows(), b_in.cols()) = b_in;

    StateComparison<Scalar> out;
    const DensityMatrix<Scalar> diff = a - b;
    out.max_abs_diff = d ? diff.cwiseAbs().maxCoeff() : Scalar(0);
    if (d == 0) return out;

    Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> diff_es((diff + diff.adjoint()) / Scalar(2),
                                                                  Eigen::EigenvaluesOnly);
    out.trace_distance = diff_es.eigenvalues().cwiseAbs().sum() / Scalar(2);

    Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> a_es((a + a.adjoint()) / Scalar(2));
    const auto& lambda = a_es.eigenvalues();
    const Scalar rest = lambda.head(d - 1).cwiseAbs().sum();
    if (rest <= Scalar(1e-10) && std::abs(lambda(d - 1) - Scalar(1)) <= Scalar(1e-10)) {
        const Vector<Scalar> psi = a_es.eigenvectors().col(d - 1);
        out.fidelity = std::real(psi.dot(b * psi));
    }
    return out;
}

}  // namespace probeview::oracle

#endif  // PROBEVIEW_ORACLE_HPP
