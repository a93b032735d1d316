#ifndef PROBEVIEW_REDUCTION_HPP
#define PROBEVIEW_REDUCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "probeview/fock.hpp"

namespace probeview {

/// Reduced state of the region together with bookkeeping on the series that
/// produced it.
template <typename Scalar = double>
struct ReductionReport {
    DensityMatrix<Scalar> rho0;
    /// Largest summation index o reached.
    std::size_t series_terms_used = 0;
    /// Bound on probability mass the series left out; zero for finite support.
    Scalar tail_bound = 0;
};

namespace detail {

template <typename Scalar>
void check_tol(Scalar tol) {
    if (!(tol > Scalar(0))) throw ValidationError("reduction tolerance must be positive");
}

/// Trace over the outside mode for any operator whose matrix elements in the
/// number basis are given by `elem(a, b)`:
///
///   <i|rho0|j> = sum_o elem(o+i, o+j) sqrt((o+i)!(o+j)!) / (o! sqrt(i! j!)) q1^{2o} q0^{i+j}
///
/// for i <= j, the rest by Hermiticity. The factorial weight is carried as a
/// logarithm and advanced by its ratio between consecutive o.
template <typename Scalar, typename Elem>
ReductionReport<Scalar> reduce_series(Index dim, const ModeSplit<Scalar>& split, Elem&& elem) {
    ReductionReport<Scalar> report;
    report.rho0 = DensityMatrix<Scalar>::Zero(dim, dim);
    if (split.is_full()) {
        for (Index j = 0; j < dim; ++j)
            for (Index i = 0; i < dim; ++i) report.rho0(i, j) = elem(i, j);
        return report;
    }
    if (split.is_empty()) {
        Complex<Scalar> total = 0;
        for (Index n = 0; n < dim; ++n) total += elem(n, n);
        report.rho0(0, 0) = total;
        report.series_terms_used = static_cast<std::size_t>(std::max<Index>(dim - 1, 0));
        return report;
    }

    const Scalar log_q0 = std::log(split.q0());
    const Scalar log_q1sq = std::log(split.q1_squared());
    for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i <= j; ++i) {
            Scalar log_w = Scalar(i + j) * log_q0;
            Complex<Scalar> acc = 0;
            // the series stops once o + j runs past the basis
            for (Index o = 0; o + j < dim; ++o) {
                if (o > 0)
                    log_w += Scalar(0.5) * (std::log(Scalar(o + i)) + std::log(Scalar(o + j))) -
                             std::log(Scalar(o)) + log_q1sq;
                acc += std::exp(log_w) * elem(o + i, o + j);
            }
            report.rho0(i, j) = acc;
            if (i != j) report.rho0(j, i) = std::conj(acc);
        }
    }
    report.series_terms_used = static_cast<std::size_t>(dim - 1);
    return report;
}

}  // namespace detail

/// Reduced density matrix of the pure state `psi` seen inside the region.
/// Finite support makes the series exact, so `tail_bound` is zero.
template <typename Scalar>
ReductionReport<Scalar> reduce_pure_general(const FockVector<Scalar>& psi, const ModeSplit<Scalar>& split,
                                            Scalar tol) {
    detail::check_tol(tol);
    const auto& c = psi.coeffs();
    return detail::reduce_series<Scalar>(psi.size(), split,
                                         [&](Index a, Index b) { return c(a) * std::conj(c(b)); });
}

/// Same trace applied to a density operator; linear in `rho`.
template <typename Derived>
auto reduce_density_matrix(const Eigen::MatrixBase<Derived>& rho,
                           const ModeSplit<typename Derived::RealScalar>& split) {
    using Scalar = typename Derived::RealScalar;
    if (rho.rows() != rho.cols()) throw ValidationError("density matrix must be square");
    const DensityMatrix<Scalar> m = rho;
    return detail::reduce_series<Scalar>(m.rows(), split, [&](Index a, Index b) { return m(a, b); });
}

template <typename Scalar>
ReductionReport<Scalar> reduce_mixed(const MixtureState<Scalar>& mixture, const ModeSplit<Scalar>& split,
                                     Scalar tol) {
    validate(mixture);
    detail::check_tol(tol);
    Index dim = 0;
    for (const auto& psi : mixture.states) dim = std::max(dim, psi.size());

    ReductionReport<Scalar> out;
    out.rho0 = DensityMatrix<Scalar>::Zero(dim, dim);
    for (std::size_t k = 0; k < mixture.states.size(); ++k) {
        const auto part = reduce_pure_general(mixture.states[k], split, tol);
        const Index d = part.rho0.rows();
        out.rho0.topLeftCorner(d, d) += mixture.weights[k] * part.rho0;
        out.series_terms_used = std::max(out.series_terms_used, part.series_terms_used);
        out.tail_bound += mixture.weights[k] * part.tail_bound;
    }
    return out;
}

/// C(n, i) p^i (1 - p)^(n - i), with log C(n, i) accumulated term by term.
template <typename Scalar>
Scalar binomial_pmf(Index n, Scalar p, Index i) {
    if (n < 0 || i < 0 || i > n) {
        std::ostringstream msg;
        msg << "binomial pmf needs 0 <= i <= n, got n=" << n << " i=" << i;
        throw ValidationError(msg.str());
    }
    if (!(p >= Scalar(0) && p <= Scalar(1))) throw ValidationError("binomial success probability outside [0, 1]");
    if (p == Scalar(0)) return i == 0 ? Scalar(1) : Scalar(0);
    if (p == Scalar(1)) return i == n ? Scalar(1) : Scalar(0);

    const Index k = std::min(i, n - i);
    Scalar log_choose = 0;
    for (Index t = 1; t <= k; ++t) log_choose += std::log(Scalar(n - k + t)) - std::log(Scalar(t));
    return std::exp(log_choose + Scalar(i) * std::log(p) + Scalar(n - i) * std::log1p(-p));
}

/// Full pmf over i = 0..n.
template <typename Scalar>
RealVector<Scalar> binomial_distribution(Index n, Scalar p) {
    if (n < 0) throw ValidationError("binomial trials must be nonnegative");
    RealVector<Scalar> pmf(n + 1);
    for (Index i = 0; i <= n; ++i) pmf(i) = binomial_pmf(n, p, i);
    return pmf;
}

/// |n><n| seen through the region: diagonal, binomial with success q0^2.
template <typename Scalar>
DensityMatrix<Scalar> reduce_number_state(Index n, const ModeSplit<Scalar>& split) {
    const RealVector<Scalar> pmf = binomial_distribution(n, split.q0_squared());
    return pmf.template cast<Complex<Scalar>>().asDiagonal();
}

/// A coherent state stays coherent with amplitude q0 alpha.
template <typename Scalar>
CoherentState<Scalar> reduce_coherent(Complex<Scalar> alpha, const ModeSplit<Scalar>& split) {
    return {split.q0() * alpha};
}

template <typename Scalar = double>
struct BetaPrime {
    Scalar beta_prime;
    Scalar energy;

    Scalar beta_energy() const { return beta_prime * energy; }
};

/// Inverse temperature of the reduced thermal state:
///   beta' E = ln((q0^2 + e^{beta E} - 1) / q0^2),
/// evaluated as log1p(expm1(beta E) / q0^2).
template <typename Scalar>
BetaPrime<Scalar> beta_prime(Scalar beta, Scalar energy, Scalar q0_sq) {
    if (!(beta > Scalar(0)) || !(energy > Scalar(0)))
        throw ValidationError("beta' needs beta > 0 and E > 0");
    if (!(q0_sq >= Scalar(0) && q0_sq <= Scalar(1))) throw ValidationError("q0^2 must lie in [0, 1]");
    if (q0_sq == Scalar(0))
        throw VacuumLimit("q0^2 = 0: the reduced state is the vacuum (zero temperature)");
    if (q0_sq == Scalar(1)) return {beta, energy};
    const Scalar x = beta * energy;
    return {std::log1p(std::expm1(x) / q0_sq) / energy, energy};
}

template <typename Scalar>
ThermalState<Scalar> reduce_thermal(const ThermalState<Scalar>& state, const ModeSplit<Scalar>& split) {
    const auto bp = beta_prime(state.beta, state.energy, split.q0_squared());
    return {bp.beta_prime, state.energy};
}

}  // namespace probeview

#endif  // PROBEVIEW_REDUCTION_HPP
