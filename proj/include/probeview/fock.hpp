#ifndef PROBEVIEW_FOCK_HPP
#define PROBEVIEW_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "probeview/types.hpp"

namespace probeview {

/// Real overlap amplitudes (q0, q1) of a mode split across a region and its
/// complement, q0^2 + q1^2 = 1.
template <typename Scalar = double>
class ModeSplit {
public:
    static ModeSplit from_q0(Scalar q0) {
        check_unit(q0, "q0");
        return ModeSplit(q0, std::sqrt(std::max(Scalar(0), Scalar(1) - q0 * q0)), q0 * q0);
    }

    /// Keeps q0^2 verbatim, so the endpoints 0 and 1 are exact.
    static ModeSplit from_q0_squared(Scalar q0sq) {
        check_unit(q0sq, "q0^2");
        return ModeSplit(std::sqrt(q0sq), std::sqrt(Scalar(1) - q0sq), q0sq);
    }

    static ModeSplit from_amplitudes(Scalar q0, Scalar q1) {
        check_unit(q0, "q0");
        check_unit(q1, "q1");
        const Scalar norm = q0 * q0 + q1 * q1;
        if (std::abs(norm - Scalar(1)) > Scalar(1e-12)) {
            std::ostringstream msg;
            msg << "mode split must satisfy q0^2 + q1^2 = 1, got " << static_cast<double>(norm);
            throw ValidationError(msg.str());
        }
        return ModeSplit(q0, q1, q0 * q0);
    }

    static ModeSplit from_amplitudes(Complex<Scalar> q0, Complex<Scalar> q1) {
        if (q0.imag() != Scalar(0) || q1.imag() != Scalar(0))
            throw ValidationError("complex mode-split amplitudes are not supported");
        return from_amplitudes(q0.real(), q1.real());
    }

    Scalar q0() const { return q0_; }
    Scalar q1() const { return q1_; }
    Scalar q0_squared() const { return q0sq_; }
    Scalar q1_squared() const { return Scalar(1) - q0sq_; }

    /// The whole mode lies inside the region.
    bool is_full() const { return q0sq_ == Scalar(1); }
    /// The whole mode lies outside the region.
    bool is_empty() const { return q0sq_ == Scalar(0); }

    ModeSplit complement() const { return ModeSplit(q1_, q0_, Scalar(1) - q0sq_); }

private:
    ModeSplit(Scalar q0, Scalar q1, Scalar q0sq) : q0_(q0), q1_(q1), q0sq_(q0sq) {}

    static void check_unit(Scalar x, const char* name) {
        if (!(x >= Scalar(0) && x <= Scalar(1))) {
            std::ostringstream msg;
            msg << name << " must lie in [0, 1], got " << static_cast<double>(x);
            throw ValidationError(msg.str());
        }
    }

    Scalar q0_;
    Scalar q1_;
    Scalar q0sq_;
};

/// Normalized pure state of one mode, stored as amplitudes psi_n over |n>.
template <typename Scalar = double>
class FockVector {
public:
    static FockVector normalized(Vector<Scalar> coeffs) {
        if (coeffs.size() == 0) throw ValidationError("Fock vector needs at least one coefficient");
        if (!coeffs.allFinite()) throw ValidationError("Fock vector has non-finite coefficients");
        const Scalar norm = coeffs.norm();
        if (!(norm > Scalar(0))) throw ValidationError("Fock vector has zero norm");
        coeffs /= norm;
        return FockVector(std::move(coeffs));
    }

    /// |n>, on the smallest basis that holds it.
    static FockVector number(Index n) {
        if (n < 0) throw ValidationError("occupation number must be nonnegative");
        Vector<Scalar> c = Vector<Scalar>::Zero(n + 1);
        c(n) = Scalar(1);
        return FockVector(std::move(c));
    }

    const Vector<Scalar>& coeffs() const { return coeffs_; }
    Complex<Scalar> operator()(Index n) const { return coeffs_(n); }
    Index size() const { return coeffs_.size(); }
    /// Highest occupation number representable, N.
    Index cutoff() const { return coeffs_.size() - 1; }

    DensityMatrix<Scalar> projector() const { return coeffs_ * coeffs_.adjoint(); }

private:
    explicit FockVector(Vector<Scalar> c) : coeffs_(std::move(c)) {}

    Vector<Scalar> coeffs_;
};

struct NumberState {
    Index n = 0;
};

template <typename Scalar = double>
struct CoherentState {
    Complex<Scalar> alpha{};
};

/// Gibbs state of the number operator, weights proportional to exp(-beta E n).
template <typename Scalar = double>
struct ThermalState {
    Scalar beta = 1;
    Scalar energy = 1;

    Scalar beta_energy() const { return beta * energy; }
};

template <typename Scalar = double>
struct CustomState {
    FockVector<Scalar> psi;
};

template <typename Scalar = double>
struct MixtureState {
    std::vector<Scalar> weights;
    std::vector<FockVector<Scalar>> states;
};

template <typename Scalar = double>
using StateFamily = std::variant<NumberState, CoherentState<Scalar>, ThermalState<Scalar>,
                                 CustomState<Scalar>, MixtureState<Scalar>>;

template <typename Scalar>
void validate(const MixtureState<Scalar>& m) {
    if (m.weights.empty()) throw ValidationError("mixture needs at least one component");
    if (m.weights.size() != m.states.size())
        throw ValidationError("mixture has " + std::to_string(m.weights.size()) + " weights but " +
                              std::to_string(m.states.size()) + " states");
    Scalar total = 0;
    for (Scalar w : m.weights) {
        if (!(w >= Scalar(0))) throw ValidationError("mixture weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - Scalar(1)) > Scalar(1e-10)) {
        std::ostringstream msg;
        msg << "mixture weights must sum to 1, got " << static_cast<double>(total);
        throw ValidationError(msg.str());
    }
}

template <typename Scalar>
void validate(const StateFamily<Scalar>& family) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NumberState>) {
                if (s.n < 0) throw ValidationError("number state needs n >= 0");
            } else if constexpr (std::is_same_v<T, CoherentState<Scalar>>) {
                if (!std::isfinite(s.alpha.real()) || !std::isfinite(s.alpha.imag()))
                    throw ValidationError("coherent amplitude must be finite");
            } else if constexpr (std::is_same_v<T, ThermalState<Scalar>>) {
                if (!(s.beta > Scalar(0)) || !(s.energy > Scalar(0)) || !std::isfinite(s.beta_energy()))
                    throw ValidationError("thermal state needs beta > 0 and E > 0");
            } else if constexpr (std::is_same_v<T, MixtureState<Scalar>>) {
                validate(s);
            }
        },
        family);
}

template <typename Scalar = double>
struct TruncationPolicy {
    Index cutoff = 64;
    Scalar tail_tol = Scalar(1e-10);

    void validate() const {
        if (cutoff < 1) throw ValidationError("cutoff must be at least 1");
        if (!(tail_tol > Scalar(0) && tail_tol < Scalar(1)))
            throw ValidationError("tail tolerance must lie in (0, 1)");
    }
};

/// Probability mass of a Poisson(mean) distribution above `cutoff`.
template <typename Scalar>
Scalar poisson_tail(Scalar mean, Index cutoff) {
    if (mean == Scalar(0)) return Scalar(0);
    const Scalar log_mean = std::log(mean);
    // log of the term at n = cutoff + 1
    Scalar log_term = -mean;
    for (Index n = 1; n <= cutoff + 1; ++n) log_term += log_mean - std::log(Scalar(n));
    Scalar tail = 0;
    for (Index n = cutoff + 1;; ++n) {
        const Scalar term = std::exp(log_term);
        tail += term;
        if (Scalar(n) > mean && term <= tail * std::numeric_limits<Scalar>::epsilon()) break;
        log_term += log_mean - std::log(Scalar(n + 1));
    }
    return tail;
}

/// A state placed on a truncated basis, with the probability mass the
/// truncation discarded before renormalization.
template <typename Scalar = double>
struct Materialized {
    std::variant<FockVector<Scalar>, DensityMatrix<Scalar>> state;
    Scalar discarded_mass = 0;

    bool is_pure() const { return std::holds_alternative<FockVector<Scalar>>(state); }

    DensityMatrix<Scalar> density() const {
        if (is_pure()) return std::get<FockVector<Scalar>>(state).projector();
        return std::get<DensityMatrix<Scalar>>(state);
    }
};

namespace detail {

template <typename Scalar>
void check_tail(Scalar tail, const TruncationPolicy<Scalar>& policy, const char* what) {
    if (tail >= policy.tail_tol) {
        std::ostringstream msg;
        msg << what << " at cutoff " << policy.cutoff << " discards mass " << static_cast<double>(tail)
            << ", above tolerance " << static_cast<double>(policy.tail_tol);
        throw TruncationError(msg.str(), static_cast<double>(tail));
    }
}

template <typename Scalar>
Vector<Scalar> coherent_coefficients(Complex<Scalar> alpha, Index cutoff) {
    Vector<Scalar> c = Vector<Scalar>::Zero(cutoff + 1);
    const Scalar r = std::abs(alpha);
    if (r == Scalar(0)) {
        c(0) = Scalar(1);
        return c;
    }
    const Scalar phase = std::arg(alpha);
    const Scalar log_r = std::log(r);
    // log |c_n| = -r^2/2 + n log r - log(n!)/2, accumulated term by term
    Scalar log_mag = -r * r / Scalar(2);
    c(0) = std::exp(log_mag);
    for (Index n = 1; n <= cutoff; ++n) {
        log_mag += log_r - Scalar(0.5) * std::log(Scalar(n));
        c(n) = std::polar(std::exp(log_mag), Scalar(n) * phase);
    }
    return c;
}

}  // namespace detail

template <typename Scalar>
Materialized<Scalar> materialize(const StateFamily<Scalar>& family, const TruncationPolicy<Scalar>& policy) {
    policy.validate();
    validate(family);
    return std::visit(
        [&](const auto& s) -> Materialized<Scalar> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NumberState>) {
                if (s.n > policy.cutoff)
                    throw TruncationError("number state |" + std::to_string(s.n) + "> exceeds cutoff " +
                                              std::to_string(policy.cutoff),
                                          1.0);
                return {FockVector<Scalar>::number(s.n), Scalar(0)};
            } else if constexpr (std::is_same_v<T, CoherentState<Scalar>>) {
                const Scalar tail = poisson_tail(std::norm(s.alpha), policy.cutoff);
                detail::check_tail(tail, policy, "coherent state");
                return {FockVector<Scalar>::normalized(detail::coherent_coefficients(s.alpha, policy.cutoff)),
                        tail};
            } else if constexpr (std::is_same_v<T, ThermalState<Scalar>>) {
                const Scalar x = s.beta_energy();
                const Scalar tail = std::exp(-x * Scalar(policy.cutoff + 1));
                detail::check_tail(tail, policy, "thermal state");
                // (1 - e^{-x}) e^{-x n}, renormalized over n <= N
                const Scalar norm = -std::expm1(-x) / -std::expm1(-x * Scalar(policy.cutoff + 1));
                DensityMatrix<Scalar> rho = DensityMatrix<Scalar>::Zero(policy.cutoff + 1, policy.cutoff + 1);
                for (Index n = 0; n <= policy.cutoff; ++n) rho(n, n) = norm * std::exp(-x * Scalar(n));
                return {std::move(rho), tail};
            } else if constexpr (std::is_same_v<T, CustomState<Scalar>>) {
                const auto& c = s.psi.coeffs();
                if (c.size() <= policy.cutoff + 1) return {s.psi, Scalar(0)};
                const Scalar tail = c.tail(c.size() - policy.cutoff - 1).squaredNorm();
                detail::check_tail(tail, policy, "custom state");
                return {FockVector<Scalar>::normalized(c.head(policy.cutoff + 1)), tail};
            } else {
                Index dim = 0;
                for (const auto& psi : s.states) dim = std::max(dim, psi.size());
                if (dim > policy.cutoff + 1)
                    throw TruncationError("mixture component exceeds cutoff " + std::to_string(policy.cutoff),
                                          1.0);
                DensityMatrix<Scalar> rho = DensityMatrix<Scalar>::Zero(dim, dim);
                for (std::size_t k = 0; k < s.states.size(); ++k) {
                    const auto& c = s.states[k].coeffs();
                    rho.topLeftCorner(c.size(), c.size()) += s.weights[k] * (c * c.adjoint());
                }
                return {std::move(rho), Scalar(0)};
            }
        },
        family);
}

template <typename Scalar = double>
struct ProfileSample {
    Scalar position = 0;
    Complex<Scalar> value{};
};

template <typename Scalar = double>
struct Interval {
    Scalar lo = 0;
    Scalar hi = 0;
};

/// Fraction q0^2 of the mode intensity |q(x)|^2 lying inside `region`, by
/// trapezoidal quadrature on the sample grid. Segments cut by the region
/// boundary are integrated over their linear interpolant.
template <typename Scalar>
Scalar overlap_from_profile(std::span<const ProfileSample<Scalar>> samples, Interval<Scalar> region) {
    if (samples.empty()) throw ValidationError("profile has no samples");
    if (!(region.lo <= region.hi)) throw ValidationError("region bounds must satisfy lo <= hi");
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (!(samples[k].position > samples[k - 1].position))
            throw ValidationError("profile positions must be strictly increasing");

    Scalar total = 0;
    Scalar inside = 0;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        const Scalar x0 = samples[k].position;
        const Scalar x1 = samples[k + 1].position;
        const Scalar y0 = std::norm(samples[k].value);
        const Scalar y1 = std::norm(samples[k + 1].value);
        total += (x1 - x0) * (y0 + y1) / Scalar(2);

        const Scalar a = std::max(x0, region.lo);
        const Scalar b = std::min(x1, region.hi);
        if (a >= b) continue;
        const auto at = [&](Scalar x) { return y0 + (y1 - y0) * ((x - x0) / (x1 - x0)); };
        inside += (b - a) * (at(a) + at(b)) / Scalar(2);
    }
    if (!(total > Scalar(0))) throw ValidationError("profile has zero total norm");
    return std::clamp(inside / total, Scalar(0), Scalar(1));
}

enum class ViolationKind { NotSquare, NonFinite, NotHermitian, TraceNotOne, NotPositive };

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::NotSquare: return "not-square";
        case ViolationKind::NonFinite: return "non-finite";
        case ViolationKind::NotHermitian: return "not-hermitian";
        case ViolationKind::TraceNotOne: return "trace-not-one";
        case ViolationKind::NotPositive: return "not-positive";
    }
    return "unknown";
}

template <typename Scalar = double>
struct Violation {
    ViolationKind kind;
    /// Size of the violation: max |rho - rho^dagger|, |Tr rho - 1|, or -lambda_min.
    Scalar magnitude;
};

/// Empty iff `rho` is Hermitian, trace one, and PSD within `tol`.
template <typename Derived>
auto validate_density_matrix(const Eigen::MatrixBase<Derived>& rho, typename Derived::RealScalar tol) {
    using Scalar = typename Derived::RealScalar;
    std::vector<Violation<Scalar>> out;
    if (rho.rows() != rho.cols()) {
        out.push_back({ViolationKind::NotSquare, Scalar(std::abs(rho.rows() - rho.cols()))});
        return out;
    }
    if (!rho.allFinite()) {
        out.push_back({ViolationKind::NonFinite, std::numeric_limits<Scalar>::infinity()});
        return out;
    }
    const DensityMatrix<Scalar> m = rho;
    const Scalar asym = m.size() ? (m - m.adjoint()).cwiseAbs().maxCoeff() : Scalar(0);
    if (asym > tol) out.push_back({ViolationKind::NotHermitian, asym});

    const Scalar trace_dev = std::abs(m.trace() - Complex<Scalar>(1));
    if (trace_dev > tol) out.push_back({ViolationKind::TraceNotOne, trace_dev});

    if (m.size()) {
        const DensityMatrix<Scalar> h = (m + m.adjoint()) / Scalar(2);
        Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> es(h, Eigen::EigenvaluesOnly);
        const Scalar lambda_min = es.eigenvalues().minCoeff();
        if (lambda_min < -tol) out.push_back({ViolationKind::NotPositive, -lambda_min});
    }
    return out;
}

template <typename Scalar>
std::string describe(const std::vector<Violation<Scalar>>& violations) {
    std::ostringstream s;
    for (std::size_t k = 0; k < violations.size(); ++k) {
        if (k) s << "; ";
        s << to_string(violations[k].kind) << " (" << static_cast<double>(violations[k].magnitude) << ")";
    }
    return s.str();
}

/// <N> = sum_n n P(n).
template <typename Scalar>
Scalar number_expectation(const FockVector<Scalar>& psi) {
    Scalar mean = 0;
    for (Index n = 0; n < psi.size(); ++n) mean += Scalar(n) * std::norm(psi(n));
    return mean;
}

template <typename Derived>
typename Derived::RealScalar number_expectation(const Eigen::MatrixBase<Derived>& rho) {
    using Scalar = typename Derived::RealScalar;
    Scalar mean = 0;
    for (Index n = 0; n < rho.rows(); ++n) mean += Scalar(n) * std::real(rho(n, n));
    return mean;
}

}  // namespace probeview

#endif  // PROBEVIEW_FOCK_HPP
