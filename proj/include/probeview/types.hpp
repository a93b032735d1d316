#ifndef PROBEVIEW_TYPES_HPP
#define PROBEVIEW_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace probeview {

using Index = Eigen::Index;

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Amplitudes over the single-mode number basis |0>, |1>, ..., |N>.
template <typename Scalar>
using Vector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense operator on the truncated number basis. Whether it is a valid
/// state (Hermitian, unit trace, PSD) is checked by validate_density_matrix.
template <typename Scalar>
using DensityMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Vectord = Vector<double>;
using DensityMatrixd = DensityMatrix<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or malformed input.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The basis cutoff cannot hold the requested state to the requested tolerance.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double tail_mass)
        : Error(what), tail_mass_(tail_mass) {}

    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

/// q0 = 0: the reduced state is the vacuum and no finite inverse temperature exists.
class VacuumLimit : public Error {
public:
    using Error::Error;
};

/// Two routes that must agree disagreed beyond tolerance.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace probeview

#endif  // PROBEVIEW_TYPES_HPP
