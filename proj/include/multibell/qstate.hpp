#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace multibell {

// N-qubit states as dense density matrices. Qubit 0 is the leftmost tensor
// factor, so basis index b reads as big-endian binary |b0 b1 ... b_{n-1}>.

struct QuantumState {
    int n_qubits = 0;
    Eigen::MatrixXcd rho;

    Eigen::Index dim() const { return rho.rows(); }
};

namespace detail {

inline Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi) {
    return psi * psi.adjoint();
}

}  // namespace detail

// Throws validation_error unless rho is Hermitian (1e-12), unit trace (1e-12)
// and positive semidefinite (smallest eigenvalue >= -1e-10).
inline void validate(const QuantumState& s) {
    const Eigen::Index d = Eigen::Index(1) << s.n_qubits;
    if (s.rho.rows() != d || s.rho.cols() != d)
        throw validation_error("density matrix is not 2^n x 2^n");
    const double herm = (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) throw validation_error("density matrix not Hermitian");
    if (std::abs(s.rho.trace().real() - 1.0) > 1e-12 || std::abs(s.rho.trace().imag()) > 1e-12)
        throw validation_error("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw validation_error("density matrix has a negative eigenvalue");
}

// cos(alpha)|0...0> + sin(alpha)|1...1>
inline QuantumState make_ghz(int n, double alpha) {
    if (n < 2) throw arity_error("make_ghz requires n >= 2");
    if (!std::isfinite(alpha)) throw domain_error("make_ghz: alpha must be finite");
    const Eigen::Index d = Eigen::Index(1) << n;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi(0) = std::cos(alpha);
    psi(d - 1) = std::sin(alpha);
    return QuantumState{n, detail::pure_density(psi)};
}

// Symmetric one-excitation state, written with the excitation as the single
// |0> among |1>s. This sign convention yields T_{z...z} = +1 and pair
// components -2/N for three qubits.
inline QuantumState make_w(int n) {
    if (n < 3) throw arity_error("make_w requires n >= 3");
    const Eigen::Index d = Eigen::Index(1) << n;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    const double amp = 1.0 / std::sqrt(double(n));
    for (int q = 0; q < n; ++q) {
        const Eigen::Index idx = (d - 1) ^ (Eigen::Index(1) << (n - 1 - q));
        psi(idx) = amp;
    }
    return QuantumState{n, detail::pure_density(psi)};
}

// sqrt(1/3) ( |0000> + |1111> + 1/2 (|1010> + |0101> + |0110> + |1001>) )
inline QuantumState make_four_photon() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    const double a = 1.0 / std::sqrt(3.0);
    psi(0b0000) = a;
    psi(0b1111) = a;
    psi(0b1010) = a / 2.0;
    psi(0b0101) = a / 2.0;
    psi(0b0110) = a / 2.0;
    psi(0b1001) = a / 2.0;
    return QuantumState{4, detail::pure_density(psi)};
}

// v * rho + (1 - v) * identity/2^n. The full correlation tensor scales
// exactly linearly in v because the noise term has zero full correlations.
inline QuantumState mix_white_noise(const QuantumState& s, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw domain_error("mix_white_noise: v outside [0,1]");
    const Eigen::Index d = s.rho.rows();
    Eigen::MatrixXcd mixed =
        v * s.rho + ((1.0 - v) / double(d)) * Eigen::MatrixXcd::Identity(d, d);
    return QuantumState{s.n_qubits, std::move(mixed)};
}

}  // namespace multibell
