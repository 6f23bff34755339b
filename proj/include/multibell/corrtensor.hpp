#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "qstate.hpp"

namespace multibell {

// Full N-party correlation tensor, 3 values per index with (0,1,2) = (x,y,z).
// Stored dense in row-major order: party 0 varies slowest.
struct CorrelationTensor {
    int n_parties = 0;
    std::vector<double> entries;

    static std::size_t size_for(int n) {
        std::size_t s = 1;
        for (int i = 0; i < n; ++i) s *= 3;
        return s;
    }

    static CorrelationTensor zero(int n) {
        return CorrelationTensor{n, std::vector<double>(size_for(n), 0.0)};
    }

    double& at(const std::vector<int>& idx) { return entries[flat(idx)]; }
    double at(const std::vector<int>& idx) const { return entries[flat(idx)]; }

    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int k = 0; k < n_parties; ++k) f = f * 3 + std::size_t(idx[std::size_t(k)]);
        return f;
    }

    double frobenius_sq() const {
        double s = 0.0;
        for (double e : entries) s += e * e;
        return s;
    }
};

// Rows of the matrix are the new basis directions for one party.
using LocalFrame = Eigen::Matrix3d;

inline bool is_orthonormal(const LocalFrame& r, double tol = 1e-10) {
    return (r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol;
}

// ----------------------------------------------------------------------
// tensor algebra helpers
// ----------------------------------------------------------------------

// Contract away the last party: out_{i1..i_{N-1}} = sum_j T_{i1..i_{N-1} j} u_j.
inline CorrelationTensor slice_last(const CorrelationTensor& t, const Eigen::Vector3d& u) {
    CorrelationTensor out = CorrelationTensor::zero(t.n_parties - 1);
    const std::size_t rows = out.entries.size();
    for (std::size_t r = 0; r < rows; ++r) {
        const double* p = t.entries.data() + 3 * r;
        out.entries[r] = p[0] * u[0] + p[1] * u[1] + p[2] * u[2];
    }
    return out;
}

// Apply a 3x3 matrix along one mode: out = M x_mode t.
inline CorrelationTensor mode_multiply(const CorrelationTensor& t, const Eigen::Matrix3d& m,
                                       int mode) {
    CorrelationTensor out = CorrelationTensor::zero(t.n_parties);
    std::size_t inner = 1;
    for (int k = mode + 1; k < t.n_parties; ++k) inner *= 3;
    const std::size_t outer = t.entries.size() / (3 * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base = o * 3 * inner;
        for (std::size_t i = 0; i < inner; ++i) {
            const double a0 = t.entries[base + 0 * inner + i];
            const double a1 = t.entries[base + 1 * inner + i];
            const double a2 = t.entries[base + 2 * inner + i];
            for (int j = 0; j < 3; ++j)
                out.entries[base + std::size_t(j) * inner + i] =
                    m(j, 0) * a0 + m(j, 1) * a1 + m(j, 2) * a2;
        }
    }
    return out;
}

// 3x3 Gram matrix of the mode-j unfolding: G = M M^T with M the 3 x 3^{N-1}
// matrix whose rows are the mode-j fibers.
inline Eigen::Matrix3d mode_gram(const CorrelationTensor& t, int mode) {
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    std::size_t inner = 1;
    for (int k = mode + 1; k < t.n_parties; ++k) inner *= 3;
    const std::size_t outer = t.entries.size() / (3 * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base = o * 3 * inner;
        for (std::size_t i = 0; i < inner; ++i) {
            const double a[3] = {t.entries[base + i], t.entries[base + inner + i],
                                 t.entries[base + 2 * inner + i]};
            for (int r = 0; r < 3; ++r)
                for (int c = r; c < 3; ++c) g(r, c) += a[r] * a[c];
        }
    }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < r; ++c) g(r, c) = g(c, r);
    return g;
}

// ----------------------------------------------------------------------
// operations
// ----------------------------------------------------------------------

// T_{i1..iN} = Tr(rho sigma_{i1} x ... x sigma_{iN}).
// Each Pauli string is a signed permutation of the computational basis, so a
// single trace costs one pass over the 2^n diagonal: P|j> = phi_j |j ^ mask>
// with mask the x/y positions, hence Tr(rho P) = sum_j phi_j rho(j, j^mask).
inline CorrelationTensor compute_tensor(const QuantumState& state) {
    validate(state);
    const int n = state.n_qubits;
    CorrelationTensor t = CorrelationTensor::zero(n);
    const std::size_t dim = std::size_t(1) << n;
    std::vector<int> pauli(std::size_t(n), 0);
    for (std::size_t f = 0; f < t.entries.size(); ++f) {
        std::size_t rem = f;
        for (int k = n - 1; k >= 0; --k) {
            pauli[std::size_t(k)] = int(rem % 3);
            rem /= 3;
        }
        std::size_t mask = 0;
        for (int q = 0; q < n; ++q)
            if (pauli[std::size_t(q)] != 2) mask |= std::size_t(1) << (n - 1 - q);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < dim; ++j) {
            std::complex<double> phase(1.0, 0.0);
            for (int q = 0; q < n; ++q) {
                const int b = int((j >> (n - 1 - q)) & 1u);
                switch (pauli[std::size_t(q)]) {
                    case 0: break;                                              // x
                    case 1: phase *= std::complex<double>(0.0, b ? -1.0 : 1.0); break;  // y
                    case 2: if (b) phase = -phase; break;                       // z
                }
            }
            acc += phase * state.rho(Eigen::Index(j), Eigen::Index(j ^ mask));
        }
        if (std::abs(acc.imag()) > 1e-12)
            throw validation_error("correlation tensor entry has imaginary residue");
        t.entries[f] = acc.real();
    }
    return t;
}

// Multilinear change of local frames; frame rows are the new directions.
inline CorrelationTensor rotate(const CorrelationTensor& t,
                                const std::vector<LocalFrame>& frames) {
    if (int(frames.size()) != t.n_parties)
        throw arity_error("rotate: one frame per party required");
    for (const auto& r : frames)
        if (!is_orthonormal(r)) throw validation_error("rotate: frame not orthonormal");
    CorrelationTensor out = t;
    for (int k = 0; k < t.n_parties; ++k) out = mode_multiply(out, frames[std::size_t(k)], k);
    return out;
}

// Quantum correlation function E = T o (d_1 x ... x d_N) for unit directions.
inline double contract(const CorrelationTensor& t, const std::vector<Eigen::Vector3d>& dirs) {
    if (int(dirs.size()) != t.n_parties)
        throw arity_error("contract: one direction per party required");
    for (const auto& d : dirs)
        if (std::abs(d.norm() - 1.0) > 1e-10)
            throw validation_error("contract: direction not unit norm");
    CorrelationTensor cur = t;
    for (int k = t.n_parties; k > 1; --k) cur = slice_last(cur, dirs[std::size_t(k - 1)]);
    return cur.entries[0] * dirs[0][0] + cur.entries[1] * dirs[0][1] + cur.entries[2] * dirs[0][2];
}

// Schmidt decomposition of the tensor along one party:
//   T = sum_i P_i x gamma_i,  gamma_i orthonormal, P_i mutually orthogonal,
// norms decreasing. gamma_i sign fixed so its largest-|.| component is > 0.
struct SchmidtSlices {
    std::vector<Eigen::Vector3d> gammas;
    std::vector<CorrelationTensor> slices;
    std::vector<double> norms;
};

inline SchmidtSlices schmidt_split(const CorrelationTensor& t, int party) {
    if (t.n_parties < 2) throw arity_error("schmidt_split requires at least 2 parties");
    if (party < 0 || party >= t.n_parties) throw domain_error("schmidt_split: bad party index");

    // Unfold with the chosen party as columns, rows over the other parties in
    // their original order.
    const std::size_t rows = t.entries.size() / 3;
    Eigen::MatrixXd m(Eigen::Index(rows), 3);
    std::size_t inner = 1;
    for (int k = party + 1; k < t.n_parties; ++k) inner *= 3;
    for (std::size_t f = 0; f < t.entries.size(); ++f) {
        const std::size_t col = (f / inner) % 3;
        const std::size_t row = (f / (inner * 3)) * inner + (f % inner);
        m(Eigen::Index(row), Eigen::Index(col)) = t.entries[f];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtSlices out;
    for (int i = 0; i < 3; ++i) {
        Eigen::Vector3d gamma = svd.matrixV().col(i);
        Eigen::VectorXd left = svd.matrixU().col(i) * svd.singularValues()(i);
        int arg = 0;
        gamma.cwiseAbs().maxCoeff(&arg);
        if (gamma(arg) < 0.0) {
            gamma = -gamma;
            left = -left;
        }
        CorrelationTensor p = CorrelationTensor::zero(t.n_parties - 1);
        for (std::size_t r = 0; r < rows; ++r) p.entries[r] = left(Eigen::Index(r));
        out.gammas.push_back(gamma);
        out.slices.push_back(std::move(p));
        out.norms.push_back(svd.singularValues()(i));
    }
    return out;
}

// r1^2 + r2^2 for the two largest singular values of a 3x3 slice. Equals the
// maximum of sum_{k,l in 2d planes} (u_k^T p w_l)^2 over orthonormal pairs.
inline double top2_plane_norm(const Eigen::Matrix3d& p) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(p);
    const auto& s = svd.singularValues();
    return s(0) * s(0) + s(1) * s(1);
}

// Rank-2 tensors converted to matrix form, used when slicing 3-party tensors.
inline Eigen::Matrix3d as_matrix(const CorrelationTensor& t) {
    if (t.n_parties != 2) throw arity_error("as_matrix requires a 2-party tensor");
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = t.entries[std::size_t(3 * r + c)];
    return m;
}

}  // namespace multibell
