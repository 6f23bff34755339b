#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "corrtensor.hpp"
#include "criteria.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace multibell {

// ----------------------------------------------------------------------
// sign functions on {+1,-1}^2
// ----------------------------------------------------------------------

// Index order: (+,+), (+,-), (-,+), (-,-).
struct SignFunction {
    std::array<int, 4> values{1, 1, 1, 1};

    int operator()(int s1, int s2) const {
        return values[std::size_t((s1 < 0 ? 2 : 0) + (s2 < 0 ? 1 : 0))];
    }

    // S factors as f(s1)g(s2) exactly when the product of its four values
    // is +1; the other eight functions are the non-factorable ones.
    bool factorable() const { return values[0] * values[1] * values[2] * values[3] == 1; }
};

inline std::vector<SignFunction> all_sign_functions() {
    std::vector<SignFunction> out;
    for (int m = 0; m < 16; ++m) {
        SignFunction s;
        for (int i = 0; i < 4; ++i) s.values[std::size_t(i)] = (m >> i) & 1 ? -1 : 1;
        out.push_back(s);
    }
    return out;
}

// ----------------------------------------------------------------------
// inequality families
// ----------------------------------------------------------------------

enum class Family { f442, f332, fN };

inline std::string to_string(Family f) {
    switch (f) {
        case Family::f442: return "f442";
        case Family::f332: return "f332";
        case Family::fN: return "fN";
    }
    return "?";
}

inline Family family_from_string(const std::string& s) {
    if (s == "f442") return Family::f442;
    if (s == "f332") return Family::f332;
    if (s == "fN") return Family::fN;
    throw parse_error("unknown family: " + s);
}

struct InequalitySpec {
    Family family = Family::f442;
    int n_parties = 3;
    std::vector<int> settings_per_party;
    double classical_bound = 8.0;
};

inline InequalitySpec inequality_442() { return {Family::f442, 3, {4, 4, 2}, 8.0}; }

// Three-setting variant; party storage order is (first-block setting,
// second-block pair), i.e. indices 0,1,2 hold settings 1,3,4.
inline InequalitySpec inequality_332() { return {Family::f332, 3, {3, 3, 2}, 8.0}; }

inline InequalitySpec inequality_N(int n) {
    if (n < 3) throw arity_error("inequality_N requires at least 3 parties");
    InequalitySpec s;
    s.family = Family::fN;
    s.n_parties = n;
    s.settings_per_party.assign(std::size_t(n) - 1, 4);
    s.settings_per_party.push_back(2);
    s.classical_bound = std::pow(2.0, n);
    return s;
}

// Per-party measurement directions, settings[party][k], unit vectors.
struct SettingsAssignment {
    std::vector<std::vector<Eigen::Vector3d>> settings;
};

namespace detail {

inline void check_settings_shape(const CorrelationTensor& t, const SettingsAssignment& s,
                                 const std::vector<int>& per_party, const char* what) {
    if (int(s.settings.size()) != t.n_parties || int(per_party.size()) != t.n_parties)
        throw arity_error(std::string(what) + ": party count mismatch");
    for (int j = 0; j < t.n_parties; ++j) {
        if (int(s.settings[std::size_t(j)].size()) != per_party[std::size_t(j)])
            throw arity_error(std::string(what) + ": settings count mismatch");
        for (const auto& v : s.settings[std::size_t(j)])
            if (std::abs(v.norm() - 1.0) > 1e-10)
                throw validation_error(std::string(what) + ": non-unit setting vector");
    }
}

inline double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// rank-3 contractions, explicit loops over the 27 entries
inline double triple(const CorrelationTensor& t, const Eigen::Vector3d& a,
                     const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) v += t.entries[std::size_t(9 * i + 3 * j + k)] * a(i) * b(j) * c(k);
    return v;
}

// Contract the two modes other than `mode`; x applies to the lower one,
// y to the higher one.
inline Eigen::Vector3d fiber(const CorrelationTensor& t, int mode, const Eigen::Vector3d& x,
                             const Eigen::Vector3d& y) {
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double e = t.entries[std::size_t(9 * i + 3 * j + k)];
                if (mode == 0) g(i) += e * x(j) * y(k);
                else if (mode == 1) g(j) += e * x(i) * y(k);
                else g(k) += e * x(i) * y(j);
            }
    return g;
}

constexpr std::array<int, 2> kSigns{+1, -1};

}  // namespace detail

// ----------------------------------------------------------------------
// expression values
// ----------------------------------------------------------------------

// Sum of the eight moduli, first-block settings with the C sum, second-block
// settings with the C difference. Summation order: s1 outer, s2 inner, +1
// before -1, first block before second.
inline double lhs_moduli_442(const CorrelationTensor& t, const SettingsAssignment& s) {
    if (t.n_parties != 3) throw arity_error("lhs_moduli_442 requires 3 parties");
    detail::check_settings_shape(t, s, {4, 4, 2}, "lhs_moduli_442");
    const auto& A = s.settings[0];
    const auto& B = s.settings[1];
    const Eigen::Vector3d cp = s.settings[2][0] + s.settings[2][1];
    const Eigen::Vector3d cm = s.settings[2][0] - s.settings[2][1];
    double acc = 0.0;
    for (int s1 : detail::kSigns)
        for (int s2 : detail::kSigns)
            acc += std::abs(detail::triple(t, A[0] + double(s1) * A[1], B[0] + double(s2) * B[1], cp));
    for (int s1 : detail::kSigns)
        for (int s2 : detail::kSigns)
            acc += std::abs(detail::triple(t, A[2] + double(s1) * A[3], B[2] + double(s2) * B[3], cm));
    return acc;
}

// Signed form: one modulus of the double sum weighted by the two sign
// functions. Maximizing over all 256 sign-function pairs reproduces the
// moduli form term for term.
inline double lhs_linear(const CorrelationTensor& t, const SettingsAssignment& s,
                         const SignFunction& sp, const SignFunction& spp) {
    if (t.n_parties != 3) throw arity_error("lhs_linear requires 3 parties");
    detail::check_settings_shape(t, s, {4, 4, 2}, "lhs_linear");
    const auto& A = s.settings[0];
    const auto& B = s.settings[1];
    const Eigen::Vector3d cp = s.settings[2][0] + s.settings[2][1];
    const Eigen::Vector3d cm = s.settings[2][0] - s.settings[2][1];
    double acc = 0.0;
    for (int s1 : detail::kSigns)
        for (int s2 : detail::kSigns)
            acc += sp(s1, s2) * detail::triple(t, A[0] + double(s1) * A[1], B[0] + double(s2) * B[1], cp);
    for (int s1 : detail::kSigns)
        for (int s2 : detail::kSigns)
            acc += spp(s1, s2) * detail::triple(t, A[2] + double(s1) * A[3], B[2] + double(s2) * B[3], cm);
    return std::abs(acc);
}

// Three-setting expression: 4 |T(A1,B1,C1+C2)| plus the four second-block
// moduli with the C difference. Settings order per first two parties is
// (1, 3, 4).
inline double lhs_332(const CorrelationTensor& t, const SettingsAssignment& s) {
    if (t.n_parties != 3) throw arity_error("lhs_332 requires 3 parties");
    detail::check_settings_shape(t, s, {3, 3, 2}, "lhs_332");
    const auto& A = s.settings[0];
    const auto& B = s.settings[1];
    const Eigen::Vector3d cp = s.settings[2][0] + s.settings[2][1];
    const Eigen::Vector3d cm = s.settings[2][0] - s.settings[2][1];
    double acc = 4.0 * std::abs(detail::triple(t, A[0], B[0], cp));
    for (int s1 : detail::kSigns)
        for (int s2 : detail::kSigns)
            acc += std::abs(detail::triple(t, A[1] + double(s1) * A[2], B[1] + double(s2) * B[2], cm));
    return acc;
}

// N-party expression: first-block settings pair with the C difference,
// second-block settings with the C sum. Pattern order is lexicographic with
// party 0 slowest and the +1 branch first.
inline double lhs_N(const CorrelationTensor& t, const SettingsAssignment& s) {
    const int n = t.n_parties;
    if (n < 3) throw arity_error("lhs_N requires at least 3 parties");
    std::vector<int> shape(std::size_t(n) - 1, 4);
    shape.push_back(2);
    detail::check_settings_shape(t, s, shape, "lhs_N");

    const Eigen::Vector3d cp = s.settings[std::size_t(n) - 1][0] + s.settings[std::size_t(n) - 1][1];
    const Eigen::Vector3d cm = s.settings[std::size_t(n) - 1][0] - s.settings[std::size_t(n) - 1][1];
    double acc = 0.0;
    for (int block = 0; block < 2; ++block) {
        const int base = block == 0 ? 0 : 2;
        detail::DynTensor cur = detail::from_corr(slice_last(t, block == 0 ? cm : cp));
        for (int j = 0; j + 1 < n; ++j) {
            const auto& v = s.settings[std::size_t(j)];
            cur = detail::mode_reduce(cur, detail::sum_diff_rows({v[std::size_t(base)], v[std::size_t(base) + 1]}), j);
        }
        for (double x : cur.data) acc += std::abs(x);
    }
    return acc;
}

// ----------------------------------------------------------------------
// direct maximization over settings
// ----------------------------------------------------------------------

struct BellMaximum {
    double value = 0.0;
    SettingsAssignment argmax;
    int restarts_used = 0;
    double spread = 0.0;
};

namespace detail {

constexpr int kSeesawMaxIters = 1000;

inline Eigen::Vector3d unit_or(const Eigen::Vector3d& v, const Eigen::Vector3d& keep) {
    return normalized_or(v, keep);
}

// One alternating sweep per family. Each update holds all other settings
// fixed, freezes the modulus signs and maximizes the resulting linear form
// exactly, so the objective never decreases.

inline double seesaw_442(const CorrelationTensor& t, SettingsAssignment& s) {
    auto& A = s.settings[0];
    auto& B = s.settings[1];
    auto& C = s.settings[2];
    double val = -1.0;
    for (int it = 0; it < kSeesawMaxIters; ++it) {
        const Eigen::Vector3d cp = C[0] + C[1];
        const Eigen::Vector3d cm = C[0] - C[1];
        for (int block = 0; block < 2; ++block) {
            const std::size_t a0 = block == 0 ? 0 : 2;
            const Eigen::Vector3d& cc = block == 0 ? cp : cm;
            // first-party pair
            Eigen::Vector3d w1 = Eigen::Vector3d::Zero(), w2 = Eigen::Vector3d::Zero();
            for (int s2 : kSigns) {
                const Eigen::Vector3d g = fiber(t, 0, B[a0] + double(s2) * B[a0 + 1], cc);
                for (int s1 : kSigns) {
                    const double e = sgn((A[a0] + double(s1) * A[a0 + 1]).dot(g));
                    w1 += e * g;
                    w2 += e * double(s1) * g;
                }
            }
            A[a0] = unit_or(w1, A[a0]);
            A[a0 + 1] = unit_or(w2, A[a0 + 1]);
            // second-party pair
            w1.setZero();
            w2.setZero();
            for (int s1 : kSigns) {
                const Eigen::Vector3d h = fiber(t, 1, A[a0] + double(s1) * A[a0 + 1], cc);
                for (int s2 : kSigns) {
                    const double e = sgn((B[a0] + double(s2) * B[a0 + 1]).dot(h));
                    w1 += e * h;
                    w2 += e * double(s2) * h;
                }
            }
            B[a0] = unit_or(w1, B[a0]);
            B[a0 + 1] = unit_or(w2, B[a0 + 1]);
        }
        // shared last-party pair; first block carries the sum, second the
        // difference, so the pair update decouples into G +- H
        Eigen::Vector3d g = Eigen::Vector3d::Zero(), h = Eigen::Vector3d::Zero();
        for (int s1 : kSigns)
            for (int s2 : kSigns) {
                const Eigen::Vector3d k1 = fiber(t, 2, A[0] + double(s1) * A[1], B[0] + double(s2) * B[1]);
                g += sgn(k1.dot(cp)) * k1;
                const Eigen::Vector3d k2 = fiber(t, 2, A[2] + double(s1) * A[3], B[2] + double(s2) * B[3]);
                h += sgn(k2.dot(cm)) * k2;
            }
        C[0] = unit_or(g + h, C[0]);
        C[1] = unit_or(g - h, C[1]);

        const double nv = lhs_moduli_442(t, s);
        if (std::abs(nv - val) < 1e-12) return nv;
        val = nv;
    }
    return val;
}

inline double seesaw_332(const CorrelationTensor& t, SettingsAssignment& s) {
    auto& A = s.settings[0];
    auto& B = s.settings[1];
    auto& C = s.settings[2];
    double val = -1.0;
    for (int it = 0; it < kSeesawMaxIters; ++it) {
        const Eigen::Vector3d cp = C[0] + C[1];
        const Eigen::Vector3d cm = C[0] - C[1];
        {
            const Eigen::Vector3d g = fiber(t, 0, B[0], cp);
            A[0] = unit_or(sgn(A[0].dot(g)) * g, A[0]);
            const Eigen::Vector3d h = fiber(t, 1, A[0], cp);
            B[0] = unit_or(sgn(B[0].dot(h)) * h, B[0]);
        }
        // second block, as in the four-setting sweep
        Eigen::Vector3d w1 = Eigen::Vector3d::Zero(), w2 = Eigen::Vector3d::Zero();
        for (int s2 : kSigns) {
            const Eigen::Vector3d g = fiber(t, 0, B[1] + double(s2) * B[2], cm);
            for (int s1 : kSigns) {
                const double e = sgn((A[1] + double(s1) * A[2]).dot(g));
                w1 += e * g;
                w2 += e * double(s1) * g;
            }
        }
        A[1] = unit_or(w1, A[1]);
        A[2] = unit_or(w2, A[2]);
        w1.setZero();
        w2.setZero();
        for (int s1 : kSigns) {
            const Eigen::Vector3d h = fiber(t, 1, A[1] + double(s1) * A[2], cm);
            for (int s2 : kSigns) {
                const double e = sgn((B[1] + double(s2) * B[2]).dot(h));
                w1 += e * h;
                w2 += e * double(s2) * h;
            }
        }
        B[1] = unit_or(w1, B[1]);
        B[2] = unit_or(w2, B[2]);

        const Eigen::Vector3d g0 = fiber(t, 2, A[0], B[0]);
        const double e0 = sgn(g0.dot(cp));
        Eigen::Vector3d h = Eigen::Vector3d::Zero();
        for (int s1 : kSigns)
            for (int s2 : kSigns) {
                const Eigen::Vector3d k = fiber(t, 2, A[1] + double(s1) * A[2], B[1] + double(s2) * B[2]);
                h += sgn(k.dot(cm)) * k;
            }
        C[0] = unit_or(4.0 * e0 * g0 + h, C[0]);
        C[1] = unit_or(4.0 * e0 * g0 - h, C[1]);

        const double nv = lhs_332(t, s);
        if (std::abs(nv - val) < 1e-12) return nv;
        val = nv;
    }
    return val;
}

inline double seesaw_N(const CorrelationTensor& t, SettingsAssignment& s) {
    const int n = t.n_parties;
    auto& C = s.settings[std::size_t(n) - 1];
    double val = -1.0;
    for (int it = 0; it < kSeesawMaxIters; ++it) {
        const Eigen::Vector3d cp = C[0] + C[1];
        const Eigen::Vector3d cm = C[0] - C[1];
        // first block rides the C difference, second the C sum
        for (int block = 0; block < 2; ++block) {
            const std::size_t base = block == 0 ? 0 : 2;
            const CorrelationTensor sliced = slice_last(t, block == 0 ? cm : cp);
            for (int j = 0; j + 1 < n; ++j) {
                std::vector<SettingPair> pairs;
                for (int k = 0; k + 1 < n; ++k)
                    pairs.emplace_back(s.settings[std::size_t(k)][base], s.settings[std::size_t(k)][base + 1]);
                const auto g = pattern_vectors(sliced, pairs, j);
                Eigen::Vector3d w1 = Eigen::Vector3d::Zero(), w2 = Eigen::Vector3d::Zero();
                const Eigen::Vector3d sum = s.settings[std::size_t(j)][base] + s.settings[std::size_t(j)][base + 1];
                const Eigen::Vector3d dif = s.settings[std::size_t(j)][base] - s.settings[std::size_t(j)][base + 1];
                for (const auto& gb : g) {
                    const double ep = sgn(gb.dot(sum));
                    const double em = sgn(gb.dot(dif));
                    w1 += (ep + em) * gb;
                    w2 += (ep - em) * gb;
                }
                s.settings[std::size_t(j)][base] = unit_or(w1, s.settings[std::size_t(j)][base]);
                s.settings[std::size_t(j)][base + 1] = unit_or(w2, s.settings[std::size_t(j)][base + 1]);
            }
        }
        // last-party pair
        Eigen::Vector3d h1 = Eigen::Vector3d::Zero(), h2 = Eigen::Vector3d::Zero();
        for (int block = 0; block < 2; ++block) {
            const std::size_t base = block == 0 ? 0 : 2;
            std::vector<SettingPair> pairs;
            for (int k = 0; k + 1 < n; ++k)
                pairs.emplace_back(s.settings[std::size_t(k)][base], s.settings[std::size_t(k)][base + 1]);
            const auto g = pattern_vectors(t, pairs, n - 1);
            const Eigen::Vector3d& cc = block == 0 ? cm : cp;
            for (const auto& gb : g) (block == 0 ? h1 : h2) += sgn(gb.dot(cc)) * gb;
        }
        C[0] = unit_or(h2 + h1, C[0]);
        C[1] = unit_or(h2 - h1, C[1]);

        const double nv = lhs_N(t, s);
        if (std::abs(nv - val) < 1e-12) return nv;
        val = nv;
    }
    return val;
}

// ---- start configurations ------------------------------------------

inline SettingsAssignment uniform_start(const InequalitySpec& spec, const Eigen::Vector3d& p,
                                        const Eigen::Vector3d& q) {
    SettingsAssignment s;
    for (int c : spec.settings_per_party) {
        std::vector<Eigen::Vector3d> v;
        if (c == 4) v = {p, q, p, q};
        else if (c == 3) v = {p, p, q};
        else v = {p, q};
        s.settings.push_back(std::move(v));
    }
    return s;
}

inline SettingsAssignment random_start(const InequalitySpec& spec, Rng& rng) {
    SettingsAssignment s;
    for (int c : spec.settings_per_party) {
        std::vector<Eigen::Vector3d> v;
        for (int i = 0; i < c; ++i) v.push_back(rng.unit_vector());
        s.settings.push_back(std::move(v));
    }
    return s;
}

// The closed-form settings realizing the two-term criterion value: block
// settings from the top singular planes of the two slices, last-party pair
// mixing the slice axes with the weight each block can deliver.
inline void svd_block_settings(const Eigen::Matrix3d& m, Eigen::Vector3d& a1, Eigen::Vector3d& a2,
                               Eigen::Vector3d& b1, Eigen::Vector3d& b2) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double phi = std::atan2(svd.singularValues()(1), svd.singularValues()(0));
    a1 = svd.matrixU().col(0);
    a2 = svd.matrixU().col(1);
    b1 = std::cos(phi) * svd.matrixV().col(0) + std::sin(phi) * svd.matrixV().col(1);
    b2 = std::cos(phi) * svd.matrixV().col(0) - std::sin(phi) * svd.matrixV().col(1);
}

inline SettingsAssignment construction_start_442(const CorrelationTensor& t,
                                                 const CriterionResult& crit) {
    const Eigen::Vector3d u = crit.argmax_frames.terms[0].last_axis;
    const Eigen::Vector3d v = crit.argmax_frames.terms[1].last_axis;
    const Eigen::Matrix3d mu = as_matrix(slice_last(t, u));
    const Eigen::Matrix3d mv = as_matrix(slice_last(t, v));
    SettingsAssignment s;
    s.settings.assign(3, {});
    s.settings[0].resize(4);
    s.settings[1].resize(4);
    svd_block_settings(mu, s.settings[0][0], s.settings[0][1], s.settings[1][0], s.settings[1][1]);
    svd_block_settings(mv, s.settings[0][2], s.settings[0][3], s.settings[1][2], s.settings[1][3]);
    const double tau = std::atan2(std::sqrt(top2_plane_norm(mv)), std::sqrt(top2_plane_norm(mu)));
    s.settings[2] = {std::cos(tau) * u + std::sin(tau) * v, std::cos(tau) * u - std::sin(tau) * v};
    return s;
}

inline SettingsAssignment construction_start_332(const CorrelationTensor& t,
                                                 const CriterionResult& crit) {
    const Eigen::Vector3d u = crit.argmax_frames.terms[0].last_axis;
    const Eigen::Vector3d v = crit.argmax_frames.terms[1].last_axis;
    const Eigen::Vector3d a = crit.argmax_frames.terms[0].planes[0].col(0);
    const Eigen::Vector3d b = crit.argmax_frames.terms[0].planes[1].col(0);
    const Eigen::Matrix3d mu = as_matrix(slice_last(t, u));
    const Eigen::Matrix3d mv = as_matrix(slice_last(t, v));
    SettingsAssignment s;
    s.settings.assign(3, {});
    s.settings[0].resize(3);
    s.settings[1].resize(3);
    s.settings[0][0] = a;
    s.settings[1][0] = b;
    svd_block_settings(mv, s.settings[0][1], s.settings[0][2], s.settings[1][1], s.settings[1][2]);
    const double q1 = std::abs(a.dot(mu * b));
    const double tau = std::atan2(std::sqrt(top2_plane_norm(mv)), q1);
    s.settings[2] = {std::cos(tau) * u + std::sin(tau) * v, std::cos(tau) * u - std::sin(tau) * v};
    return s;
}

inline SettingsAssignment construction_start_N(const CriterionResult& crit, int n) {
    // term 1 (axis u) rides the C sum, so its planes feed the second block;
    // term 2 (axis v) feeds the first block. Equal mixing, refined by the
    // see-saw afterwards.
    const double q = 1.0 / std::sqrt(2.0);
    const Eigen::Vector3d u = crit.argmax_frames.terms[0].last_axis;
    const Eigen::Vector3d v = crit.argmax_frames.terms[1].last_axis;
    SettingsAssignment s;
    for (int j = 0; j + 1 < n; ++j) {
        const Eigen::MatrixXd& p2 = crit.argmax_frames.terms[1].planes[std::size_t(j)];
        const Eigen::MatrixXd& p1 = crit.argmax_frames.terms[0].planes[std::size_t(j)];
        std::vector<Eigen::Vector3d> vs(4);
        vs[0] = q * (p2.col(0) + p2.col(1));
        vs[1] = q * (p2.col(0) - p2.col(1));
        vs[2] = q * (p1.col(0) + p1.col(1));
        vs[3] = q * (p1.col(0) - p1.col(1));
        s.settings.push_back(std::move(vs));
    }
    s.settings.push_back({q * (u + v), q * (u - v)});
    return s;
}

}  // namespace detail

inline BellMaximum maximize_lhs(const CorrelationTensor& t, const InequalitySpec& spec,
                                int restarts = 32, std::uint64_t seed = 0) {
    if (t.n_parties != spec.n_parties) throw arity_error("maximize_lhs: party count mismatch");
    if (restarts < 1) throw domain_error("maximize_lhs requires restarts >= 1");

    // start list: criterion-derived construction, then canned frames, then
    // seeded random draws
    std::vector<SettingsAssignment> starts;
    switch (spec.family) {
        case Family::f442:
            starts.push_back(detail::construction_start_442(t, condition_442_numeric(t, 16, seed)));
            break;
        case Family::f332:
            starts.push_back(detail::construction_start_332(t, condition_332(t, 16, seed)));
            break;
        case Family::fN:
            starts.push_back(detail::construction_start_N(condition_N(t, 16, seed), t.n_parties));
            break;
    }
    const Eigen::Vector3d x = Eigen::Vector3d::UnitX(), y = Eigen::Vector3d::UnitY(),
                          z = Eigen::Vector3d::UnitZ();
    const double q = 1.0 / std::sqrt(2.0);
    starts.push_back(detail::uniform_start(spec, x, y));
    starts.push_back(detail::uniform_start(spec, z, x));
    starts.push_back(detail::uniform_start(spec, q * (x + y), q * (x - y)));
    starts.push_back(detail::uniform_start(spec, q * (z + x), q * (z - x)));
    Rng rng(seed);
    while (int(starts.size()) < restarts) starts.push_back(detail::random_start(spec, rng));
    starts.resize(std::size_t(restarts));

    BellMaximum best;
    best.value = -1.0;
    best.restarts_used = restarts;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto& s : starts) {
        double v = 0.0;
        switch (spec.family) {
            case Family::f442: v = detail::seesaw_442(t, s); break;
            case Family::f332: v = detail::seesaw_332(t, s); break;
            case Family::fN: v = detail::seesaw_N(t, s); break;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (v > best.value) {
            best.value = v;
            best.argmax = s;
        }
    }
    best.spread = hi - lo;
    return best;
}

}  // namespace multibell
