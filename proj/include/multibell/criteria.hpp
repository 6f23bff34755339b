#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "corrtensor.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace multibell {

enum class CriterionId { standard, c442, c332, cN };
enum class Method { analytic, numeric };

inline std::string to_string(CriterionId id) {
    switch (id) {
        case CriterionId::standard: return "standard";
        case CriterionId::c442: return "c442";
        case CriterionId::c332: return "c332";
        case CriterionId::cN: return "cN";
    }
    return "?";
}

inline std::string to_string(Method m) { return m == Method::analytic ? "analytic" : "numeric"; }

inline CriterionId criterion_from_string(const std::string& s) {
    if (s == "standard") return CriterionId::standard;
    if (s == "c442") return CriterionId::c442;
    if (s == "c332") return CriterionId::c332;
    if (s == "cN") return CriterionId::cN;
    throw parse_error("unknown criterion: " + s);
}

// Optimizing frames for one term of a criterion: a (possibly 1-column)
// direction subspace per leading party plus the last party's axis. The
// standard criterion stores its per-party setting pairs in `planes` and
// leaves `last_axis` zero.
struct TermFrames {
    std::vector<Eigen::MatrixXd> planes;  // 3 x d, orthonormal columns
    Eigen::Vector3d last_axis = Eigen::Vector3d::Zero();
};

struct FrameSet {
    std::vector<TermFrames> terms;
};

struct CriterionResult {
    CriterionId criterion_id = CriterionId::c442;
    double max_value = 0.0;
    double violation_factor = 0.0;  // sqrt(max_value)
    FrameSet argmax_frames;
    Method method = Method::numeric;
    int restarts_used = 0;
    double spread = 0.0;  // max - min over converged restarts
};

namespace detail {

constexpr double kConvergeTol = 1e-12;
constexpr int kMaxIters = 500;

inline Eigen::Vector3d normalized_or(const Eigen::Vector3d& v, const Eigen::Vector3d& fallback) {
    const double n = v.norm();
    return n > 1e-300 ? Eigen::Vector3d(v / n) : fallback;
}

// Top-d eigenvectors of a symmetric 3x3 matrix, descending eigenvalues.
inline Eigen::MatrixXd top_eigvecs(const Eigen::Matrix3d& g, int d) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);  // ascending order
    Eigen::MatrixXd u(3, d);
    for (int i = 0; i < d; ++i) u.col(i) = es.eigenvectors().col(2 - i);
    return u;
}

inline CorrelationTensor project_mode(const CorrelationTensor& t, const Eigen::MatrixXd& u,
                                      int mode) {
    return mode_multiply(t, Eigen::Matrix3d(u * u.transpose()), mode);
}

// Maximize |proj_{U_1 x .. x U_m} S|_F^2 over per-mode orthonormal subspaces
// of the given dimensions by alternating eigen updates. Monotone in exact
// arithmetic; iterates until the objective stalls.
inline double subspace_als(const CorrelationTensor& s, const std::vector<int>& dims,
                           std::vector<Eigen::MatrixXd>& planes) {
    const int m = s.n_parties;
    if (planes.empty()) {
        planes.resize(std::size_t(m));
        for (int j = 0; j < m; ++j) planes[std::size_t(j)] = top_eigvecs(mode_gram(s, j), dims[std::size_t(j)]);
    }
    double val = -1.0;
    for (int it = 0; it < kMaxIters; ++it) {
        for (int j = 0; j < m; ++j) {
            CorrelationTensor p = s;
            for (int k = 0; k < m; ++k)
                if (k != j) p = project_mode(p, planes[std::size_t(k)], k);
            planes[std::size_t(j)] = top_eigvecs(mode_gram(p, j), dims[std::size_t(j)]);
        }
        CorrelationTensor p = s;
        for (int k = 0; k < m; ++k) p = project_mode(p, planes[std::size_t(k)], k);
        const double nv = p.frobenius_sq();
        if (std::abs(nv - val) < kConvergeTol) return nv;
        val = nv;
    }
    return val;
}

// Gram over the last party of the tensor with the leading modes projected.
inline Eigen::Matrix3d projected_last_gram(const CorrelationTensor& t,
                                           const std::vector<Eigen::MatrixXd>& planes) {
    CorrelationTensor p = t;
    for (int k = 0; k + 1 < t.n_parties; ++k) p = project_mode(p, planes[std::size_t(k)], k);
    return mode_gram(p, t.n_parties - 1);
}

inline Eigen::Vector3d any_orthogonal(const Eigen::Vector3d& v) {
    const Eigen::Vector3d c =
        std::abs(v.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    return (c - v * v.dot(c)).normalized();
}

// Largest eigenvector of g restricted to the complement of `excl`.
inline Eigen::Vector3d constrained_top_eigvec(const Eigen::Matrix3d& g,
                                              const Eigen::Vector3d& excl) {
    const Eigen::Matrix3d q = Eigen::Matrix3d::Identity() - excl * excl.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(q * g * q);
    Eigen::Vector3d u = es.eigenvectors().col(2);
    u -= excl * excl.dot(u);  // kill numerical leakage along excl
    return normalized_or(u, any_orthogonal(excl));
}

// Closed-form rotation inside span(u, v) maximizing u'g1u + v'g2v for fixed
// symmetric g1, g2. The per-vector eigensolves above cannot exchange the
// roles of u and v; this move includes the pi/2 swap, so the pair does not
// get stuck with the two terms assigned to the wrong directions.
inline void rotate_in_pair_plane(const Eigen::Matrix3d& g1, const Eigen::Matrix3d& g2,
                                 Eigen::Vector3d& u, Eigen::Vector3d& v) {
    const double a1 = u.dot(g1 * u), b1 = u.dot(g1 * v), c1 = v.dot(g1 * v);
    const double a2 = u.dot(g2 * u), b2 = u.dot(g2 * v), c2 = v.dot(g2 * v);
    const double th = 0.5 * std::atan2(2.0 * (b1 - b2), (a1 + c2) - (c1 + a2));
    const double c = std::cos(th), s = std::sin(th);
    const Eigen::Vector3d nu = c * u + s * v;
    v = -s * u + c * v;
    u = nu;
}

// Start list for the last party's orthonormal pair. Every start is anchored
// to the eigenbasis of the last-mode Gram, so the whole search is covariant
// with local frame changes: the converged maximum cannot depend on the
// coordinates the tensor happens to be written in. The six ordered eigvector
// pairs hit the spectral optima directly, the diagonal combinations cover
// degenerate spectra, the rest are seeded random pairs in that basis.
inline std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> pair_starts(
    const CorrelationTensor& t, int restarts, std::uint64_t seed) {
    std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> out;
    const Eigen::MatrixXd b = top_eigvecs(mode_gram(t, t.n_parties - 1), 3);
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c)
            if (a != c) out.emplace_back(b.col(a), b.col(c));
    const double q = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 3; ++a)
        for (int c = a + 1; c < 3; ++c)
            out.emplace_back(q * (b.col(a) + b.col(c)), q * (b.col(a) - b.col(c)));
    Rng rng(seed);
    while (int(out.size()) < restarts) {
        const Eigen::Vector3d u = b * rng.unit_vector();
        Eigen::Vector3d v = b * rng.unit_vector();
        v -= u * u.dot(v);
        out.emplace_back(u, normalized_or(v, any_orthogonal(u)));
    }
    out.resize(std::size_t(restarts));
    return out;
}

struct PairEngineOutcome {
    double value = 0.0;
    Eigen::Vector3d u, v;
    std::vector<Eigen::MatrixXd> planes1, planes2;
    double spread = 0.0;
    int restarts = 0;
};

// Shared maximizer for the two-term criteria: over an orthonormal last-party
// pair (u, v) and independent per-party subspaces per term, maximize
//   |proj_1 (T . u)|^2 + |proj_2 (T . v)|^2 .
// dims1/dims2 give the subspace dimension per leading party for each term.
inline PairEngineOutcome pair_engine(const CorrelationTensor& t, const std::vector<int>& dims1,
                                     const std::vector<int>& dims2, int restarts,
                                     std::uint64_t seed) {
    if (restarts < 1) throw domain_error("pair engine requires restarts >= 1");
    PairEngineOutcome best;
    best.value = -1.0;
    best.restarts = restarts;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool any_converged = false;

    for (const auto& [u0, v0] : pair_starts(t, restarts, seed)) {
        Eigen::Vector3d u = u0, v = v0;
        std::vector<Eigen::MatrixXd> planes1, planes2;
        double val = -1.0;
        bool converged = false;
        for (int it = 0; it < kMaxIters; ++it) {
            planes1.clear();
            planes2.clear();
            const double q1 = subspace_als(slice_last(t, u), dims1, planes1);
            const double q2 = subspace_als(slice_last(t, v), dims2, planes2);
            const Eigen::Matrix3d g1 = projected_last_gram(t, planes1);
            const Eigen::Matrix3d g2 = projected_last_gram(t, planes2);
            u = constrained_top_eigvec(g1, v);
            v = constrained_top_eigvec(g2, u);
            rotate_in_pair_plane(g1, g2, u, v);
            const double nv = u.dot(g1 * u) + v.dot(g2 * v);
            if (std::abs(nv - val) < kConvergeTol) {
                val = nv;
                converged = true;
                break;
            }
            val = nv;
            (void)q1;
            (void)q2;
        }
        if (converged) {
            any_converged = true;
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
        if (val > best.value) {
            best.value = val;
            best.u = u;
            best.v = v;
            best.planes1 = planes1;
            best.planes2 = planes2;
        }
    }
    best.spread = any_converged ? hi - lo : 0.0;
    if (best.value < 0.0 && best.value > -1e-15) best.value = 0.0;
    return best;
}

inline FrameSet frames_from_pair(const PairEngineOutcome& o) {
    FrameSet fs;
    TermFrames t1, t2;
    t1.planes = o.planes1;
    t1.last_axis = o.u;
    t2.planes = o.planes2;
    t2.last_axis = o.v;
    fs.terms = {t1, t2};
    return fs;
}

}  // namespace detail

// ----------------------------------------------------------------------
// 4x4x2 criterion
// ----------------------------------------------------------------------

// Closed-form construction: Schmidt-split the tensor along the last party and
// add the top-2 plane norms of the two largest slices.
inline CriterionResult condition_442_analytic(const CorrelationTensor& t) {
    if (t.n_parties != 3) throw arity_error("condition_442_analytic requires 3 parties");
    const SchmidtSlices ss = schmidt_split(t, 2);
    const Eigen::Matrix3d p1 = as_matrix(ss.slices[0]);
    const Eigen::Matrix3d p2 = as_matrix(ss.slices[1]);

    CriterionResult r;
    r.criterion_id = CriterionId::c442;
    r.method = Method::analytic;
    r.max_value = top2_plane_norm(p1) + top2_plane_norm(p2);
    r.violation_factor = std::sqrt(r.max_value);

    // Frames realizing the construction: per slice, the top-2 singular planes
    // on each side; last-party axes are the two leading Schmidt directions.
    for (int i = 0; i < 2; ++i) {
        const Eigen::Matrix3d p = i == 0 ? p1 : p2;
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
        TermFrames tf;
        tf.planes = {svd.matrixU().leftCols(2), svd.matrixV().leftCols(2)};
        tf.last_axis = ss.gammas[std::size_t(i)];
        r.argmax_frames.terms.push_back(tf);
    }
    return r;
}

inline CriterionResult condition_442_numeric(const CorrelationTensor& t, int restarts = 32,
                                             std::uint64_t seed = 0) {
    if (t.n_parties != 3) throw arity_error("condition_442_numeric requires 3 parties");
    const auto o = detail::pair_engine(t, {2, 2}, {2, 2}, restarts, seed);
    CriterionResult r;
    r.criterion_id = CriterionId::c442;
    r.method = Method::numeric;
    r.max_value = o.value;
    r.violation_factor = std::sqrt(std::max(0.0, o.value));
    r.argmax_frames = detail::frames_from_pair(o);
    r.restarts_used = o.restarts;
    r.spread = o.spread;
    return r;
}

// ----------------------------------------------------------------------
// 3x3x2 criterion: one rank-1 term plus one plane term,
//   max  T(a,b,u)^2 + |proj (T . v)|^2  over unit a, b and orthonormal (u,v).
// ----------------------------------------------------------------------

inline CriterionResult condition_332(const CorrelationTensor& t, int restarts = 32,
                                     std::uint64_t seed = 0) {
    if (t.n_parties != 3) throw arity_error("condition_332 requires 3 parties");
    const auto o = detail::pair_engine(t, {1, 1}, {2, 2}, restarts, seed);
    CriterionResult r;
    r.criterion_id = CriterionId::c332;
    r.method = Method::numeric;
    r.max_value = o.value;
    r.violation_factor = std::sqrt(std::max(0.0, o.value));
    r.argmax_frames = detail::frames_from_pair(o);
    r.restarts_used = o.restarts;
    r.spread = o.spread;
    return r;
}

// ----------------------------------------------------------------------
// general-N criterion: planes per party in both terms
// ----------------------------------------------------------------------

inline CriterionResult condition_N(const CorrelationTensor& t, int restarts = 32,
                                   std::uint64_t seed = 0) {
    if (t.n_parties < 3) throw arity_error("condition_N requires at least 3 parties");
    const std::vector<int> dims(std::size_t(t.n_parties) - 1, 2);
    const auto o = detail::pair_engine(t, dims, dims, restarts, seed);
    CriterionResult r;
    r.criterion_id = CriterionId::cN;
    r.method = Method::numeric;
    r.max_value = o.value;
    r.violation_factor = std::sqrt(std::max(0.0, o.value));
    r.argmax_frames = detail::frames_from_pair(o);
    r.restarts_used = o.restarts;
    r.spread = o.spread;
    return r;
}

// ----------------------------------------------------------------------
// standard two-setting comparison criterion
// ----------------------------------------------------------------------

namespace detail {

// Flat tensor with per-mode dimensions; scratch type for pattern sums.
struct DynTensor {
    std::vector<int> dims;
    std::vector<double> data;
};

inline DynTensor from_corr(const CorrelationTensor& t) {
    return DynTensor{std::vector<int>(std::size_t(t.n_parties), 3), t.entries};
}

// Replace mode `mode` (dimension 3) by the two rows of a 2x3 matrix.
inline DynTensor mode_reduce(const DynTensor& t, const Eigen::Matrix<double, 2, 3>& m, int mode) {
    DynTensor out;
    out.dims = t.dims;
    out.dims[std::size_t(mode)] = 2;
    std::size_t inner = 1;
    for (std::size_t k = std::size_t(mode) + 1; k < t.dims.size(); ++k) inner *= std::size_t(t.dims[k]);
    const std::size_t outer = t.data.size() / (3 * inner);
    out.data.assign(outer * 2 * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i) {
            const double a0 = t.data[(o * 3 + 0) * inner + i];
            const double a1 = t.data[(o * 3 + 1) * inner + i];
            const double a2 = t.data[(o * 3 + 2) * inner + i];
            for (int r = 0; r < 2; ++r)
                out.data[(o * 2 + std::size_t(r)) * inner + i] =
                    m(r, 0) * a0 + m(r, 1) * a1 + m(r, 2) * a2;
        }
    return out;
}

using SettingPair = std::pair<Eigen::Vector3d, Eigen::Vector3d>;

inline Eigen::Matrix<double, 2, 3> sum_diff_rows(const SettingPair& p) {
    Eigen::Matrix<double, 2, 3> m;
    m.row(0) = (p.first + p.second).transpose();
    m.row(1) = (p.first - p.second).transpose();
    return m;
}

// Average of |T o prod_i (n_i1 + s_i n_i2)| over all sign patterns, /2^N.
inline double moduli_form(const CorrelationTensor& t, const std::vector<SettingPair>& s) {
    DynTensor cur = from_corr(t);
    for (int j = 0; j < t.n_parties; ++j) cur = mode_reduce(cur, sum_diff_rows(s[std::size_t(j)]), j);
    double tot = 0.0;
    for (double v : cur.data) tot += std::abs(v);
    return tot / double(std::size_t(1) << t.n_parties);
}

// For party j: 3-vectors g_b = T contracted with the pattern vectors of all
// other parties, for every pattern b of those parties.
inline std::vector<Eigen::Vector3d> pattern_vectors(const CorrelationTensor& t,
                                                    const std::vector<SettingPair>& s, int skip) {
    DynTensor cur = from_corr(t);
    for (int j = 0; j < t.n_parties; ++j)
        if (j != skip) cur = mode_reduce(cur, sum_diff_rows(s[std::size_t(j)]), j);
    // remaining layout: patterns around mode `skip`, which still has dim 3
    std::size_t inner = 1;
    for (std::size_t k = std::size_t(skip) + 1; k < cur.dims.size(); ++k) inner *= std::size_t(cur.dims[k]);
    const std::size_t outer = cur.data.size() / (3 * inner);
    std::vector<Eigen::Vector3d> out;
    out.reserve(outer * inner);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i)
            out.emplace_back(cur.data[(o * 3 + 0) * inner + i], cur.data[(o * 3 + 1) * inner + i],
                             cur.data[(o * 3 + 2) * inner + i]);
    return out;
}

// Exact per-party update for small pattern counts. Writing the pair as
// n1,2 = cos(f) e1 +- sin(f) e2 with e1 _|_ e2, the party's contribution is
// sqrt(A^2 + B^2) with A = sum_b |g_b . e1|, B = sum_b |g_b . e2|, and
//   max over e1 _|_ e2 of A^2 + B^2
//     = max over sign vectors eps, del of (a_eps . e1)^2 + (a_del . e2)^2,
// a_eps = sum_b eps_b g_b. For fixed vectors x, y the inner pair problem is
// |y|^2 + lambda_max(x x' - y y'), so the whole update reduces to 4^K scalar
// evaluations plus one eigenvector solve. Enumeration keeps the sweep out of
// locked sign patterns, but costs 4^K, so big K falls back to the sign step.
inline bool moduli_exact_party(const std::vector<Eigen::Vector3d>& g, SettingPair& pair) {
    const std::size_t k = g.size();
    if (k > 4) return false;
    const std::size_t m = std::size_t(1) << k;
    std::vector<Eigen::Vector3d> acc(m, Eigen::Vector3d::Zero());
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t b = 0; b < k; ++b)
            acc[e] += ((e >> b) & 1 ? -1.0 : 1.0) * g[b];

    double best = -1.0;
    std::size_t be = 0, bd = 0;
    for (std::size_t me = 0; me < m; ++me)
        for (std::size_t md = 0; md < m; ++md) {
            const double xx = acc[me].squaredNorm();
            const double yy = acc[md].squaredNorm();
            double val;
            if (xx < 1e-300) {
                val = yy;
            } else {
                const double cross = acc[me].dot(acc[md]);
                const double y2sq = yy - cross * cross / xx;  // part of y off the x axis
                const double d = xx - yy;
                val = yy + 0.5 * (d + std::sqrt(d * d + 4.0 * xx * y2sq));
            }
            if (val > best) {
                best = val;
                be = me;
                bd = md;
            }
        }
    if (best <= 0.0) return true;  // zero tensor slice; keep the pair as is

    const Eigen::Vector3d& x = acc[be];
    const Eigen::Vector3d& y = acc[bd];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(x * x.transpose() - y * y.transpose());
    const Eigen::Vector3d e1 = es.eigenvectors().col(2);
    const Eigen::Vector3d e2 = normalized_or(y - e1 * e1.dot(y), any_orthogonal(e1));
    double a = 0.0, b = 0.0;
    for (const auto& gb : g) {
        a += std::abs(gb.dot(e1));
        b += std::abs(gb.dot(e2));
    }
    const double f = std::atan2(b, a);
    pair.first = std::cos(f) * e1 + std::sin(f) * e2;
    pair.second = std::cos(f) * e1 - std::sin(f) * e2;
    return true;
}

inline double moduli_seesaw(const CorrelationTensor& t, std::vector<SettingPair>& s) {
    const int n = t.n_parties;
    double val = -1.0;
    for (int it = 0; it < kMaxIters; ++it) {
        for (int j = 0; j < n; ++j) {
            const auto g = pattern_vectors(t, s, j);
            if (moduli_exact_party(g, s[std::size_t(j)])) continue;
            Eigen::Vector3d w1 = Eigen::Vector3d::Zero();
            Eigen::Vector3d w2 = Eigen::Vector3d::Zero();
            const Eigen::Vector3d sum = s[std::size_t(j)].first + s[std::size_t(j)].second;
            const Eigen::Vector3d dif = s[std::size_t(j)].first - s[std::size_t(j)].second;
            for (const auto& gb : g) {
                const double ep = gb.dot(sum) >= 0 ? 1.0 : -1.0;
                const double em = gb.dot(dif) >= 0 ? 1.0 : -1.0;
                w1 += (ep + em) * gb;
                w2 += (ep - em) * gb;
            }
            s[std::size_t(j)].first = normalized_or(w1, s[std::size_t(j)].first);
            s[std::size_t(j)].second = normalized_or(w2, s[std::size_t(j)].second);
        }
        const double nv = moduli_form(t, s);
        if (std::abs(nv - val) < kConvergeTol) return nv;
        val = nv;
    }
    return val;
}

// Start pairs per party, anchored to data so the see-saw is covariant with
// local frame changes (same rationale as pair_starts). The leading starts
// come from the best shared 2-planes of the quadratic proxy |proj T|^2,
// whose optimum the moduli form's own optimum tracks closely; then the
// per-party Gram eigenbases; the rest are seeded random pairs in that basis.
// Setting pairs need not be orthogonal, hence the diagonal combinations.
inline std::vector<std::vector<SettingPair>> moduli_starts(const CorrelationTensor& t, int restarts,
                                                         std::uint64_t seed) {
    const int n = t.n_parties;
    std::vector<Eigen::MatrixXd> planes;
    subspace_als(t, std::vector<int>(std::size_t(n), 2), planes);
    std::vector<Eigen::Matrix3d> basis;
    for (int j = 0; j < n; ++j) basis.emplace_back(top_eigvecs(mode_gram(t, j), 3));
    const double q = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<SettingPair>> out(6);
    for (int j = 0; j < n; ++j) {
        const Eigen::Vector3d c1 = planes[std::size_t(j)].col(0);
        const Eigen::Vector3d c2 = planes[std::size_t(j)].col(1);
        out[0].push_back({q * (c1 + c2), q * (c1 - c2)});
        out[1].push_back({c1, c2});
        const Eigen::Vector3d b1 = basis[std::size_t(j)].col(0);
        const Eigen::Vector3d b2 = basis[std::size_t(j)].col(1);
        const Eigen::Vector3d b3 = basis[std::size_t(j)].col(2);
        out[2].push_back({b1, b2});
        out[3].push_back({b3, b1});
        out[4].push_back({q * (b1 + b2), q * (b1 - b2)});
        out[5].push_back({q * (b3 + b1), q * (b3 - b1)});
    }
    Rng rng(seed);
    while (int(out.size()) < restarts) {
        std::vector<SettingPair> s;
        for (int j = 0; j < n; ++j)
            s.emplace_back(basis[std::size_t(j)] * rng.unit_vector(),
                           basis[std::size_t(j)] * rng.unit_vector());
        out.push_back(std::move(s));
    }
    out.resize(std::size_t(restarts));
    return out;
}

}  // namespace detail

// Maximum of the two-setting correlation-function form over per-party
// setting pairs (shared frames for both last-party outcomes). max_value is
// the squared form so the violation factor stays the form's value itself.
inline CriterionResult condition_standard(const CorrelationTensor& t, int restarts = 32,
                                          std::uint64_t seed = 0) {
    if (t.n_parties < 2) throw arity_error("condition_standard requires at least 2 parties");
    if (restarts < 1) throw domain_error("condition_standard requires restarts >= 1");
    double best = -1.0;
    std::vector<detail::SettingPair> best_s;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto s : detail::moduli_starts(t, restarts, seed)) {
        const double v = detail::moduli_seesaw(t, s);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    CriterionResult r;
    r.criterion_id = CriterionId::standard;
    r.method = Method::numeric;
    r.max_value = best * best;
    r.violation_factor = best;
    r.restarts_used = restarts;
    r.spread = hi - lo;
    TermFrames tf;
    for (const auto& p : best_s) {
        Eigen::MatrixXd m(3, 2);
        m.col(0) = p.first;
        m.col(1) = p.second;
        tf.planes.push_back(m);
    }
    r.argmax_frames.terms.push_back(tf);
    return r;
}

// ----------------------------------------------------------------------
// noise robustness
// ----------------------------------------------------------------------

// Critical visibility: the full correlation tensor scales linearly in the
// white-noise weight, so the threshold is 1/violation_factor, clamped to 1
// for states that do not violate.
inline double noise_threshold(const QuantumState& state, CriterionId id, int restarts = 32,
                              std::uint64_t seed = 0) {
    const CorrelationTensor t = compute_tensor(state);
    CriterionResult r;
    switch (id) {
        case CriterionId::standard: r = condition_standard(t, restarts, seed); break;
        case CriterionId::c442: r = condition_442_numeric(t, restarts, seed); break;
        case CriterionId::c332: r = condition_332(t, restarts, seed); break;
        case CriterionId::cN: r = condition_N(t, restarts, seed); break;
    }
    if (r.violation_factor <= 1.0) return 1.0;
    return 1.0 / r.violation_factor;
}

}  // namespace multibell
