#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <multibell/corrtensor.hpp>
#include <multibell/qstate.hpp>
#include <multibell/rng.hpp>

#include "oracles.hpp"

using namespace multibell;
using Catch::Matchers::WithinAbs;

namespace {
const double kPi = 3.14159265358979323846;

CorrelationTensor tensor_product(const std::vector<Eigen::Vector3d>& dirs) {
    CorrelationTensor t = CorrelationTensor::zero(int(dirs.size()));
    for (std::size_t f = 0; f < t.entries.size(); ++f) {
        double v = 1.0;
        std::size_t rem = f;
        for (int j = int(dirs.size()) - 1; j >= 0; --j) {
            v *= dirs[std::size_t(j)](int(rem % 3));
            rem /= 3;
        }
        t.entries[f] = v;
    }
    return t;
}
}  // namespace

TEST_CASE("ghz tensor entries, odd and even party count") {
    const double a = 0.3, s = std::sin(2 * a), c = std::cos(2 * a);
    const CorrelationTensor t3 = compute_tensor(make_ghz(3, a));
    REQUIRE(t3.n_parties == 3);
    CHECK_THAT(t3.at({0, 0, 0}), WithinAbs(s, 1e-12));    // xxx
    CHECK_THAT(t3.at({0, 1, 1}), WithinAbs(-s, 1e-12));   // xyy
    CHECK_THAT(t3.at({1, 0, 1}), WithinAbs(-s, 1e-12));
    CHECK_THAT(t3.at({1, 1, 0}), WithinAbs(-s, 1e-12));
    CHECK_THAT(t3.at({2, 2, 2}), WithinAbs(c, 1e-12));    // zzz
    CHECK_THAT(t3.at({2, 2, 0}), WithinAbs(0.0, 1e-12));
    CHECK_THAT(t3.at({0, 1, 2}), WithinAbs(0.0, 1e-12));

    const CorrelationTensor t4 = compute_tensor(make_ghz(4, a));
    CHECK_THAT(t4.at({2, 2, 2, 2}), WithinAbs(1.0, 1e-12));  // even N: all-z is alpha-independent
    CHECK_THAT(t4.at({0, 0, 0, 0}), WithinAbs(s, 1e-12));
    CHECK_THAT(t4.at({0, 0, 1, 1}), WithinAbs(-s, 1e-12));   // two y's flip the sign
    CHECK_THAT(t4.at({1, 1, 1, 1}), WithinAbs(s, 1e-12));
    CHECK_THAT(t4.at({2, 2, 0, 0}), WithinAbs(0.0, 1e-12));
}

TEST_CASE("w state tensor entries") {
    const CorrelationTensor t = compute_tensor(make_w(3));
    CHECK_THAT(t.at({2, 2, 2}), WithinAbs(1.0, 1e-12));
    const double p = -2.0 / 3.0;
    CHECK_THAT(t.at({0, 0, 2}), WithinAbs(p, 1e-12));
    CHECK_THAT(t.at({0, 2, 0}), WithinAbs(p, 1e-12));
    CHECK_THAT(t.at({2, 0, 0}), WithinAbs(p, 1e-12));
    CHECK_THAT(t.at({1, 1, 2}), WithinAbs(p, 1e-12));
    CHECK_THAT(t.at({2, 1, 1}), WithinAbs(p, 1e-12));
    CHECK_THAT(t.at({0, 0, 0}), WithinAbs(0.0, 1e-12));
    CHECK_THAT(t.at({0, 1, 2}), WithinAbs(0.0, 1e-12));

    const CorrelationTensor t4 = compute_tensor(make_w(4));
    CHECK_THAT(t4.at({2, 2, 2, 2}), WithinAbs(-1.0, 1e-12));       // (-1)^(N-1)
    CHECK_THAT(t4.at({0, 0, 2, 2}), WithinAbs(0.5, 1e-12));        // (-1)^N 2/N
    CHECK_THAT(t4.at({2, 2, 1, 1}), WithinAbs(0.5, 1e-12));
}

TEST_CASE("four photon tensor matches its correlation table") {
    const CorrelationTensor t = compute_tensor(make_four_photon());
    CHECK_THAT(t.at({0, 0, 0, 0}), WithinAbs(1.0, 1e-12));
    CHECK_THAT(t.at({1, 1, 1, 1}), WithinAbs(1.0, 1e-12));
    CHECK_THAT(t.at({2, 2, 2, 2}), WithinAbs(1.0, 1e-12));
    for (auto idx : {std::vector<int>{0, 0, 1, 1}, {0, 0, 2, 2}, {1, 1, 0, 0},
                     {1, 1, 2, 2}, {2, 2, 0, 0}, {2, 2, 1, 1}})
        CHECK_THAT(t.at(idx), WithinAbs(-1.0 / 3.0, 1e-12));
    for (auto idx : {std::vector<int>{0, 2, 0, 2}, {0, 2, 2, 0}, {2, 0, 0, 2}, {2, 0, 2, 0}})
        CHECK_THAT(t.at(idx), WithinAbs(2.0 / 3.0, 1e-12));
    for (auto idx : {std::vector<int>{0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0},
                     {1, 2, 1, 2}, {1, 2, 2, 1}, {2, 1, 1, 2}, {2, 1, 2, 1}})
        CHECK_THAT(t.at(idx), WithinAbs(-2.0 / 3.0, 1e-12));
}

TEST_CASE("white noise scales the tensor linearly") {
    const QuantumState pure = make_ghz(3, 0.4);
    const CorrelationTensor t1 = compute_tensor(pure);
    const CorrelationTensor tv = compute_tensor(mix_white_noise(pure, 0.37));
    for (std::size_t f = 0; f < t1.entries.size(); ++f)
        CHECK_THAT(tv.entries[f], WithinAbs(0.37 * t1.entries[f], 1e-12));
}

TEST_CASE("rotation preserves norm and composes with contraction") {
    Rng rng(7);
    const CorrelationTensor t = compute_tensor(make_w(3));
    std::vector<LocalFrame> frames;
    for (int j = 0; j < 3; ++j) frames.push_back(rng.rotation().transpose());
    const CorrelationTensor r = rotate(t, frames);
    CHECK_THAT(r.frobenius_sq(), WithinAbs(t.frobenius_sq(), 1e-10));

    // contracting the rotated tensor with e_i picks up the frame rows
    Rng rng2(9);
    std::vector<Eigen::Vector3d> dirs;
    for (int j = 0; j < 3; ++j) dirs.push_back(rng2.unit_vector());
    std::vector<Eigen::Vector3d> back;
    for (int j = 0; j < 3; ++j) back.push_back(frames[std::size_t(j)].transpose() * dirs[std::size_t(j)]);
    CHECK_THAT(contract(r, dirs), WithinAbs(contract(t, back), 1e-10));

    CHECK_THROWS_AS(rotate(t, {frames[0], frames[1]}), arity_error);
    std::vector<LocalFrame> bad = frames;
    bad[1](0, 0) += 0.1;
    CHECK_THROWS_AS(rotate(t, bad), validation_error);
}

TEST_CASE("contraction equals the multilinear form") {
    const CorrelationTensor t = compute_tensor(make_ghz(3, kPi / 4));
    const Eigen::Vector3d x(1, 0, 0), y(0, 1, 0);
    CHECK_THAT(contract(t, {x, x, x}), WithinAbs(1.0, 1e-12));
    CHECK_THAT(contract(t, {x, y, y}), WithinAbs(-1.0, 1e-12));
    CHECK_THROWS_AS(contract(t, {x, x}), arity_error);
    CHECK_THROWS_AS(contract(t, {x, x, Eigen::Vector3d(1, 1, 0)}), validation_error);
}

TEST_CASE("schmidt split reconstructs the tensor") {
    Rng rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        const CorrelationTensor t = oracle::random_tensor(3, rng);
        const SchmidtSlices ss = schmidt_split(t, 2);
        REQUIRE(ss.gammas.size() == 3);

        // orthonormal axes, descending slice norms, sign convention
        for (int i = 0; i < 3; ++i) {
            CHECK_THAT(ss.gammas[std::size_t(i)].norm(), WithinAbs(1.0, 1e-10));
            int arg = 0;
            ss.gammas[std::size_t(i)].cwiseAbs().maxCoeff(&arg);
            CHECK(ss.gammas[std::size_t(i)](arg) > 0.0);
        }
        CHECK_THAT(ss.gammas[0].dot(ss.gammas[1]), WithinAbs(0.0, 1e-10));
        CHECK(ss.norms[0] >= ss.norms[1]);
        CHECK(ss.norms[1] >= ss.norms[2]);

        // slices are mutually orthogonal as matrices
        const Eigen::Matrix3d p0 = as_matrix(ss.slices[0]);
        const Eigen::Matrix3d p1 = as_matrix(ss.slices[1]);
        CHECK_THAT((p0.transpose() * p1).trace(), WithinAbs(0.0, 1e-10));

        double residual = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double rebuilt = 0.0;
                    for (int m = 0; m < 3; ++m)
                        rebuilt += ss.slices[std::size_t(m)].at({i, j}) * ss.gammas[std::size_t(m)](k);
                    residual = std::max(residual, std::abs(rebuilt - t.at({i, j, k})));
                }
        CHECK(residual <= 1e-10);
    }
    CHECK_THROWS_AS(schmidt_split(compute_tensor(make_w(3)), 5), domain_error);
}

TEST_CASE("plane norm of a matrix is the top-2 squared singular values") {
    Eigen::Matrix3d d = Eigen::Vector3d(3.0, 2.0, 1.0).asDiagonal();
    CHECK_THAT(top2_plane_norm(d), WithinAbs(13.0, 1e-12));
    Rng rng(4);
    const Eigen::Matrix3d r1 = rng.rotation(), r2 = rng.rotation();
    CHECK_THAT(top2_plane_norm(r1 * d * r2), WithinAbs(13.0, 1e-10));
}

TEST_CASE("product state gives a rank-one tensor") {
    // |+><+|^3 has all-x correlation 1 and no others among axes
    const CorrelationTensor t = tensor_product(
        {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, 0, 0)});
    CHECK_THAT(t.at({0, 0, 0}), WithinAbs(1.0, 1e-15));
    CHECK_THAT(t.frobenius_sq(), WithinAbs(1.0, 1e-15));
}
