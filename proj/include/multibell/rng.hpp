#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace multibell {

// Self-contained deterministic generator. Optimizer restarts and test
// fixtures must reproduce bit-identically across standard libraries, so we
// do not rely on std::uniform_real_distribution and friends.
//
// splitmix64, public-domain reference constants.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Marsaglia polar method; both values of the pair are consumed.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    Eigen::Vector3d unit_vector() {
        Eigen::Vector3d g(gaussian(), gaussian(), gaussian());
        double n = g.norm();
        while (n < 1e-12) {
            g = Eigen::Vector3d(gaussian(), gaussian(), gaussian());
            n = g.norm();
        }
        return g / n;
    }

    // Haar-ish random rotation: QR of a Gaussian matrix, det fixed to +1.
    Eigen::Matrix3d rotation() {
        Eigen::Matrix3d g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g(i, j) = gaussian();
        const Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
        Eigen::Matrix3d q = qr.householderQ();
        if (q.determinant() < 0) q.col(2) *= -1.0;
        return q;
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace multibell
