#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "bellineq.hpp"
#include "errors.hpp"

namespace multibell {

// One deterministic local strategy: a fixed +-1 outcome per party and
// setting, outcomes[party][setting].
struct DeterministicAssignment {
    std::vector<std::vector<int>> outcomes;
};

namespace detail {

inline void check_deterministic(const DeterministicAssignment& a, const InequalitySpec& spec) {
    if (int(a.outcomes.size()) != spec.n_parties)
        throw arity_error("deterministic assignment: party count mismatch");
    for (int j = 0; j < spec.n_parties; ++j) {
        if (int(a.outcomes[std::size_t(j)].size()) != spec.settings_per_party[std::size_t(j)])
            throw arity_error("deterministic assignment: settings count mismatch");
        for (int v : a.outcomes[std::size_t(j)])
            if (v != 1 && v != -1) throw validation_error("deterministic outcome must be +-1");
    }
}

inline long long det_value(const DeterministicAssignment& a, const InequalitySpec& spec) {
    const auto& o = a.outcomes;
    const int n = spec.n_parties;
    const long long cp = o[std::size_t(n) - 1][0] + o[std::size_t(n) - 1][1];
    const long long cm = o[std::size_t(n) - 1][0] - o[std::size_t(n) - 1][1];
    long long acc = 0;
    switch (spec.family) {
        case Family::f442:
            for (int s1 : kSigns)
                for (int s2 : kSigns)
                    acc += std::abs((o[0][0] + s1 * o[0][1]) * (o[1][0] + s2 * o[1][1]) * cp);
            for (int s1 : kSigns)
                for (int s2 : kSigns)
                    acc += std::abs((o[0][2] + s1 * o[0][3]) * (o[1][2] + s2 * o[1][3]) * cm);
            return acc;
        case Family::f332:
            acc = 4 * std::abs(o[0][0] * o[1][0] * cp);
            for (int s1 : kSigns)
                for (int s2 : kSigns)
                    acc += std::abs((o[0][1] + s1 * o[0][2]) * (o[1][1] + s2 * o[1][2]) * cm);
            return acc;
        case Family::fN:
            for (int block = 0; block < 2; ++block) {
                const std::size_t base = block == 0 ? 0 : 2;
                const long long cc = block == 0 ? cm : cp;
                const std::size_t patterns = std::size_t(1) << (n - 1);
                for (std::size_t b = 0; b < patterns; ++b) {
                    long long prod = cc;
                    for (int j = 0; j + 1 < n; ++j) {
                        const int sj = (b >> (std::size_t(n) - 2 - std::size_t(j))) & 1 ? -1 : 1;
                        prod *= o[std::size_t(j)][base] + sj * o[std::size_t(j)][base + 1];
                    }
                    acc += std::abs(prod);
                }
            }
            return acc;
    }
    return acc;
}

}  // namespace detail

// Expression value of the family on the product correlations of one
// deterministic strategy.
inline double lhv_value_of_product_tensor(const DeterministicAssignment& a,
                                          const InequalitySpec& spec) {
    detail::check_deterministic(a, spec);
    return double(detail::det_value(a, spec));
}

// Exact local-hidden-variable maximum of the family expression, by full
// enumeration of deterministic strategies in Gray-code order over the
// concatenated outcome bits (party 0 first, bit 0 fastest).
inline double classical_bound(const InequalitySpec& spec) {
    int vars = 0;
    for (int c : spec.settings_per_party) vars += c;
    if (vars > 24) throw size_error("classical_bound: more than 24 outcome variables");

    DeterministicAssignment a;
    for (int c : spec.settings_per_party)
        a.outcomes.push_back(std::vector<int>(std::size_t(c), 1));

    long long best = 0;
    const std::uint64_t total = std::uint64_t(1) << vars;
    for (std::uint64_t i = 0; i < total; ++i) {
        const std::uint64_t gray = i ^ (i >> 1);
        int bit = 0;
        for (auto& party : a.outcomes)
            for (int& v : party) v = (gray >> bit++) & 1 ? -1 : 1;
        const long long val = detail::det_value(a, spec);
        if (val > best) best = val;
    }
    return double(best);
}

// Algebraic core of the four-setting bound: for every +-1 assignment of the
// ten outcomes, the S-weighted recombination of the two block brackets with
// the last-party pair has modulus exactly 16.
inline bool verify_identity_442(const SignFunction& sp, const SignFunction& spp,
                                const SignFunction& s) {
    for (int mask = 0; mask < 1024; ++mask) {
        const int a1 = mask & 1 ? -1 : 1, a2 = mask & 2 ? -1 : 1;
        const int a3 = mask & 4 ? -1 : 1, a4 = mask & 8 ? -1 : 1;
        const int b1 = mask & 16 ? -1 : 1, b2 = mask & 32 ? -1 : 1;
        const int b3 = mask & 64 ? -1 : 1, b4 = mask & 128 ? -1 : 1;
        const int c1 = mask & 256 ? -1 : 1, c2 = mask & 512 ? -1 : 1;

        int ap = 0, app = 0;
        for (int r1 : detail::kSigns)
            for (int r2 : detail::kSigns) {
                ap += sp(r1, r2) * (a1 + r1 * a2) * (b1 + r2 * b2);
                app += spp(r1, r2) * (a3 + r1 * a4) * (b3 + r2 * b4);
            }
        int v = 0;
        for (int s1 : detail::kSigns)
            for (int s2 : detail::kSigns) v += s(s1, s2) * (ap + s1 * app) * (c1 + s2 * c2);
        if (std::abs(v) != 16) return false;
    }
    return true;
}

}  // namespace multibell
