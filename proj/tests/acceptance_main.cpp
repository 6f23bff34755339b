// Acceptance gate. Each numbered check prints one [PASS]/[FAIL] verdict line
// plus indented diagnostics, and the process exits 0 only on PASS. The check
// number comes from argv[1]; checks with a stated runtime budget fail when
// they exceed it.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <multibell/bellineq.hpp>
#include <multibell/criteria.hpp>
#include <multibell/lhv.hpp>
#include <multibell/qstate.hpp>

#include "oracles.hpp"

using namespace multibell;

namespace {

const double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(std::string why) {
        pass = false;
        notes.push_back(std::move(why));
    }
    void info(std::string what) { notes.push_back(std::move(what)); }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

CorrelationTensor ghz_tensor(int n, double alpha) { return compute_tensor(make_ghz(n, alpha)); }

QuantumState random_pure_state(int n, Rng& rng) {
    const Eigen::Index d = Eigen::Index(1) << n;
    Eigen::VectorXcd psi(d);
    for (Eigen::Index i = 0; i < d; ++i)
        psi(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
    psi /= psi.norm();
    return QuantumState{n, psi * psi.adjoint()};
}

// ----------------------------------------------------------------------
// 1. three-qubit GHZ sweep against the closed form 1 + sin^2(2a)
// ----------------------------------------------------------------------
Outcome check_1() {
    Outcome o;
    int miss_a = 0, miss_n = 0, split = 0;
    double worst = 0.0, worst_alpha = 0.0, worst_val = 0.0, worst_tgt = 0.0;
    for (int k = 1; k <= 64; ++k) {
        const double alpha = double(k) * (kPi / 4.0) / 64.0;
        const double target = 1.0 + oracle::sq(std::sin(2.0 * alpha));
        const CorrelationTensor t = ghz_tensor(3, alpha);
        const double va = condition_442_analytic(t).max_value;
        const double vn = condition_442_numeric(t, 16, 0).max_value;
        if (std::abs(va - target) > 1e-9) {
            ++miss_a;
            if (std::abs(va - target) > worst) {
                worst = std::abs(va - target);
                worst_alpha = alpha;
                worst_val = va;
                worst_tgt = target;
            }
        }
        if (std::abs(vn - target) > 1e-6) ++miss_n;
        if (std::abs(vn - va) > 1e-6) ++split;
    }
    if (miss_a || miss_n) {
        o.fail(fmt("closed form 1+sin^2(2a) missed: analytic at %d/64 points, numeric at %d/64",
                   miss_a, miss_n));
        o.info(fmt("largest gap %.9f at a=%.6f: computed %.9f vs stated %.9f", worst, worst_alpha,
                   worst_val, worst_tgt));
        o.info("computed curve follows max(1+sin^2 2a, 4 sin^2 2a); the branches cross at");
        o.info("sin 2a = 1/sqrt(3) (a ~ 0.30774), and 1+sin^2 underestimates beyond it");
    }
    o.info(fmt("analytic and numeric agree with each other within 1e-6 at %d/64 points",
               64 - split));
    return o;
}

// ----------------------------------------------------------------------
// 2. below a ~ pi/12 the two-setting criterion stays classical while the
//    four-setting one already detects the state
// ----------------------------------------------------------------------
Outcome check_2() {
    Outcome o;
    double worst_std = 0.0, least_442 = 1e300;
    for (int k = 0; k <= 12; ++k) {
        const double alpha = double(k) * (kPi / 12.0) / 12.0;
        const CorrelationTensor t = ghz_tensor(3, alpha);
        const double vs = condition_standard(t, 16, 0).max_value;
        worst_std = std::max(worst_std, vs);
        if (vs > 1.0 + 1e-9) o.fail(fmt("two-setting value %.12f > 1 at a=%.6f", vs, alpha));
        if (k > 0) {
            const double v4 = condition_442_numeric(t, 16, 0).max_value;
            least_442 = std::min(least_442, v4);
            if (v4 <= 1.0) o.fail(fmt("four-setting value %.12f <= 1 at a=%.6f", v4, alpha));
        }
    }
    o.info(fmt("two-setting max over [0, pi/12] = %.12f; four-setting min over (0, pi/12] = %.12f",
               worst_std, least_442));
    return o;
}

// ----------------------------------------------------------------------
// 3. W states: two-setting factor, general-N factor, noise threshold
// ----------------------------------------------------------------------
Outcome check_3() {
    Outcome o;
    const double f3 = condition_standard(compute_tensor(make_w(3)), 32, 0).violation_factor;
    if (std::abs(f3 - 1.5229) > 5e-4)
        o.fail(fmt("W3 two-setting factor %.6f outside 1.5229 +- 5e-4", f3));
    else
        o.info(fmt("W3 two-setting factor %.6f", f3));
    for (int n = 3; n <= 6; ++n) {
        const QuantumState w = make_w(n);
        const double target = std::sqrt(3.0 - 2.0 / n);
        const double f = condition_N(compute_tensor(w), 32, 0).violation_factor;
        const double th = noise_threshold(w, CriterionId::cN, 32, 0);
        if (std::abs(f - target) > 1e-6)
            o.fail(fmt("W%d factor %.9f vs sqrt(3-2/%d)=%.9f", n, f, n, target));
        if (std::abs(th - 1.0 / target) > 1e-6)
            o.fail(fmt("W%d threshold %.9f vs %.9f", n, th, 1.0 / target));
    }
    if (o.pass) o.info("general-N factors sqrt(3-2/N) and thresholds 1/factor hold for N=3..6");
    return o;
}

// ----------------------------------------------------------------------
// 4. four-photon singlet-sum state
// ----------------------------------------------------------------------
Outcome check_4() {
    Outcome o;
    const CorrelationTensor t = compute_tensor(make_four_photon());
    const double fn = condition_N(t, 32, 0).violation_factor;
    const double fs = condition_standard(t, 32, 0).violation_factor;
    if (std::abs(fn - 2.0) > 1e-6) o.fail(fmt("general-N factor %.9f vs 2", fn));
    if (std::abs(fs - 1.8856) > 5e-4) o.fail(fmt("two-setting factor %.6f vs 1.8856", fs));
    o.info(fmt("general-N factor %.9f, two-setting factor %.9f (sqrt(32)/3 = %.9f)", fn, fs,
               std::sqrt(32.0) / 3.0));
    return o;
}

// ----------------------------------------------------------------------
// 5. N-qubit GHZ against the closed form 1 + (2^{N-2}-1) sin^2(2a)
// ----------------------------------------------------------------------
Outcome check_5() {
    Outcome o;
    for (int n : {4, 5}) {
        int miss = 0;
        double worst = 0.0, worst_alpha = 0.0, worst_val = 0.0, worst_tgt = 0.0;
        for (int k = 1; k <= 16; ++k) {
            const double alpha = 0.01 * double(k);
            const double target =
                1.0 + (double(1 << (n - 2)) - 1.0) * oracle::sq(std::sin(2.0 * alpha));
            const double v = condition_N(ghz_tensor(n, alpha), 16, 0).max_value;
            if (std::abs(v - target) > 1e-6) {
                ++miss;
                if (std::abs(v - target) > worst) {
                    worst = std::abs(v - target);
                    worst_alpha = alpha;
                    worst_val = v;
                    worst_tgt = target;
                }
            }
        }
        if (miss) {
            o.fail(fmt("N=%d: closed form missed at %d/16 grid points", n, miss));
            o.info(fmt("N=%d largest gap %.9f at a=%.2f: computed %.9f vs stated %.9f", n, worst,
                       worst_alpha, worst_val, worst_tgt));
        } else {
            o.info(fmt("N=%d matches 1+(2^{N-2}-1)sin^2(2a) on the 16-point grid", n));
        }
    }
    // even N at a = pi/4, target read off the same formula
    const double target = double(1 << (4 - 2));
    const double v = condition_N(ghz_tensor(4, kPi / 4.0), 16, 0).max_value;
    if (std::abs(v - target) > 1e-6)
        o.fail(fmt("N=4, a=pi/4: computed %.9f vs stated 2^{N-2} = %.9f", v, target));
    if (!o.pass) {
        o.info("computed values follow max(1+(2^{N-2}-d)sin^2 2a, 2^{N-1} sin^2 2a) with");
        o.info("d=1 for odd N and d=0 for even N: the all-z correlation of an even-N state");
        o.info("is 1 rather than cos(2a), which lifts the first branch and widens the second");
    }
    return o;
}

// ----------------------------------------------------------------------
// 6. exact classical bounds and the recombination identity
// ----------------------------------------------------------------------
Outcome check_6() {
    Outcome o;
    const double b442 = classical_bound(inequality_442());
    const double b332 = classical_bound(inequality_332());
    const double bN4 = classical_bound(inequality_N(4));
    if (b442 != 8.0) o.fail(fmt("four-setting family bound %.1f vs 8", b442));
    if (b332 != 8.0) o.fail(fmt("three-setting family bound %.1f vs 8", b332));
    if (bN4 != 16.0) o.fail(fmt("general family bound (N=4) %.1f vs 16", bN4));
    o.info(fmt("enumerated bounds: %.0f, %.0f, %.0f", b442, b332, bN4));

    // canonical triples: sign functions with S(+1,+1) = +1
    int tried = 0;
    const auto signs = all_sign_functions();
    for (const auto& sp : signs)
        for (const auto& spp : signs)
            for (const auto& s : signs) {
                if (sp(1, 1) != 1 || spp(1, 1) != 1 || s(1, 1) != 1) continue;
                ++tried;
                if (!verify_identity_442(sp, spp, s))
                    o.fail("recombination identity failed for a canonical triple");
            }
    o.info(fmt("recombination identity verified on %d canonical triples x 1024 assignments",
               tried));
    return o;
}

// ----------------------------------------------------------------------
// 7. the signed family maximized over sign functions equals the moduli form
// ----------------------------------------------------------------------
Outcome check_7() {
    Outcome o;
    Rng rng(11);
    const auto signs = all_sign_functions();
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const CorrelationTensor t = oracle::random_tensor(3, rng);
        SettingsAssignment s;
        for (int c : inequality_442().settings_per_party) {
            std::vector<Eigen::Vector3d> v;
            for (int i = 0; i < c; ++i) v.push_back(rng.unit_vector());
            s.settings.push_back(std::move(v));
        }
        const double moduli = lhs_moduli_442(t, s);
        double best = 0.0;
        for (const auto& sp : signs)
            for (const auto& spp : signs) best = std::max(best, lhs_linear(t, s, sp, spp));
        worst = std::max(worst, std::abs(best - moduli));
    }
    if (worst > 1e-12) o.fail(fmt("largest |signed max - moduli| = %.3e > 1e-12", worst));
    else o.info(fmt("largest |signed max - moduli| over 100 cases = %.3e", worst));
    return o;
}

// ----------------------------------------------------------------------
// 8. direct maximization against the closed two-plane construction
// ----------------------------------------------------------------------
Outcome check_8() {
    Outcome o;
    struct Case {
        std::string name;
        CorrelationTensor t;
    };
    std::vector<Case> cases;
    cases.push_back({"ghz a=0.1", ghz_tensor(3, 0.1)});
    cases.push_back({"ghz a=0.3", ghz_tensor(3, 0.3)});
    cases.push_back({"ghz a=pi/4", ghz_tensor(3, kPi / 4.0)});
    cases.push_back({"w3", compute_tensor(make_w(3))});
    Rng rng(17);
    for (int i = 0; i < 10; ++i)
        cases.push_back({fmt("random %d", i), compute_tensor(random_pure_state(3, rng))});

    int named_miss = 0, random_miss = 0;
    double worst = 0.0;
    std::string worst_name;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const double best = maximize_lhs(cases[i].t, inequality_442(), 32, 0).value;
        const double construction = std::sqrt(condition_442_analytic(cases[i].t).max_value);
        const double gap = std::abs(best / 8.0 - construction);
        if (gap > 1e-4) {
            (i < 4 ? named_miss : random_miss)++;
            if (gap > worst) {
                worst = gap;
                worst_name = cases[i].name;
            }
        }
    }
    if (named_miss + random_miss > 0) {
        o.fail(fmt("max/8 vs closed construction differs > 1e-4 on %d named and %d random cases",
                   named_miss, random_miss));
        o.info(fmt("largest gap %.6f (%s); the direct maximum tracks the unrestricted", worst,
                   worst_name.c_str()));
        o.info("subspace optimum, which exceeds the closed two-plane construction on");
        o.info("generic states; equality is a property of the structured states, not general");
    } else {
        o.info("direct maximum / 8 equals the closed construction on every case");
    }
    return o;
}

// ----------------------------------------------------------------------
// 9. property suite on 50 seeded random tensors
// ----------------------------------------------------------------------
Outcome check_9() {
    Outcome o;
    Rng rng(19);
    double worst_rec = 0.0, worst_inv = 0.0, worst_scale = 0.0;
    const double v = 0.73;
    for (int rep = 0; rep < 50; ++rep) {
        const CorrelationTensor t = oracle::random_tensor(3, rng);

        // Schmidt reconstruction along the last party
        const SchmidtSlices ss = schmidt_split(t, 2);
        double rec = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double s = 0.0;
                    for (int m = 0; m < 3; ++m)
                        s += ss.slices[std::size_t(m)].at({i, j}) * ss.gammas[std::size_t(m)](k);
                    rec = std::max(rec, std::abs(s - t.at({i, j, k})));
                }
        worst_rec = std::max(worst_rec, rec);

        // frame invariance and quadratic scaling, all four criteria
        std::vector<LocalFrame> frames = {rng.rotation(), rng.rotation(), rng.rotation()};
        const CorrelationTensor rt = rotate(t, frames);
        CorrelationTensor st = t;
        for (auto& e : st.entries) e *= v;
        for (int c = 0; c < 4; ++c) {
            const CriterionId id = static_cast<CriterionId>(c);
            auto run = [&](const CorrelationTensor& x) {
                switch (id) {
                    case CriterionId::standard: return condition_standard(x, 32, 0).max_value;
                    case CriterionId::c442: return condition_442_numeric(x, 32, 0).max_value;
                    case CriterionId::c332: return condition_332(x, 32, 0).max_value;
                    case CriterionId::cN: return condition_N(x, 32, 0).max_value;
                }
                return 0.0;
            };
            const double base = run(t);
            worst_inv = std::max(worst_inv, std::abs(run(rt) - base));
            worst_scale = std::max(worst_scale, std::abs(run(st) - v * v * base));
        }
    }
    if (worst_rec > 1e-10) o.fail(fmt("worst reconstruction residual %.3e > 1e-10", worst_rec));
    if (worst_inv > 1e-6) o.fail(fmt("worst frame-invariance deviation %.3e > 1e-6", worst_inv));
    if (worst_scale > 1e-9) o.fail(fmt("worst quadratic-scaling deviation %.3e > 1e-9", worst_scale));
    o.info(fmt("worst residuals: reconstruction %.3e, frame invariance %.3e, scaling %.3e",
               worst_rec, worst_inv, worst_scale));
    return o;
}

struct Check {
    const char* title;
    Outcome (*run)();
    double time_limit;  // seconds; 0 = none stated
};

const Check kChecks[] = {
    {"three-qubit GHZ sweep vs closed form", check_1, 10.0},
    {"two-setting blind spot below pi/12", check_2, 0.0},
    {"W-state factors and noise thresholds", check_3, 0.0},
    {"four-photon state factors", check_4, 0.0},
    {"N-qubit GHZ vs closed form", check_5, 60.0},
    {"classical bounds and recombination identity", check_6, 30.0},
    {"signed family equals moduli form", check_7, 0.0},
    {"direct maximum vs closed construction", check_8, 120.0},
    {"reconstruction, invariance, scaling properties", check_9, 0.0},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <check number 1..9>\n", argv[0]);
        return 2;
    }
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 9) {
        std::fprintf(stderr, "check number out of range: %s\n", argv[1]);
        return 2;
    }
    const Check& c = kChecks[k - 1];

    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs > c.time_limit)
        o.fail(fmt("runtime %.1fs exceeds the %.0fs budget", secs, c.time_limit));

    std::printf("[%s] %d: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", k, c.title, secs);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    return o.pass ? 0 : 1;
}
