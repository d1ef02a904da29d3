#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "complexlab/asymptotics.hpp"
#include "complexlab/sampler.hpp"

using namespace complexlab;

namespace {

// Random profile kept `margin` away from every degenerate hyperplane (no
// integral exponent, no integral pairwise gap). Tight margins get expensive
// fast at larger r; callers pick the margin their tolerance needs.
ExponentProfile random_generic_profile(Rng& rng, int r, double margin_req = 0.02) {
    for (;;) {
        std::vector<double> alpha(r + 1);
        for (int i = 0; i <= r; ++i) alpha[i] = 0.15 + rng.uniform() * (i + 2.2);
        ExponentProfile p(std::move(alpha));
        bool good = true;
        auto margin = [](double x) {
            double f = x - std::floor(x);
            return std::min(f, 1 - f);
        };
        for (int i = 0; i <= r && good; ++i) {
            if (margin(p.alpha[i]) < margin_req) good = false;
            for (int j = i + 1; j <= r && good; ++j)
                if (margin(p.alpha[i] - p.alpha[j]) < margin_req) good = false;
        }
        if (good) return p;
    }
}

} // namespace

TEST_CASE("growth profiles of the r=1 cases") {
    // beta_0 = 1 - alpha_0, beta_1 = 2 - alpha_1.
    BetaProfile case_b = beta_profile(ExponentProfile({0.5, 1.2}));
    CHECK(case_b.beta[0] == doctest::Approx(0.5));
    CHECK(case_b.beta[1] == doctest::Approx(0.8));
    CHECK(case_b.k_star == 0);
    CHECK(case_b.i_star == 1);
    CHECK(case_b.spread == 1);

    BetaProfile case_c = beta_profile(ExponentProfile({2.3, 0.4}));
    CHECK(case_c.k_star == 1);
    CHECK(case_c.i_star == 1);
    CHECK(case_c.spread == 0);

    BetaProfile empty_regime = beta_profile(ExponentProfile({1.5, 2.7}));
    CHECK(empty_regime.k_star < 0);
}

TEST_CASE("growth profile of a two-dimensional example") {
    BetaProfile bp = beta_profile(ExponentProfile({0.3, 0.5, 2.9}));
    CHECK(bp.beta[0] == doctest::Approx(0.7));
    CHECK(bp.beta[1] == doctest::Approx(1.5));
    CHECK(bp.beta[2] == doctest::Approx(0.1));
    CHECK(bp.beta_star == doctest::Approx(1.5));
    CHECK(bp.k_star == 1);
    CHECK(bp.i_star == 1);
    CHECK(bp.spread == 0);
    REQUIRE(bp.gamma.size() == 3);
    CHECK(bp.gamma[0] == doctest::Approx(1.0));
    CHECK(bp.gamma[1] == doctest::Approx(1.5));
    CHECK(bp.gamma[2] == doctest::Approx(0.1));
}

TEST_CASE("genericity violations are hard errors with diagnostics") {
    CHECK_THROWS_AS(beta_profile(ExponentProfile({1.0, 0.5})), std::invalid_argument);
    CHECK_THROWS_AS(beta_profile(ExponentProfile({0.5, 1.5})), std::invalid_argument);
    GenericityReport r = check_genericity(ExponentProfile({2.0, 0.5, 1.5}));
    CHECK_FALSE(r.ok);
    CHECK(r.violations.size() == 2); // alpha_0 is an integer; alpha_1 - alpha_2 is too
}

TEST_CASE("lower-model critical dimension via the psi chain") {
    LowerCriticalReport deep = lower_critical_dimension(ExponentProfile({0.1, 0.2, 0.3}));
    REQUIRE(deep.psi.size() == 3);
    CHECK(deep.psi[0] == doctest::Approx(0.1));
    CHECK(deep.psi[1] == doctest::Approx(0.3));
    CHECK(deep.psi[2] == doctest::Approx(0.8));
    CHECK(deep.k_lower == 2);
    CHECK_FALSE(deep.boundary_hit);

    LowerCriticalReport mid = lower_critical_dimension(ExponentProfile({0.5, 0.6, 0.7}));
    CHECK(mid.psi[1] == doctest::Approx(1.1));
    CHECK(mid.k_lower == 0);

    CHECK(lower_critical_dimension(ExponentProfile({1.5})).k_lower == -1);

    LowerCriticalReport boundary = lower_critical_dimension(ExponentProfile({1.0, 0.3}));
    CHECK(boundary.boundary_hit);
}

TEST_CASE("psi chain is monotone for positive exponents") {
    Rng rng = Rng::stream(404, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        int r = static_cast<int>(rng.next() % 7);
        std::vector<double> alpha(r + 1);
        for (double& a : alpha) a = rng.uniform() * 5 + 1e-6;
        LowerCriticalReport rep = lower_critical_dimension(ExponentProfile(alpha));
        for (int k = 0; k < r; ++k) CHECK(rep.psi[k] <= rep.psi[k + 1] + 1e-12);
    }
}

TEST_CASE("gamma is unimodal with a flat top of width spread+1") {
    Rng rng = Rng::stream(405, 0);
    for (int trial = 0; trial < 10000; ++trial) {
        int r = 1 + static_cast<int>(rng.next() % 5);
        ExponentProfile profile = random_generic_profile(rng, r);
        BetaProfile bp = beta_profile(profile);
        CHECK(bp.k_star <= bp.i_star);
        if (bp.k_star >= 0) {
            CHECK(bp.beta_star > bp.k_star);
            CHECK(bp.beta_star < bp.k_star + 1);
        }
        // Count positions attaining the max of gamma: exactly spread+1 when
        // the critical regime is visible (k_star >= 0).
        if (bp.k_star >= 0) {
            double top = *std::max_element(bp.gamma.begin(), bp.gamma.end());
            int flat = 0;
            for (double g : bp.gamma) flat += (std::abs(g - top) < 1e-12);
            int lo = std::max(bp.k_star, 0);
            CHECK(flat == bp.i_star - lo + 1);
            for (int k = lo; k <= bp.i_star; ++k) CHECK(bp.gamma[k] == doctest::Approx(top));
            // Rising strictly before, falling (weakly) after.
            for (int k = 0; k < lo; ++k) CHECK(bp.gamma[k] < bp.gamma[k + 1]);
            for (int k = bp.i_star; k + 1 <= profile.r(); ++k)
                CHECK(bp.gamma[k] >= bp.gamma[k + 1]);
        }
        // Zero-spread characterisation in terms of the exponents.
        bool zero_spread_form = profile.alpha[bp.i_star] < 1;
        for (int k = 1; bp.i_star + k <= profile.r() && zero_spread_form; ++k)
            if (!(profile.alpha[bp.i_star + k] > profile.alpha[bp.i_star] + k))
                zero_spread_form = false;
        if (bp.k_star >= 0) CHECK((bp.spread == 0) == zero_spread_form);
    }
}

TEST_CASE("expected face count, exact rational form") {
    Ambient d1 = Ambient::simplex(1);
    ParamMap half = ParamMap::uniform(d1, rational(1, 2));
    CHECK(expected_face_count_exact(half, 0) == rational(3, 2));
    CHECK(expected_face_count_exact(half, 1) == rational(1, 2));
    ParamMap zero = ParamMap::explicit_map(d1, {});
    CHECK(expected_face_count_exact(zero, 0) == 0);
    CHECK(expected_face_count_exact(zero, 1) == 0);
}

TEST_CASE("expected face count in log space matches direct evaluation") {
    ExponentProfile profile({0.3, 0.5, 2.9});
    double n = 50;
    for (int ell = 0; ell <= 2; ++ell) {
        // Direct double evaluation, safe at this small n.
        double prod = 1;
        for (int i = ell; i <= 2; ++i)
            prod *= std::pow(1 - std::pow(n, -profile.alpha[i]),
                             static_cast<double>(binomial(50 - ell, i - ell)));
        double direct = static_cast<double>(binomial(51, ell + 1)) * (1 - prod);
        FaceCountEstimate est = expected_face_count(n, profile, ell);
        CHECK(est.expected == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("below the critical dimension the expected count saturates") {
    ExponentProfile profile({0.3, 0.5, 2.9}); // k_star = 1
    double n = 1e4;
    FaceCountEstimate est = expected_face_count(n, profile, 0);
    CHECK(est.expected > 0.999 * (n + 1));
    CHECK(est.expected <= (n + 1) * (1 + 1e-9)); // float round-up allowance
}

TEST_CASE("exact log-space count degrades gracefully at huge n") {
    ExponentProfile profile({0.3, 0.5, 2.9});
    FaceCountEstimate est = expected_face_count(1e6, profile, 1);
    // gamma_1 = 1.5: the exact value approaches n^1.5 / 2! within o(1).
    CHECK(std::isfinite(est.asymptotic));
    CHECK(est.expected / est.asymptotic == doctest::Approx(1.0).epsilon(0.01));
    CHECK(est.leading_sum == doctest::Approx(est.asymptotic).epsilon(0.05));
}

TEST_CASE("slope of the exact expectation approaches gamma") {
    Rng rng = Rng::stream(406, 1);
    ExponentProfile profile = random_generic_profile(rng, 2, 0.15);
    BetaProfile bp = beta_profile(profile);
    for (int k = 0; k <= 2; ++k) {
        double lo = expected_face_count(1e3, profile, k).log_expected;
        double hi = expected_face_count(1e6, profile, k).log_expected;
        double slope = (hi - lo) / (std::log(1e6) - std::log(1e3));
        INFO("k=", k, " gamma=", bp.gamma[k], " slope=", slope);
        CHECK(std::abs(slope - bp.gamma[k]) < 0.1);
    }
}

TEST_CASE("skeleton threshold values") {
    SkeletonThreshold t1 = skeleton_threshold(100, 1, 0, 0);
    CHECK(t1.p == doctest::Approx(std::log(100.0) / 100.0));
    CHECK_FALSE(t1.clamped);

    SkeletonThreshold t2 = skeleton_threshold(150, 2, 0, 6);
    CHECK(t2.p == doctest::Approx((std::log(150.0) + 6) / 11175.0));

    SkeletonThreshold capped = skeleton_threshold(2, 1, 0, 10);
    CHECK(capped.p == 1.0);
    CHECK(capped.clamped);

    SkeletonThreshold floored = skeleton_threshold(150, 2, 0, -10);
    CHECK(floored.p == 0.0);
    CHECK(floored.clamped);

    // The binomial and power forms agree asymptotically (checked at
    // omega = 0, where only C(n, 2) vs n^2/2 separates them).
    SkeletonThreshold big = skeleton_threshold(1e4, 2, 0, 0);
    CHECK(big.p / big.p_alt == doctest::Approx(1.0).epsilon(0.001));

    CHECK_THROWS_AS(skeleton_threshold(100, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("negative critical dimension means the empty complex dominates") {
    ExponentProfile empty_regime({1.5, 2.7}); // k_star = -1
    double prev = -INFINITY;
    for (double n : {1e3, 1e4, 1e5, 1e6}) {
        double lp = upper_empty_log_prob(n, empty_regime);
        CHECK(lp > prev); // monotone approach to probability 1
        prev = lp;
    }
    CHECK(std::exp(prev) > 0.998); // -log P is about 1e-3 at n = 1e6

    ExponentProfile busy({0.5, 1.7}); // k_star = 0: empty probability dies
    CHECK(std::exp(upper_empty_log_prob(1e6, busy)) < 1e-9);
}
