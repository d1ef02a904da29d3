#pragma once

#include <optional>
#include <string>

#include "complexlab/asymptotics.hpp"
#include "complexlab/homology.hpp"
#include "complexlab/sampler.hpp"

namespace complexlab {

/// Duality experiment: sample upper(P) and lower(dual(P)) complexes, record
/// reduced Betti vectors on both sides, and check per upper sample that the
/// reduced Betti numbers of the Alexander dual mirror those of the sample.
/// When the ambient is oracle-sized and the parameters are explicit the
/// sampled comparison is augmented by an exact distribution comparison.
struct DualityConfig {
    ParamMap params; // boundary ambient
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    FieldSpec field = FieldSpec::gf_default();
    std::string out_csv; // empty: no files written
};

struct DualityResult {
    std::uint64_t samples = 0;
    std::uint64_t identity_failures = 0; // per-sample reduced duality violations
    bool exact_mode = false;             // oracle distributions were also compared
    bool exact_equal = false;
};

DualityResult experiment_duality(const DualityConfig& config);

/// Skeleton threshold experiment for the pure model: for each omega on the
/// grid, draw pure(k, p(omega)) complexes and record how often the full
/// ell-skeleton is present. Positive omega comes with the theoretical lower
/// bound 1 - e^{-omega} on the containment probability.
struct ThresholdConfig {
    int n = 150;
    int k = 2;
    int ell = 0;
    std::vector<double> omegas = {-6, -2, 0, 2, 6};
    std::uint64_t trials = 200;
    std::uint64_t seed = 0;
    std::string out_csv;
};

struct ThresholdRow {
    double omega = 0;
    double p = 0;
    bool clamped = false;
    std::uint64_t contained = 0;
    double fraction = 0;
    double theory_lower_bound = 0; // meaningful for omega > 0
};

struct ThresholdResult {
    std::vector<ThresholdRow> rows;
};

ThresholdResult experiment_threshold(const ThresholdConfig& config);

/// One pure-model draw on vertex set {0,...,n}: k-faces appear independently
/// with probability p; returns whether the downward closure contains every
/// ell-face (ell < k). Streams over face ranks, so n may exceed the 64-vertex
/// cap of the Complex type; consumes the random stream exactly like the
/// bounded pure-model sampler.
bool pure_skeleton_containment_trial(long long n, int k, int ell, double p, Rng& rng);

/// Betti profile experiment for the upper model with exponent parameters:
/// per-sample f-vector and Betti vectors next to the predicted face-count
/// scale n^gamma_k / ((k+1)! (i*_k - k)!). Emits a warning flag when the
/// spread is nonzero (the domination statements assume zero spread).
struct BettiProfileConfig {
    int n = 60;
    ExponentProfile profile;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    FieldSpec field = FieldSpec::gf_default();
    std::string out_csv;
};

struct BettiProfileResult {
    BetaProfile growth;
    bool spread_warning = false;
    std::uint64_t samples = 0;
    std::vector<double> prediction;                      // per dimension 0..r
    std::vector<std::vector<std::int64_t>> f_rows;       // per sample, dims 0..r
    std::vector<std::vector<std::int64_t>> betti_rows;   // per sample, dims 0..r
    std::vector<std::vector<std::int64_t>> reduced_rows; // per sample, dims 0..r

    double median_betti(int k) const;
};

BettiProfileResult experiment_betti_profile(const BettiProfileConfig& config);

} // namespace complexlab
