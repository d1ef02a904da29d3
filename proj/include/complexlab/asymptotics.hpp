#pragma once

#include <string>
#include <vector>

#include "complexlab/params.hpp"

namespace complexlab {

/// Dimension-wise exponents alpha_0..alpha_r of an upper/lower model with
/// p_i = n^(-alpha_i) and p = 0 above dimension r.
struct ExponentProfile {
    std::vector<double> alpha;

    ExponentProfile() = default;
    explicit ExponentProfile(std::vector<double> a) : alpha(std::move(a)) {}
    int r() const { return static_cast<int>(alpha.size()) - 1; }
};

/// Genericity: no exponent and no pairwise difference of exponents may be an
/// integer (within tol); all exponents must be positive.
struct GenericityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

GenericityReport check_genericity(const ExponentProfile& profile, double tol = 1e-9);

/// Derived growth data of the upper model.
///
///   beta_i   = i + 1 - alpha_i
///   beta_star = max beta_i, attained at the unique index i_star
///   k_star   = floor(beta_star), the critical dimension
///   spread   = i_star - k_star
///   gamma_k  = growth exponent of the expected k-face count:
///              k + 1 below k_star, beta_star on [k_star, i_star], and the
///              tail maximum beta_star_tail[k] above i_star
struct BetaProfile {
    std::vector<double> beta;
    double beta_star = 0;
    int i_star = 0;
    int k_star = 0;
    int spread = 0;
    std::vector<double> gamma;
    std::vector<double> beta_star_tail; // max over beta_k..beta_r
    std::vector<int> i_star_tail;       // argmax over beta_k..beta_r
};

/// Throws std::invalid_argument listing all violations when the profile is
/// not generic.
BetaProfile beta_profile(const ExponentProfile& profile);

/// Critical dimension of the lower model: psi_k = sum_i C(k, i) alpha_i is
/// nondecreasing in k; k_lower is the unique k in {-1,...,r} with
/// psi_k < 1 < psi_{k+1} (with the obvious conventions at the ends).
/// boundary_hit flags psi values within tol of 1 (non-generic; k_lower is
/// then reported as the smallest consistent value rather than guessed).
struct LowerCriticalReport {
    std::vector<double> psi;
    int k_lower = 0;
    bool boundary_hit = false;
};

LowerCriticalReport lower_critical_dimension(const ExponentProfile& profile, double tol = 1e-9);

/// Expected number of ell-faces of an upper-model complex and two
/// asymptotic approximations of it. All large-n work happens in log space.
struct FaceCountEstimate {
    double log_expected = 0; // ln E(f_ell), exact formula
    double expected = 0;     // exp of the above (may overflow to inf)
    double asymptotic = 0;   // n^{beta*_ell} / ((ell+1)! (i*_ell - ell)!), ell >= k* only
    double leading_sum = 0;  // (1/(ell+1)!) sum_{i>=ell} n^{beta_i} / (i-ell)!
};

FaceCountEstimate expected_face_count(double n, const ExponentProfile& profile, int ell);

/// Exact expected ell-face count for an explicit parameter map:
/// sum over ell-simplices s of (1 - prod over supersets t of q_t).
Rational expected_face_count_exact(const ParamMap& params, int ell);

/// Bernoulli parameter placing a pure k-dimensional complex at the
/// ell-skeleton containment threshold: p = ((ell+1) ln n + omega) / C(n-ell, k-ell),
/// omega signed. p_alt is the asymptotically equivalent n^{k-ell} form;
/// clamped reports truncation into [0, 1].
struct SkeletonThreshold {
    double p = 0;
    bool clamped = false;
    double p_alt = 0;
};

SkeletonThreshold skeleton_threshold(double n, int k, int ell, double omega);

/// ln P(empty complex) in the upper model: sum_i C(n+1, i+1) ln(1 - n^{-alpha_i}).
double upper_empty_log_prob(double n, const ExponentProfile& profile);

} // namespace complexlab
