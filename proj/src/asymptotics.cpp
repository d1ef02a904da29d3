#include "complexlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace complexlab {

namespace {

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// ln C(n+1, l+1) for real n.
double log_binomial_real(double n, int k) {
    return std::lgamma(n + 1.0) - log_factorial(k) - std::lgamma(n - k + 1.0);
}

bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }

} // namespace

GenericityReport check_genericity(const ExponentProfile& profile, double tol) {
    GenericityReport report;
    const auto& a = profile.alpha;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0)) {
            report.violations.push_back("alpha_" + std::to_string(i) + " is not positive");
            continue;
        }
        if (near_integer(a[i], tol))
            report.violations.push_back("alpha_" + std::to_string(i) + " is an integer");
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (near_integer(a[i] - a[j], tol))
                report.violations.push_back("alpha_" + std::to_string(i) + " - alpha_" +
                                            std::to_string(j) + " is an integer");
    }
    report.ok = report.violations.empty();
    return report;
}

namespace {

BetaProfile beta_profile_unchecked(const ExponentProfile& profile) {
    int r = profile.r();
    BetaProfile out;
    out.beta.resize(r + 1);
    for (int i = 0; i <= r; ++i) out.beta[i] = i + 1 - profile.alpha[i];

    out.beta_star_tail.resize(r + 1);
    out.i_star_tail.resize(r + 1);
    for (int k = r; k >= 0; --k) {
        if (k == r || out.beta[k] > out.beta_star_tail[k + 1]) {
            out.beta_star_tail[k] = out.beta[k];
            out.i_star_tail[k] = k;
        } else {
            out.beta_star_tail[k] = out.beta_star_tail[k + 1];
            out.i_star_tail[k] = out.i_star_tail[k + 1];
        }
    }
    out.beta_star = out.beta_star_tail[0];
    out.i_star = out.i_star_tail[0];
    out.k_star = static_cast<int>(std::floor(out.beta_star));
    out.spread = out.i_star - out.k_star;

    out.gamma.resize(r + 1);
    for (int k = 0; k <= r; ++k)
        out.gamma[k] = k < out.k_star ? k + 1 : out.beta_star_tail[k];
    return out;
}

} // namespace

BetaProfile beta_profile(const ExponentProfile& profile) {
    if (profile.alpha.empty())
        throw std::invalid_argument("beta_profile: empty exponent profile");
    GenericityReport generic = check_genericity(profile);
    if (!generic.ok) {
        std::string what = "beta_profile: profile is not generic:";
        for (const auto& v : generic.violations) what += " " + v + ";";
        throw std::invalid_argument(what);
    }
    return beta_profile_unchecked(profile);
}

LowerCriticalReport lower_critical_dimension(const ExponentProfile& profile, double tol) {
    if (profile.alpha.empty())
        throw std::invalid_argument("lower_critical_dimension: empty exponent profile");
    int r = profile.r();
    LowerCriticalReport out;
    out.psi.resize(r + 1);
    for (int k = 0; k <= r; ++k) {
        double acc = 0;
        for (int i = 0; i <= r; ++i)
            acc += static_cast<double>(binomial(k, i)) * profile.alpha[i];
        out.psi[k] = acc;
    }
    for (double v : out.psi)
        if (std::abs(v - 1.0) <= tol) out.boundary_hit = true;
    out.k_lower = r; // psi_r < 1 case
    for (int k = 0; k <= r; ++k)
        if (out.psi[k] > 1.0) {
            out.k_lower = k - 1;
            break;
        }
    return out;
}

FaceCountEstimate expected_face_count(double n, const ExponentProfile& profile, int ell) {
    int r = profile.r();
    if (ell < 0 || ell > r)
        throw std::invalid_argument("expected_face_count: dimension outside profile range");
    if (!(n >= 1)) throw std::invalid_argument("expected_face_count: n must be >= 1");

    const double log_n = std::log(n);
    // ln prod_{i=ell}^r q_i^{C(n-ell, i-ell)} via log1p; stays accurate both
    // when the product is near 1 and when it underflows.
    double log_prod = 0;
    for (int i = ell; i <= r; ++i) {
        double p_i = std::exp(-profile.alpha[i] * log_n);
        log_prod += binomial_real(n - ell, i - ell) * std::log1p(-p_i);
    }
    FaceCountEstimate out;
    double one_minus = -std::expm1(log_prod); // 1 - e^{log_prod}, accurate near 0
    out.log_expected = log_binomial_real(n + 1, ell + 1) +
                       (one_minus > 0 ? std::log(one_minus) : -INFINITY);
    out.expected = std::exp(out.log_expected);

    // The approximations use the growth profile even when the exponents are
    // not generic; exactness of log_expected never depends on genericity.
    BetaProfile bp = beta_profile_unchecked(profile);
    out.leading_sum = 0;
    for (int i = ell; i <= r; ++i)
        out.leading_sum += std::exp(bp.beta[i] * log_n - log_factorial(i - ell));
    out.leading_sum /= std::exp(log_factorial(ell + 1));
    out.asymptotic = std::exp(bp.beta_star_tail[ell] * log_n - log_factorial(ell + 1) -
                              log_factorial(bp.i_star_tail[ell] - ell));
    return out;
}

Rational expected_face_count_exact(const ParamMap& params, int ell) {
    ParamMap pe = params.is_explicit() ? params : params.to_explicit();
    const Ambient& a = pe.ambient();
    Rational total = 0;
    for (Simplex s : enumerate_ambient(a)) {
        if (s.dim() != ell) continue;
        Rational miss = 1;
        vmask_t comp = a.vertex_mask() & ~s.verts;
        for (vmask_t e = comp;; e = (e - 1) & comp) {
            vmask_t sup = s.verts | e;
            if (a.contains(sup)) miss *= Rational(1) - pe.prob(Simplex(sup));
            if (e == 0 || miss == 0) break;
        }
        total += Rational(1) - miss;
    }
    return total;
}

SkeletonThreshold skeleton_threshold(double n, int k, int ell, double omega) {
    if (!(0 <= ell && ell < k && k <= n))
        throw std::invalid_argument("skeleton_threshold: need 0 <= ell < k <= n");
    SkeletonThreshold out;
    double denom = binomial_real(n - ell, k - ell);
    out.p = ((ell + 1) * std::log(n) + omega) / denom;
    out.p_alt = ((ell + 1) * std::exp(log_factorial(k - ell)) * std::log(n) + omega) /
                std::pow(n, k - ell);
    if (out.p < 0) {
        out.p = 0;
        out.clamped = true;
    } else if (out.p > 1) {
        out.p = 1;
        out.clamped = true;
    }
    return out;
}

double upper_empty_log_prob(double n, const ExponentProfile& profile) {
    double log_n = std::log(n);
    double acc = 0;
    for (int i = 0; i <= profile.r(); ++i)
        acc += binomial_real(n + 1, i + 1) * std::log1p(-std::exp(-profile.alpha[i] * log_n));
    return acc;
}

} // namespace complexlab
