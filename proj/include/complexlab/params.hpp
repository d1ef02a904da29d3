#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "complexlab/complex.hpp"
#include "complexlab/rational.hpp"

namespace complexlab {

/// Per-simplex inclusion probabilities over an ambient.
///
/// Two modes:
///   exponent: p depends only on the dimension, p_i = base^(-alpha_i) for
///               i <= r and 0 above; base defaults to the ambient's n.
///               Scales to large ambients; values are doubles.
///   explicit: a finite map simplex -> exact rational probability;
///               unlisted simplices have probability 0.
class ParamMap {
public:
    enum class Mode { exponent, explicit_map };

    static ParamMap exponent(Ambient a, std::vector<double> alpha,
                             std::optional<double> base = std::nullopt);
    static ParamMap explicit_map(Ambient a, std::vector<std::pair<Simplex, Rational>> probs);
    /// Every ambient simplex gets probability p (materialized; small ambients).
    static ParamMap uniform(Ambient a, const Rational& p);
    /// Probability depends on the dimension only (materialized; small ambients).
    static ParamMap per_dimension(Ambient a, const std::vector<Rational>& p_by_dim);

    const Ambient& ambient() const { return amb_; }
    Mode mode() const { return mode_; }
    bool is_explicit() const { return mode_ == Mode::explicit_map; }

    /// Top dimension carrying nonzero probability; -1 for the zero map.
    int top_dim() const;

    const std::vector<double>& alpha() const;
    double exponent_base() const;

    /// Exact probability of a simplex (explicit mode only).
    const Rational& prob(Simplex s) const;
    Rational q(Simplex s) const { return Rational(1) - prob(s); }

    /// Probability as a double, either mode.
    double prob_double(Simplex s) const;
    double prob_double_dim(int dim) const; // exponent mode only

    /// Entries of an explicit map, mask-sorted (deterministic iteration).
    const std::vector<std::pair<Simplex, Rational>>& entries() const;

    /// Materialize an exponent map as an explicit one (enumerates the
    /// ambient; throws for large ambients). Explicit maps return a copy.
    ParamMap to_explicit() const;

private:
    ParamMap(Ambient a) : amb_(a) {}

    Ambient amb_;
    Mode mode_ = Mode::explicit_map;
    // exponent mode
    std::vector<double> alpha_;
    double base_ = 0;
    // explicit mode
    std::vector<std::pair<Simplex, Rational>> entries_;
    std::unordered_map<vmask_t, std::size_t> index_;
};

/// Parameters of the Alexander-dual model over the same boundary ambient:
/// p'_s = 1 - p_{hat(s)}. Involutive. Exponent maps are materialized.
ParamMap dual_params(const ParamMap& p);

/// Parameters of the link-of-s model in the lower measure, over the link
/// ambient of s: p'_t = p_t * prod over nonempty faces v of s of p_{v union t}.
/// In exponent mode this stays an exponent map over the same base:
/// alpha'_i = alpha_i + sum_j C(k+1, j+1) alpha_{i+j+1}, k = dim s.
ParamMap link_params_lower(const ParamMap& p, Simplex s);

/// Conditional link-of-s distribution in the upper measure: the mixture
/// weight * U' + (1 - weight) * point mass at the empty complex, where U' is
/// the upper measure on the link ambient with p'_t = p_{s union t} and
/// weight = 1 / P(s occurs) >= 1.
struct LinkMixture {
    Rational weight; // c_s >= 1
    ParamMap params; // upper-model parameters over the link ambient

    /// Exact probability this mixture assigns to a link complex.
    Rational measure_of(const Complex& l) const;
};

LinkMixture link_measure_upper(const ParamMap& p, Simplex s);

/// Parameters describing the union of two independent upper complexes:
/// q''_s = q_s q'_s.
ParamMap union_params_upper(const ParamMap& p, const ParamMap& p2);

/// Parameters describing the intersection of two independent lower
/// complexes: p''_s = p_s p'_s. Exponent maps over a common base stay
/// exponent maps (alpha''_i = alpha_i + alpha'_i).
ParamMap intersection_params_lower(const ParamMap& p, const ParamMap& p2);

} // namespace complexlab
