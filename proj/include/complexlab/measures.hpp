#pragma once

#include "complexlab/params.hpp"

namespace complexlab {

/// Thrown when an inclusion-exclusion sum would exceed the subset guard;
/// callers should fall back to Monte Carlo estimation.
struct SandwichGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Probability that an independent Bernoulli draw over the ambient produces
/// exactly the hypergraph X: prod_{s in X} p_s * prod_{s not in X} q_s.
Rational hypergraph_prob(const Complex& x, const ParamMap& p);

/// Point mass of the lower model: prod_{s in Y} p_s * prod_{s in E(Y)} q_s.
Rational lower_measure(const Complex& y, const ParamMap& p);

/// Point mass of the upper model: prod_{s in M(Y)} p_s * prod_{s not in Y} q_s.
Rational upper_measure(const Complex& y, const ParamMap& p);

/// Probability that a fixed simplex appears in an upper-model complex:
/// 1 - prod over supersets t of s of q_t.
Rational prob_simplex_in_upper(Simplex s, const ParamMap& p);

/// Evaluation route for the sandwich probabilities. `automatic` picks the
/// cheapest applicable shortcut; the explicit routes throw when their
/// hypothesis fails (used to cross-check that all routes agree).
enum class SandwichRoute {
    automatic,
    inclusion_exclusion, // general alternating sum over subsets
    disjoint_product,    // per-face cover sets pairwise disjoint
    nested,              // E(B) subset of E(A) (lower) / M(A) subset of M(B) (upper)
};

/// P(A subset Y subset B) under the lower model, A and B face-closed,
/// A subset B. The general route sums (-1)^|S| P_S over S subset E(B) where
/// P_S multiplies p over the faces outside A covered by S.
Rational sandwich_lower(const Complex& a, const Complex& b, const ParamMap& p,
                        SandwichRoute route = SandwichRoute::automatic, int guard_bits = 24);

/// P(A subset Y subset B) under the upper model; the alternating sum runs
/// over subsets of M(A) and multiplies q over the faces of B above them.
Rational sandwich_upper(const Complex& a, const Complex& b, const ParamMap& p,
                        SandwichRoute route = SandwichRoute::automatic, int guard_bits = 24);

} // namespace complexlab
