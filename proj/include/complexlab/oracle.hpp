#pragma once

#include <map>
#include <memory>
#include <string>

#include "complexlab/measures.hpp"

namespace complexlab {
namespace oracle {

/// Indexed view of a small ambient: simplices in mask order, one bit per
/// simplex, with precomputed face masks so closure and interior become word
/// operations. Ambients are capped at 15 simplices (full simplex or boundary
/// up to n = 3), i.e. at most 2^15 hypergraphs to enumerate.
class AmbientTable {
public:
    explicit AmbientTable(Ambient a);

    const Ambient& ambient() const { return amb_; }
    int count() const { return static_cast<int>(simplices_.size()); }
    const std::vector<Simplex>& simplices() const { return simplices_; }

    std::uint32_t closure_bits(std::uint32_t h) const;
    std::uint32_t interior_bits(std::uint32_t h) const;
    std::uint32_t dual_bits(std::uint32_t h) const; // boundary ambients only
    bool is_closed_bits(std::uint32_t h) const;

    Complex to_complex(std::uint32_t bits) const;
    std::uint32_t from_complex(const Complex& c) const;

    /// All face-closed bitmasks, ascending (the empty complex first).
    const std::vector<std::uint32_t>& closed_masks() const { return closed_; }

private:
    Ambient amb_;
    std::vector<Simplex> simplices_;
    std::vector<std::uint32_t> faces_incl_; // bits of all nonempty subsets, self included
    std::vector<int> hat_index_;            // boundary ambients; -1 otherwise
    std::vector<std::uint32_t> closed_;
};

enum class Model { lower, upper };

/// Exact pushforward of the Bernoulli hypergraph measure through the
/// closure (upper) or interior (lower) map, by enumerating every hypergraph.
class ExactDistribution {
public:
    ExactDistribution(std::shared_ptr<const AmbientTable> table, Model model,
                      std::map<std::uint32_t, Rational> prob)
        : table_(std::move(table)), model_(model), prob_(std::move(prob)) {}

    const AmbientTable& table() const { return *table_; }
    Model model() const { return model_; }
    const std::map<std::uint32_t, Rational>& entries() const { return prob_; }

    Rational prob_of_bits(std::uint32_t bits) const;
    Rational prob_of(const Complex& y) const { return prob_of_bits(table_->from_complex(y)); }
    Rational total_mass() const;

    std::vector<std::pair<Complex, Rational>> entries_as_complexes() const;

private:
    std::shared_ptr<const AmbientTable> table_;
    Model model_;
    std::map<std::uint32_t, Rational> prob_;
};

/// All face-closed subsets of the ambient, each exactly once, the empty
/// complex included.
std::vector<Complex> enumerate_complexes(const Ambient& a);

ExactDistribution pushforward(Model model, const ParamMap& params);
ExactDistribution pushforward(Model model, const ParamMap& params,
                              std::shared_ptr<const AmbientTable> table);

/// Distribution of the union (resp. intersection) of two independent draws.
ExactDistribution convolve_union(const ExactDistribution& a, const ExactDistribution& b);
ExactDistribution convolve_intersection(const ExactDistribution& a, const ExactDistribution& b);

struct IdentityResult {
    std::string identity;
    std::uint64_t instances = 0;
    bool pass = true;
    std::string counterexample; // human-readable description of the first failure
};

/// Identity families the oracle can check against exhaustive enumeration:
///   measure-formula  point-mass product formulas for both models
///   sandwich         interval probabilities, all evaluation routes
///   containment      intrinsic characterisation via containment products
///   duality          dual-parameter exchange of the two models (boundary)
///   link-upper       conditional link distribution under the upper model
///   link-lower       conditional link distribution under the lower model
///   union            union of independent upper draws
///   intersection     intersection of independent lower draws
std::vector<std::string> identity_names();

std::vector<IdentityResult> verify_identities(const Ambient& a, const ParamMap& params,
                                              const std::vector<std::string>& identities);

} // namespace oracle
} // namespace complexlab
