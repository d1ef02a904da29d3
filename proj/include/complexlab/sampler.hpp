#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "complexlab/params.hpp"

namespace complexlab {

/// Counter-based pseudo-random stream (splitmix64). A (seed, index) pair
/// deterministically names an independent stream, so batches can be split
/// across threads in any way without changing the draws.
class Rng {
public:
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p) { return uniform() < p; }

private:
    explicit Rng(std::uint64_t state) : state_(state) {}
    std::uint64_t state_;
};

enum class ModelKind { hypergraph, lower, upper, pure };

/// Everything needed to reproduce a sampling run. `params` drives the
/// hypergraph/lower/upper models; the pure model draws only `pure_k`-faces,
/// each with probability `pure_p`, and closes downward.
struct SampleSpec {
    Ambient ambient;
    ModelKind model = ModelKind::upper;
    std::optional<ParamMap> params;
    int pure_k = -1;
    double pure_p = 0.0;
    std::uint64_t count = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

class Sampler {
public:
    explicit Sampler(SampleSpec spec);

    const SampleSpec& spec() const { return spec_; }

    /// Sample i as a pure function of (spec.seed, i).
    Complex at(std::uint64_t index) const;

private:
    std::vector<Simplex> draw_raw(Rng& rng) const;
    SampleSpec spec_;
};

/// Index of the rank-th size-m subset of {0,...,universe-1} in
/// lexicographic order (as sorted vertex tuples).
vmask_t unrank_subset_lex(std::uint64_t rank, int universe, int m);

/// Wide-universe variants for vertex sets beyond the 64-bit mask cap.
std::vector<int> unrank_subset_lex_wide(std::uint64_t rank, long long universe, int m);
std::uint64_t rank_subset_lex_wide(const std::vector<int>& subset, long long universe);

/// C(n, k) in 64 bits for arbitrary n; throws on overflow.
std::uint64_t binomial_u64(long long n, int k);

/// Visit the hit ranks of an independent Bernoulli(p) process over `total`
/// candidates, skipping runs of misses geometrically (cost proportional to
/// the number of hits).
void bernoulli_hits(Rng& rng, std::uint64_t total, double p,
                    const std::function<void(std::uint64_t)>& hit);

/// Evaluate fn(index, complex) for index in [0, spec.count), in parallel.
/// Workers own disjoint index ranges; results are deterministic per index.
/// fn is called concurrently and must synchronize shared state (per-index
/// slots in a preallocated vector need no locking).
void sample_foreach(const Sampler& sampler,
                    const std::function<void(std::uint64_t, const Complex&)>& fn);

/// Worker count: hardware concurrency capped by COMPLEXLAB_THREADS.
int worker_count();

/// Run fn(begin, end) over [0, count) split into contiguous chunks across
/// workers.
void parallel_chunks(std::uint64_t count,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn);

} // namespace complexlab
