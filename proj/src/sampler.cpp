#include "complexlab/sampler.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

namespace complexlab {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

} // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(seed ^ mix64(index * kGolden + kGolden)));
}

std::uint64_t Rng::next() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

vmask_t unrank_subset_lex(std::uint64_t rank, int universe, int m) {
    vmask_t out = 0;
    int v = 0;
    for (int slot = 0; slot < m; ++slot) {
        for (;; ++v) {
            std::uint64_t with_v = binomial(universe - v - 1, m - slot - 1);
            if (rank < with_v) break;
            rank -= with_v;
        }
        out |= vmask_t{1} << v;
        ++v;
    }
    return out;
}

std::uint64_t binomial_u64(long long n, int k) {
    if (k < 0 || n < k) return 0;
    if (k > n - k) k = static_cast<int>(n - k);
    unsigned __int128 acc = 1;
    for (int j = 1; j <= k; ++j) {
        acc = acc * static_cast<unsigned __int128>(n - k + j) / j;
        if (acc > ~std::uint64_t{0})
            throw std::overflow_error("binomial_u64: C(" + std::to_string(n) + ", " +
                                      std::to_string(k) + ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<int> unrank_subset_lex_wide(std::uint64_t rank, long long universe, int m) {
    std::vector<int> out;
    out.reserve(m);
    long long v = 0;
    for (int slot = 0; slot < m; ++slot) {
        for (;; ++v) {
            std::uint64_t with_v = binomial_u64(universe - v - 1, m - slot - 1);
            if (rank < with_v) break;
            rank -= with_v;
        }
        out.push_back(static_cast<int>(v));
        ++v;
    }
    return out;
}

std::uint64_t rank_subset_lex_wide(const std::vector<int>& subset, long long universe) {
    std::uint64_t rank = 0;
    int m = static_cast<int>(subset.size());
    int prev = -1;
    for (int slot = 0; slot < m; ++slot) {
        for (int u = prev + 1; u < subset[slot]; ++u)
            rank += binomial_u64(universe - u - 1, m - slot - 1);
        prev = subset[slot];
    }
    return rank;
}

void bernoulli_hits(Rng& rng, std::uint64_t total, double p,
                    const std::function<void(std::uint64_t)>& hit) {
    if (!(p > 0.0)) return;
    const double log_q = std::log1p(-p); // -inf when p == 1
    std::uint64_t position = 0;
    while (position < total) {
        if (p < 1.0) {
            double u = rng.uniform();
            if (u <= 0.0) break;
            double gap = std::floor(std::log(u) / log_q);
            if (gap >= static_cast<double>(total - position)) break;
            position += static_cast<std::uint64_t>(gap);
            if (position >= total) break;
        }
        hit(position);
        ++position;
    }
}

void SampleSpec::validate() const {
    if (model == ModelKind::pure) {
        if (pure_k < 0 || pure_k > ambient.n)
            throw std::invalid_argument("SampleSpec: pure_k out of range");
        if (!(pure_p > 0.0 && pure_p <= 1.0))
            throw std::invalid_argument("SampleSpec: pure_p must lie in (0, 1]");
    } else {
        if (!params)
            throw std::invalid_argument("SampleSpec: params required for this model");
        if (!(params->ambient() == ambient))
            throw std::invalid_argument("SampleSpec: params ambient mismatch");
    }
    if (count < 1) throw std::invalid_argument("SampleSpec: count must be >= 1");
}

Sampler::Sampler(SampleSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

namespace {

// Emit the dimension-d simplices hit by an independent Bernoulli(p) over the
// lexicographically ordered list of candidates.
void draw_dimension(Rng& rng, const Ambient& amb, int d, double p, std::vector<Simplex>& out) {
    const std::uint64_t total = binomial(amb.vertex_count(), d + 1);
    const bool skip_top = !amb.include_top && d == amb.n;
    bernoulli_hits(rng, total, p, [&](std::uint64_t position) {
        if (!(skip_top && position == total - 1))
            out.emplace_back(unrank_subset_lex(position, amb.vertex_count(), d + 1));
    });
}

} // namespace

std::vector<Simplex> Sampler::draw_raw(Rng& rng) const {
    std::vector<Simplex> out;
    const Ambient& amb = spec_.ambient;
    if (spec_.model == ModelKind::pure) {
        draw_dimension(rng, amb, spec_.pure_k, spec_.pure_p, out);
        return out;
    }
    const ParamMap& p = *spec_.params;
    if (p.mode() == ParamMap::Mode::exponent) {
        for (int d = 0; d <= p.top_dim(); ++d)
            draw_dimension(rng, amb, d, p.prob_double_dim(d), out);
    } else {
        for (const auto& [s, prob] : p.entries())
            if (rng.uniform() < prob.get_d()) out.push_back(s);
    }
    return out;
}

Complex Sampler::at(std::uint64_t index) const {
    Rng rng = Rng::stream(spec_.seed, index);
    std::vector<Simplex> raw = draw_raw(rng);
    Complex x = Complex::hypergraph(spec_.ambient, std::move(raw));
    switch (spec_.model) {
    case ModelKind::hypergraph:
        return x;
    case ModelKind::lower:
        return lower_interior(x);
    case ModelKind::upper:
    case ModelKind::pure:
        return upper_closure(x);
    }
    throw std::logic_error("Sampler: unknown model");
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("COMPLEXLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

void parallel_chunks(std::uint64_t count, const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    int workers = worker_count();
    if (count == 0) return;
    if (workers <= 1 || count < 2) {
        fn(0, count);
        return;
    }
    std::uint64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t begin = chunk * w;
        std::uint64_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

void sample_foreach(const Sampler& sampler,
                    const std::function<void(std::uint64_t, const Complex&)>& fn) {
    parallel_chunks(sampler.spec().count, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) fn(i, sampler.at(i));
    });
}

} // namespace complexlab
