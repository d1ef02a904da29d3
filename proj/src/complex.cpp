#include "complexlab/complex.hpp"

#include <algorithm>
#include <cmath>

namespace complexlab {

const BinomialTable& binomial_table() {
    static const BinomialTable table;
    return table;
}

double binomial_real(double n, int k) {
    if (k < 0 || n < k) return 0.0;
    if (n <= 64 && n == std::floor(n))
        return static_cast<double>(binomial(static_cast<int>(n), k));
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= (n - j) / (k - j);
    return r;
}

namespace {

constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 22;

// Dense membership bitset over all vertex masks of an ambient; used for the
// closure/interior sweeps when the ambient is small enough.
struct DenseSet {
    std::vector<std::uint64_t> bits;
    explicit DenseSet(int n) : bits((std::size_t{1} << (n + 1)) / 64 + 1, 0) {}
    bool test(vmask_t m) const { return bits[m >> 6] >> (m & 63) & 1; }
    void set(vmask_t m) { bits[m >> 6] |= std::uint64_t{1} << (m & 63); }
};

constexpr int kDenseMaxN = 15;

void require_closed(const Complex& y, const char* op) {
    if (!y.is_closed())
        throw std::invalid_argument(std::string(op) + ": input is not face-closed");
}

void require_boundary(const Ambient& a, const char* op) {
    if (a.include_top)
        throw std::invalid_argument(std::string(op) + ": requires a boundary ambient");
}

} // namespace

std::vector<Simplex> enumerate_ambient(const Ambient& a) {
    if (a.simplex_count() > kEnumerationGuard)
        throw std::invalid_argument("ambient too large to enumerate");
    std::vector<Simplex> out;
    out.reserve(a.simplex_count());
    vmask_t top = a.vertex_mask();
    for (vmask_t m = 1; m <= top; ++m) {
        if (!a.include_top && m == top) continue;
        out.emplace_back(m);
    }
    return out;
}

Complex::Complex(Ambient a, std::vector<Simplex> simplices) : amb_(a) {
    members_.reserve(simplices.size() * 2);
    int max_dim = -1;
    for (Simplex s : simplices) {
        if (!amb_.contains(s.verts))
            throw std::invalid_argument("Complex: simplex " + s.str() + " not in ambient");
        if (members_.insert(s.verts).second) max_dim = std::max(max_dim, s.dim());
    }
    by_dim_.resize(max_dim + 1);
    for (vmask_t m : members_) by_dim_[popcount(m) - 1].emplace_back(m);
    for (auto& level : by_dim_) std::sort(level.begin(), level.end());
    size_ = members_.size();

    closed_ = true;
    for (vmask_t m : members_) {
        if (popcount(m) == 1) continue;
        for (vmask_t rest = m; rest; rest &= rest - 1) {
            vmask_t facet = m & ~(rest & -rest);
            if (!members_.count(facet)) {
                closed_ = false;
                break;
            }
        }
        if (!closed_) break;
    }
}

Complex Complex::full(Ambient a) {
    return Complex(a, enumerate_ambient(a));
}

const std::vector<Simplex>& Complex::simplices(int dimension) const {
    static const std::vector<Simplex> none;
    if (dimension < 0 || dimension >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[dimension];
}

std::vector<Simplex> Complex::all_simplices() const {
    std::vector<Simplex> out;
    out.reserve(size_);
    for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
}

std::vector<std::uint64_t> Complex::counts_by_dim() const {
    std::vector<std::uint64_t> out(by_dim_.size());
    for (std::size_t d = 0; d < by_dim_.size(); ++d) out[d] = by_dim_[d].size();
    return out;
}

bool Complex::subcomplex_of(const Complex& other) const {
    if (!(amb_ == other.amb_) || size_ > other.size_) return false;
    for (vmask_t m : members_)
        if (!other.members_.count(m)) return false;
    return true;
}

std::vector<vmask_t> Complex::canonical_key() const {
    std::vector<vmask_t> key(members_.begin(), members_.end());
    std::sort(key.begin(), key.end());
    return key;
}

Complex upper_closure(const Complex& x) {
    const Ambient& a = x.ambient();
    std::vector<Simplex> out;
    if (a.n <= kDenseMaxN) {
        DenseSet in(a.n);
        for (Simplex s : x.all_simplices()) in.set(s.verts);
        vmask_t top = a.vertex_mask();
        for (vmask_t m = top; m >= 1; --m) {
            if (!in.test(m)) continue;
            for (vmask_t rest = m; rest; rest &= rest - 1) {
                vmask_t facet = m & ~(rest & -rest);
                if (facet) in.set(facet);
            }
        }
        for (vmask_t m = 1; m <= top; ++m)
            if (in.test(m) && a.contains(m)) out.emplace_back(m);
    } else {
        std::unordered_set<vmask_t> seen;
        std::vector<vmask_t> stack;
        for (Simplex s : x.all_simplices())
            if (seen.insert(s.verts).second) stack.push_back(s.verts);
        while (!stack.empty()) {
            vmask_t m = stack.back();
            stack.pop_back();
            for (vmask_t rest = m; rest; rest &= rest - 1) {
                vmask_t facet = m & ~(rest & -rest);
                if (facet && seen.insert(facet).second) stack.push_back(facet);
            }
        }
        out.reserve(seen.size());
        for (vmask_t m : seen) out.emplace_back(m);
    }
    return Complex::hypergraph(a, std::move(out));
}

Complex lower_interior(const Complex& x) {
    const Ambient& a = x.ambient();
    std::vector<Simplex> out;
    if (a.n <= kDenseMaxN) {
        DenseSet in(a.n), keep(a.n);
        for (Simplex s : x.all_simplices()) in.set(s.verts);
        vmask_t top = a.vertex_mask();
        for (vmask_t m = 1; m <= top; ++m) {
            if (!in.test(m)) continue;
            bool ok = true;
            for (vmask_t rest = m; rest && ok; rest &= rest - 1) {
                vmask_t facet = m & ~(rest & -rest);
                if (facet && !keep.test(facet)) ok = false;
            }
            if (ok) {
                keep.set(m);
                out.emplace_back(m);
            }
        }
    } else {
        std::unordered_set<vmask_t> keep;
        auto members = x.all_simplices(); // dimension-major: faces come first
        for (Simplex s : members) {
            bool ok = true;
            for (vmask_t rest = s.verts; rest && ok; rest &= rest - 1) {
                vmask_t facet = s.verts & ~(rest & -rest);
                if (facet && !keep.count(facet)) ok = false;
            }
            if (ok) keep.insert(s.verts);
        }
        out.reserve(keep.size());
        for (vmask_t m : keep) out.emplace_back(m);
    }
    return Complex::hypergraph(a, std::move(out));
}

std::vector<Simplex> external_faces(const Complex& y) {
    require_closed(y, "external_faces");
    const Ambient& a = y.ambient();
    std::unordered_set<vmask_t> found;
    // A vertex has empty boundary: every missing ambient vertex is external.
    for (int v = 0; v <= a.n; ++v) {
        vmask_t m = vmask_t{1} << v;
        if (a.contains(m) && !y.contains(Simplex(m))) found.insert(m);
    }
    // Higher-dimensional candidates are one-vertex extensions of faces of Y.
    for (Simplex s : y.all_simplices()) {
        vmask_t others = a.vertex_mask() & ~s.verts;
        for (vmask_t rest = others; rest; rest &= rest - 1) {
            vmask_t cand = s.verts | (rest & -rest);
            if (!a.contains(cand) || y.contains(Simplex(cand)) || found.count(cand)) continue;
            bool boundary_in = true;
            for (vmask_t r2 = cand; r2 && boundary_in; r2 &= r2 - 1) {
                vmask_t facet = cand & ~(r2 & -r2);
                if (facet && !y.contains(Simplex(facet))) boundary_in = false;
            }
            if (boundary_in) found.insert(cand);
        }
    }
    std::vector<Simplex> out;
    out.reserve(found.size());
    for (vmask_t m : found) out.emplace_back(m);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> maximal_faces(const Complex& y) {
    require_closed(y, "maximal_faces");
    const Ambient& a = y.ambient();
    std::vector<Simplex> out;
    for (Simplex s : y.all_simplices()) {
        bool maximal = true;
        vmask_t others = a.vertex_mask() & ~s.verts;
        for (vmask_t rest = others; rest && maximal; rest &= rest - 1) {
            vmask_t ext = s.verts | (rest & -rest);
            if (a.contains(ext) && y.contains(Simplex(ext))) maximal = false;
        }
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Simplex hat(Simplex s, const Ambient& a) {
    require_boundary(a, "hat");
    if (!a.contains(s.verts))
        throw std::invalid_argument("hat: simplex " + s.str() + " not in ambient");
    return Simplex(a.vertex_mask() & ~s.verts);
}

Complex dual_c(const Complex& x) {
    const Ambient& a = x.ambient();
    require_boundary(a, "dual_c");
    if (a.simplex_count() > kEnumerationGuard)
        throw std::invalid_argument("dual_c: ambient too large to enumerate");
    std::vector<Simplex> out;
    vmask_t top = a.vertex_mask();
    for (vmask_t m = 1; m < top; ++m)
        if (!x.contains(Simplex(top & ~m))) out.emplace_back(m);
    return Complex::hypergraph(a, std::move(out));
}

namespace {

// Enumerate the downward-closed family of index sets accepted by `admits`
// (which must be monotone: rejecting a set rejects all supersets).
template <typename Admits>
std::vector<Simplex> grow_family(int count, const Admits& admits) {
    std::vector<Simplex> faces;
    std::vector<int> current;
    auto rec = [&](auto&& self, int next) -> void {
        for (int i = next; i < count; ++i) {
            current.push_back(i);
            if (admits(current)) {
                vmask_t m = 0;
                for (int j : current) m |= vmask_t{1} << j;
                faces.emplace_back(m);
                self(self, i + 1);
            }
            current.pop_back();
        }
    };
    rec(rec, 0);
    return faces;
}

} // namespace

LabeledComplex dual_prime(const Complex& y) {
    require_closed(y, "dual_prime");
    require_boundary(y.ambient(), "dual_prime");
    std::vector<Simplex> ext = external_faces(y);
    if (ext.empty())
        return {Complex::empty(Ambient::simplex(0)), {}};
    if (ext.size() > 64)
        throw std::invalid_argument("dual_prime: more than 64 external faces");
    vmask_t full = y.ambient().vertex_mask();
    auto admits = [&](const std::vector<int>& idx) {
        vmask_t u = 0;
        for (int i : idx) u |= ext[i].verts;
        return u != full;
    };
    auto faces = grow_family(static_cast<int>(ext.size()), admits);
    Ambient amb = Ambient::simplex(static_cast<int>(ext.size()) - 1);
    return {Complex::hypergraph(amb, std::move(faces)), std::move(ext)};
}

LabeledComplex nerve_of_maximal(const Complex& y) {
    require_closed(y, "nerve_of_maximal");
    if (y.is_empty())
        return {Complex::empty(Ambient::simplex(0)), {}};
    std::vector<Simplex> maximal = maximal_faces(y);
    if (maximal.size() > 64)
        throw std::invalid_argument("nerve_of_maximal: more than 64 maximal faces");
    auto admits = [&](const std::vector<int>& idx) {
        vmask_t inter = ~vmask_t{0};
        for (int i : idx) inter &= maximal[i].verts;
        return inter != 0;
    };
    auto faces = grow_family(static_cast<int>(maximal.size()), admits);
    Ambient amb = Ambient::simplex(static_cast<int>(maximal.size()) - 1);
    return {Complex::hypergraph(amb, std::move(faces)), std::move(maximal)};
}

Ambient link_ambient(Simplex s, const Ambient& a) {
    int remaining = a.vertex_count() - s.vertex_count();
    if (remaining <= 0)
        throw std::invalid_argument("link: simplex uses every ambient vertex");
    return Ambient::simplex(remaining - 1);
}

Simplex compress_to_link(Simplex t, Simplex s, const Ambient& a) {
    vmask_t complement = a.vertex_mask() & ~s.verts;
    if (!subset_of(t.verts, complement))
        throw std::invalid_argument("compress_to_link: simplex meets the removed vertices");
    vmask_t out = 0;
    int rank = 0;
    for (vmask_t rest = complement; rest; rest &= rest - 1, ++rank)
        if (t.verts & (rest & -rest)) out |= vmask_t{1} << rank;
    return Simplex(out);
}

Complex link(const Complex& y, Simplex s) {
    require_closed(y, "link");
    if (!y.contains(s))
        throw std::invalid_argument("link: simplex " + s.str() + " not in the complex");
    Ambient amb = link_ambient(s, y.ambient());
    std::vector<Simplex> faces;
    for (Simplex u : y.all_simplices())
        if (u.contains(s) && u != s)
            faces.push_back(compress_to_link(Simplex(u.verts & ~s.verts), s, y.ambient()));
    return Complex::hypergraph(amb, std::move(faces));
}

std::vector<Simplex> star(const Complex& y, Simplex s) {
    std::vector<Simplex> out;
    for (Simplex u : y.all_simplices())
        if (u.contains(s)) out.push_back(u);
    return out;
}

std::vector<std::uint64_t> f_vector(const Complex& y) {
    require_closed(y, "f_vector");
    return y.counts_by_dim();
}

std::vector<std::uint64_t> external_counts(const Complex& y) {
    std::vector<std::uint64_t> out(y.ambient().n + 1, 0);
    for (Simplex s : external_faces(y)) out[s.dim()]++;
    return out;
}

std::vector<std::uint64_t> maximal_counts(const Complex& y) {
    std::vector<std::uint64_t> out(y.ambient().n + 1, 0);
    for (Simplex s : maximal_faces(y)) out[s.dim()]++;
    return out;
}

bool contains_skeleton(const Complex& y, int l) {
    if (l < 0 || l > y.ambient().n)
        throw std::invalid_argument("contains_skeleton: dimension out of range");
    return y.simplices(l).size() == binomial(y.ambient().n + 1, l + 1);
}

} // namespace complexlab
