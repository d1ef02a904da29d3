#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace complexlab {

// A set of vertices, bit v set <=> vertex v is in the set. Ambients are
// capped at 64 vertices so every simplex fits one machine word and
// subset/superset tests are single AND instructions.
using vmask_t = std::uint64_t;

constexpr int kMaxVertexIndex = 63;

inline int popcount(vmask_t m) { return std::popcount(m); }
inline bool subset_of(vmask_t a, vmask_t b) { return (a & ~b) == 0; }

/// Ambient simplex: vertex set [n] = {0,...,n}. include_top = true is the
/// full simplex on [n]; false is its boundary (the set [n] itself excluded).
struct Ambient {
    int n = 0;
    bool include_top = true;

    Ambient(int n_, bool include_top_) : n(n_), include_top(include_top_) {
        if (n < 0 || n > kMaxVertexIndex)
            throw std::invalid_argument("Ambient: n must be in [0, 63], got " + std::to_string(n));
    }
    static Ambient simplex(int n) { return Ambient(n, true); }
    static Ambient boundary(int n) { return Ambient(n, false); }

    vmask_t vertex_mask() const {
        return (n == 63) ? ~vmask_t{0} : ((vmask_t{1} << (n + 1)) - 1);
    }
    int vertex_count() const { return n + 1; }

    bool contains(vmask_t s) const {
        if (s == 0 || !subset_of(s, vertex_mask())) return false;
        if (!include_top && s == vertex_mask()) return false;
        return true;
    }

    // Total number of simplices (only meaningful when it fits; n <= 62 for
    // the full simplex).
    std::uint64_t simplex_count() const {
        std::uint64_t all = (n == 63) ? ~vmask_t{0} : ((vmask_t{1} << (n + 1)) - 1);
        return include_top ? all : all - 1;
    }

    bool operator==(const Ambient&) const = default;
};

/// Nonempty vertex set inside an ambient.
struct Simplex {
    vmask_t verts = 0;

    Simplex() = default;
    explicit Simplex(vmask_t v) : verts(v) {
        if (v == 0) throw std::invalid_argument("Simplex: empty vertex set");
    }
    Simplex(std::initializer_list<int> vs) {
        for (int v : vs) {
            if (v < 0 || v > kMaxVertexIndex)
                throw std::invalid_argument("Simplex: vertex out of range: " + std::to_string(v));
            verts |= vmask_t{1} << v;
        }
        if (verts == 0) throw std::invalid_argument("Simplex: empty vertex set");
    }

    int dim() const { return popcount(verts) - 1; }
    int vertex_count() const { return popcount(verts); }
    bool contains(Simplex t) const { return subset_of(t.verts, verts); }
    bool disjoint_from(Simplex t) const { return (verts & t.verts) == 0; }
    Simplex united(Simplex t) const { return Simplex(verts | t.verts); }

    std::vector<int> vertices() const {
        std::vector<int> out;
        vmask_t m = verts;
        while (m) {
            out.push_back(std::countr_zero(m));
            m &= m - 1;
        }
        return out;
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int v : vertices()) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }

    auto operator<=>(const Simplex&) const = default;
};

/// Binomial coefficients C(n, k) for n <= 64; every value fits in uint64_t.
class BinomialTable {
public:
    BinomialTable() : c_(kN + 1, std::vector<std::uint64_t>(kN + 1, 0)) {
        for (int i = 0; i <= kN; ++i) {
            c_[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                c_[i][j] = c_[i - 1][j - 1] + (j <= i - 1 ? c_[i - 1][j] : 0);
        }
    }
    std::uint64_t operator()(int n, int k) const {
        if (k < 0 || n < 0 || k > n) return 0;
        return c_[n][k];
    }

private:
    static constexpr int kN = 64;
    std::vector<std::vector<std::uint64_t>> c_;
};

const BinomialTable& binomial_table();

inline std::uint64_t binomial(int n, int k) { return binomial_table()(n, k); }

// C(n, k) as a double for large n (k small); exact-integer path when it fits.
double binomial_real(double n, int k);

} // namespace complexlab
