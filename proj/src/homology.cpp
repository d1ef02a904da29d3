#include "complexlab/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace complexlab {

BoundaryMatrix boundary_matrix(const Complex& y, int k) {
    if (!y.is_closed())
        throw std::invalid_argument("boundary_matrix: complex is not face-closed");
    BoundaryMatrix m;
    const auto& domain = y.simplices(k);
    const auto& codomain = y.simplices(k - 1);
    m.rows = static_cast<int>(codomain.size());
    m.cols = static_cast<int>(domain.size());
    if (k <= 0) return m; // vertices (and below) map to zero
    std::unordered_map<vmask_t, int> row_of;
    row_of.reserve(codomain.size() * 2);
    for (int i = 0; i < m.rows; ++i) row_of[codomain[i].verts] = i;

    m.columns.resize(m.cols);
    for (int j = 0; j < m.cols; ++j) {
        vmask_t s = domain[j].verts;
        int position = 0, sign = 1;
        for (vmask_t rest = s; rest; rest &= rest - 1, ++position) {
            vmask_t facet = s & ~(rest & -rest); // delete the position-th smallest vertex
            m.columns[j].emplace_back(row_of.at(facet), sign);
            sign = -sign;
        }
        std::sort(m.columns[j].begin(), m.columns[j].end());
    }
    return m;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Rank over GF(p) by sparse column reduction: each column is reduced against
// the recorded pivot columns until it either empties (dependent) or claims a
// fresh pivot row. Columns are processed lightest-first.
int rank_gf(const BoundaryMatrix& m, std::uint64_t p) {
    using Col = std::vector<std::pair<int, std::uint64_t>>; // (row, value), sorted by row
    std::vector<Col> cols(m.cols);
    std::vector<int> order(m.cols);
    for (int j = 0; j < m.cols; ++j) {
        for (auto [row, sign] : m.columns[j])
            cols[j].emplace_back(row, sign > 0 ? 1 : p - 1);
        order[j] = j;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cols[a].size() < cols[b].size(); });

    std::unordered_map<int, int> pivot_col; // pivot row (max row of the column) -> column
    int rank = 0;
    Col merged;
    for (int j : order) {
        Col& col = cols[j];
        while (!col.empty()) {
            int low = col.back().first;
            auto it = pivot_col.find(low);
            if (it == pivot_col.end()) {
                pivot_col.emplace(low, j);
                ++rank;
                break;
            }
            const Col& reducer = cols[it->second];
            std::uint64_t factor =
                mulmod(col.back().second, powmod(reducer.back().second, p - 2, p), p);
            // col -= factor * reducer
            merged.clear();
            merged.reserve(col.size() + reducer.size());
            std::size_t a = 0, b = 0;
            while (a < col.size() || b < reducer.size()) {
                if (b == reducer.size() || (a < col.size() && col[a].first < reducer[b].first)) {
                    merged.push_back(col[a++]);
                } else if (a == col.size() || reducer[b].first < col[a].first) {
                    merged.emplace_back(reducer[b].first, p - mulmod(factor, reducer[b].second, p));
                    ++b;
                } else {
                    std::uint64_t v = (col[a].second + p - mulmod(factor, reducer[b].second, p)) % p;
                    if (v != 0) merged.emplace_back(col[a].first, v);
                    ++a, ++b;
                }
            }
            col.swap(merged);
        }
    }
    return rank;
}

// Exact rank by fraction-free (Bareiss) elimination over the integers.
// Pivots are chosen in the column of minimal remaining support.
int rank_exact(const BoundaryMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    std::vector<std::vector<mpz_class>> a(m.rows, std::vector<mpz_class>(m.cols, 0));
    for (int j = 0; j < m.cols; ++j)
        for (auto [row, sign] : m.columns[j]) a[row][j] = sign;

    std::vector<int> rows(m.rows), cols(m.cols);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    mpz_class prev = 1;
    int rank = 0;
    while (!rows.empty() && !cols.empty()) {
        int best_c = -1, best_r = -1;
        std::size_t best_support = SIZE_MAX;
        for (int c : cols) {
            std::size_t support = 0;
            int first = -1;
            for (int r : rows)
                if (a[r][c] != 0) {
                    ++support;
                    if (first < 0) first = r;
                }
            if (support > 0 && support < best_support) {
                best_support = support;
                best_c = c;
                best_r = first;
            }
        }
        if (best_c < 0) break; // remaining block is zero
        const mpz_class pivot = a[best_r][best_c];
        std::erase(rows, best_r);
        std::erase(cols, best_c);
        for (int r : rows) {
            const mpz_class& arc = a[r][best_c];
            for (int c : cols) {
                mpz_class num = pivot * a[r][c] - arc * a[best_r][c];
                mpz_divexact(a[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

} // namespace

int rank(const BoundaryMatrix& m, FieldSpec field) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return field.kind == FieldSpec::Kind::rational ? rank_exact(m) : rank_gf(m, field.p);
}

BettiVector betti(const Complex& y, FieldSpec field) {
    if (!y.is_closed())
        throw std::invalid_argument("betti: complex is not face-closed");
    BettiVector out;
    out.field = field;
    if (y.is_empty()) {
        out.reduced_values = {1};
        return out;
    }
    int d = y.dim();
    std::vector<int> ranks(d + 2, 0); // ranks[k] = rank of the k-th boundary map
    for (int k = 1; k <= d; ++k) ranks[k] = rank(boundary_matrix(y, k), field);
    out.values.resize(d + 1);
    for (int k = 0; k <= d; ++k)
        out.values[k] =
            static_cast<std::int64_t>(y.simplices(k).size()) - ranks[k] - ranks[k + 1];
    out.reduced_values.assign(d + 2, 0);
    for (int k = 0; k <= d; ++k) out.reduced_values[k + 1] = out.values[k];
    out.reduced_values[1] -= 1; // one fewer reduced class in degree 0
    return out;
}

} // namespace complexlab
