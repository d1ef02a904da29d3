#pragma once

#include <cstdint>
#include <vector>

#include "complexlab/complex.hpp"

namespace complexlab {

/// Coefficient field for homology ranks: exact rationals, or GF(p) for
/// speed (ranks over GF(p) equal rational ranks unless p divides a torsion
/// or minor invariant, which is vanishingly rare for random complexes).
struct FieldSpec {
    enum class Kind { rational, prime };
    Kind kind = Kind::rational;
    std::uint64_t p = (std::uint64_t{1} << 31) - 1;

    static FieldSpec rationals() { return {Kind::rational, 0}; }
    static FieldSpec gf(std::uint64_t prime) { return {Kind::prime, prime}; }
    static FieldSpec gf_default() { return {Kind::prime, (std::uint64_t{1} << 31) - 1}; }

    bool operator==(const FieldSpec&) const = default;
};

/// Boundary operator from k-chains to (k-1)-chains with entries +-1 by the
/// alternating vertex-deletion rule. Columns follow the mask-sorted list of
/// k-simplices, rows the (k-1)-simplices.
struct BoundaryMatrix {
    int rows = 0;
    int cols = 0;
    // Per column: (row, sign) pairs, sorted by row.
    std::vector<std::vector<std::pair<int, int>>> columns;
};

BoundaryMatrix boundary_matrix(const Complex& y, int k);

int rank(const BoundaryMatrix& m, FieldSpec field);

struct BettiVector {
    FieldSpec field;
    std::vector<std::int64_t> values;  // b_0 .. b_dim (empty for the empty complex)
    std::vector<std::int64_t> reduced_values; // index j+1 holds the degree-j value, j >= -1

    /// Reduced Betti number in degree j >= -1; degrees above the dimension
    /// are zero. Conventions: the empty complex has reduced homology only in
    /// degree -1, and in degree 0 the count of components drops by one.
    std::int64_t reduced(int j) const {
        if (j < -1) return 0;
        std::size_t idx = static_cast<std::size_t>(j + 1);
        return idx < reduced_values.size() ? reduced_values[idx] : 0;
    }
    std::int64_t value(int j) const {
        return (j >= 0 && j < static_cast<int>(values.size())) ? values[j] : 0;
    }
};

BettiVector betti(const Complex& y, FieldSpec field = FieldSpec::rationals());

} // namespace complexlab
