#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "complexlab/types.hpp"

namespace complexlab {

/// A finite set of simplices in an ambient, not necessarily face-closed
/// (a hypergraph). Face-closedness is checked once at construction and
/// cached; operations that require a simplicial complex test the flag.
/// Instances are immutable values.
class Complex {
public:
    static Complex empty(Ambient a) { return Complex(a, {}); }
    static Complex hypergraph(Ambient a, std::vector<Simplex> simplices) {
        return Complex(a, std::move(simplices));
    }
    /// The full ambient: every ambient simplex.
    static Complex full(Ambient a);

    const Ambient& ambient() const { return amb_; }
    bool is_closed() const { return closed_; }
    bool is_empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

    bool contains(Simplex s) const { return members_.count(s.verts) != 0; }

    /// Simplices of one dimension, sorted by vertex mask. Empty vector for
    /// out-of-range dimensions.
    const std::vector<Simplex>& simplices(int dimension) const;

    /// All simplices, dimension-major, mask-sorted within a dimension.
    std::vector<Simplex> all_simplices() const;

    std::vector<std::uint64_t> counts_by_dim() const;

    bool subcomplex_of(const Complex& other) const;

    /// Canonical key: the sorted mask list. Two complexes over the same
    /// ambient are equal iff their keys are equal.
    std::vector<vmask_t> canonical_key() const;

    bool operator==(const Complex& other) const {
        return amb_ == other.amb_ && canonical_key() == other.canonical_key();
    }

private:
    Complex(Ambient a, std::vector<Simplex> simplices);

    Ambient amb_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::unordered_set<vmask_t> members_;
    std::size_t size_ = 0;
    bool closed_ = false;
};

/// Smallest simplicial complex containing X: all nonempty faces of members.
Complex upper_closure(const Complex& x);

/// Largest simplicial complex contained in X: members all of whose nonempty
/// subsets are also members.
Complex lower_interior(const Complex& x);

/// External faces of a complex Y: simplices not in Y whose proper faces all
/// lie in Y. A vertex has empty boundary, so every ambient vertex missing
/// from Y is external. Requires Y face-closed.
std::vector<Simplex> external_faces(const Complex& y);

/// Faces of Y contained in no strictly larger face of Y. Requires Y closed.
std::vector<Simplex> maximal_faces(const Complex& y);

/// Complementary vertex set [n] - s. Requires a boundary ambient.
Simplex hat(Simplex s, const Ambient& a);

/// Combinatorial Alexander dual c(X) = { t : hat(t) not in X } over the same
/// boundary ambient. Involutive and order-reversing; takes complexes to
/// complexes.
Complex dual_c(const Complex& x);

/// A complex together with the original simplices its vertices stand for.
struct LabeledComplex {
    Complex complex;
    std::vector<Simplex> labels; // labels[i] = simplex behind vertex i
};

/// Dual complex on the external faces of Y: vertices are E(Y), and a set of
/// external faces spans a simplex iff the union of their vertex sets is a
/// proper subset of [n]. E(Y) empty yields the empty complex.
LabeledComplex dual_prime(const Complex& y);

/// Nerve of the cover of Y by its maximal faces: one vertex per maximal
/// face, a set spans a simplex iff the corresponding faces intersect.
LabeledComplex nerve_of_maximal(const Complex& y);

/// Link of s in Y, relabeled onto the full simplex spanned by [n] - s
/// (vertices compressed in increasing order). Requires s in Y.
Complex link(const Complex& y, Simplex s);

/// Relabel a subset of [n] - s onto the compressed link vertex numbering.
Simplex compress_to_link(Simplex t, Simplex s, const Ambient& a);
Ambient link_ambient(Simplex s, const Ambient& a);

/// Star of s: the simplices of Y containing s (not itself a complex).
std::vector<Simplex> star(const Complex& y, Simplex s);

/// Face counts (f_0, ..., f_dim); empty vector for the empty complex.
std::vector<std::uint64_t> f_vector(const Complex& y);

/// Number of external faces per dimension, indexed 0..n.
std::vector<std::uint64_t> external_counts(const Complex& y);

/// Number of maximal faces per dimension, indexed 0..n.
std::vector<std::uint64_t> maximal_counts(const Complex& y);

/// True iff Y contains every ambient simplex of dimension <= l.
bool contains_skeleton(const Complex& y, int l);

/// All simplices of an ambient in mask order. Guarded: throws when the
/// ambient has more than 2^22 simplices.
std::vector<Simplex> enumerate_ambient(const Ambient& a);

} // namespace complexlab
