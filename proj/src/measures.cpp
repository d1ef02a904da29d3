#include "complexlab/measures.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace complexlab {

namespace {

ParamMap as_explicit(const ParamMap& p) {
    return p.is_explicit() ? p : p.to_explicit();
}

void check_ambient(const Complex& c, const ParamMap& p, const char* op) {
    if (!(c.ambient() == p.ambient()))
        throw std::invalid_argument(std::string(op) + ": ambient mismatch");
}

void check_closed(const Complex& c, const char* op, const char* which) {
    if (!c.is_closed())
        throw std::invalid_argument(std::string(op) + ": " + which + " is not face-closed");
}

// Product of q over every ambient simplex outside Y.
Rational product_q_outside(const Complex& y, const ParamMap& pe) {
    Rational acc = 1;
    for (Simplex s : enumerate_ambient(pe.ambient())) {
        if (y.contains(s)) continue;
        acc *= Rational(1) - pe.prob(s);
        if (acc == 0) break;
    }
    return acc;
}

// Signed alternating sum over subsets of `sets`, where each subset S
// contributes prod over the union of its member lists of factor(t). Walks
// subsets in Gray-code order so each step toggles one list in or out of a
// multiplicity table; the running product tracks zero factors separately so
// toggling never divides by zero.
Rational alternating_union_sum(const std::vector<std::vector<vmask_t>>& sets,
                               const std::unordered_map<vmask_t, Rational>& factor,
                               int guard_bits) {
    int m = static_cast<int>(sets.size());
    if (m > guard_bits)
        throw SandwichGuardExceeded("inclusion-exclusion over " + std::to_string(m) +
                                    " sets exceeds the 2^" + std::to_string(guard_bits) +
                                    " term guard; use a Monte Carlo estimate");
    std::unordered_map<vmask_t, int> mult;
    Rational product = 1, sum = 1; // S = {} contributes +1
    int zeros = 0;
    std::uint64_t current = 0;
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t step = 1; step < total; ++step) {
        int bit = std::countr_zero(step);
        bool adding = !(current >> bit & 1);
        current ^= std::uint64_t{1} << bit;
        for (vmask_t t : sets[bit]) {
            int& count = mult[t];
            const Rational& f = factor.at(t);
            if (adding) {
                if (count++ == 0) {
                    if (f == 0)
                        ++zeros;
                    else
                        product *= f;
                }
            } else {
                if (--count == 0) {
                    if (f == 0)
                        --zeros;
                    else
                        product /= f;
                }
            }
        }
        if (zeros == 0) {
            if (std::popcount(current) % 2)
                sum -= product;
            else
                sum += product;
        }
    }
    return sum;
}

bool pairwise_disjoint(const std::vector<std::vector<vmask_t>>& sets) {
    std::unordered_set<vmask_t> seen;
    for (const auto& list : sets)
        for (vmask_t t : list)
            if (!seen.insert(t).second) return false;
    return true;
}

} // namespace

Rational hypergraph_prob(const Complex& x, const ParamMap& p) {
    check_ambient(x, p, "hypergraph_prob");
    ParamMap pe = as_explicit(p);
    Rational acc = 1;
    for (Simplex s : enumerate_ambient(pe.ambient())) {
        acc *= x.contains(s) ? pe.prob(s) : Rational(1) - pe.prob(s);
        if (acc == 0) break;
    }
    return acc;
}

Rational lower_measure(const Complex& y, const ParamMap& p) {
    check_ambient(y, p, "lower_measure");
    check_closed(y, "lower_measure", "Y");
    ParamMap pe = as_explicit(p);
    Rational acc = 1;
    for (Simplex s : y.all_simplices()) {
        acc *= pe.prob(s);
        if (acc == 0) return acc;
    }
    for (Simplex s : external_faces(y)) {
        acc *= Rational(1) - pe.prob(s);
        if (acc == 0) break;
    }
    return acc;
}

Rational upper_measure(const Complex& y, const ParamMap& p) {
    check_ambient(y, p, "upper_measure");
    check_closed(y, "upper_measure", "Y");
    ParamMap pe = as_explicit(p);
    Rational acc = 1;
    for (Simplex s : maximal_faces(y)) {
        acc *= pe.prob(s);
        if (acc == 0) return acc;
    }
    return acc * product_q_outside(y, pe);
}

Rational prob_simplex_in_upper(Simplex s, const ParamMap& p) {
    const Ambient& a = p.ambient();
    if (!a.contains(s.verts))
        throw std::invalid_argument("prob_simplex_in_upper: simplex not in ambient");
    ParamMap pe = as_explicit(p);
    vmask_t comp = a.vertex_mask() & ~s.verts;
    Rational miss = 1;
    for (vmask_t e = comp;; e = (e - 1) & comp) {
        vmask_t sup = s.verts | e;
        if (a.contains(sup)) {
            miss *= Rational(1) - pe.prob(Simplex(sup));
            if (miss == 0) break;
        }
        if (e == 0) break;
    }
    return Rational(1) - miss;
}

Rational LinkMixture::measure_of(const Complex& l) const {
    Rational value = weight * upper_measure(l, params);
    if (l.is_empty()) value += Rational(1) - weight;
    return value;
}

Rational sandwich_lower(const Complex& a, const Complex& b, const ParamMap& p,
                        SandwichRoute route, int guard_bits) {
    check_ambient(a, p, "sandwich_lower");
    check_ambient(b, p, "sandwich_lower");
    check_closed(a, "sandwich_lower", "A");
    check_closed(b, "sandwich_lower", "B");
    if (!a.subcomplex_of(b))
        throw std::invalid_argument("sandwich_lower: A is not a subcomplex of B");
    ParamMap pe = as_explicit(p);

    std::vector<Simplex> ext_b = external_faces(b);

    Rational base = 1; // prod over A of p
    for (Simplex s : a.all_simplices()) {
        base *= pe.prob(s);
        if (base == 0) return base;
    }

    if (route == SandwichRoute::nested || route == SandwichRoute::automatic) {
        std::unordered_set<vmask_t> ext_a;
        for (Simplex s : external_faces(a)) ext_a.insert(s.verts);
        bool nested = std::all_of(ext_b.begin(), ext_b.end(),
                                  [&](Simplex s) { return ext_a.count(s.verts) != 0; });
        if (nested) {
            Rational acc = base;
            for (Simplex s : ext_b) acc *= Rational(1) - pe.prob(s);
            return acc;
        }
        if (route == SandwichRoute::nested)
            throw std::invalid_argument("sandwich_lower: E(B) is not contained in E(A)");
    }

    // Cover sets: faces of each external simplex of B that lie outside A.
    std::vector<std::vector<vmask_t>> covers;
    std::unordered_map<vmask_t, Rational> factor;
    covers.reserve(ext_b.size());
    for (Simplex s : ext_b) {
        std::vector<vmask_t> list;
        for (vmask_t t = s.verts; t; t = (t - 1) & s.verts)
            if (!a.contains(Simplex(t))) {
                list.push_back(t);
                factor.emplace(t, pe.prob(Simplex(t)));
            }
        covers.push_back(std::move(list));
    }

    if (route == SandwichRoute::disjoint_product || route == SandwichRoute::automatic) {
        if (pairwise_disjoint(covers)) {
            Rational acc = base;
            for (const auto& list : covers) {
                Rational prod = 1;
                for (vmask_t t : list) prod *= factor.at(t);
                acc *= Rational(1) - prod;
            }
            return acc;
        }
        if (route == SandwichRoute::disjoint_product)
            throw std::invalid_argument("sandwich_lower: cover sets are not pairwise disjoint");
    }

    return base * alternating_union_sum(covers, factor, guard_bits);
}

Rational sandwich_upper(const Complex& a, const Complex& b, const ParamMap& p,
                        SandwichRoute route, int guard_bits) {
    check_ambient(a, p, "sandwich_upper");
    check_ambient(b, p, "sandwich_upper");
    check_closed(a, "sandwich_upper", "A");
    check_closed(b, "sandwich_upper", "B");
    if (!a.subcomplex_of(b))
        throw std::invalid_argument("sandwich_upper: A is not a subcomplex of B");
    ParamMap pe = as_explicit(p);

    std::vector<Simplex> max_a = maximal_faces(a);
    Rational base = product_q_outside(b, pe);
    if (base == 0) return base;

    if (route == SandwichRoute::nested || route == SandwichRoute::automatic) {
        std::unordered_set<vmask_t> max_b;
        for (Simplex s : maximal_faces(b)) max_b.insert(s.verts);
        bool nested = std::all_of(max_a.begin(), max_a.end(),
                                  [&](Simplex s) { return max_b.count(s.verts) != 0; });
        if (nested) {
            Rational acc = base;
            for (Simplex s : max_a) acc *= pe.prob(s);
            return acc;
        }
        if (route == SandwichRoute::nested)
            throw std::invalid_argument("sandwich_upper: M(A) is not contained in M(B)");
    }

    // Cover sets: faces of B lying above each maximal face of A.
    std::vector<std::vector<vmask_t>> covers;
    std::unordered_map<vmask_t, Rational> factor;
    covers.reserve(max_a.size());
    std::vector<Simplex> b_faces = b.all_simplices();
    for (Simplex s : max_a) {
        std::vector<vmask_t> list;
        for (Simplex t : b_faces)
            if (t.contains(s)) {
                list.push_back(t.verts);
                factor.emplace(t.verts, Rational(1) - pe.prob(t));
            }
        covers.push_back(std::move(list));
    }

    if (route == SandwichRoute::disjoint_product || route == SandwichRoute::automatic) {
        if (pairwise_disjoint(covers)) {
            Rational acc = base;
            for (const auto& list : covers) {
                Rational prod = 1;
                for (vmask_t t : list) prod *= factor.at(t);
                acc *= Rational(1) - prod;
            }
            return acc;
        }
        if (route == SandwichRoute::disjoint_product)
            throw std::invalid_argument("sandwich_upper: cover sets are not pairwise disjoint");
    }

    return base * alternating_union_sum(covers, factor, guard_bits);
}

} // namespace complexlab
