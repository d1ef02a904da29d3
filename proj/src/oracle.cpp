#include "complexlab/oracle.hpp"

#include <algorithm>
#include <bit>

#include "complexlab/json_io.hpp"

namespace complexlab {
namespace oracle {

namespace {

constexpr int kMaxSimplices = 15;

// Counterexamples are reported in the complex JSON format so they can be fed
// straight back into the CLI.
std::string complex_str(const AmbientTable& t, std::uint32_t bits) {
    return complex_to_json(t.to_complex(bits)).dump();
}

} // namespace

AmbientTable::AmbientTable(Ambient a) : amb_(a) {
    if (a.simplex_count() > kMaxSimplices)
        throw std::invalid_argument("oracle: ambient exceeds " + std::to_string(kMaxSimplices) +
                                    " simplices (enumeration infeasible)");
    simplices_ = enumerate_ambient(a);
    int m = count();
    std::unordered_map<vmask_t, int> index;
    for (int i = 0; i < m; ++i) index[simplices_[i].verts] = i;

    faces_incl_.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        vmask_t s = simplices_[i].verts;
        for (vmask_t t = s; t; t = (t - 1) & s) faces_incl_[i] |= std::uint32_t{1} << index.at(t);
    }
    hat_index_.assign(m, -1);
    if (!a.include_top)
        for (int i = 0; i < m; ++i)
            hat_index_[i] = index.at(a.vertex_mask() & ~simplices_[i].verts);

    for (std::uint32_t h = 0; h < (std::uint32_t{1} << m); ++h)
        if (is_closed_bits(h)) closed_.push_back(h);
}

std::uint32_t AmbientTable::closure_bits(std::uint32_t h) const {
    std::uint32_t out = 0;
    for (std::uint32_t rest = h; rest; rest &= rest - 1)
        out |= faces_incl_[std::countr_zero(rest)];
    return out;
}

std::uint32_t AmbientTable::interior_bits(std::uint32_t h) const {
    std::uint32_t out = 0;
    for (std::uint32_t rest = h; rest; rest &= rest - 1) {
        int i = std::countr_zero(rest);
        if ((faces_incl_[i] & ~h) == 0) out |= std::uint32_t{1} << i;
    }
    return out;
}

std::uint32_t AmbientTable::dual_bits(std::uint32_t h) const {
    std::uint32_t out = 0;
    for (int i = 0; i < count(); ++i) {
        if (hat_index_[i] < 0)
            throw std::invalid_argument("oracle: dual_bits requires a boundary ambient");
        if (!(h >> hat_index_[i] & 1)) out |= std::uint32_t{1} << i;
    }
    return out;
}

bool AmbientTable::is_closed_bits(std::uint32_t h) const {
    for (std::uint32_t rest = h; rest; rest &= rest - 1)
        if ((faces_incl_[std::countr_zero(rest)] & ~h) != 0) return false;
    return true;
}

Complex AmbientTable::to_complex(std::uint32_t bits) const {
    std::vector<Simplex> faces;
    for (std::uint32_t rest = bits; rest; rest &= rest - 1)
        faces.push_back(simplices_[std::countr_zero(rest)]);
    return Complex::hypergraph(amb_, std::move(faces));
}

std::uint32_t AmbientTable::from_complex(const Complex& c) const {
    if (!(c.ambient() == amb_))
        throw std::invalid_argument("oracle: complex ambient mismatch");
    std::uint32_t bits = 0;
    for (int i = 0; i < count(); ++i)
        if (c.contains(simplices_[i])) bits |= std::uint32_t{1} << i;
    if (static_cast<std::size_t>(std::popcount(bits)) != c.size())
        throw std::logic_error("oracle: complex contains simplices outside the table");
    return bits;
}

Rational ExactDistribution::prob_of_bits(std::uint32_t bits) const {
    auto it = prob_.find(bits);
    return it == prob_.end() ? Rational(0) : it->second;
}

Rational ExactDistribution::total_mass() const {
    Rational total = 0;
    for (const auto& [bits, p] : prob_) total += p;
    return total;
}

std::vector<std::pair<Complex, Rational>> ExactDistribution::entries_as_complexes() const {
    std::vector<std::pair<Complex, Rational>> out;
    out.reserve(prob_.size());
    for (const auto& [bits, p] : prob_) out.emplace_back(table_->to_complex(bits), p);
    return out;
}

std::vector<Complex> enumerate_complexes(const Ambient& a) {
    AmbientTable table(a);
    std::vector<Complex> out;
    out.reserve(table.closed_masks().size());
    for (std::uint32_t bits : table.closed_masks()) out.push_back(table.to_complex(bits));
    return out;
}

ExactDistribution pushforward(Model model, const ParamMap& params) {
    return pushforward(model, params, std::make_shared<AmbientTable>(params.ambient()));
}

ExactDistribution pushforward(Model model, const ParamMap& params,
                              std::shared_ptr<const AmbientTable> table) {
    if (!(table->ambient() == params.ambient()))
        throw std::invalid_argument("oracle: table/params ambient mismatch");
    ParamMap pe = params.is_explicit() ? params : params.to_explicit();
    int m = table->count();
    std::vector<Rational> p(m), q(m);
    for (int i = 0; i < m; ++i) {
        p[i] = pe.prob(table->simplices()[i]);
        q[i] = Rational(1) - p[i];
    }

    // Walk hypergraphs in Gray-code order keeping a running product; zero
    // factors are counted instead of multiplied so toggling stays exact.
    Rational product = 1;
    int zeros = 0;
    auto use = [&](const Rational& f, int delta) {
        if (f == 0)
            zeros += delta;
        else if (delta > 0)
            product *= f;
        else
            product /= f;
    };
    for (int i = 0; i < m; ++i) use(q[i], +1);

    std::map<std::uint32_t, Rational> dist;
    std::uint32_t gray = 0;
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t step = 0;; ++step) {
        if (zeros == 0) {
            std::uint32_t target =
                model == Model::upper ? table->closure_bits(gray) : table->interior_bits(gray);
            dist[target] += product;
        }
        if (step + 1 == total) break;
        int bit = std::countr_zero(step + 1);
        bool adding = !(gray >> bit & 1);
        gray ^= std::uint32_t{1} << bit;
        use(q[bit], adding ? -1 : +1);
        use(p[bit], adding ? +1 : -1);
    }
    return ExactDistribution(std::move(table), model, std::move(dist));
}

namespace {

ExactDistribution convolve(const ExactDistribution& a, const ExactDistribution& b, bool do_union) {
    if (!(a.table().ambient() == b.table().ambient()))
        throw std::invalid_argument("oracle: convolve ambient mismatch");
    std::map<std::uint32_t, Rational> dist;
    for (const auto& [ya, pa] : a.entries())
        for (const auto& [yb, pb] : b.entries())
            dist[do_union ? (ya | yb) : (ya & yb)] += pa * pb;
    return ExactDistribution(std::make_shared<AmbientTable>(a.table().ambient()), a.model(),
                             std::move(dist));
}

} // namespace

ExactDistribution convolve_union(const ExactDistribution& a, const ExactDistribution& b) {
    return convolve(a, b, true);
}

ExactDistribution convolve_intersection(const ExactDistribution& a, const ExactDistribution& b) {
    return convolve(a, b, false);
}

std::vector<std::string> identity_names() {
    return {"measure-formula", "sandwich", "containment", "duality",
            "link-upper",      "link-lower", "union",     "intersection"};
}

namespace {

using Check = void (*)(const AmbientTable&, const ParamMap&, IdentityResult&);

void fail(IdentityResult& r, std::string what) {
    if (r.pass) {
        r.pass = false;
        r.counterexample = std::move(what);
    }
}

void check_measure_formula(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    for (Model model : {Model::lower, Model::upper}) {
        ExactDistribution dist = pushforward(model, params, table);
        for (std::uint32_t y : t.closed_masks()) {
            Complex c = t.to_complex(y);
            Rational formula =
                model == Model::lower ? lower_measure(c, params) : upper_measure(c, params);
            ++r.instances;
            if (formula != dist.prob_of_bits(y)) {
                fail(r, std::string(model == Model::lower ? "lower" : "upper") + " measure of " +
                            complex_str(t, y) + ": formula " + rational_str(formula) +
                            " != enumerated " + rational_str(dist.prob_of_bits(y)));
                return;
            }
        }
    }
}

void check_sandwich(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    ExactDistribution lo = pushforward(Model::lower, params, table);
    ExactDistribution up = pushforward(Model::upper, params, table);
    for (std::uint32_t a : t.closed_masks()) {
        for (std::uint32_t b : t.closed_masks()) {
            if ((a & ~b) != 0) continue;
            Rational sum_lo = 0, sum_up = 0;
            for (std::uint32_t y : t.closed_masks())
                if ((a & ~y) == 0 && (y & ~b) == 0) {
                    sum_lo += lo.prob_of_bits(y);
                    sum_up += up.prob_of_bits(y);
                }
            Complex ca = t.to_complex(a), cb = t.to_complex(b);
            ++r.instances;
            for (auto [label, model_sum, is_lower] :
                 {std::tuple{"lower", sum_lo, true}, std::tuple{"upper", sum_up, false}}) {
                for (SandwichRoute route : {SandwichRoute::inclusion_exclusion,
                                            SandwichRoute::disjoint_product, SandwichRoute::nested,
                                            SandwichRoute::automatic}) {
                    Rational got;
                    try {
                        got = is_lower ? sandwich_lower(ca, cb, params, route)
                                       : sandwich_upper(ca, cb, params, route);
                    } catch (const std::invalid_argument&) {
                        continue; // route hypothesis does not hold for this pair
                    }
                    if (got != model_sum) {
                        fail(r, std::string(label) + " sandwich A=" + complex_str(t, a) +
                                    " B=" + complex_str(t, b) + " route " +
                                    std::to_string(static_cast<int>(route)) + ": " +
                                    rational_str(got) + " != " + rational_str(model_sum));
                        return;
                    }
                }
            }
        }
    }
}

void check_containment(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    ExactDistribution lo = pushforward(Model::lower, params, table);
    ExactDistribution up = pushforward(Model::upper, params, table);
    ParamMap pe = params.is_explicit() ? params : params.to_explicit();
    for (std::uint32_t k : t.closed_masks()) {
        Rational above = 0, below = 0;
        for (std::uint32_t y : t.closed_masks()) {
            if ((k & ~y) == 0) above += lo.prob_of_bits(y);
            if ((y & ~k) == 0) below += up.prob_of_bits(y);
        }
        Rational prod_p = 1, prod_q = 1;
        for (int i = 0; i < t.count(); ++i) {
            const Rational& p = pe.prob(t.simplices()[i]);
            if (k >> i & 1)
                prod_p *= p;
            else
                prod_q *= Rational(1) - p;
        }
        ++r.instances;
        if (above != prod_p) {
            fail(r, "lower containment of K=" + complex_str(t, k) + ": " + rational_str(above) +
                        " != " + rational_str(prod_p));
            return;
        }
        if (below != prod_q) {
            fail(r, "upper sub-complex mass of K=" + complex_str(t, k) + ": " +
                        rational_str(below) + " != " + rational_str(prod_q));
            return;
        }
    }
}

void check_duality(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    if (t.ambient().include_top)
        throw std::invalid_argument("oracle: 'duality' requires a boundary ambient");
    ParamMap dual = dual_params(params);
    // Hypergraph level: P(c(X)) = P'(X) for every hypergraph X.
    const std::uint64_t total = std::uint64_t{1} << t.count();
    for (std::uint64_t h = 0; h < total; ++h) {
        auto bits = static_cast<std::uint32_t>(h);
        Complex x = t.to_complex(bits);
        Complex cx = t.to_complex(t.dual_bits(bits));
        ++r.instances;
        if (hypergraph_prob(cx, params) != hypergraph_prob(x, dual)) {
            fail(r, "hypergraph duality at X=" + complex_str(t, bits));
            return;
        }
    }
    // Complex level: upper(c(Y), P) = lower(Y, P') and vice versa.
    for (std::uint32_t y : t.closed_masks()) {
        Complex cy = t.to_complex(y);
        Complex dualc = t.to_complex(t.dual_bits(y));
        ++r.instances;
        if (upper_measure(dualc, params) != lower_measure(cy, dual) ||
            lower_measure(dualc, params) != upper_measure(cy, dual)) {
            fail(r, "measure duality at Y=" + complex_str(t, y));
            return;
        }
    }
}

void check_link_upper(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    ExactDistribution up = pushforward(Model::upper, params, table);
    for (Simplex s : t.simplices()) {
        if (s.vertex_count() == t.ambient().vertex_count()) continue; // no link ambient
        Rational denom = prob_simplex_in_upper(s, params);
        if (denom == 0) continue;
        LinkMixture mix = link_measure_upper(params, s);
        // Conditional distribution of the link across all outcomes.
        std::map<std::vector<vmask_t>, Rational> cond;
        for (const auto& [y, p] : up.entries()) {
            Complex cy = t.to_complex(y);
            if (!cy.contains(s)) continue;
            cond[link(cy, s).canonical_key()] += p;
        }
        for (const Complex& l : enumerate_complexes(mix.params.ambient())) {
            Rational lhs = 0;
            auto it = cond.find(l.canonical_key());
            if (it != cond.end()) lhs = it->second / denom;
            ++r.instances;
            if (lhs != mix.measure_of(l)) {
                fail(r, "upper link mixture at s=" + s.str());
                return;
            }
        }
    }
}

void check_link_lower(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    ExactDistribution lo = pushforward(Model::lower, params, table);
    ParamMap pe = params.is_explicit() ? params : params.to_explicit();
    for (Simplex s : t.simplices()) {
        if (s.vertex_count() == t.ambient().vertex_count()) continue;
        Rational denom = 1; // P(s in Y) in the lower model: product over faces of s
        for (vmask_t nu = s.verts; nu; nu = (nu - 1) & s.verts) denom *= pe.prob(Simplex(nu));
        if (denom == 0) continue;
        ParamMap linkp = link_params_lower(params, s);
        std::map<std::vector<vmask_t>, Rational> cond;
        for (const auto& [y, p] : lo.entries()) {
            Complex cy = t.to_complex(y);
            if (!cy.contains(s)) continue;
            cond[link(cy, s).canonical_key()] += p;
        }
        for (const Complex& l : enumerate_complexes(linkp.ambient())) {
            Rational lhs = 0;
            auto it = cond.find(l.canonical_key());
            if (it != cond.end()) lhs = it->second / denom;
            ++r.instances;
            if (lhs != lower_measure(l, linkp)) {
                fail(r, "lower link measure at s=" + s.str());
                return;
            }
        }
    }
}

void check_union(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    ExactDistribution up = pushforward(Model::upper, params, table);
    ExactDistribution combined = convolve_union(up, up);
    ExactDistribution expected = pushforward(Model::upper, union_params_upper(params, params), table);
    for (std::uint32_t y : t.closed_masks()) {
        ++r.instances;
        if (combined.prob_of_bits(y) != expected.prob_of_bits(y)) {
            fail(r, "union distribution differs at Y=" + complex_str(t, y));
            return;
        }
    }
}

void check_intersection(const AmbientTable& t, const ParamMap& params, IdentityResult& r) {
    auto table = std::make_shared<AmbientTable>(t);
    ExactDistribution lo = pushforward(Model::lower, params, table);
    ExactDistribution combined = convolve_intersection(lo, lo);
    ExactDistribution expected =
        pushforward(Model::lower, intersection_params_lower(params, params), table);
    for (std::uint32_t y : t.closed_masks()) {
        ++r.instances;
        if (combined.prob_of_bits(y) != expected.prob_of_bits(y)) {
            fail(r, "intersection distribution differs at Y=" + complex_str(t, y));
            return;
        }
    }
}

} // namespace

std::vector<IdentityResult> verify_identities(const Ambient& a, const ParamMap& params,
                                              const std::vector<std::string>& identities) {
    static const std::unordered_map<std::string, Check> checks = {
        {"measure-formula", check_measure_formula},
        {"sandwich", check_sandwich},
        {"containment", check_containment},
        {"duality", check_duality},
        {"link-upper", check_link_upper},
        {"link-lower", check_link_lower},
        {"union", check_union},
        {"intersection", check_intersection},
    };
    AmbientTable table(a);
    if (!(params.ambient() == a))
        throw std::invalid_argument("verify_identities: params ambient mismatch");
    std::vector<IdentityResult> out;
    for (const std::string& name : identities) {
        auto it = checks.find(name);
        if (it == checks.end())
            throw std::invalid_argument("verify_identities: unknown identity '" + name + "'");
        IdentityResult result;
        result.identity = name;
        it->second(table, params, result);
        out.push_back(std::move(result));
    }
    return out;
}

} // namespace oracle
} // namespace complexlab
