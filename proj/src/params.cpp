#include "complexlab/params.hpp"

#include <algorithm>
#include <cmath>

namespace complexlab {

namespace {

const Rational kZero = 0;

void require_same_ambient(const ParamMap& a, const ParamMap& b, const char* op) {
    if (!(a.ambient() == b.ambient()))
        throw std::invalid_argument(std::string(op) + ": ambient mismatch");
}

} // namespace

ParamMap ParamMap::exponent(Ambient a, std::vector<double> alpha, std::optional<double> base) {
    ParamMap p(a);
    p.mode_ = Mode::exponent;
    double b = base.value_or(static_cast<double>(a.n));
    if (!(b >= 1))
        throw std::invalid_argument("ParamMap::exponent: base must be >= 1");
    for (double x : alpha)
        if (!(x > 0))
            throw std::invalid_argument("ParamMap::exponent: exponents must be positive");
    if (static_cast<int>(alpha.size()) > a.n + 1)
        throw std::invalid_argument("ParamMap::exponent: more exponents than ambient dimensions");
    p.alpha_ = std::move(alpha);
    p.base_ = b;
    return p;
}

ParamMap ParamMap::explicit_map(Ambient a, std::vector<std::pair<Simplex, Rational>> probs) {
    ParamMap p(a);
    p.mode_ = Mode::explicit_map;
    std::sort(probs.begin(), probs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const auto& [s, v] = probs[i];
        if (!a.contains(s.verts))
            throw std::invalid_argument("ParamMap: simplex " + s.str() + " not in ambient");
        if (!is_probability(v))
            throw std::invalid_argument("ParamMap: probability of " + s.str() + " outside [0,1]");
        if (i > 0 && probs[i - 1].first == s)
            throw std::invalid_argument("ParamMap: duplicate simplex " + s.str());
        p.index_.emplace(s.verts, i);
    }
    p.entries_ = std::move(probs);
    return p;
}

ParamMap ParamMap::uniform(Ambient a, const Rational& p) {
    std::vector<std::pair<Simplex, Rational>> probs;
    for (Simplex s : enumerate_ambient(a)) probs.emplace_back(s, p);
    return explicit_map(a, std::move(probs));
}

ParamMap ParamMap::per_dimension(Ambient a, const std::vector<Rational>& p_by_dim) {
    std::vector<std::pair<Simplex, Rational>> probs;
    for (Simplex s : enumerate_ambient(a)) {
        int d = s.dim();
        Rational p = d < static_cast<int>(p_by_dim.size()) ? p_by_dim[d] : Rational(0);
        if (p != 0) probs.emplace_back(s, p);
    }
    return explicit_map(a, std::move(probs));
}

int ParamMap::top_dim() const {
    if (mode_ == Mode::exponent) return static_cast<int>(alpha_.size()) - 1;
    int r = -1;
    for (const auto& [s, p] : entries_)
        if (p != 0) r = std::max(r, s.dim());
    return r;
}

const std::vector<double>& ParamMap::alpha() const {
    if (mode_ != Mode::exponent)
        throw std::logic_error("ParamMap::alpha: not an exponent map");
    return alpha_;
}

double ParamMap::exponent_base() const {
    if (mode_ != Mode::exponent)
        throw std::logic_error("ParamMap::exponent_base: not an exponent map");
    return base_;
}

const Rational& ParamMap::prob(Simplex s) const {
    if (mode_ != Mode::explicit_map)
        throw std::logic_error("ParamMap::prob: exact probabilities require an explicit map");
    if (!amb_.contains(s.verts))
        throw std::invalid_argument("ParamMap::prob: simplex " + s.str() + " not in ambient");
    auto it = index_.find(s.verts);
    return it == index_.end() ? kZero : entries_[it->second].second;
}

double ParamMap::prob_double_dim(int dim) const {
    if (mode_ != Mode::exponent)
        throw std::logic_error("ParamMap::prob_double_dim: not an exponent map");
    if (dim < 0 || dim >= static_cast<int>(alpha_.size())) return 0.0;
    return std::pow(base_, -alpha_[dim]);
}

double ParamMap::prob_double(Simplex s) const {
    if (mode_ == Mode::exponent) return prob_double_dim(s.dim());
    return prob(s).get_d();
}

const std::vector<std::pair<Simplex, Rational>>& ParamMap::entries() const {
    if (mode_ != Mode::explicit_map)
        throw std::logic_error("ParamMap::entries: not an explicit map");
    return entries_;
}

ParamMap ParamMap::to_explicit() const {
    if (mode_ == Mode::explicit_map) return *this;
    std::vector<std::pair<Simplex, Rational>> probs;
    int r = top_dim();
    for (Simplex s : enumerate_ambient(amb_))
        if (s.dim() <= r)
            probs.emplace_back(s, rational_from_double(prob_double_dim(s.dim())));
    return explicit_map(amb_, std::move(probs));
}

ParamMap dual_params(const ParamMap& p) {
    const Ambient& a = p.ambient();
    if (a.include_top)
        throw std::invalid_argument("dual_params: requires a boundary ambient");
    ParamMap pe = p.to_explicit();
    std::vector<std::pair<Simplex, Rational>> probs;
    for (Simplex s : enumerate_ambient(a)) {
        Rational v = Rational(1) - pe.prob(hat(s, a));
        if (v != 0) probs.emplace_back(s, v);
    }
    return ParamMap::explicit_map(a, std::move(probs));
}

ParamMap link_params_lower(const ParamMap& p, Simplex s) {
    const Ambient& a = p.ambient();
    if (!a.contains(s.verts))
        throw std::invalid_argument("link_params_lower: simplex not in ambient");
    Ambient amb2 = link_ambient(s, a);
    int k = s.dim();

    if (p.mode() == ParamMap::Mode::exponent && a.include_top) {
        const auto& alpha = p.alpha();
        int r = static_cast<int>(alpha.size()) - 1;
        int r2 = r - k - 1;
        if (r2 < 0) return ParamMap::explicit_map(amb2, {});
        std::vector<double> alpha2(r2 + 1);
        for (int i = 0; i <= r2; ++i) {
            double acc = alpha[i];
            for (int j = 0; j <= k; ++j)
                acc += static_cast<double>(binomial(k + 1, j + 1)) * alpha[i + j + 1];
            alpha2[i] = acc;
        }
        return ParamMap::exponent(amb2, std::move(alpha2), p.exponent_base());
    }

    ParamMap pe = p.to_explicit();
    vmask_t comp = a.vertex_mask() & ~s.verts;
    std::vector<std::pair<Simplex, Rational>> probs;
    // Nonempty subsets t of the complement of s. Joins that fall outside the
    // ambient (the full vertex set in a boundary ambient) can never occur,
    // so those t keep probability zero.
    for (vmask_t t = comp; t; t = (t - 1) & comp) {
        if (!a.contains(s.verts | t)) continue;
        Rational v = pe.prob(Simplex(t));
        for (vmask_t nu = s.verts; v != 0 && nu; nu = (nu - 1) & s.verts)
            v *= pe.prob(Simplex(nu | t));
        if (v != 0) probs.emplace_back(compress_to_link(Simplex(t), s, a), v);
    }
    return ParamMap::explicit_map(amb2, std::move(probs));
}

LinkMixture link_measure_upper(const ParamMap& p, Simplex s) {
    const Ambient& a = p.ambient();
    if (!a.contains(s.verts))
        throw std::invalid_argument("link_measure_upper: simplex not in ambient");
    ParamMap pe = p.to_explicit();
    Ambient amb2 = link_ambient(s, a);
    vmask_t comp = a.vertex_mask() & ~s.verts;

    Rational miss = 1; // probability that no superset of s is drawn
    std::vector<std::pair<Simplex, Rational>> probs;
    for (vmask_t e = comp;; e = (e - 1) & comp) {
        vmask_t sup = s.verts | e;
        if (a.contains(sup)) {
            miss *= Rational(1) - pe.prob(Simplex(sup));
            if (e != 0) {
                Rational v = pe.prob(Simplex(sup));
                if (v != 0) probs.emplace_back(compress_to_link(Simplex(e), s, a), v);
            }
        }
        if (e == 0) break;
    }
    if (miss == 1)
        throw std::domain_error("link_measure_upper: simplex has probability zero of appearing");
    Rational weight = Rational(1) / (Rational(1) - miss);
    return LinkMixture{weight, ParamMap::explicit_map(amb2, std::move(probs))};
}

ParamMap union_params_upper(const ParamMap& p, const ParamMap& p2) {
    require_same_ambient(p, p2, "union_params_upper");
    ParamMap a = p.to_explicit(), b = p2.to_explicit();
    // p'' = 1 - q q'; nonzero exactly where either factor is nonzero.
    std::vector<std::pair<Simplex, Rational>> probs;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    std::size_t i = 0, j = 0;
    auto push = [&](Simplex s, const Rational& x, const Rational& y) {
        Rational v = x + y - x * y;
        if (v != 0) probs.emplace_back(s, v);
    };
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
            push(ea[i].first, ea[i].second, 0);
            ++i;
        } else if (i == ea.size() || eb[j].first < ea[i].first) {
            push(eb[j].first, 0, eb[j].second);
            ++j;
        } else {
            push(ea[i].first, ea[i].second, eb[j].second);
            ++i, ++j;
        }
    }
    return ParamMap::explicit_map(p.ambient(), std::move(probs));
}

ParamMap intersection_params_lower(const ParamMap& p, const ParamMap& p2) {
    require_same_ambient(p, p2, "intersection_params_lower");
    if (p.mode() == ParamMap::Mode::exponent && p2.mode() == ParamMap::Mode::exponent &&
        p.exponent_base() == p2.exponent_base()) {
        const auto& a1 = p.alpha();
        const auto& a2 = p2.alpha();
        std::size_t r = std::min(a1.size(), a2.size());
        std::vector<double> alpha(r);
        for (std::size_t i = 0; i < r; ++i) alpha[i] = a1[i] + a2[i];
        return ParamMap::exponent(p.ambient(), std::move(alpha), p.exponent_base());
    }
    ParamMap a = p.to_explicit(), b = p2.to_explicit();
    std::vector<std::pair<Simplex, Rational>> probs;
    for (const auto& [s, v] : a.entries()) {
        Rational w = v * b.prob(s);
        if (w != 0) probs.emplace_back(s, w);
    }
    return ParamMap::explicit_map(p.ambient(), std::move(probs));
}

} // namespace complexlab
