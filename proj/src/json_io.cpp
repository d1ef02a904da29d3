#include "complexlab/json_io.hpp"

#include <fstream>

namespace complexlab {

namespace {

std::string dump_item(const json& j) { return j.dump(); }

Simplex simplex_from_json(const json& item, const Ambient& a) {
    if (!item.is_array() || item.empty())
        throw std::invalid_argument("complex JSON: simplex must be a nonempty vertex array, got " +
                                    dump_item(item));
    vmask_t mask = 0;
    for (const auto& v : item) {
        if (!v.is_number_integer())
            throw std::invalid_argument("complex JSON: vertex is not an integer in " +
                                        dump_item(item));
        long long vi = v.get<long long>();
        if (vi < 0 || vi > a.n)
            throw std::invalid_argument("complex JSON: vertex " + std::to_string(vi) +
                                        " out of range [0, " + std::to_string(a.n) + "] in " +
                                        dump_item(item));
        vmask_t bit = vmask_t{1} << vi;
        if (mask & bit)
            throw std::invalid_argument("complex JSON: repeated vertex in " + dump_item(item));
        mask |= bit;
    }
    if (!a.contains(mask))
        throw std::invalid_argument("complex JSON: simplex " + dump_item(item) +
                                    " not admitted by the ambient");
    return Simplex(mask);
}

Ambient ambient_from_json(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("complex JSON: missing integer field 'n'");
    int n = j["n"].get<int>();
    std::string kind = j.value("ambient", "delta");
    if (kind != "delta" && kind != "boundary")
        throw std::invalid_argument("complex JSON: field 'ambient' must be 'delta' or 'boundary'");
    return Ambient(n, kind == "delta");
}

} // namespace

json complex_to_json(const Complex& c) {
    json j;
    j["n"] = c.ambient().n;
    j["ambient"] = c.ambient().include_top ? "delta" : "boundary";
    json faces = json::array();
    for (Simplex s : c.all_simplices()) faces.push_back(s.vertices());
    j["simplices"] = std::move(faces);
    return j;
}

Complex complex_from_json(const json& j) {
    Ambient a = ambient_from_json(j);
    if (!j.contains("simplices") || !j["simplices"].is_array())
        throw std::invalid_argument("complex JSON: missing array field 'simplices'");
    std::vector<Simplex> faces;
    std::unordered_set<vmask_t> seen;
    for (const auto& item : j["simplices"]) {
        Simplex s = simplex_from_json(item, a);
        if (!seen.insert(s.verts).second)
            throw std::invalid_argument("complex JSON: duplicate simplex " + dump_item(item));
        faces.push_back(s);
    }
    return Complex::hypergraph(a, std::move(faces));
}

json params_to_json(const ParamMap& p) {
    json j;
    if (p.mode() == ParamMap::Mode::exponent) {
        j["mode"] = "exponent";
        j["r"] = p.top_dim();
        j["alpha"] = p.alpha();
        if (p.exponent_base() != static_cast<double>(p.ambient().n))
            j["base"] = p.exponent_base();
    } else {
        j["mode"] = "explicit";
        json probs = json::array();
        for (const auto& [s, v] : p.entries())
            probs.push_back({{"simplex", s.vertices()}, {"p", rational_str(v)}});
        j["probs"] = std::move(probs);
    }
    return j;
}

ParamMap params_from_json(const json& j, const Ambient& ambient) {
    std::string mode = j.value("mode", "");
    if (mode == "exponent") {
        if (!j.contains("alpha") || !j["alpha"].is_array())
            throw std::invalid_argument("params JSON: exponent mode needs array field 'alpha'");
        std::vector<double> alpha = j["alpha"].get<std::vector<double>>();
        if (j.contains("r") && j["r"].get<int>() != static_cast<int>(alpha.size()) - 1)
            throw std::invalid_argument("params JSON: field 'r' disagrees with alpha length");
        std::optional<double> base;
        if (j.contains("base")) base = j["base"].get<double>();
        return ParamMap::exponent(ambient, std::move(alpha), base);
    }
    if (mode == "explicit") {
        if (!j.contains("probs") || !j["probs"].is_array())
            throw std::invalid_argument("params JSON: explicit mode needs array field 'probs'");
        std::vector<std::pair<Simplex, Rational>> probs;
        for (const auto& item : j["probs"]) {
            if (!item.contains("simplex") || !item.contains("p"))
                throw std::invalid_argument("params JSON: entry needs 'simplex' and 'p': " +
                                            dump_item(item));
            Simplex s = simplex_from_json(item["simplex"], ambient);
            Rational v;
            if (item["p"].is_string())
                v = parse_rational(item["p"].get<std::string>());
            else if (item["p"].is_number())
                v = rational_from_double(item["p"].get<double>());
            else
                throw std::invalid_argument("params JSON: 'p' must be a number or 'num/den': " +
                                            dump_item(item));
            probs.emplace_back(s, std::move(v));
        }
        return ParamMap::explicit_map(ambient, std::move(probs));
    }
    throw std::invalid_argument("params JSON: field 'mode' must be 'exponent' or 'explicit'");
}

json betti_to_json(const BettiVector& b) {
    json j;
    j["field"] = field_to_string(b.field);
    j["betti"] = b.values;
    json reduced = json::object();
    for (int k = -1; k < static_cast<int>(b.reduced_values.size()) - 1; ++k)
        reduced[std::to_string(k)] = b.reduced(k);
    j["reduced"] = std::move(reduced);
    return j;
}

FieldSpec field_from_string(const std::string& s) {
    if (s == "rational") return FieldSpec::rationals();
    if (s.rfind("gf:", 0) == 0) {
        std::uint64_t p = std::stoull(s.substr(3));
        if (p < 2) throw std::invalid_argument("field: prime must be >= 2");
        return FieldSpec::gf(p);
    }
    if (s == "gf") return FieldSpec::gf_default();
    throw std::invalid_argument("field: expected 'rational', 'gf' or 'gf:<prime>', got '" + s + "'");
}

std::string field_to_string(const FieldSpec& f) {
    return f.kind == FieldSpec::Kind::rational ? "rational" : "gf:" + std::to_string(f.p);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

} // namespace complexlab
