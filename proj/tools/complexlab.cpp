#include <CLI11.hpp>

#include <iostream>

#include "complexlab/experiments.hpp"
#include "complexlab/json_io.hpp"
#include "complexlab/measures.hpp"
#include "complexlab/oracle.hpp"
#include "complexlab/version.hpp"

using namespace complexlab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCounterexample = 3;

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("expected a comma-separated list of numbers");
    return out;
}

std::vector<std::string> parse_names(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

std::vector<double> parse_alpha(const std::string& text) { return parse_doubles(text); }

Ambient make_ambient(int n, const std::string& kind) {
    if (kind != "delta" && kind != "boundary")
        throw std::invalid_argument("--ambient must be 'delta' or 'boundary'");
    return Ambient(n, kind == "delta");
}

struct ComplexInput {
    std::string path;
    int n_override = -1;

    Complex load() const {
        Complex c = complex_from_json(load_json_file(path));
        if (n_override >= 0 && c.ambient().n != n_override)
            throw std::invalid_argument("--n disagrees with 'n' in " + path);
        return c;
    }
};

ParamMap load_params(const std::string& path, const Ambient& ambient) {
    return params_from_json(load_json_file(path), ambient);
}

json beta_profile_json(const BetaProfile& bp) {
    return {{"beta", bp.beta},         {"beta_star", bp.beta_star}, {"i_star", bp.i_star},
            {"k_star", bp.k_star},     {"spread", bp.spread},       {"gamma", bp.gamma},
            {"beta_star_tail", bp.beta_star_tail}, {"i_star_tail", bp.i_star_tail}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random simplicial complex laboratory: lower/upper models, "
                 "Alexander duality, exact measures, homology, asymptotics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kBuildId));

    // ---- sample ----------------------------------------------------------
    auto* cmd_sample = app.add_subcommand("sample", "draw random complexes as JSON lines");
    int sa_n = 2;
    std::string sa_ambient = "delta", sa_params, sa_alpha, sa_model = "upper", sa_out = "-";
    int sa_pure_k = -1;
    double sa_pure_p = 0;
    std::uint64_t sa_count = 1, sa_seed = 0;
    cmd_sample->add_option("--n", sa_n, "ambient vertex index bound")->required();
    cmd_sample->add_option("--ambient", sa_ambient, "delta|boundary");
    cmd_sample->add_option("--params", sa_params, "parameter JSON file");
    cmd_sample->add_option("--alpha", sa_alpha, "comma-separated exponents (p_i = n^-alpha_i)");
    cmd_sample->add_option("--model", sa_model, "hypergraph|lower|upper|pure");
    cmd_sample->add_option("--pure-k", sa_pure_k, "pure model: face dimension");
    cmd_sample->add_option("--pure-p", sa_pure_p, "pure model: face probability");
    cmd_sample->add_option("--count", sa_count, "number of samples");
    cmd_sample->add_option("--seed", sa_seed, "stream seed");
    cmd_sample->add_option("--out", sa_out, "output path ('-' = stdout)");

    // ---- betti -----------------------------------------------------------
    auto* cmd_betti = app.add_subcommand("betti", "Betti numbers of a complex");
    ComplexInput be_complex;
    std::string be_field = "rational";
    cmd_betti->add_option("--complex", be_complex.path, "complex JSON file")->required();
    cmd_betti->add_option("--field", be_field, "rational|gf|gf:<prime>");

    // ---- dual ------------------------------------------------------------
    auto* cmd_dual = app.add_subcommand("dual", "Alexander dual / dual complex / nerve");
    ComplexInput du_complex;
    std::string du_op = "c";
    cmd_dual->add_option("--op", du_op, "c|prime|nerve");
    cmd_dual->add_option("--complex", du_complex.path, "complex JSON file")->required();
    cmd_dual->add_option("--n", du_complex.n_override, "expected ambient n (validation)");

    // ---- measure ---------------------------------------------------------
    auto* cmd_measure = app.add_subcommand("measure", "exact model probability of a complex");
    ComplexInput me_complex;
    std::string me_params, me_model = "lower";
    cmd_measure->add_option("--model", me_model, "lower|upper|hypergraph")->required();
    cmd_measure->add_option("--complex", me_complex.path, "complex JSON file")->required();
    cmd_measure->add_option("--params", me_params, "parameter JSON file")->required();

    // ---- sandwich --------------------------------------------------------
    auto* cmd_sandwich = app.add_subcommand("sandwich", "P(A subset Y subset B)");
    ComplexInput swa, swb;
    std::string sw_params, sw_model = "lower", sw_route = "auto";
    int sw_guard = 24;
    cmd_sandwich->add_option("--model", sw_model, "lower|upper")->required();
    cmd_sandwich->add_option("--a", swa.path, "inner complex JSON file")->required();
    cmd_sandwich->add_option("--b", swb.path, "outer complex JSON file")->required();
    cmd_sandwich->add_option("--params", sw_params, "parameter JSON file")->required();
    cmd_sandwich->add_option("--route", sw_route, "auto|general|disjoint|nested");
    cmd_sandwich->add_option("--guard-bits", sw_guard, "inclusion-exclusion set guard");

    // ---- critdim ---------------------------------------------------------
    auto* cmd_critdim = app.add_subcommand("critdim", "critical dimensions of both models");
    std::string cd_alpha;
    cmd_critdim->add_option("--alpha", cd_alpha, "comma-separated exponents")->required();

    // ---- expect ----------------------------------------------------------
    auto* cmd_expect = app.add_subcommand("expect", "expected face counts E(f_k) vs n");
    std::string ex_alpha, ex_ns = "1000", ex_out;
    cmd_expect->add_option("--alpha", ex_alpha, "comma-separated exponents")->required();
    cmd_expect->add_option("--n-list", ex_ns, "comma-separated values of n");
    cmd_expect->add_option("--out", ex_out, "CSV output path (default stdout)");

    // ---- oracle ----------------------------------------------------------
    auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive identity verification");
    int or_n = 2;
    std::string or_ambient = "boundary", or_check = "all", or_params;
    cmd_oracle->add_option("--n", or_n, "ambient vertex index bound")->required();
    cmd_oracle->add_option("--ambient", or_ambient, "delta|boundary");
    cmd_oracle->add_option("--check", or_check, "all or comma-separated identity names");
    cmd_oracle->add_option("--params", or_params, "parameter JSON file (default: uniform 1/2)");

    // ---- experiment ------------------------------------------------------
    auto* cmd_exp = app.add_subcommand("experiment", "statistical experiment runners");
    cmd_exp->require_subcommand(1);

    auto* exp_dual = cmd_exp->add_subcommand("duality", "Betti distributions of dual models");
    int ed_n = 3;
    std::string ed_params, ed_alpha, ed_field = "gf", ed_out;
    std::uint64_t ed_samples = 1000, ed_seed = 0;
    exp_dual->add_option("--n", ed_n)->required();
    exp_dual->add_option("--params", ed_params, "explicit parameter JSON file");
    exp_dual->add_option("--alpha", ed_alpha, "exponent parameters");
    exp_dual->add_option("--samples", ed_samples);
    exp_dual->add_option("--seed", ed_seed);
    exp_dual->add_option("--field", ed_field);
    exp_dual->add_option("--out", ed_out, "CSV output path");

    auto* exp_thresh = cmd_exp->add_subcommand("threshold", "pure-model skeleton containment");
    ThresholdConfig tc;
    std::string et_omegas = "-6,-2,0,2,6";
    exp_thresh->add_option("--n", tc.n)->required();
    exp_thresh->add_option("--k", tc.k, "pure face dimension");
    exp_thresh->add_option("--ell", tc.ell, "skeleton dimension");
    exp_thresh->add_option("--omegas", et_omegas, "comma-separated omega grid");
    exp_thresh->add_option("--trials", tc.trials);
    exp_thresh->add_option("--seed", tc.seed);
    exp_thresh->add_option("--out", tc.out_csv, "CSV output path");

    auto* exp_betti = cmd_exp->add_subcommand("betti-profile", "Betti profile at a growth profile");
    int eb_n = 60;
    std::string eb_alpha, eb_field = "gf", eb_out;
    std::uint64_t eb_samples = 100, eb_seed = 0;
    exp_betti->add_option("--n", eb_n)->required();
    exp_betti->add_option("--alpha", eb_alpha)->required();
    exp_betti->add_option("--samples", eb_samples);
    exp_betti->add_option("--seed", eb_seed);
    exp_betti->add_option("--field", eb_field);
    exp_betti->add_option("--out", eb_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_sample) {
            Ambient amb = make_ambient(sa_n, sa_ambient);
            SampleSpec spec{amb, ModelKind::upper, std::nullopt, sa_pure_k, sa_pure_p,
                            sa_count, sa_seed};
            if (sa_model == "hypergraph")
                spec.model = ModelKind::hypergraph;
            else if (sa_model == "lower")
                spec.model = ModelKind::lower;
            else if (sa_model == "upper")
                spec.model = ModelKind::upper;
            else if (sa_model == "pure")
                spec.model = ModelKind::pure;
            else
                throw std::invalid_argument("--model must be hypergraph|lower|upper|pure");
            if (spec.model != ModelKind::pure) {
                if (!sa_params.empty())
                    spec.params = load_params(sa_params, amb);
                else if (!sa_alpha.empty())
                    spec.params = ParamMap::exponent(amb, parse_alpha(sa_alpha));
                else
                    throw std::invalid_argument("sample: need --params or --alpha");
            }
            Sampler sampler(spec);
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (sa_out != "-") {
                file.open(sa_out);
                if (!file) throw std::invalid_argument("cannot open output: " + sa_out);
                out = &file;
            }
            for (std::uint64_t i = 0; i < sa_count; ++i)
                *out << complex_to_json(sampler.at(i)).dump() << "\n";
            if (sa_out != "-") {
                json manifest = {{"command", "sample"},
                                 {"n", sa_n},
                                 {"ambient", sa_ambient},
                                 {"model", sa_model},
                                 {"count", sa_count},
                                 {"seed", sa_seed},
                                 {"build_id", kBuildId}};
                if (spec.params) manifest["params"] = params_to_json(*spec.params);
                if (spec.model == ModelKind::pure) {
                    manifest["pure_k"] = sa_pure_k;
                    manifest["pure_p"] = sa_pure_p;
                }
                write_json_file(sa_out + ".manifest.json", manifest);
            }
        } else if (*cmd_betti) {
            Complex y = be_complex.load();
            std::cout << betti_to_json(betti(y, field_from_string(be_field))).dump(2) << "\n";
        } else if (*cmd_dual) {
            Complex y = du_complex.load();
            if (du_op == "c") {
                std::cout << complex_to_json(dual_c(y)).dump(2) << "\n";
            } else if (du_op == "prime" || du_op == "nerve") {
                LabeledComplex lc = du_op == "prime" ? dual_prime(y) : nerve_of_maximal(y);
                json j = complex_to_json(lc.complex);
                json labels = json::array();
                for (Simplex s : lc.labels) labels.push_back(s.vertices());
                j["vertex_labels"] = std::move(labels);
                std::cout << j.dump(2) << "\n";
            } else {
                throw std::invalid_argument("--op must be c|prime|nerve");
            }
        } else if (*cmd_measure) {
            Complex y = me_complex.load();
            ParamMap params = load_params(me_params, y.ambient());
            Rational value;
            if (me_model == "lower")
                value = lower_measure(y, params);
            else if (me_model == "upper")
                value = upper_measure(y, params);
            else if (me_model == "hypergraph")
                value = hypergraph_prob(y, params);
            else
                throw std::invalid_argument("--model must be lower|upper|hypergraph");
            std::cout << rational_str(value) << "\n";
        } else if (*cmd_sandwich) {
            Complex a = swa.load(), b = swb.load();
            ParamMap params = load_params(sw_params, a.ambient());
            SandwichRoute route;
            if (sw_route == "auto")
                route = SandwichRoute::automatic;
            else if (sw_route == "general")
                route = SandwichRoute::inclusion_exclusion;
            else if (sw_route == "disjoint")
                route = SandwichRoute::disjoint_product;
            else if (sw_route == "nested")
                route = SandwichRoute::nested;
            else
                throw std::invalid_argument("--route must be auto|general|disjoint|nested");
            Rational value = sw_model == "lower" ? sandwich_lower(a, b, params, route, sw_guard)
                                                 : sandwich_upper(a, b, params, route, sw_guard);
            std::cout << rational_str(value) << "\n";
        } else if (*cmd_critdim) {
            ExponentProfile profile(parse_alpha(cd_alpha));
            GenericityReport generic = check_genericity(profile);
            LowerCriticalReport lower = lower_critical_dimension(profile);
            json j = {{"alpha", profile.alpha},
                      {"generic", generic.ok},
                      {"violations", generic.violations},
                      {"lower", {{"psi", lower.psi},
                                 {"k_lower", lower.k_lower},
                                 {"boundary_hit", lower.boundary_hit}}}};
            if (generic.ok) j["upper"] = beta_profile_json(beta_profile(profile));
            std::cout << j.dump(2) << "\n";
            if (!generic.ok) return kExitValidation;
        } else if (*cmd_expect) {
            ExponentProfile profile(parse_alpha(ex_alpha));
            std::vector<double> ns = parse_doubles(ex_ns);
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!ex_out.empty()) {
                file.open(ex_out);
                if (!file) throw std::invalid_argument("cannot open output: " + ex_out);
                out = &file;
            }
            *out << "n,k,gamma_k,log_expected,expected,asymptotic,leading_sum\r\n";
            for (double n : ns) {
                BetaProfile bp = beta_profile(profile);
                for (int k = 0; k <= profile.r(); ++k) {
                    FaceCountEstimate est = expected_face_count(n, profile, k);
                    char line[256];
                    std::snprintf(line, sizeof line, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g\r\n",
                                  n, k, bp.gamma[k], est.log_expected, est.expected,
                                  est.asymptotic, est.leading_sum);
                    *out << line;
                }
            }
        } else if (*cmd_oracle) {
            Ambient amb = make_ambient(or_n, or_ambient);
            ParamMap params = or_params.empty() ? ParamMap::uniform(amb, rational(1, 2))
                                                : load_params(or_params, amb);
            std::vector<std::string> checks;
            if (or_check == "all") {
                for (const std::string& name : oracle::identity_names())
                    if (!(amb.include_top && name == "duality")) checks.push_back(name);
            } else {
                checks = parse_names(or_check);
            }
            auto results = oracle::verify_identities(amb, params, checks);
            bool all_pass = true;
            for (const auto& r : results) {
                if (r.pass) {
                    std::cout << "ok   " << r.identity << " (" << r.instances << " instances)\n";
                } else {
                    all_pass = false;
                    std::cout << "FAIL " << r.identity << ": " << r.counterexample << "\n";
                }
            }
            if (!all_pass) return kExitCounterexample;
        } else if (*exp_dual) {
            Ambient amb = Ambient::boundary(ed_n);
            std::optional<ParamMap> params;
            if (!ed_params.empty())
                params = load_params(ed_params, amb);
            else if (!ed_alpha.empty())
                params = ParamMap::exponent(amb, parse_alpha(ed_alpha));
            else
                throw std::invalid_argument("experiment duality: need --params or --alpha");
            DualityConfig config{*params, ed_samples, ed_seed, field_from_string(ed_field), ed_out};
            DualityResult res = experiment_duality(config);
            std::cout << "samples=" << res.samples
                      << " duality_failures=" << res.identity_failures;
            if (res.exact_mode)
                std::cout << " exact_distributions_equal=" << (res.exact_equal ? "yes" : "no");
            std::cout << "\n";
        } else if (*exp_thresh) {
            tc.omegas = parse_doubles(et_omegas);
            ThresholdResult res = experiment_threshold(tc);
            for (const auto& row : res.rows)
                std::cout << "omega=" << row.omega << " p=" << row.p
                          << " fraction=" << row.fraction << "\n";
        } else if (*exp_betti) {
            BettiProfileConfig config;
            config.n = eb_n;
            config.profile = ExponentProfile(parse_alpha(eb_alpha));
            config.samples = eb_samples;
            config.seed = eb_seed;
            config.field = field_from_string(eb_field);
            config.out_csv = eb_out;
            BettiProfileResult res = experiment_betti_profile(config);
            if (res.spread_warning)
                std::cerr << "warning: spread is " << res.growth.spread
                          << " (domination statements assume zero spread)\n";
            std::cout << "k_star=" << res.growth.k_star << " spread=" << res.growth.spread << "\n";
            for (int k = 0; k <= config.profile.r(); ++k)
                std::cout << "k=" << k << " median_b=" << res.median_betti(k)
                          << " prediction=" << res.prediction[k] << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
