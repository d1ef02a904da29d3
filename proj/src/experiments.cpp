#include "complexlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "complexlab/json_io.hpp"
#include "complexlab/oracle.hpp"
#include "complexlab/version.hpp"

namespace complexlab {

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) {
        if (path.empty()) return;
        out_.emplace(path);
        if (!*out_) throw std::invalid_argument("cannot open CSV output: " + path);
    }
    void row(const std::vector<std::string>& fields) {
        if (!out_) return;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) *out_ << ',';
            *out_ << fields[i];
        }
        *out_ << "\r\n"; // RFC 4180 line ending
    }
    bool active() const { return out_.has_value(); }

private:
    std::optional<std::ofstream> out_;
};

void write_manifest(const std::string& csv_path, json config) {
    if (csv_path.empty()) return;
    config["build_id"] = kBuildId;
    config["output"] = csv_path;
    write_json_file(csv_path + ".manifest.json", config);
}

std::string num(std::int64_t v) { return std::to_string(v); }

} // namespace

DualityResult experiment_duality(const DualityConfig& config) {
    const Ambient& amb = config.params.ambient();
    if (amb.include_top)
        throw std::invalid_argument("experiment_duality: requires a boundary ambient");
    const int n = amb.n;

    ParamMap dualp = dual_params(config.params);
    Sampler upper_sampler({amb, ModelKind::upper, config.params, -1, 0, config.samples, config.seed});
    Sampler lower_sampler({amb, ModelKind::lower, dualp, -1, 0, config.samples, config.seed + 1});

    struct Row {
        std::vector<std::int64_t> f, b, btilde;
        int duality_ok = -1; // -1: not applicable (lower rows)
    };
    std::vector<Row> upper_rows(config.samples), lower_rows(config.samples);

    auto fill = [&](const Complex& y, Row& row, bool check_duality) {
        BettiVector bv = betti(y, config.field);
        row.f.assign(n, 0);
        auto counts = y.counts_by_dim();
        for (std::size_t d = 0; d < counts.size(); ++d) row.f[d] = counts[d];
        row.b.assign(n, 0);
        for (int d = 0; d < n; ++d) row.b[d] = bv.value(d);
        row.btilde.assign(n + 1, 0);
        for (int d = -1; d < n; ++d) row.btilde[d + 1] = bv.reduced(d);
        if (check_duality) {
            BettiVector dual_bv = betti(dual_c(y), config.field);
            row.duality_ok = 1;
            for (int j = 0; j <= n - 2; ++j)
                if (dual_bv.reduced(j) != bv.reduced(n - 2 - j)) row.duality_ok = 0;
        }
    };
    sample_foreach(upper_sampler,
                   [&](std::uint64_t i, const Complex& y) { fill(y, upper_rows[i], true); });
    sample_foreach(lower_sampler,
                   [&](std::uint64_t i, const Complex& y) { fill(y, lower_rows[i], false); });

    DualityResult result;
    result.samples = config.samples;
    for (const Row& row : upper_rows)
        if (row.duality_ok == 0) ++result.identity_failures;

    // Exact comparison of the two reduced Betti distributions when the
    // ambient is small enough to enumerate and the parameters are exact.
    if (amb.simplex_count() <= 15 && config.params.is_explicit()) {
        result.exact_mode = true;
        result.exact_equal = true;
        auto table = std::make_shared<oracle::AmbientTable>(amb);
        oracle::ExactDistribution up = oracle::pushforward(oracle::Model::upper, config.params, table);
        oracle::ExactDistribution lo = oracle::pushforward(oracle::Model::lower, dualp, table);
        std::vector<std::map<std::int64_t, Rational>> dist_up(n - 1), dist_lo(n - 1);
        for (const auto& [bits, p] : up.entries()) {
            BettiVector bv = betti(table->to_complex(bits), FieldSpec::rationals());
            for (int j = 0; j <= n - 2; ++j) dist_up[j][bv.reduced(j)] += p;
        }
        for (const auto& [bits, p] : lo.entries()) {
            BettiVector bv = betti(table->to_complex(bits), FieldSpec::rationals());
            for (int j = 0; j <= n - 2; ++j) dist_lo[j][bv.reduced(n - 2 - j)] += p;
        }
        for (int j = 0; j <= n - 2; ++j)
            if (dist_up[j] != dist_lo[j]) result.exact_equal = false;
    }

    CsvWriter csv(config.out_csv);
    if (csv.active()) {
        std::vector<std::string> header = {"sample_index", "model"};
        for (int d = 0; d < n; ++d) header.push_back("f_" + std::to_string(d));
        for (int d = 0; d < n; ++d) header.push_back("b_" + std::to_string(d));
        for (int d = -1; d < n; ++d) header.push_back("btilde_" + std::to_string(d));
        header.push_back("duality_ok");
        csv.row(header);
        auto emit = [&](const std::vector<Row>& rows, const char* model) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::vector<std::string> fields = {std::to_string(i), model};
                for (auto v : rows[i].f) fields.push_back(num(v));
                for (auto v : rows[i].b) fields.push_back(num(v));
                for (auto v : rows[i].btilde) fields.push_back(num(v));
                fields.push_back(rows[i].duality_ok < 0 ? "" : num(rows[i].duality_ok));
                csv.row(fields);
            }
        };
        emit(upper_rows, "upper");
        emit(lower_rows, "lower_dual");

        // Companion table: per degree j, the empirical distribution of
        // btilde_j over the upper samples next to btilde_{n-2-j} over the
        // lower-dual samples. The duality statement says they coincide.
        CsvWriter dist(config.out_csv + ".dist.csv");
        dist.row({"j", "value", "count_upper", "count_lower_dual"});
        for (int j = 0; j <= n - 2; ++j) {
            std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> hist;
            for (const Row& row : upper_rows) ++hist[row.btilde[j + 1]].first;
            for (const Row& row : lower_rows) ++hist[row.btilde[n - 2 - j + 1]].second;
            for (const auto& [value, counts] : hist)
                dist.row({std::to_string(j), num(value), std::to_string(counts.first),
                          std::to_string(counts.second)});
        }

        write_manifest(config.out_csv,
                       {{"experiment", "duality"},
                        {"n", n},
                        {"ambient", "boundary"},
                        {"params", params_to_json(config.params)},
                        {"samples", config.samples},
                        {"seed", config.seed},
                        {"field", field_to_string(config.field)}});
    }
    return result;
}

bool pure_skeleton_containment_trial(long long n, int k, int ell, double p, Rng& rng) {
    if (!(0 <= ell && ell < k && k <= n))
        throw std::invalid_argument("pure_skeleton_containment_trial: need 0 <= ell < k <= n");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("pure_skeleton_containment_trial: p must lie in (0, 1]");
    const std::uint64_t total_k = binomial_u64(n + 1, k + 1);
    const std::uint64_t total_ell = binomial_u64(n + 1, ell + 1);
    if (total_ell > (std::uint64_t{1} << 31))
        throw std::invalid_argument("pure_skeleton_containment_trial: too many ell-faces to track");
    std::vector<char> covered(total_ell, 0);
    std::uint64_t count = 0;
    std::vector<int> pick(ell + 1);
    bernoulli_hits(rng, total_k, p, [&](std::uint64_t face_rank) {
        std::vector<int> verts = unrank_subset_lex_wide(face_rank, n + 1, k + 1);
        // Every (ell+1)-subset of the face is covered.
        for (int i = 0; i <= ell; ++i) pick[i] = i;
        for (;;) {
            std::vector<int> sub(ell + 1);
            for (int i = 0; i <= ell; ++i) sub[i] = verts[pick[i]];
            std::uint64_t r = rank_subset_lex_wide(sub, n + 1);
            if (!covered[r]) {
                covered[r] = 1;
                ++count;
            }
            int i = ell;
            while (i >= 0 && pick[i] == k - ell + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j <= ell; ++j) pick[j] = pick[j - 1] + 1;
        }
    });
    return count == total_ell;
}

ThresholdResult experiment_threshold(const ThresholdConfig& config) {
    ThresholdResult result;
    CsvWriter csv(config.out_csv);
    csv.row({"omega", "p", "clamped", "trials", "contained", "fraction", "theory_lower_bound"});
    std::uint64_t seed_offset = 0;
    for (double omega : config.omegas) {
        SkeletonThreshold th = skeleton_threshold(config.n, config.k, config.ell, omega);
        ThresholdRow row;
        row.omega = omega;
        row.p = th.p;
        row.clamped = th.clamped;
        row.theory_lower_bound = omega > 0 ? -std::expm1(-omega) : 0.0;
        if (th.p > 0) {
            std::vector<char> contained(config.trials, 0);
            std::uint64_t seed = config.seed + seed_offset;
            parallel_chunks(config.trials, [&](std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t i = begin; i < end; ++i) {
                    Rng rng = Rng::stream(seed, i);
                    contained[i] = pure_skeleton_containment_trial(config.n, config.k, config.ell,
                                                                   th.p, rng)
                                       ? 1
                                       : 0;
                }
            });
            for (char c : contained) row.contained += c;
        }
        row.fraction = static_cast<double>(row.contained) / static_cast<double>(config.trials);
        csv.row({fmt_double(row.omega), fmt_double(row.p), num(row.clamped), num(config.trials),
                 num(row.contained), fmt_double(row.fraction), fmt_double(row.theory_lower_bound)});
        result.rows.push_back(row);
        seed_offset += config.trials;
    }
    write_manifest(config.out_csv, {{"experiment", "threshold"},
                                    {"n", config.n},
                                    {"k", config.k},
                                    {"ell", config.ell},
                                    {"omegas", config.omegas},
                                    {"trials", config.trials},
                                    {"seed", config.seed}});
    return result;
}

double BettiProfileResult::median_betti(int k) const {
    std::vector<std::int64_t> column;
    column.reserve(betti_rows.size());
    for (const auto& row : betti_rows) column.push_back(row[k]);
    std::sort(column.begin(), column.end());
    std::size_t m = column.size();
    if (m == 0) return 0;
    return m % 2 ? static_cast<double>(column[m / 2])
                 : (static_cast<double>(column[m / 2 - 1]) + static_cast<double>(column[m / 2])) / 2;
}

BettiProfileResult experiment_betti_profile(const BettiProfileConfig& config) {
    Ambient amb = Ambient::simplex(config.n);
    const int r = config.profile.r();
    if (r < 0) throw std::invalid_argument("experiment_betti_profile: empty profile");

    BettiProfileResult result;
    result.growth = beta_profile(config.profile);
    result.spread_warning = result.growth.spread != 0;
    result.samples = config.samples;
    result.prediction.resize(r + 1);
    for (int k = 0; k <= r; ++k)
        result.prediction[k] = expected_face_count(config.n, config.profile, k).asymptotic;

    ParamMap params = ParamMap::exponent(amb, config.profile.alpha);
    Sampler sampler({amb, ModelKind::upper, params, -1, 0, config.samples, config.seed});
    result.f_rows.assign(config.samples, std::vector<std::int64_t>(r + 1, 0));
    result.betti_rows.assign(config.samples, std::vector<std::int64_t>(r + 1, 0));
    result.reduced_rows.assign(config.samples, std::vector<std::int64_t>(r + 1, 0));
    sample_foreach(sampler, [&](std::uint64_t i, const Complex& y) {
        auto counts = y.counts_by_dim();
        for (std::size_t d = 0; d < counts.size() && d <= static_cast<std::size_t>(r); ++d)
            result.f_rows[i][d] = counts[d];
        BettiVector bv = betti(y, config.field);
        for (int d = 0; d <= r; ++d) {
            result.betti_rows[i][d] = bv.value(d);
            result.reduced_rows[i][d] = bv.reduced(d);
        }
    });

    CsvWriter csv(config.out_csv);
    if (csv.active()) {
        std::vector<std::string> header = {"sample_index"};
        for (int d = 0; d <= r; ++d) header.push_back("f_" + std::to_string(d));
        for (int d = 0; d <= r; ++d) header.push_back("b_" + std::to_string(d));
        for (int d = 0; d <= r; ++d) header.push_back("btilde_" + std::to_string(d));
        for (int d = 0; d <= r; ++d) header.push_back("pred_" + std::to_string(d));
        csv.row(header);
        for (std::uint64_t i = 0; i < config.samples; ++i) {
            std::vector<std::string> fields = {std::to_string(i)};
            for (auto v : result.f_rows[i]) fields.push_back(num(v));
            for (auto v : result.betti_rows[i]) fields.push_back(num(v));
            for (auto v : result.reduced_rows[i]) fields.push_back(num(v));
            for (double v : result.prediction) fields.push_back(fmt_double(v));
            csv.row(fields);
        }
        write_manifest(config.out_csv, {{"experiment", "betti-profile"},
                                        {"n", config.n},
                                        {"alpha", config.profile.alpha},
                                        {"samples", config.samples},
                                        {"seed", config.seed},
                                        {"field", field_to_string(config.field)}});
    }
    return result;
}

} // namespace complexlab
