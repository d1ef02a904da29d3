#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "complexlab/json_io.hpp"
#include "complexlab/sampler.hpp"

using namespace complexlab;

namespace {

std::string temp_path(const std::string& suffix) {
    static int counter = 0;
    return (std::filesystem::temp_directory_path() /
            ("complexlab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
             suffix)).string();
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("complex JSON round trip") {
    Rng rng = Rng::stream(2, 2);
    for (Ambient a : {Ambient::simplex(4), Ambient::boundary(5)}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Simplex> faces;
            for (Simplex s : enumerate_ambient(a))
                if (rng.bernoulli(0.3)) faces.push_back(s);
            Complex c = Complex::hypergraph(a, faces);
            Complex back = complex_from_json(complex_to_json(c));
            CHECK(back == c);
        }
    }
}

TEST_CASE("complex JSON rejections name the offender") {
    auto bad = [](const char* text) {
        return json::parse(text);
    };
    CHECK_THROWS_WITH_AS(complex_from_json(bad(R"({"n":1,"simplices":[[0],[0]]})")),
                         doctest::Contains("duplicate simplex"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(complex_from_json(bad(R"({"n":1,"simplices":[[7]]})")),
                         doctest::Contains("out of range"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(complex_from_json(bad(R"({"n":1,"simplices":[[0,0]]})")),
                         doctest::Contains("repeated vertex"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(complex_from_json(bad(R"({"n":2,"ambient":"boundary","simplices":[[0,1,2]]})")),
                         doctest::Contains("not admitted"), std::invalid_argument);
    CHECK_THROWS_AS(complex_from_json(bad(R"({"simplices":[]})")), std::invalid_argument);
    CHECK_THROWS_AS(complex_from_json(bad(R"({"n":1,"ambient":"disk","simplices":[]})")),
                    std::invalid_argument);
}

TEST_CASE("params JSON round trip, both modes") {
    Ambient a = Ambient::boundary(3);
    ParamMap skew = ParamMap::explicit_map(a, {{Simplex{0}, rational(1, 3)},
                                               {Simplex{1, 2}, rational(4, 7)},
                                               {Simplex{0, 2, 3}, rational(9, 11)}});
    ParamMap back = params_from_json(params_to_json(skew), a);
    for (Simplex s : enumerate_ambient(a)) CHECK(back.prob(s) == skew.prob(s));

    Ambient big = Ambient::simplex(40);
    ParamMap expo = ParamMap::exponent(big, {0.3, 0.5, 2.9});
    ParamMap back2 = params_from_json(params_to_json(expo), big);
    REQUIRE(back2.mode() == ParamMap::Mode::exponent);
    CHECK(back2.alpha() == expo.alpha());

    ParamMap rebased = ParamMap::exponent(big, {0.5}, 17.0);
    ParamMap back3 = params_from_json(params_to_json(rebased), big);
    CHECK(back3.exponent_base() == 17.0);
}

TEST_CASE("params JSON rejections") {
    Ambient a = Ambient::simplex(1);
    CHECK_THROWS_AS(params_from_json(json::parse(R"({"mode":"magic"})"), a),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_from_json(json::parse(R"({"mode":"exponent","r":3,"alpha":[0.5]})"), a),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        params_from_json(json::parse(R"({"mode":"explicit","probs":[{"simplex":[0],"p":"1/0"}]})"), a),
        std::invalid_argument);
    CHECK_THROWS_AS(
        params_from_json(json::parse(R"({"mode":"explicit","probs":[{"simplex":[0],"p":"3/2"}]})"), a),
        std::invalid_argument);
    CHECK_THROWS_AS(
        params_from_json(json::parse(R"({"mode":"explicit","probs":[{"p":"1/2"}]})"), a),
        std::invalid_argument);
}

TEST_CASE("field descriptors") {
    CHECK(field_from_string("rational") == FieldSpec::rationals());
    CHECK(field_from_string("gf") == FieldSpec::gf_default());
    CHECK(field_from_string("gf:2") == FieldSpec::gf(2));
    CHECK(field_to_string(FieldSpec::gf(7)) == "gf:7");
    CHECK_THROWS_AS(field_from_string("gf(2)"), std::invalid_argument);
}

TEST_CASE("cli measure prints the exact rational") {
    CliRun r = run_cli("measure --model upper --complex " + fixture("delta1_full.json") +
                       " --params " + fixture("params_half_delta1.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1/2\n");

    CliRun lower = run_cli("measure --model lower --complex " + fixture("delta1_vertices.json") +
                           " --params " + fixture("params_half_delta1.json"));
    CHECK(lower.exit_code == 0);
    CHECK(lower.out == "1/8\n");
}

TEST_CASE("cli critdim emits the growth report") {
    CliRun r = run_cli("critdim --alpha 0.3,0.5,2.9");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["upper"]["k_star"] == 1);
    CHECK(j["upper"]["spread"] == 0);
    CHECK(j["upper"]["gamma"][0].get<double>() == doctest::Approx(1.0));
    CHECK(j["upper"]["gamma"][1].get<double>() == doctest::Approx(1.5));
    CHECK(j["upper"]["gamma"][2].get<double>() == doctest::Approx(0.1));
    CHECK(j["lower"].contains("psi"));

    CliRun bad = run_cli("critdim --alpha 1.0,0.5");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli dual of the empty complex is the full boundary") {
    CliRun r = run_cli("dual --op c --complex " + fixture("empty_bd2.json") + " --n 2");
    CHECK(r.exit_code == 0);
    Complex c = complex_from_json(json::parse(r.out));
    CHECK(c == Complex::full(Ambient::boundary(2)));

    CliRun mismatch = run_cli("dual --op c --complex " + fixture("empty_bd2.json") + " --n 3");
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("cli oracle exits clean on verified ambients") {
    CliRun r = run_cli("oracle --n 1 --ambient delta --check all");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ok   measure-formula") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli rejects malformed input with exit code 2") {
    CliRun dup = run_cli("betti --complex " + fixture("bad_duplicate.json"));
    CHECK(dup.exit_code == 2);
    CHECK(dup.out.find("duplicate") != std::string::npos);

    CliRun vertex = run_cli("betti --complex " + fixture("bad_vertex.json"));
    CHECK(vertex.exit_code == 2);
    CHECK(vertex.out.find("out of range") != std::string::npos);

    CliRun missing = run_cli("betti --complex /nonexistent.json");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli sample stream is reproducible and writes a manifest") {
    std::string out1 = temp_path(".jsonl");
    std::string out2 = temp_path(".jsonl");
    std::string args = "sample --n 2 --ambient delta --alpha 0.4,0.8 --model upper "
                       "--count 20 --seed 99 --out ";
    CHECK(run_cli(args + out1).exit_code == 0);
    CHECK(run_cli(args + out2).exit_code == 0);
    std::ifstream f1(out1), f2(out2);
    std::string a((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string b((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(a == b);
    CHECK(!a.empty());
    json manifest = load_json_file(out1 + ".manifest.json");
    CHECK(manifest["seed"] == 99);
    CHECK(manifest["count"] == 20);
    CHECK(manifest.contains("build_id"));
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    std::remove((out1 + ".manifest.json").c_str());
    std::remove((out2 + ".manifest.json").c_str());
}

TEST_CASE("cli sandwich and expect") {
    CliRun sw = run_cli("sandwich --model lower --a " + fixture("delta1_vertices.json") + " --b " +
                        fixture("delta1_vertices.json") + " --params " +
                        fixture("params_half_delta1.json"));
    CHECK(sw.exit_code == 0);
    CHECK(sw.out == "1/8\n");

    CliRun ex = run_cli("expect --alpha 0.3,0.5,2.9 --n-list 1000,1000000");
    CHECK(ex.exit_code == 0);
    CHECK(ex.out.rfind("n,k,gamma_k,log_expected,expected,asymptotic,leading_sum", 0) == 0);
    CHECK(std::count(ex.out.begin(), ex.out.end(), '\n') == 7); // header + 2 n x 3 dims
}

TEST_CASE("cli experiment threshold") {
    std::string csv = temp_path(".csv");
    CliRun r = run_cli("experiment threshold --n 40 --k 1 --ell 0 --omegas -3,3 --trials 25 "
                       "--seed 4 --out " + csv);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("omega=") != std::string::npos);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "omega,p,clamped,trials,contained,fraction,theory_lower_bound\r");
    json manifest = load_json_file(csv + ".manifest.json");
    CHECK(manifest["experiment"] == "threshold");
    std::remove(csv.c_str());
    std::remove((csv + ".manifest.json").c_str());
}

TEST_CASE("cli betti of the boundary sphere") {
    std::string path = temp_path(".json");
    write_json_file(path, complex_to_json(Complex::full(Ambient::boundary(3))));
    CliRun r = run_cli("betti --complex " + path + " --field rational");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["betti"] == json::array({1, 0, 1}));
    std::remove(path.c_str());
}
