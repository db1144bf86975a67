#include "qeswell/json_io.hpp"
#include "qeswell/csv.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace qeswell;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "qeswell-XXXXXX").string();
        char* p = mkdtemp(tmpl.data());
        REQUIRE(p != nullptr);
        path = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const char* bin = std::getenv("QESWELL_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string("\"") + bin + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool cli_available() { return std::getenv("QESWELL_BIN") != nullptr; }

} // namespace

TEST_SUITE("io_cli") {

TEST_CASE("ansatz JSON accepts both construction forms") {
    const auto a = ansatz_from_json(Json::parse(
        R"({"terms":[{"center":-1.5,"width":2.0,"weight":0.5},{"center":1.5}]})"));
    REQUIRE(a.terms.size() == 2);
    CHECK(a.terms[0].center == -1.5);
    CHECK(a.terms[0].width == 2.0);
    CHECK(a.terms[0].weight == 0.5);
    CHECK(a.terms[1].width == 1.0);   // defaults fill in
    CHECK(a.terms[1].weight == 1.0);

    const auto e = ansatz_from_json(Json::parse(
        R"({"equidistant":{"M":4,"spacing":1.5,"width":0.7,"pattern":[1,-1,1,-1]}})"));
    REQUIRE(e.terms.size() == 4);
    CHECK(e.terms[0].center == -4.5);
    CHECK(e.terms[3].center == 4.5);
    CHECK(e.terms[0].width == 0.7);
    CHECK(e.terms[1].weight == -1.0);
    CHECK(e.terms[2].weight == 1.0);
}

TEST_CASE("ansatz JSON rejects malformed requests") {
    auto bad = [](const char* text) {
        CHECK_THROWS_AS(ansatz_from_json(Json::parse(text)), std::invalid_argument);
    };
    bad(R"({})");
    bad(R"({"terms":[{"center":0}],"equidistant":{"M":2,"spacing":1}})");  // both forms
    bad(R"({"terms":[{"center":0}],"extra":1})");                          // unknown key
    bad(R"({"terms":[{"center":0,"width":-1}]})");                         // bad width
    bad(R"({"equidistant":{"M":0,"spacing":1}})");
    bad(R"({"equidistant":{"M":65,"spacing":1}})");
    bad(R"({"equidistant":{"M":2,"spacing":1,"pattern":[1,0]}})");   // entries must be +-1
    bad(R"({"equidistant":{"M":2,"spacing":1,"pattern":[1]}})");     // wrong length
}

TEST_CASE("gauge JSON covers the three modes") {
    CHECK(gauge_from_json(Json::parse(R"({"mode":"raw"})")).mode == EnergyGauge::Mode::raw);
    CHECK(gauge_from_json(Json::parse(R"({"mode":"origin"})")).mode == EnergyGauge::Mode::origin);
    const auto mz = gauge_from_json(Json::parse(R"({"mode":"min_zero","lo":-2.0,"hi":2.0})"));
    CHECK(mz.mode == EnergyGauge::Mode::min_zero);
    CHECK(mz.lo == -2.0);
    CHECK(mz.hi == 2.0);

    auto bad = [](const char* text) {
        CHECK_THROWS_AS(gauge_from_json(Json::parse(text)), std::invalid_argument);
    };
    bad(R"({"mode":"min_zero"})");                        // needs the interval
    bad(R"({"mode":"min_zero","lo":2.0,"hi":-2.0})");     // and lo < hi
    bad(R"({"mode":"zero"})");
    bad(R"({"mode":"raw","cutoff":0})");                  // unknown key
    // a stray interval on the raw mode is tolerated and ignored
    CHECK(gauge_from_json(Json::parse(R"({"mode":"raw","lo":0.0,"hi":1.0})")).mode ==
          EnergyGauge::Mode::raw);
}

TEST_CASE("potential JSON dispatches on kind") {
    const auto qes = potential_from_json(Json::parse(
        R"({"kind":"qes","ansatz":{"equidistant":{"M":2,"spacing":2.0}},"gauge":{"mode":"origin"}})"));
    CHECK(qes.kind == "qes");
    REQUIRE(qes.has_qes);
    CHECK(qes.qes.ground_energy() == doctest::Approx(-14.0).epsilon(1e-12));
    CHECK(qes.potential.parity_symmetric);
    CHECK(qes.potential.label == "qes(M=2)");

    // gauge defaults to raw
    const auto raw = potential_from_json(
        Json::parse(R"({"kind":"qes","ansatz":{"equidistant":{"M":2,"spacing":2.0}}})"));
    CHECK(raw.qes.ground_energy() == 0.0);

    const auto sx = potential_from_json(Json::parse(R"({"kind":"sextic","alpha":-2.0})"));
    REQUIRE(sx.has_sextic);
    CHECK(sx.sextic.alpha == -2.0);
    CHECK(sx.potential.v(1.0) == doctest::Approx(-2.0).epsilon(1e-14));  // A + B + 1

    const auto rect = potential_from_json(Json::parse(R"({"kind":"rect","a2":1,"b2":30,"c2":2})"));
    CHECK(rect.a2 == 1.0);
    CHECK(rect.b2 == 30.0);
    CHECK(rect.c2 == 2.0);
    CHECK(rect.potential.label == "rect");
    CHECK(!rect.potential.parity_symmetric);
    CHECK(rect.potential.v(0.0) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(rect.potential.v(-2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rect.potential.v(2.0) == doctest::Approx(2.0).epsilon(1e-12));

    const auto sym = potential_from_json(Json::parse(R"({"kind":"rect","a2":4,"b2":400,"c2":4})"));
    CHECK(sym.potential.parity_symmetric);

    const auto sm = potential_from_json(
        Json::parse(R"({"kind":"smoothed_rect","a2":1,"b2":30,"c2":2,"ramp":0.01})"));
    CHECK(sm.potential.label == "smoothed_rect");
    CHECK(sm.potential.v(0.0) > 29.0);  // finite ramp rounds the corners a little

    const auto tab = potential_from_json(
        Json::parse(R"({"kind":"tabulated","r":[-1,0,1],"v":[3,1,3]})"));
    CHECK(tab.tab_lo == -1.0);
    CHECK(tab.tab_hi == 1.0);
    CHECK(tab.potential.v(0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(tab.potential.v(1.5), std::invalid_argument);

    CHECK_THROWS_AS(potential_from_json(Json::parse(R"({"kind":"box"})")), std::invalid_argument);
    CHECK_THROWS_AS(potential_from_json(Json::parse(R"({"kind":"sextic","alpha":1,"junk":2})")),
                    std::invalid_argument);
}

TEST_CASE("require_object enforces its whitelist") {
    const Json j = Json::parse(R"({"a":1,"b":2})");
    CHECK_NOTHROW(require_object(j, {"a"}, {"b"}, "here"));
    CHECK_THROWS_AS(require_object(j, {"a", "c"}, {"b"}, "here"), std::invalid_argument);
    try {
        require_object(j, {"a"}, {}, "here");
        FAIL("unknown key accepted");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("b") != std::string::npos);
    }
}

TEST_CASE("CSV fields are rendered in fixed scientific form") {
    CsvWriter w;
    w.header({"a", "b"});
    w.field(1.0);
    w.field(-0.5);
    w.end_row();
    w.field(static_cast<long>(7));
    w.field(std::string("x"));
    w.end_row();
    CHECK(w.str() == "a,b\n1.00000000000000e+00,-5.00000000000000e-01\n7,x\n");
}

TEST_CASE("text and JSON round-trip through the filesystem") {
    TempDir tmp;
    const Json j = Json::parse(R"({"x":[1,2,3],"s":"hi"})");
    write_text_file(tmp.file("a.json"), j.dump(2) + "\n");
    CHECK(load_json_file(tmp.file("a.json")) == j);

    CHECK_THROWS_AS(load_json_file(tmp.file("missing.json")), std::invalid_argument);
    write_text_file(tmp.file("broken.json"), "{nope");
    CHECK_THROWS_AS(load_json_file(tmp.file("broken.json")), std::invalid_argument);
}

TEST_CASE("CLI: self-check passes and writes its report") {
    if (!cli_available()) {
        WARN("QESWELL_BIN not set; skipping subprocess checks");
        return;
    }
    TempDir tmp;
    CHECK(run_cli("verify --out " + tmp.file("v")) == 0);
    const Json rep = load_json_file(tmp.file("v_verify.json"));
    CHECK(rep.at("all_pass").get<bool>());
    CHECK(rep.at("checks").size() == 6);
}

TEST_CASE("CLI: validation and solver failures use distinct exit codes") {
    if (!cli_available()) {
        WARN("QESWELL_BIN not set; skipping subprocess checks");
        return;
    }
    TempDir tmp;
    // unknown key -> validation error
    write_text_file(tmp.file("bad.json"),
                    R"({"kind":"qes","ansatz":{"equidistant":{"M":2,"spacing":1}},"junk":1})");
    CHECK(run_cli("potential --config " + tmp.file("bad.json") + " --out " + tmp.file("p")) == 1);

    // origin gauge over a node at r = 0 -> runtime (solver-domain) error
    write_text_file(
        tmp.file("gauge.json"),
        R"({"kind":"qes","ansatz":{"equidistant":{"M":2,"spacing":1,"pattern":[1,-1]}},"gauge":{"mode":"origin"}})");
    CHECK(run_cli("potential --config " + tmp.file("gauge.json") + " --out " + tmp.file("g")) == 2);
}

TEST_CASE("CLI: solve output is byte-identical across runs") {
    if (!cli_available()) {
        WARN("QESWELL_BIN not set; skipping subprocess checks");
        return;
    }
    TempDir tmp;
    write_text_file(
        tmp.file("cfg.json"),
        R"({"kind":"qes","ansatz":{"equidistant":{"M":2,"spacing":1.5}},"gauge":{"mode":"origin"}})");
    const std::string common =
        "solve --config " + tmp.file("cfg.json") + " --grid-L 6 --grid-N 600 --levels 2 --out ";
    REQUIRE(run_cli(common + tmp.file("one")) == 0);
    REQUIRE(run_cli(common + tmp.file("two")) == 0);
    CHECK(slurp(tmp.file("one_spectrum.csv")) == slurp(tmp.file("two_spectrum.csv")));
    CHECK(slurp(tmp.file("one_eigenfunctions.csv")) == slurp(tmp.file("two_eigenfunctions.csv")));
    CHECK(slurp(tmp.file("one_spectrum.csv")).substr(0, 28) == "level,energy,nodes,residual\n");
}

TEST_CASE("CLI: census JSON names the wells it found") {
    if (!cli_available()) {
        WARN("QESWELL_BIN not set; skipping subprocess checks");
        return;
    }
    TempDir tmp;
    write_text_file(tmp.file("m3.json"),
                    R"({"kind":"qes","ansatz":{"equidistant":{"M":3,"spacing":4}}})");
    REQUIRE(run_cli("potential --config " + tmp.file("m3.json") + " --out " + tmp.file("p")) == 0);
    const Json census = load_json_file(tmp.file("p_census.json"));
    CHECK(!census.at("singular").get<bool>());
    CHECK(census.at("n_wells").get<int>() == 3);
    // raw gauge puts the designed level at 0; every quasi-degenerate well's
    // quadratic-bottom estimate should land right next to it
    for (const Json& m : census.at("minima"))
        CHECK(std::fabs(m.at("leading_order_energy").get<double>()) < 5e-3);

    write_text_file(
        tmp.file("mix.json"),
        R"({"kind":"qes","ansatz":{"equidistant":{"M":3,"spacing":4,"pattern":[1,1,-1]}}})");
    REQUIRE(run_cli("potential --config " + tmp.file("mix.json") + " --out " + tmp.file("s")) == 0);
    CHECK(load_json_file(tmp.file("s_census.json")).at("singular").get<bool>());
}

TEST_CASE("CLI: nodal comparison accepts the shipped table and rejects a doctored one") {
    if (!cli_available()) {
        WARN("QESWELL_BIN not set; skipping subprocess checks");
        return;
    }
    const char* data = std::getenv("QESWELL_DATA");
    if (!data) {
        WARN("QESWELL_DATA not set; skipping pattern-table checks");
        return;
    }
    TempDir tmp;
    write_text_file(tmp.file("m3.json"),
                    R"({"kind":"qes","ansatz":{"equidistant":{"M":3,"spacing":3}}})");
    const std::string base = "nodal --config " + tmp.file("m3.json") + " --out " + tmp.file("n");
    CHECK(run_cli(base + " --expect " + std::string(data) + "/pattern_M3.json") == 0);

    write_text_file(tmp.file("doctored.json"),
                    R"({"M":3,"rows":["+.-.+","+.*.-","+*-*+"]})");
    CHECK(run_cli(base + " --expect " + tmp.file("doctored.json")) == 3);
    const Json rep = load_json_file(tmp.file("n_nodal.json"));
    CHECK(!rep.at("mismatches").empty());
}

} // TEST_SUITE
