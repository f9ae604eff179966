#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "crloop/cli/commands.hpp"
#include "crloop/cli/report.hpp"
#include "support.hpp"

using namespace crl;
using namespace crl::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "crloop");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory under the system temp dir, removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("crloop-test-" + tag + "-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

std::string corpus(const std::string& name) { return (corpus_dir() / name).string(); }

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// Drops the elapsed_ms column and the mean time from the summary.
std::string without_timing(const std::string& csv) {
    std::string out;
    for (const auto& l : lines(csv)) {
        if (l.rfind("# summary", 0) == 0) {
            out += l.substr(0, l.find(" mean_ms=")) + "\n";
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(l);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        if (cells.size() > 6) cells[6] = "";
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
        out += "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("decide renders text") {
    Run ex1 = run({"decide", corpus("example1.loop")});
    CHECK(ex1.code == 0);
    std::smatch m;
    REQUIRE(std::regex_match(ex1.out, m, std::regex("CONSTANT bound=(\\d+) n0=0 rb=6\n")));
    CHECK(std::stoul(m[1]) <= 66);

    TempDir dir("text");
    Run up = run({"decide", dir.write("up.loop", "vars x\nguard x >= 0\nupdate x := x + 1\n")});
    CHECK(up.code == 0);
    CHECK(up.out.rfind("NONCONSTANT", 0) == 0);

    Run rot = run({"decide", dir.write("rot.loop", "vars x, y\nupdate x := y\nupdate y := -x\n")});
    CHECK(rot.code == 2);
    CHECK(rot.out.find("non-real eigenvalues") != std::string::npos);
}

TEST_CASE("decide exit codes") {
    TempDir dir("codes");
    CHECK(run({"decide", dir.write("bad.loop", "vars x\nguard x >=\n")}).code == 3);
    CHECK(run({"decide", dir.write("novars.loop", "guard x > 0\n")}).code == 3);
    CHECK(run({"decide", (dir.path / "missing.loop").string()}).code == 1);
    CHECK(run({"decide", corpus("count_up.loop"), "--format", "yaml"}).code == 1);
    // a bound deeper than the unrolling ceiling
    Run deep = run({"decide", corpus("example1.loop"), "--max-unroll", "3"});
    CHECK(deep.code == 4);
    CHECK(deep.out.find("resource limit") != std::string::npos);
}

TEST_CASE("json output has exactly the report fields and round-trips") {
    Run r = run({"decide", corpus("nilpotent_shift.loop"), "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"bound", "chained", "elapsed_ms", "file", "message", "n0", "rb", "verdict"});
    AnalysisReport rep = report_from_json(j);
    CHECK(rep.file == "nilpotent_shift.loop");
    CHECK(rep.verdict == "constant");
    CHECK(rep.bound == 2);
    CHECK(rep.n0 == 2);
    CHECK(to_json(rep) == j);

    Run nc = run({"decide", corpus("count_up.loop"), "--format", "json"});
    auto jn = nlohmann::json::parse(nc.out);
    CHECK(jn.at("bound").is_null());
    CHECK(report_from_json(jn) == report_from_json(to_json(report_from_json(jn))));

    // explanation goes to stderr so stdout stays parseable
    Run ex = run({"decide", corpus("example1.loop"), "--format", "json", "--explain"});
    CHECK(nlohmann::json::accept(ex.out));
    CHECK(ex.err.find("closed form") != std::string::npos);
}

TEST_CASE("bound present exactly for constant verdicts") {
    for (const auto& f : corpus_files()) {
        CAPTURE(f);
        auto rep = analyze_file(f, {}).report;
        CHECK(rep.bound.has_value() == (rep.verdict == "constant"));
    }
}

TEST_CASE("explain lists the analysis steps") {
    Run r = run({"decide", corpus("example1.loop"), "--explain"});
    CHECK(r.code == 0);
    for (const char* part : {"closed form (n >= 0)", "instantiated guard", "rb: 6", "pi conjuncts",
                             "elimination order:", "final ground system", "esign -1"})
        CHECK(r.out.find(part) != std::string::npos);
}

TEST_CASE("batch over an empty directory") {
    TempDir dir("empty");
    Run r = run({"batch", dir.path.string()});
    CHECK(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "file,verdict,bound,n0,rb,chained,elapsed_ms,message");
    CHECK(l[1].rfind("# summary: files=0 constant=0 nonconstant=0 unsupported=0 error=0", 0) == 0);
}

TEST_CASE("batch records per-file errors without aborting") {
    TempDir dir("mixed");
    dir.write("a_good.loop", "vars x\nguard x > 0 && -x + 3 > 0\nupdate x := x + 1\n");
    dir.write("b_bad.loop", "vars x\nguard x >>= 0\n");
    dir.write("c_rot.loop", "vars x, y\nupdate x := y\nupdate y := -x\n");
    dir.write("notes.txt", "ignored");
    Run r = run({"batch", dir.path.string(), "--jobs", "2"});
    CHECK(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[1].rfind("a_good.loop,constant,3,0,", 0) == 0);
    CHECK(l[2].rfind("b_bad.loop,error,,", 0) == 0);
    CHECK(l[3].rfind("c_rot.loop,unsupported,,", 0) == 0);
    CHECK(l[4].rfind("# summary: files=3 constant=1 nonconstant=0 unsupported=1 error=1", 0) == 0);
}

TEST_CASE("batch is reproducible and sorted") {
    TempDir dir("repro");
    std::string csv = (dir.path / "out.csv").string();
    for (const char* f : {"nilpotent_shift.loop", "count_up.loop", "example1.loop", "drift_window.loop"})
        fs::copy_file(corpus(f), dir.path / f);
    Run a = run({"batch", dir.path.string(), "--jobs", "3"});
    Run b = run({"batch", dir.path.string(), "--jobs", "1", "--csv", csv});
    CHECK(b.out.rfind("# summary", 0) == 0);
    std::ifstream in(csv);
    std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(without_timing(a.out) == without_timing(written));
    auto l = lines(a.out);
    REQUIRE(l.size() == 6);
    CHECK(l[1].rfind("count_up.loop,", 0) == 0);
    CHECK(l[2].rfind("drift_window.loop,", 0) == 0);
    CHECK(l[3].rfind("example1.loop,", 0) == 0);
    CHECK(l[4].rfind("nilpotent_shift.loop,constant,2,2,", 0) == 0);
}

TEST_CASE("simulate") {
    std::string ex1 = corpus("example1.loop");
    Run a = run({"simulate", ex1, "--input", "x=0,y=0", "--steps", "100"});
    CHECK(a.code == 0);
    CHECK(a.out == "halted after 11 iterations\n");
    CHECK(run({"simulate", ex1, "--input", "x=20, y=0"}).out == "halted after 0 iterations\n");
    CHECK(run({"simulate", ex1, "--input", "x=1/1000,y=-1/1200"}).out == "halted after 15 iterations\n");
    Run up = run({"simulate", corpus("count_up.loop"), "--input", "x=0", "--steps", "50"});
    CHECK(up.out == "still running after 50 iterations\n");

    Run missing = run({"simulate", ex1, "--input", "x=1"});
    CHECK(missing.code != 0);
    CHECK(missing.err.find("missing assignment for variable 'y'") != std::string::npos);
    CHECK(run({"simulate", ex1, "--input", "x=1,y=1,z=2"}).code != 0);
    CHECK(run({"simulate", ex1, "--input", "x=1,y=one"}).code != 0);
}

TEST_CASE("oracle") {
    Run nil = run({"oracle", corpus("nilpotent_shift.loop"), "--max-unroll", "10"});
    CHECK(nil.code == 0);
    CHECK(nil.out == "unsatisfiable first at c=2\n");

    TempDir dir("oracle");
    Run down = run({"oracle", dir.write("down.loop", "vars x\nguard x > 0\nupdate x := x - 1\n"), "--max-unroll", "50"});
    CHECK(down.out == "satisfiable through 50\n");

    Run chk = run({"oracle", corpus("example1.loop"), "--check"});
    CHECK(chk.code == 0);
    CHECK(chk.out.find("agree") != std::string::npos);
    CHECK(chk.out.find("ORACLE-MISMATCH") == std::string::npos);

    // nonconstant agrees with an oracle that never finds an unsatisfiable unrolling
    CHECK(run({"oracle", corpus("count_up.loop"), "--max-unroll", "30", "--check"}).code == 0);
}

TEST_CASE("oracle check agrees on the corpus") {
    // The bound is 15, so an oracle limited to depth 5 cannot confirm it but
    // does not contradict it either.
    CHECK(run({"oracle", corpus("example1.loop"), "--max-unroll", "5", "--check"}).code == 0);
    for (const auto& f : corpus_files()) {
        CAPTURE(f);
        CHECK(run({"oracle", f.string(), "--max-unroll", "60", "--check"}).code != 5);
    }
}
