#include "crloop/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "crloop/cli/report.hpp"
#include "crloop/errors.hpp"
#include "crloop/linsat/linsat.hpp"
#include "crloop/loop/parser.hpp"

namespace crl {
namespace fs = std::filesystem;

namespace {

// Parses the file for commands that need the loop itself.
std::optional<Loop> load_loop(const std::string& file, std::ostream& err, int& code) {
    std::ifstream in(file);
    if (!in) {
        err << "error: cannot read " << file << "\n";
        code = kExitFailure;
        return std::nullopt;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_loop(ss.str());
    } catch (const ParseError& e) {
        err << "parse error at " << e.what() << "\n";
        code = kExitParseError;
        return std::nullopt;
    }
}

}  // namespace

int cmd_decide(const std::string& file, const std::string& format, bool explain, std::size_t max_unroll,
               std::ostream& out, std::ostream& err) {
    DecideOptions opt;
    opt.max_unroll = max_unroll;
    AnalysisOutcome res = analyze_file(file, opt);
    if (format == "json") {
        out << to_json(res.report).dump(2) << "\n";
        if (explain && res.verdict) err << render_explanation(*res.verdict);
    } else {
        if (explain && res.verdict) out << render_explanation(*res.verdict);
        out << render_text(res.report) << "\n";
    }
    return res.exit_code;
}

int cmd_batch(const std::string& dir, const std::optional<std::string>& csv_path, unsigned jobs, std::ostream& out,
              std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        err << "error: " << dir << " is not a directory\n";
        return kExitFailure;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".loop") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<AnalysisReport> reports(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < files.size();) reports[i] = analyze_file(files[i], {}).report;
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::map<std::string, std::size_t> counts{{"constant", 0}, {"nonconstant", 0}, {"unsupported", 0}, {"error", 0}};
    long long total_ms = 0;
    std::ostringstream csv;
    csv << csv_header() << "\n";
    for (const auto& r : reports) {
        csv << csv_row(r) << "\n";
        counts[r.verdict]++;
        total_ms += r.elapsed_ms;
    }
    std::ostringstream summary;
    summary << "# summary: files=" << reports.size() << " constant=" << counts["constant"]
            << " nonconstant=" << counts["nonconstant"] << " unsupported=" << counts["unsupported"]
            << " error=" << counts["error"] << " mean_ms="
            << (reports.empty() ? 0.0 : static_cast<double>(total_ms) / static_cast<double>(reports.size()));
    csv << summary.str() << "\n";

    if (csv_path) {
        std::ofstream f(*csv_path);
        if (!f) {
            err << "error: cannot write " << *csv_path << "\n";
            return kExitFailure;
        }
        f << csv.str();
        out << summary.str() << "\n";
    } else {
        out << csv.str();
    }
    return kExitOk;
}

int cmd_simulate(const std::string& file, const std::string& input, std::size_t steps, std::ostream& out,
                 std::ostream& err) {
    int code = kExitOk;
    auto loop = load_loop(file, err, code);
    if (!loop) return code;
    std::map<std::string, Rational> values;
    std::stringstream ss(input);
    for (std::string item; std::getline(ss, item, ',');) {
        auto eq = item.find('=');
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        if (eq == std::string::npos) {
            if (trim(item).empty()) continue;
            err << "error: malformed assignment '" << item << "'\n";
            return kExitFailure;
        }
        std::string name = trim(item.substr(0, eq));
        try {
            values[name] = Rational::parse(item.substr(eq + 1));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitFailure;
        }
        if (std::find(loop->vars.begin(), loop->vars.end(), name) == loop->vars.end()) {
            err << "error: unknown variable '" << name << "'\n";
            return kExitFailure;
        }
    }
    Vector v;
    for (const auto& name : loop->vars) {
        auto it = values.find(name);
        if (it == values.end()) {
            err << "error: missing assignment for variable '" << name << "'\n";
            return kExitFailure;
        }
        v.push_back(it->second);
    }
    SimulationResult r = simulate(*loop, v, steps);
    if (r.halted)
        out << "halted after " << r.steps << " iterations\n";
    else
        out << "still running after " << r.steps << " iterations\n";
    return kExitOk;
}

int cmd_oracle(const std::string& file, std::size_t k, bool check, std::size_t max_unroll, std::ostream& out,
               std::ostream& err) {
    int code = kExitOk;
    auto loop = load_loop(file, err, code);
    if (!loop) return code;
    std::optional<std::size_t> c;
    try {
        c = unroll_oracle(*loop, k);
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    }
    if (c)
        out << "unsatisfiable first at c=" << *c << "\n";
    else
        out << "satisfiable through " << k << "\n";
    if (!check) return kExitOk;

    DecideOptions opt;
    opt.max_unroll = max_unroll;
    AnalysisOutcome res = analyze_file(file, opt);
    out << "decide: " << render_text(res.report) << "\n";
    if (res.exit_code != kExitOk) return res.exit_code;
    const Verdict& v = *res.verdict;
    bool agree;
    if (v.kind == VerdictKind::Constant)
        agree = c ? v.bound == c : (v.bound && *v.bound > k);
    else
        agree = !c;
    if (!agree) {
        out << "ORACLE-MISMATCH\n";
        return kExitOracleMismatch;
    }
    out << "agree\n";
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decides constant runtime of linear single-path loops with real eigenvalues", "crloop"};
    app.require_subcommand(1);

    std::string file, dir, format = "text", input;
    bool explain = false, check = false;
    std::size_t max_unroll = 10000, steps = 1000, oracle_k = 200;
    std::optional<std::string> csv;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* dec = app.add_subcommand("decide", "analyze one loop file");
    dec->add_option("file", file, "loop file")->required();
    dec->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    dec->add_flag("--explain", explain, "print closed form, guard instances and eventual signs");
    dec->add_option("--max-unroll", max_unroll, "unrolling ceiling for the bound");

    auto* bat = app.add_subcommand("batch", "analyze every .loop file in a directory");
    bat->add_option("dir", dir, "directory")->required();
    bat->add_option("--csv", csv, "write CSV here instead of stdout");
    bat->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* sim = app.add_subcommand("simulate", "run the loop on concrete input");
    sim->add_option("file", file, "loop file")->required();
    sim->add_option("--input", input, "assignments, e.g. \"x=1,y=-1/200\"")->required();
    sim->add_option("--steps", steps, "iteration limit");

    auto* ora = app.add_subcommand("oracle", "find the first unsatisfiable unrolling");
    ora->add_option("file", file, "loop file")->required();
    ora->add_option("--max-unroll", oracle_k, "largest unrolling depth to try");
    ora->add_flag("--check", check, "also run decide and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostream& stream = e.get_exit_code() == 0 ? out : err;
        if (e.get_exit_code() == 0)
            stream << app.help();
        else
            stream << e.what() << "\n" << "run with --help for usage\n";
        return e.get_exit_code() == 0 ? kExitOk : kExitFailure;
    }

    if (*dec) return cmd_decide(file, format, explain, max_unroll, out, err);
    if (*bat) return cmd_batch(dir, csv, jobs, out, err);
    if (*sim) return cmd_simulate(file, input, steps, out, err);
    return cmd_oracle(file, oracle_k, check, max_unroll, out, err);
}

}  // namespace crl
