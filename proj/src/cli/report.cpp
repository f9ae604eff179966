#include "crloop/cli/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "crloop/errors.hpp"
#include "crloop/loop/parser.hpp"

namespace crl {

AnalysisOutcome analyze_text(const std::string& name, const std::string& text, const DecideOptions& options) {
    AnalysisOutcome out;
    AnalysisReport& r = out.report;
    r.file = name;
    auto start = std::chrono::steady_clock::now();
    try {
        Loop loop = parse_loop(text);
        Verdict v = decide(loop, options);
        r.verdict = v.kind == VerdictKind::Constant ? "constant" : "nonconstant";
        r.bound = v.bound;
        r.n0 = v.trace.n0;
        r.rb = v.trace.rb;
        r.chained = v.trace.chained;
        out.verdict = std::move(v);
    } catch (const ParseError& e) {
        r.verdict = "error";
        r.message = std::string("parse error at ") + e.what();
        out.exit_code = kExitParseError;
    } catch (const UnsupportedLoop& e) {
        r.verdict = "unsupported";
        r.message = e.what();
        out.exit_code = kExitUnsupported;
    } catch (const ResourceLimit& e) {
        r.verdict = "error";
        r.message = std::string("resource limit: ") + e.what();
        out.exit_code = kExitResourceLimit;
    } catch (const std::exception& e) {
        r.verdict = "error";
        r.message = std::string("internal error: ") + e.what();
        out.exit_code = kExitFailure;
    }
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return out;
}

AnalysisOutcome analyze_file(const std::filesystem::path& path, const DecideOptions& options) {
    std::ifstream in(path);
    if (!in) {
        AnalysisOutcome out;
        out.report.file = path.filename().string();
        out.report.verdict = "error";
        out.report.message = "cannot read " + path.string();
        out.exit_code = kExitFailure;
        return out;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return analyze_text(path.filename().string(), ss.str(), options);
}

nlohmann::json to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["file"] = r.file;
    j["verdict"] = r.verdict;
    j["bound"] = r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr);
    j["n0"] = r.n0;
    j["rb"] = r.rb;
    j["chained"] = r.chained;
    j["elapsed_ms"] = r.elapsed_ms;
    j["message"] = r.message;
    return j;
}

AnalysisReport report_from_json(const nlohmann::json& j) {
    AnalysisReport r;
    r.file = j.at("file").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    if (!j.at("bound").is_null()) r.bound = j.at("bound").get<std::size_t>();
    r.n0 = j.at("n0").get<std::size_t>();
    r.rb = j.at("rb").get<unsigned long>();
    r.chained = j.at("chained").get<bool>();
    r.elapsed_ms = j.at("elapsed_ms").get<long long>();
    r.message = j.at("message").get<std::string>();
    return r;
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    if (r.verdict == "constant" || r.verdict == "nonconstant") {
        os << (r.verdict == "constant" ? "CONSTANT" : "NONCONSTANT");
        if (r.bound) os << " bound=" << *r.bound;
        os << " n0=" << r.n0 << " rb=" << r.rb;
        if (r.chained) os << " chained";
    } else if (r.verdict == "unsupported") {
        os << "UNSUPPORTED: " << r.message;
    } else {
        os << "ERROR: " << r.message;
    }
    return os.str();
}

std::string render_explanation(const Verdict& v) {
    const Trace& t = v.trace;
    std::ostringstream os;
    os << "chained: " << (t.chained ? "yes" : "no") << "\n";
    os << "closed form (n >= " << t.n0 << "):\n";
    for (std::size_t i = 0; i < t.closed_form.vars.size(); ++i)
        os << "  " << t.closed_form.vars[i] << " = " << t.closed_form.cl[i].str() << "\n";
    os << "instantiated guard:\n";
    for (const auto& c : t.psi) os << "  " << c.t.str() << (c.rel == Rel::Gt ? " > 0" : " >= 0") << "\n";
    os << "rb: " << t.rb << "\n";
    os << "pi conjuncts: " << t.pi_size << "\n";
    os << "elimination order:";
    for (const auto& x : t.elimination_order) os << " " << x;
    os << "\npeak conjuncts: " << t.peak_conjuncts << "\n";
    os << "final ground system (" << t.ground.size() << (t.ground.size() == 1 ? " conjunct" : " conjuncts") << "):\n";
    for (const auto& q : t.ground) os << "  esign " << esign(q.lhs.constant) << ": " << q.str() << "\n";
    return os.str();
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
}

}  // namespace

std::string csv_header() { return "file,verdict,bound,n0,rb,chained,elapsed_ms,message"; }

std::string csv_row(const AnalysisReport& r) {
    std::ostringstream os;
    os << csv_field(r.file) << ',' << r.verdict << ',' << (r.bound ? std::to_string(*r.bound) : "") << ',' << r.n0
       << ',' << r.rb << ',' << (r.chained ? "true" : "false") << ',' << r.elapsed_ms << ',' << csv_field(r.message);
    return os.str();
}

}  // namespace crl
