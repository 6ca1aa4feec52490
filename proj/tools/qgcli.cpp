// Command-line front end over the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>

#include "qgroups.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
    std::string algebra;
    std::string from, to;
    int bound = -1;
    int cutoff = -1;
    std::string suite;
    std::string out;
    std::string format = "json";
    std::string cache_dir;
    int jobs = 1;
    bool compare_gamma = false;
    bool recheck_cache = false;
    bool verbose = false;
    std::string lambda, mu;
};

using Ctx = std::unique_ptr<qg_context, decltype(&qg_context_free)>;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

std::string join(const nlohmann::json& a) {
    std::string s;
    for (size_t k = 0; k < a.size(); ++k) s += (k ? " " : "") + std::to_string(a[k].get<int>());
    return s;
}

// Flattened rows: one per nonzero entry (or diff, verify check).
std::string to_csv(const nlohmann::json& doc) {
    std::string s;
    if (doc.contains("checks")) {
        s = "suite,relation,pass,witness\n";
        for (const auto& c : doc["checks"])
            s += csv_field(c["suite"]) + "," + csv_field(c["relation"]) + "," + (c["pass"].get<bool>() ? "pass" : "fail") +
                 "," + csv_field(c.value("witness", "")) + "\n";
        return s;
    }
    s = "weight,m,n,coeff\n";
    for (const auto& b : doc["blocks"])
        for (const auto& e : b["entries"])
            s += join(b["weight"]) + "," + join(e["m"]) + "," + join(e["n"]) + "," + csv_field(e["coeff"]) + "\n";
    if (doc.contains("diff")) {
        s += "\nweight,m,n,psi,gamma\n";
        for (const auto& d : doc["diff"])
            s += join(d["weight"]) + "," + join(d["m"]) + "," + join(d["n"]) + "," + csv_field(d["psi"]) + "," +
                 csv_field(d["gamma"]) + "\n";
    }
    return s;
}

bool emit(const Options& o, const std::string& json) {
    const std::string text = o.format == "csv" ? to_csv(nlohmann::json::parse(json)) : json;
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream f(o.out, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return false;
    }
    return true;
}

int fail_status(qg_context* ctx, qg_status st) {
    std::cerr << "error: " << qg_last_error(ctx) << "\n";
    return st == QG_ERR_INVALID_ARGUMENT ? kUsage : kFailed;
}

void log_line(const char* line, void*) { std::cerr << line << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact PBW transition matrices, Fock intertwiners and verification suites"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("QG_CACHE_DIR")) o.cache_dir = env;

    auto common = [&](CLI::App* c) {
        c->add_option("--algebra", o.algebra, "Cartan type, e.g. A2, B2, G2")->required();
        c->add_option("--bound", o.bound, "Degree bound |m| <= B (default depends on the algebra)")
            ->check(CLI::NonNegativeNumber);
        c->add_option("--out", o.out, "Output path (default stdout)");
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--cache-dir", o.cache_dir, "Root vector cache directory (env QG_CACHE_DIR)");
        c->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
        c->add_flag("--recheck-cache", o.recheck_cache, "Recompute cached root vectors and compare");
        c->add_flag("-v,--verbose", o.verbose, "Log wall time per weight block");
    };
    auto words = [&](CLI::App* c) {
        c->add_option("--from", o.from, "Source reduced word, 1-based, comma-separated")->required();
        c->add_option("--to", o.to, "Target reduced word")->required();
    };

    auto* transition = app.add_subcommand("transition", "PBW transition matrix Gamma(i -> j)");
    common(transition);
    words(transition);
    auto* intertwiner = app.add_subcommand("intertwiner", "Fock space intertwiner Psi(i -> j)");
    common(intertwiner);
    words(intertwiner);
    intertwiner->add_option("--cutoff", o.cutoff, "Fock window cutoff (default: the bound)")
        ->check(CLI::NonNegativeNumber);
    intertwiner->add_flag("--compare-gamma", o.compare_gamma, "Report entries where Psi and Gamma differ");
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    common(verify);
    verify->add_option("--suite", o.suite, "Comma-separated: relations,pairing,braid,rtt,spectra,main2");
    auto* rmatrix = app.add_subcommand("rmatrix", "Constant R-matrix on V(lambda) x V(mu) as JSON");
    common(rmatrix);
    rmatrix->add_option("--lambda", o.lambda, "Highest weight, comma-separated fundamental coordinates")->required();
    rmatrix->add_option("--mu", o.mu, "Second highest weight")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    qg_context* raw = nullptr;
    if (qg_context_new(o.algebra.c_str(), &raw) != QG_OK) {
        std::cerr << "error: unknown algebra '" << o.algebra << "'\n";
        return kUsage;
    }
    Ctx ctx(raw, qg_context_free);
    if (o.bound < 0) o.bound = qg_default_bound(o.algebra.c_str());
    qg_status st = qg_set_jobs(raw, o.jobs);
    if (st == QG_OK) st = qg_set_cache_dir(raw, o.cache_dir.c_str());
    if (st == QG_OK) st = qg_set_recheck_cache(raw, o.recheck_cache ? 1 : 0);
    if (st == QG_OK && o.verbose) st = qg_set_log(raw, log_line, nullptr);
    if (st != QG_OK) return fail_status(raw, st);

    char* text = nullptr;
    int failures = 0;
    if (transition->parsed()) {
        st = qg_transition_json(raw, o.from.c_str(), o.to.c_str(), o.bound, &text);
    } else if (intertwiner->parsed()) {
        st = qg_intertwiner_json(raw, o.from.c_str(), o.to.c_str(), o.bound, o.cutoff, o.compare_gamma ? 1 : 0, &text,
                                 &failures);
    } else if (rmatrix->parsed()) {
        if (o.format == "csv") {
            std::cerr << "error: rmatrix supports JSON output only\n";
            return kUsage;
        }
        st = qg_rmatrix_json(raw, o.lambda.c_str(), o.mu.c_str(), &text);
    } else {
        st = qg_verify_json(raw, o.suite.c_str(), o.bound, &text, &failures);
    }
    if (st != QG_OK) return fail_status(raw, st);
    std::unique_ptr<char, decltype(&qg_string_free)> owned(text, qg_string_free);
    if (!emit(o, text)) return kFailed;
    if (failures > 0) {
        std::cerr << failures << (verify->parsed() ? " check(s) failed\n" : " entries differ\n");
        return kFailed;
    }
    return kOk;
}
