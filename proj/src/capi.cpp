#include "qgroups.h"

#include <cstring>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qg/dpair.hpp"
#include "qg/fockrep.hpp"
#include "qg/rmatrix.hpp"
#include "qg/serialize.hpp"
#include "qg/verify.hpp"

struct qg_context {
    std::string algebra;
    std::shared_ptr<const qg::RootDatum> rd;
    int jobs = 1;
    std::string error;
    qg_log_fn log = nullptr;
    void* log_user = nullptr;
};

namespace {

using nlohmann::ordered_json;

class Usage : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class CacheError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
qg_status guarded(qg_context* ctx, F&& f) {
    if (!ctx) return QG_ERR_NULL_POINTER;
    ctx->error.clear();
    try {
        f();
        if (qg::RootVectorCache::instance().recheck_failures() > 0)
            throw CacheError("cached root vectors differ from recomputation");
        return QG_OK;
    } catch (const CacheError& e) {
        ctx->error = e.what();
        return QG_ERR_CACHE;
    } catch (const std::filesystem::filesystem_error& e) {
        ctx->error = e.what();
        return QG_ERR_CACHE;
    } catch (const std::invalid_argument& e) {
        ctx->error = e.what();
        return QG_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return QG_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

qg::Word reduced_word(const qg_context* ctx, const char* s, const char* what) {
    if (!s) throw Usage(std::string("missing ") + what + " word");
    qg::Word w = qg::parse_word(s);
    for (int x : w)
        if (x >= ctx->rd->rank()) throw Usage(std::string(what) + " word has a node outside 1.." + std::to_string(ctx->rd->rank()));
    if (!ctx->rd->is_reduced_w0(w)) throw Usage(std::string(what) + " word " + s + " is not a reduced word of w0");
    return w;
}

ordered_json one_based(const qg::Word& w) {
    ordered_json a = ordered_json::array();
    for (int x : w) a.push_back(x + 1);
    return a;
}

ordered_json blocks_json(const std::vector<qg::TransitionBlock>& blocks) {
    ordered_json out = ordered_json::array();
    for (const auto& b : blocks) {
        ordered_json entries = ordered_json::array();
        for (size_t r = 0; r < b.source.size(); ++r)
            for (size_t c = 0; c < b.target.size(); ++c)
                if (!b.gamma.at(r, c).is_zero())
                    entries.push_back({{"m", b.source[r]}, {"n", b.target[c]}, {"coeff", b.gamma.at(r, c).to_string()}});
        out.push_back({{"weight", b.weight}, {"entries", entries}});
    }
    return out;
}

void log_blocks(const qg_context* ctx, const char* what, const std::vector<qg::TransitionBlock>& blocks) {
    if (!ctx->log) return;
    for (const auto& b : blocks) {
        std::ostringstream os;
        os << what << " weight (";
        for (size_t k = 0; k < b.weight.size(); ++k) os << (k ? "," : "") << b.weight[k];
        os << ") " << b.source.size() << "x" << b.target.size() << " " << b.seconds << "s";
        ctx->log(os.str().c_str(), ctx->log_user);
    }
}

void check_bound(int bound) {
    if (bound < 0) throw Usage("bound must be nonnegative");
}

qg::Weight parse_weight(const qg_context* ctx, const char* s, const char* what) {
    if (!s) throw Usage(std::string("missing ") + what);
    qg::Weight w;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || v < 0) throw Usage(std::string("bad ") + what + " entry '" + tok + "'");
        w.push_back(v);
    }
    if (static_cast<int>(w.size()) != ctx->rd->rank())
        throw Usage(std::string(what) + " needs " + std::to_string(ctx->rd->rank()) + " coordinates");
    return w;
}

ordered_json header(const qg_context* ctx, const qg::Word& i, const qg::Word& j, int bound) {
    return {{"algebra", ctx->algebra}, {"source", one_based(i)}, {"target", one_based(j)}, {"bound", bound}};
}

}  // namespace

extern "C" {

const char* qg_version(void) { return "1.0.0"; }

int qg_default_bound(const char* algebra) { return algebra ? qg::default_bound(algebra) : 1; }

qg_status qg_context_new(const char* algebra, qg_context** out) {
    if (!algebra || !out) return QG_ERR_NULL_POINTER;
    *out = nullptr;
    try {
        auto ctx = new qg_context;
        ctx->algebra = algebra;
        try {
            ctx->rd = std::make_shared<const qg::RootDatum>(qg::RootDatum::from_name(algebra));
        } catch (...) {
            delete ctx;
            throw;
        }
        *out = ctx;
        return QG_OK;
    } catch (const std::invalid_argument&) {
        return QG_ERR_INVALID_ARGUMENT;
    } catch (...) {
        return QG_ERR_INTERNAL;
    }
}

void qg_context_free(qg_context* ctx) { delete ctx; }

const char* qg_last_error(const qg_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

qg_status qg_set_jobs(qg_context* ctx, int jobs) {
    return guarded(ctx, [&] {
        if (jobs < 1) throw Usage("jobs must be positive");
        ctx->jobs = jobs;
    });
}

qg_status qg_set_cache_dir(qg_context* ctx, const char* dir) {
    return guarded(ctx, [&] { qg::RootVectorCache::instance().set_directory(dir ? dir : ""); });
}

qg_status qg_set_recheck_cache(qg_context* ctx, int on) {
    return guarded(ctx, [&] { qg::RootVectorCache::instance().set_recheck(on != 0); });
}

qg_status qg_set_log(qg_context* ctx, qg_log_fn fn, void* user) {
    return guarded(ctx, [&] {
        ctx->log = fn;
        ctx->log_user = user;
    });
}

qg_status qg_transition_json(qg_context* ctx, const char* from, const char* to, int bound, char** out) {
    return guarded(ctx, [&] {
        if (!out) throw Usage("null output pointer");
        check_bound(bound);
        const qg::Word i = reduced_word(ctx, from, "source"), j = reduced_word(ctx, to, "target");
        const auto blocks = qg::transition_blocks(ctx->rd, i, j, bound, ctx->jobs);
        log_blocks(ctx, "gamma", blocks);
        ordered_json doc = header(ctx, i, j, bound);
        doc["blocks"] = blocks_json(blocks);
        *out = dup(doc.dump(2) + "\n");
    });
}

qg_status qg_intertwiner_json(qg_context* ctx, const char* from, const char* to, int bound, int cutoff,
                              int compare_gamma, char** out, int* diff_count) {
    return guarded(ctx, [&] {
        if (!out) throw Usage("null output pointer");
        check_bound(bound);
        if (cutoff >= 0 && cutoff < bound) throw Usage("cutoff must be at least the bound");
        const qg::Word i = reduced_word(ctx, from, "source"), j = reduced_word(ctx, to, "target");
        const auto psi = qg::psi_blocks(ctx->rd, i, j, bound, ctx->jobs);
        log_blocks(ctx, "psi", psi);
        ordered_json doc = header(ctx, i, j, bound);
        doc["blocks"] = blocks_json(psi);
        int diffs = 0;
        if (compare_gamma) {
            const auto gam = qg::transition_blocks(ctx->rd, i, j, bound, ctx->jobs);
            log_blocks(ctx, "gamma", gam);
            ordered_json diff = ordered_json::array();
            for (size_t k = 0; k < psi.size(); ++k) {
                const auto& a = psi[k];
                const auto& b = gam.at(k);
                if (a.source != b.source || a.target != b.target) throw std::logic_error("block layouts differ");
                for (size_t r = 0; r < a.source.size(); ++r)
                    for (size_t c = 0; c < a.target.size(); ++c)
                        if (a.gamma.at(r, c) != b.gamma.at(r, c))
                            diff.push_back({{"weight", a.weight},
                                            {"m", a.source[r]},
                                            {"n", a.target[c]},
                                            {"psi", a.gamma.at(r, c).to_string()},
                                            {"gamma", b.gamma.at(r, c).to_string()}});
            }
            diffs = static_cast<int>(diff.size());
            doc["diff"] = diff;
        }
        if (diff_count) *diff_count = diffs;
        *out = dup(doc.dump(2) + "\n");
    });
}

qg_status qg_verify_json(qg_context* ctx, const char* suites, int bound, char** out, int* failures) {
    return guarded(ctx, [&] {
        if (!out) throw Usage("null output pointer");
        check_bound(bound);
        std::vector<std::string> names;
        std::stringstream ss(suites ? suites : "");
        for (std::string tok; std::getline(ss, tok, ',');) {
            if (tok.empty()) continue;
            bool known = false;
            for (const auto& n : qg::suite_names()) known = known || n == tok;
            if (!known) throw Usage("unknown suite '" + tok + "'");
            names.push_back(tok);
        }
        ordered_json checks = ordered_json::array();
        int failed = 0;
        for (const auto& s : names)
            for (const auto& c : qg::run_suite(s, ctx->rd, bound, ctx->jobs)) {
                ordered_json e = {{"suite", s}, {"relation", c.relation}, {"pass", c.pass}};
                if (!c.pass) {
                    e["witness"] = c.witness;
                    ++failed;
                }
                checks.push_back(e);
            }
        ordered_json doc = {{"algebra", ctx->algebra}, {"bound", bound}, {"checks", checks}};
        if (failures) *failures = failed;
        *out = dup(doc.dump(2) + "\n");
    });
}

qg_status qg_rmatrix_json(qg_context* ctx, const char* lambda, const char* mu, char** out) {
    return guarded(ctx, [&] {
        if (!out) throw Usage("null output pointer");
        const qg::Weight l = parse_weight(ctx, lambda, "lambda"), m = parse_weight(ctx, mu, "mu");
        auto v = std::make_shared<const qg::FinModule>(qg::FinModule::highest_weight(ctx->rd, l));
        auto w = std::make_shared<const qg::FinModule>(qg::FinModule::highest_weight(ctx->rd, m));
        ordered_json doc = {{"algebra", ctx->algebra}};
        doc.update(qg::constant_r_json(qg::constant_r(v, w, ctx->rd->w0_word())));
        *out = dup(doc.dump(2) + "\n");
    });
}

void qg_string_free(char* s) { std::free(s); }

}  // extern "C"
