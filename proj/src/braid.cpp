#include <filesystem>
#include <fstream>
#include <mutex>

#include "qg/repmod.hpp"
#include "qg/serialize.hpp"

namespace qg {

namespace {

Scalar qi_pow(const RootDatum& rd, int i, long e) { return Scalar::q_pow(static_cast<long>(rd.d(i)) * e); }

MVec apply_f_div(const FinModule& m, int i, int k, MVec v) {
    for (int t = 0; t < k && !v.parts.empty(); ++t) v = m.apply_f(i, v);
    return v.scaled(Scalar(1) / q_fact(k, m.root_datum().d(i)));
}

MVec apply_e_div(const FinModule& m, int i, int k, MVec v) {
    for (int t = 0; t < k && !v.parts.empty(); ++t) v = m.apply_e(i, v);
    return v.scaled(Scalar(1) / q_fact(k, m.root_datum().d(i)));
}

}  // namespace

// ---------------------------------------------------------------- S_i by sl2 strings

const Matrix& FinModule::s_block(int i, int sign, size_t s) const {
    auto key = std::make_tuple(i, sign, s);
    {
        std::lock_guard<std::mutex> lock(scache_->mu);
        auto it = scache_->blocks.find(key);
        if (it != scache_->blocks.end()) return *it->second;
    }
    const RootDatum& rd = *rd_;
    const int di = rd.d(i);
    const int n = spaces_[s].wt[static_cast<size_t>(i)];
    Weight tw = rd.reflect(i, spaces_[s].wt);
    auto t = find(tw);
    if (!t) throw TruncationError("S_i target weight space lies beyond the truncation");
    Matrix out(spaces_[*t].dim, spaces_[s].dim);
    for (size_t b = 0; b < spaces_[s].dim; ++b) {
        MVec r = basis_vector(s, b);
        int top = 0;
        for (MVec x = apply_e(i, r); !x.is_zero(); x = apply_e(i, x)) ++top;
        MVec res;
        for (int k = top; k >= 0; --k) {
            const int l = n + 2 * k;
            MVec w = apply_e_div(*this, i, k, r);
            if (w.is_zero()) continue;
            w = w.scaled(Scalar(1) / q_binom(l, k, di));
            r -= apply_f_div(*this, i, k, w);
            const int j = l - k;
            Scalar c = sign > 0 ? Scalar(j % 2 ? -1 : 1) * Scalar::q_pow(static_cast<long>(di) * j * (k + 1))
                                : Scalar(k % 2 ? -1 : 1) * Scalar::q_pow(-static_cast<long>(di) * k * (j + 1));
            res += apply_f_div(*this, i, j, w).scaled(c);
        }
        if (!r.is_zero()) throw std::logic_error("sl2 string decomposition left a remainder");
        auto it = res.parts.find(*t);
        if (it != res.parts.end()) out.set_col(b, it->second);
    }
    std::lock_guard<std::mutex> lock(scache_->mu);
    auto& slot = scache_->blocks[key];
    if (!slot) slot = std::make_unique<Matrix>(std::move(out));
    return *slot;
}

MVec s_op_strings(const FinModule& m, int i, int sign, const MVec& v) {
    const RootDatum& rd = m.root_datum();
    MVec r;
    for (const auto& [s, x] : v.parts) {
        if (is_zero(x)) continue;
        const Matrix& b = m.s_block(i, sign, s);
        MVec part;
        part.parts.emplace(*m.find(rd.reflect(i, m.space(s).wt)), b.apply(x));
        r += part;
    }
    return r;
}

MVec s_op_right(const FinModule& m, int i, int sign, const MVec& phi) {
    const RootDatum& rd = m.root_datum();
    MVec r;
    for (const auto& [t, y] : phi.parts) {
        if (is_zero(y)) continue;
        auto s = m.find(rd.reflect(i, m.space(t).wt));
        if (!s) throw TruncationError("S_i source weight space lies beyond the truncation");
        const Matrix& b = m.s_block(i, sign, *s);
        MVec part;
        part.parts.emplace(*s, b.apply_transpose(y));
        r += part;
    }
    return r;
}

// ---------------------------------------------------------------- S_i as a product of q-exponentials

namespace {

// exp_Q(c X) v = sum_k Q^{k(k-1)/2} c^k X^k v / [k]_i!, X = e_i k_i^{p} (p = 0 means e_i alone) or f_i.
MVec q_exp(const FinModule& m, int i, Side side, int kpow, const Scalar& c, long qexp, const MVec& v) {
    const RootDatum& rd = m.root_datum();
    const RootVec ai = rd.simple_root(i);
    RootVec kb = ai;
    for (auto& x : kb) x *= kpow;
    MVec res = v;
    MVec y = v;
    for (int k = 1;; ++k) {
        if (kpow != 0) y = m.apply_k(kb, y);
        y = side == Side::E ? m.apply_e(i, y) : m.apply_f(i, y);
        if (y.is_zero()) break;
        y = y.scaled(c);
        Scalar coef = qi_pow(rd, i, qexp * k * (k - 1) / 2) / q_fact(k, rd.d(i));
        res += y.scaled(coef);
    }
    return res;
}

MVec diag(const FinModule& m, int i, int sign, const MVec& v) {
    const RootDatum& rd = m.root_datum();
    MVec r = v;
    for (auto& [s, x] : r.parts) {
        const long h = m.space(s).wt[static_cast<size_t>(i)];
        Scalar c = qi_pow(rd, i, sign * h * (h + 1) / 2);
        for (auto& y : x)
            if (!y.is_zero()) y *= c;
    }
    return r;
}

}  // namespace

MVec s_op(const FinModule& m, int i, int sign, const MVec& v) {
    if (m.truncated()) throw std::invalid_argument("exponential S_i needs an untruncated module");
    const RootDatum& rd = m.root_datum();
    const Scalar qi = qi_pow(rd, i, 1), qim = qi_pow(rd, i, -1);
    if (sign > 0) {
        MVec x = diag(m, i, +1, v);
        x = q_exp(m, i, Side::E, 1, qi, -1, x);
        x = q_exp(m, i, Side::F, 0, Scalar(-1), -1, x);
        return q_exp(m, i, Side::E, -1, qim, -1, x);
    }
    MVec x = q_exp(m, i, Side::E, -1, -qim, 1, v);
    x = q_exp(m, i, Side::F, 0, Scalar(1), 1, x);
    x = q_exp(m, i, Side::E, 1, -qi, 1, x);
    return diag(m, i, -1, x);
}

MVec s_word(const FinModule& m, const Word& w, int sign, const MVec& v) {
    MVec r = v;
    if (sign > 0) {
        for (size_t k = w.size(); k-- > 0;) r = s_op_strings(m, w[k], +1, r);
    } else {
        for (int i : w) r = s_op_strings(m, i, -1, r);
    }
    return r;
}

MVec s_word_right(const FinModule& m, const Word& w, int sign, const MVec& phi) {
    MVec r = phi;
    if (sign > 0) {
        for (int i : w) r = s_op_right(m, i, +1, r);
    } else {
        for (size_t k = w.size(); k-- > 0;) r = s_op_right(m, w[k], -1, r);
    }
    return r;
}

MVec lowest_vector(const FinModule& m, const Word& w0) { return s_word(m, w0, -1, m.top_vector()); }

MVec lowest_covector(const FinModule& m, const Word& w0) { return s_word_right(m, w0, +1, m.top_vector()); }

// ---------------------------------------------------------------- braid conjugation

Weight faithful_lambda(const RootVec& gamma) {
    Weight l = gamma;
    bool any = false;
    for (int c : l) any |= c > 0;
    if (!any) l[0] = 1;
    return l;
}

WordPoly braid_direct(std::shared_ptr<const RootDatum> rd, Side side, int j, int l) {
    if (j == l) throw std::invalid_argument("braid_direct needs distinct nodes");
    const int a = -rd->cartan(j, l);
    const int dj = rd->d(j);
    WordPoly r(rd, side);
    for (int s = 0; s <= a; ++s) {
        Word w;
        Scalar c = Scalar(s % 2 ? -1 : 1) / (q_fact(a - s, dj) * q_fact(s, dj));
        if (side == Side::E) {
            // e_j^{(a-s)} e_l e_j^{(s)}
            w.assign(static_cast<size_t>(a - s), j);
            w.push_back(l);
            w.insert(w.end(), static_cast<size_t>(s), j);
            c *= Scalar::q_pow(-static_cast<long>(dj) * s);
        } else {
            // f_j^{(s)} f_l f_j^{(a-s)}
            w.assign(static_cast<size_t>(s), j);
            w.push_back(l);
            w.insert(w.end(), static_cast<size_t>(a - s), j);
            c *= Scalar::q_pow(static_cast<long>(dj) * s);
        }
        r.add_term(w, c);
    }
    return r;
}

WordPoly braid_step(int j, const WordPoly& x) {
    if (!x.is_undressed()) throw std::invalid_argument("braid_step needs an undressed polynomial");
    auto rdp = x.root_datum_ptr();
    const RootDatum& rd = *rdp;
    if (x.is_zero()) return x;
    const RootVec gamma = x.weight();
    const RootVec beta = rd.reflect_root(j, gamma);
    for (int c : beta)
        if (c < 0) throw std::invalid_argument("braid_step leaves the positive half");
    const Weight lambda = faithful_lambda(beta);
    const int depth = std::max(lambda[static_cast<size_t>(j)] + rd.height(gamma), rd.height(beta));
    const FinModule m = FinModule::highest_weight(rdp, lambda, depth);
    Weight target = lambda;
    {
        Weight bw = rd.root_to_weight(beta);
        for (size_t k = 0; k < target.size(); ++k) target[k] -= bw[k];
    }
    const auto ts = m.find(target);
    if (!ts) throw std::logic_error("braid_step: target weight space missing");
    const size_t dim = m.space(*ts).dim;
    auto part_at = [&](const MVec& v) {
        for (const auto& [s, y] : v.parts)
            if (s != *ts && !is_zero(y)) throw std::logic_error("braid_step: result is not homogeneous");
        auto it = v.parts.find(*ts);
        return it == v.parts.end() ? Vec(dim) : it->second;
    };
    const MVec top = m.top_vector();
    Vec r;
    std::vector<Vec> images;
    const std::vector<Word> words = words_of_content(beta);
    if (x.side() == Side::F) {
        MVec u = s_op_strings(m, j, -1, top);
        u = m.apply_poly(x, u);
        r = part_at(s_op_strings(m, j, +1, u));
        for (const Word& w : words) images.push_back(part_at(m.apply_word(Side::F, w, top)));
    } else {
        MVec phi = s_op_right(m, j, +1, top);
        phi = m.right_poly(x, phi);
        r = part_at(s_op_right(m, j, -1, phi));
        for (const Word& w : words) images.push_back(part_at(m.right_word(Side::E, w, top)));
    }
    IncrementalBasis basis(dim);
    std::vector<size_t> chosen;
    for (size_t k = 0; k < images.size(); ++k)
        if (basis.add(images[k])) chosen.push_back(k);
    auto c = basis.express(r);
    if (!c) throw std::logic_error("braid_step: image outside the span of words");
    WordPoly out(rdp, x.side());
    for (size_t k = 0; k < chosen.size(); ++k) out.add_term(words[chosen[k]], (*c)[k]);
    return out;
}

namespace {

WordPoly braid_root_vector(std::shared_ptr<const RootDatum> rd, const Word& i, int k, Side side) {
    if (k < 0 || k >= static_cast<int>(i.size())) throw std::out_of_range("root vector index out of range");
    WordPoly x = WordPoly::generator(rd, side, i[static_cast<size_t>(k)]);
    for (int s = k - 1; s >= 0; --s) x = braid_step(i[static_cast<size_t>(s)], x);
    return x;
}

}  // namespace

WordPoly braid_root_vector_f(std::shared_ptr<const RootDatum> rd, const Word& i, int k) {
    return braid_root_vector(std::move(rd), i, k, Side::F);
}

WordPoly braid_root_vector_e(std::shared_ptr<const RootDatum> rd, const Word& i, int k) {
    return braid_root_vector(std::move(rd), i, k, Side::E);
}

// ---------------------------------------------------------------- cache

namespace {
std::recursive_mutex& cache_mutex() {
    static std::recursive_mutex mu;
    return mu;
}
}  // namespace

RootVectorCache& RootVectorCache::instance() {
    static RootVectorCache c;
    return c;
}

void RootVectorCache::set_directory(const std::string& dir) {
    std::lock_guard<std::recursive_mutex> lock(cache_mutex());
    if (dir != dir_) mem_.clear();
    dir_ = dir;
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

void RootVectorCache::set_recheck(bool on) {
    std::lock_guard<std::recursive_mutex> lock(cache_mutex());
    if (on && !recheck_) mem_.clear();
    recheck_ = on;
}

void RootVectorCache::clear_memory() {
    std::lock_guard<std::recursive_mutex> lock(cache_mutex());
    mem_.clear();
}

WordPoly RootVectorCache::get(std::shared_ptr<const RootDatum> rd, const Word& i, int k, char family) {
    if (family != 'e' && family != 'f') throw std::invalid_argument("root vector family must be 'e' or 'f'");
    const Side side = family == 'e' ? Side::E : Side::F;
    std::string key = rd->name() + "_";
    // Only the prefix up to position k matters.
    for (int t = 0; t <= k && t < static_cast<int>(i.size()); ++t) key += std::to_string(i[static_cast<size_t>(t)] + 1);
    key += family;
    std::lock_guard<std::recursive_mutex> lock(cache_mutex());
    auto it = mem_.find(key);
    if (it != mem_.end()) return it->second;
    std::optional<WordPoly> loaded;
    std::filesystem::path file;
    if (!dir_.empty()) {
        file = std::filesystem::path(dir_) / (key + ".json");
        std::ifstream in(file);
        if (in) {
            try {
                loaded = wordpoly_from_json(rd, side, nlohmann::json::parse(in));
            } catch (const std::exception&) {
                loaded.reset();
            }
        }
    }
    WordPoly x(rd, side);
    if (loaded && !recheck_) {
        x = *loaded;
    } else {
        x = braid_root_vector(rd, i, k, side);
        if (loaded && !(*loaded == x)) ++recheck_failures_;
        if (!dir_.empty()) {
            std::filesystem::path tmp = file;
            tmp += ".tmp";
            {
                std::ofstream out(tmp);
                out << wordpoly_to_json(x).dump() << "\n";
            }
            std::filesystem::rename(tmp, file);
        }
    }
    mem_.emplace(key, x);
    return x;
}

// ---------------------------------------------------------------- PBW monomials

std::vector<WordPoly> root_vectors(std::shared_ptr<const RootDatum> rd, const Word& i, Family fam) {
    auto& cache = RootVectorCache::instance();
    std::vector<WordPoly> out;
    for (int k = 0; k < static_cast<int>(i.size()); ++k) {
        switch (fam) {
            case Family::PrimePlus: out.push_back(cache.get(rd, i, k, 'f').omega()); break;
            case Family::DoublePrimePlus: out.push_back(cache.get(rd, i, k, 'e')); break;
            case Family::DoublePrimeMinus: out.push_back(cache.get(rd, i, k, 'f').omega().star()); break;
            case Family::PrimeMinus: out.push_back(cache.get(rd, i, k, 'e').star()); break;
        }
    }
    return out;
}

WordPoly pbw_monomial(std::shared_ptr<const RootDatum> rd, const Word& i, const MultiIndex& m, Family fam, Side side) {
    if (m.size() != i.size()) throw std::invalid_argument("multi-index length differs from the word length");
    const bool minus = fam == Family::DoublePrimeMinus || fam == Family::PrimeMinus;
    const Family base = fam == Family::DoublePrimeMinus ? Family::PrimePlus
                        : fam == Family::PrimeMinus    ? Family::DoublePrimePlus
                                                       : fam;
    std::vector<WordPoly> roots = root_vectors(rd, i, base);
    WordPoly x = WordPoly::one(rd, Side::E);
    for (size_t k = 0; k < m.size(); ++k)
        if (m[k] > 0) x = x * roots[k].pow(m[k]);
    if (minus) x = x.star();
    return side == Side::E ? x : x.omega();
}

namespace {

void enum_weight(const std::vector<RootVec>& betas, size_t k, RootVec rest, MultiIndex& cur,
                 std::vector<MultiIndex>& out) {
    if (k == betas.size()) {
        for (int c : rest)
            if (c != 0) return;
        out.push_back(cur);
        return;
    }
    for (int e = 0;; ++e) {
        bool ok = true;
        for (int c : rest) ok &= c >= 0;
        if (!ok) break;
        cur[k] = e;
        enum_weight(betas, k + 1, rest, cur, out);
        for (size_t t = 0; t < rest.size(); ++t) rest[t] -= betas[k][t];
    }
    cur[k] = 0;
}

void enum_bound(size_t n, size_t k, int left, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (k == n) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= left; ++e) {
        cur[k] = e;
        enum_bound(n, k + 1, left - e, cur, out);
    }
    cur[k] = 0;
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_weight(const std::vector<RootVec>& betas, const RootVec& gamma) {
    std::vector<MultiIndex> out;
    MultiIndex cur(betas.size(), 0);
    enum_weight(betas, 0, gamma, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(size_t n, int bound) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n, 0);
    enum_bound(n, 0, bound, cur, out);
    return out;
}

RootVec multi_index_weight(const std::vector<RootVec>& betas, const MultiIndex& m) {
    RootVec w(betas.empty() ? 0 : betas[0].size(), 0);
    for (size_t k = 0; k < m.size(); ++k)
        for (size_t t = 0; t < w.size(); ++t) w[t] += m[k] * betas[k][t];
    return w;
}

// ---------------------------------------------------------------- matrix coefficients

namespace {

struct Term {
    Scalar c;
    std::vector<MVec> vs;
};

}  // namespace

Scalar mco_eval(const std::vector<MatrixCoefficient>& factors, const Monomial& p) {
    const size_t n = factors.size();
    if (n == 0) return counit(p);
    const RootDatum& rd = factors[0].module->root_datum();
    std::vector<Term> terms{Term{Scalar(1), {}}};
    for (const auto& f : factors) terms[0].vs.push_back(f.u);
    auto mod = [&](size_t t) -> const FinModule& { return *factors[t].module; };
    // Delta(e_i) = sum_t k_i^{(x t)} (x) e_i (x) 1...; rightmost letter first
    for (size_t l = p.e.size(); l-- > 0;) {
        const int i = p.e[l];
        const RootVec ai = rd.simple_root(i);
        std::vector<Term> next;
        for (const auto& term : terms) {
            for (size_t t = 0; t < n; ++t) {
                Term nt{term.c, term.vs};
                nt.vs[t] = mod(t).apply_e(i, nt.vs[t]);
                if (nt.vs[t].is_zero()) continue;
                for (size_t s = 0; s < t; ++s) nt.vs[s] = mod(s).apply_k(ai, nt.vs[s]);
                next.push_back(std::move(nt));
            }
        }
        terms = std::move(next);
        if (terms.empty()) return Scalar();
    }
    for (auto& term : terms)
        for (size_t t = 0; t < n; ++t) term.vs[t] = mod(t).apply_k(p.beta, term.vs[t]);
    // Delta(f_i) = sum_t 1 (x) ... f_i (x) k_i^{-1} ...
    for (size_t l = p.f.size(); l-- > 0;) {
        const int i = p.f[l];
        RootVec ai = rd.simple_root(i);
        for (auto& x : ai) x = -x;
        std::vector<Term> next;
        for (const auto& term : terms) {
            for (size_t t = 0; t < n; ++t) {
                Term nt{term.c, term.vs};
                nt.vs[t] = mod(t).apply_f(i, nt.vs[t]);
                if (nt.vs[t].is_zero()) continue;
                for (size_t s = t + 1; s < n; ++s) nt.vs[s] = mod(s).apply_k(ai, nt.vs[s]);
                next.push_back(std::move(nt));
            }
        }
        terms = std::move(next);
        if (terms.empty()) return Scalar();
    }
    Scalar total;
    for (const auto& term : terms) {
        Scalar prod = term.c;
        for (size_t t = 0; t < n && !prod.is_zero(); ++t) prod *= mod(t).pairing(factors[t].v, term.vs[t]);
        total += prod;
    }
    return total;
}

Scalar counit(const Monomial& p) { return p.f.empty() && p.e.empty() ? Scalar(1) : Scalar(); }

namespace {

void all_words(int rank, int len, Word& cur, std::vector<Word>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int i = 0; i < rank; ++i) {
        cur.push_back(i);
        all_words(rank, len, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Monomial> triangular_monomials(int rank, int degree, const std::vector<RootVec>& betas) {
    std::vector<std::vector<Word>> by_len(static_cast<size_t>(degree) + 1);
    for (int l = 0; l <= degree; ++l) {
        Word cur;
        all_words(rank, l, cur, by_len[static_cast<size_t>(l)]);
    }
    std::vector<Monomial> out;
    for (int lf = 0; lf <= degree; ++lf)
        for (int le = 0; lf + le <= degree; ++le)
            for (const auto& f : by_len[static_cast<size_t>(lf)])
                for (const auto& e : by_len[static_cast<size_t>(le)])
                    for (const auto& b : betas) out.push_back(Monomial{f, b, e});
    return out;
}

}  // namespace qg
