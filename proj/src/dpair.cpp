#include "qg/dpair.hpp"

#include <chrono>
#include <stdexcept>

#include "qg/parallel.hpp"

namespace qg {

DrinfeldPairing& DrinfeldPairing::for_datum(std::shared_ptr<const RootDatum> rd) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<DrinfeldPairing>> all;
    std::lock_guard<std::mutex> lock(mu);
    auto& p = all[rd->name()];
    if (!p) p = std::make_unique<DrinfeldPairing>(rd);
    return *p;
}

Scalar DrinfeldPairing::prefactor(const RootVec& content) const {
    Scalar c(1);
    for (int i = 0; i < rd_->rank(); ++i) {
        Scalar d = Scalar::q_pow(rd_->d(i)) - Scalar::q_pow(-rd_->d(i));
        for (int t = 0; t < content[static_cast<size_t>(i)]; ++t) c /= d;
    }
    return c;
}

const std::map<Word, Scalar>& DrinfeldPairing::raw(const Word& w) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
    }
    std::map<Word, Scalar> out;
    if (w.empty()) {
        out.emplace(Word{}, Scalar(1));
    } else {
        // (e_i X', Y) = sum over positions t with y_t = i of q^{-(alpha_i, wt y_1..y_{t-1})} (X', Y without t)
        const int i = w[0];
        const Word rest(w.begin() + 1, w.end());
        const auto& sub = raw(rest);
        for (const auto& [y, c] : sub) {
            long e = 0;
            for (size_t t = 0; t <= y.size(); ++t) {
                Word z = y;
                z.insert(z.begin() + static_cast<long>(t), i);
                Scalar v = c * Scalar::q_pow(-e);
                auto [it, fresh] = out.try_emplace(z, v);
                if (!fresh) it->second += v;
                if (t < y.size()) e += static_cast<long>(rd_->d(i)) * rd_->cartan(i, y[t]);
            }
        }
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.emplace(w, std::move(out)).first->second;
}

Scalar DrinfeldPairing::pair(const WordPoly& x, const WordPoly& y) {
    if (x.side() != Side::E || y.side() != Side::F) throw std::invalid_argument("pair expects (e-side, f-side)");
    Scalar total;
    for (const auto& [kx, cx] : x.terms()) {
        const RootVec content = word_content(kx.second, rd_->rank());
        const auto& g = raw(kx.second);
        for (const auto& [ky, cy] : y.terms()) {
            if (word_content(ky.second, rd_->rank()) != content) continue;
            auto it = g.find(ky.second);
            if (it == g.end()) continue;
            // (k^b X, k^c Y) = q^{(b, c)} (X, Y)
            total += cx * cy * it->second * prefactor(content) * Scalar::q_pow(rd_->inner_roots(kx.first, ky.first));
        }
    }
    return total;
}

GramVector DrinfeldPairing::gram_vector(const WordPoly& x, const RootVec& content) {
    if (!x.is_undressed()) throw std::invalid_argument("gram_vector needs an undressed polynomial");
    GramVector gv;
    gv.content = content;
    gv.words = words_of_content(content);
    gv.values.assign(gv.words.size(), Scalar());
    std::map<Word, size_t> pos;
    for (size_t k = 0; k < gv.words.size(); ++k) pos.emplace(gv.words[k], k);
    const Scalar pf = prefactor(content);
    for (const auto& [k, c] : x.terms()) {
        if (word_content(k.second, rd_->rank()) != content) throw std::invalid_argument("gram_vector: inhomogeneous input");
        for (const auto& [y, v] : raw(k.second)) gv.values[pos.at(y)] += c * v;
    }
    for (auto& v : gv.values)
        if (!v.is_zero()) v *= pf;
    return gv;
}

Vec DrinfeldPairing::coords_in_basis(const WordPoly& x, const std::vector<WordPoly>& basis) {
    if (basis.empty()) {
        if (x.is_zero()) return {};
        throw std::domain_error("element outside the span of an empty basis");
    }
    const RootVec content = basis[0].weight();
    IncrementalBasis ib(words_of_content(content).size());
    for (const auto& b : basis)
        if (!ib.add(gram_vector(b, content).values)) throw std::invalid_argument("coords_in_basis: dependent basis");
    auto c = ib.express(gram_vector(x, content).values);
    if (!c) throw std::domain_error("coords_in_basis: element outside the span");
    return *c;
}

WordPoly antipode(const WordPoly& x) {
    auto rd = x.root_datum_ptr();
    const int n = rd->rank();
    WordPoly out(rd, x.side());
    for (const auto& [k, c] : x.terms()) {
        // S(k^b w_1 ... w_n) = S(w_n) ... S(w_1) k^{-b}
        WordPoly t = WordPoly::one(rd, x.side());
        for (size_t p = k.second.size(); p-- > 0;) {
            const int i = k.second[p];
            WordPoly g = WordPoly::generator(rd, x.side(), i);
            WordPoly kk(rd, x.side());
            RootVec a = rd->simple_root(i);
            if (x.side() == Side::E)
                for (auto& v : a) v = -v;
            kk.add_term(a, {}, Scalar(-1));
            t = x.side() == Side::F ? t * (g * kk) : t * (kk * g);
        }
        WordPoly kb(rd, x.side());
        RootVec nb = k.first;
        for (auto& v : nb) v = -v;
        nb.resize(static_cast<size_t>(n), 0);
        kb.add_term(nb, {}, c);
        out += t * kb;
    }
    return out;
}

namespace {

std::vector<WordPoly> pbw_basis(std::shared_ptr<const RootDatum> rd, const Word& j, const std::vector<MultiIndex>& ns) {
    std::vector<WordPoly> out;
    for (const auto& n : ns) out.push_back(pbw_monomial(rd, j, n, Family::PrimePlus));
    return out;
}

}  // namespace

std::map<MultiIndex, Scalar> transition_gamma(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                              const MultiIndex& m) {
    if (!rd->is_reduced_w0(i) || !rd->is_reduced_w0(j)) throw std::invalid_argument("words must be reduced words of w0");
    const RootVec gamma = multi_index_weight(rd->root_sequence(i), m);
    const auto ns = multi_indices_of_weight(rd->root_sequence(j), gamma);
    auto& dp = DrinfeldPairing::for_datum(rd);
    Vec c = dp.coords_in_basis(pbw_monomial(rd, i, m, Family::PrimePlus), pbw_basis(rd, j, ns));
    std::map<MultiIndex, Scalar> out;
    for (size_t k = 0; k < ns.size(); ++k)
        if (!c[k].is_zero()) out.emplace(ns[k], c[k]);
    return out;
}

std::vector<TransitionBlock> transition_blocks(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                               int bound, int jobs) {
    if (!rd->is_reduced_w0(i) || !rd->is_reduced_w0(j)) throw std::invalid_argument("words must be reduced words of w0");
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    const auto bi = rd->root_sequence(i), bj = rd->root_sequence(j);
    std::map<RootVec, std::vector<MultiIndex>> by_weight;
    std::vector<RootVec> order;
    for (const auto& m : multi_indices_up_to(i.size(), bound)) {
        RootVec w = multi_index_weight(bi, m);
        auto [it, fresh] = by_weight.try_emplace(w);
        if (fresh) order.push_back(w);
        it->second.push_back(m);
    }
    auto& dp = DrinfeldPairing::for_datum(rd);
    std::vector<TransitionBlock> out(order.size());
    parallel_for(order.size(), jobs, [&](size_t ix) {
        const auto t0 = std::chrono::steady_clock::now();
        const RootVec& w = order[ix];
        TransitionBlock& b = out[ix];
        b.weight = w;
        b.source = by_weight.at(w);
        b.target = multi_indices_of_weight(bj, w);
        b.gamma = Matrix(b.source.size(), b.target.size());
        IncrementalBasis ib(words_of_content(w).size());
        for (const auto& x : pbw_basis(rd, j, b.target))
            if (!ib.add(dp.gram_vector(x, w).values)) throw std::logic_error("PBW monomials are dependent");
        for (size_t a = 0; a < b.source.size(); ++a) {
            auto c = ib.express(dp.gram_vector(pbw_monomial(rd, i, b.source[a], Family::PrimePlus), w).values);
            if (!c) throw std::logic_error("PBW monomial outside the span of the target basis");
            for (size_t k = 0; k < c->size(); ++k) b.gamma.at(a, k) = (*c)[k];
        }
        b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    return out;
}

LeftMulBlock leftmul_matrix(std::shared_ptr<const RootDatum> rd, const Word& i, int gen, const RootVec& gamma) {
    const auto betas = rd->root_sequence(i);
    LeftMulBlock b;
    b.cols = multi_indices_of_weight(betas, gamma);
    RootVec up = gamma;
    up[static_cast<size_t>(gen)] += 1;
    b.rows = multi_indices_of_weight(betas, up);
    b.rho = Matrix(b.rows.size(), b.cols.size());
    auto& dp = DrinfeldPairing::for_datum(rd);
    IncrementalBasis ib(words_of_content(up).size());
    for (const auto& x : pbw_basis(rd, i, b.rows))
        if (!ib.add(dp.gram_vector(x, up).values)) throw std::logic_error("PBW monomials are dependent");
    const WordPoly e = WordPoly::generator(rd, Side::E, gen);
    for (size_t c = 0; c < b.cols.size(); ++c) {
        auto v = ib.express(dp.gram_vector(e * pbw_monomial(rd, i, b.cols[c], Family::PrimePlus), up).values);
        if (!v) throw std::logic_error("product outside the PBW span");
        b.rho.set_col(c, *v);
    }
    return b;
}

Scalar lusztig_diagonal(const RootDatum& rd, const Word& i, const MultiIndex& m) {
    Scalar r(1);
    for (size_t k = 0; k < m.size(); ++k) {
        const int d = rd.d(i[k]);
        const long mk = m[k];
        Scalar qd = Scalar::q_pow(d) - Scalar::q_pow(-d);
        r *= Scalar::q_pow(-d * mk * (mk - 1) / 2) * q_fact(mk, d) / qd.pow(mk);
    }
    return r;
}

}  // namespace qg
