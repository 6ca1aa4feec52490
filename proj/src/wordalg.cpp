#include "qg/wordalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qg {

RootVec word_content(const Word& w, int rank) {
    RootVec c(static_cast<size_t>(rank), 0);
    for (int i : w) c[static_cast<size_t>(i)] += 1;
    return c;
}

std::vector<Word> words_of_content(const RootVec& content) {
    Word w;
    for (size_t i = 0; i < content.size(); ++i)
        for (int k = 0; k < content[i]; ++k) w.push_back(static_cast<int>(i));
    std::vector<Word> out;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

WordPoly WordPoly::one(std::shared_ptr<const RootDatum> rd, Side side) { return word(std::move(rd), side, {}); }

WordPoly WordPoly::generator(std::shared_ptr<const RootDatum> rd, Side side, int i) {
    return word(std::move(rd), side, {i});
}

WordPoly WordPoly::word(std::shared_ptr<const RootDatum> rd, Side side, const Word& w, Scalar c) {
    WordPoly p(std::move(rd), side);
    p.add_term(w, c);
    return p;
}

bool WordPoly::is_undressed() const {
    for (const auto& [k, c] : terms_)
        for (int x : k.first)
            if (x != 0) return false;
    return true;
}

void WordPoly::add_term(const RootVec& dress, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    RootVec d = dress;
    d.resize(static_cast<size_t>(rd_->rank()), 0);
    auto [it, inserted] = terms_.try_emplace(Key{d, w}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void WordPoly::add_term(const Word& w, const Scalar& c) { add_term(RootVec(static_cast<size_t>(rd_->rank()), 0), w, c); }

WordPoly& WordPoly::operator+=(const WordPoly& o) {
    if (o.side_ != side_) throw std::invalid_argument("adding word polynomials of different sides");
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

WordPoly& WordPoly::operator-=(const WordPoly& o) { return *this += o.scaled(Scalar(-1)); }

WordPoly WordPoly::scaled(const Scalar& s) const {
    WordPoly r(rd_, side_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
}

WordPoly operator*(const WordPoly& a, const WordPoly& b) {
    if (a.side_ != b.side_) throw std::invalid_argument("multiplying word polynomials of different sides");
    const RootDatum& rd = *a.rd_;
    const int n = rd.rank();
    WordPoly r(a.rd_, a.side_);
    for (const auto& [ka, ca] : a.terms_) {
        RootVec ca_content = word_content(ka.second, n);
        for (const auto& [kb, cb] : b.terms_) {
            // X k^g = q^{-(g, wt X)} k^g X for e-words, q^{+(g, |X|)} for f-words
            int e = rd.inner_roots(kb.first, ca_content);
            if (a.side_ == Side::E) e = -e;
            RootVec d = ka.first;
            for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] += kb.first[static_cast<size_t>(i)];
            Word w = ka.second;
            w.insert(w.end(), kb.second.begin(), kb.second.end());
            r.add_term(d, w, ca * cb * Scalar::q_pow(e));
        }
    }
    return r;
}

WordPoly WordPoly::pow(int n) const {
    WordPoly r = one(rd_, side_);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
}

RootVec WordPoly::weight() const {
    if (terms_.empty()) throw std::logic_error("weight of zero polynomial");
    RootVec c = word_content(terms_.begin()->first.second, rd_->rank());
    for (const auto& [k, v] : terms_)
        if (word_content(k.second, rd_->rank()) != c) throw std::logic_error("inhomogeneous word polynomial");
    return c;
}

WordPoly WordPoly::star() const {
    WordPoly r(rd_, side_);
    for (const auto& [k, c] : terms_) {
        Word w(k.second.rbegin(), k.second.rend());
        RootVec nd = k.first;
        for (auto& x : nd) x = -x;
        // X* k^{-b} = q^{s (b, |X|)} k^{-b} X* with s = +1 for e, -1 for f
        int e = rd_->inner_roots(k.first, word_content(w, rd_->rank()));
        if (side_ == Side::F) e = -e;
        r.add_term(nd, w, c * Scalar::q_pow(e));
    }
    return r;
}

WordPoly WordPoly::omega() const {
    WordPoly r(rd_, side_ == Side::E ? Side::F : Side::E);
    for (const auto& [k, c] : terms_) {
        RootVec nd = k.first;
        for (auto& x : nd) x = -x;
        r.add_term(nd, k.second, c);
    }
    return r;
}

WordPoly qboson_fprime(int i, const WordPoly& x) {
    if (x.side() != Side::E || !x.is_undressed())
        throw std::invalid_argument("qboson_fprime acts on undressed e-polynomials");
    const RootDatum& rd = x.root_datum();
    WordPoly r(x.root_datum_ptr(), Side::E);
    for (const auto& [k, c] : x.terms()) {
        const Word& w = k.second;
        int h = 0;  // <h_i, weight of prefix>
        for (size_t t = 0; t < w.size(); ++t) {
            if (w[t] == i) {
                Word rest = w;
                rest.erase(rest.begin() + static_cast<long>(t));
                r.add_term(rest, c * Scalar::q_pow(-static_cast<long>(rd.d(i)) * h));
            }
            h += rd.cartan(i, w[t]);
        }
    }
    return r;
}

WordPoly serre_element(std::shared_ptr<const RootDatum> rd, Side side, int i, int j) {
    const int n = 1 - rd->cartan(i, j);
    const int di = rd->d(i);
    WordPoly r(rd, side);
    for (int s = 0; s <= n; ++s) {
        // e_i^{(n-s)} e_j e_i^{(s)}
        Word w(static_cast<size_t>(n - s), i);
        w.push_back(j);
        w.insert(w.end(), static_cast<size_t>(s), i);
        Scalar c = Scalar(s % 2 ? -1 : 1) / (q_fact(n - s, di) * q_fact(s, di));
        r.add_term(w, c);
    }
    return r;
}

}  // namespace qg
