#include "qg/fockrep.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qg/parallel.hpp"

namespace qg {

// ---------------------------------------------------------------- vectors

void fock_add(FockVec& x, const MultiIndex& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = x.try_emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
}

void fock_axpy(FockVec& y, const Scalar& a, const FockVec& x) {
    if (a.is_zero()) return;
    for (const auto& [m, c] : x) fock_add(y, m, a * c);
}

FockVec fock_scaled(const FockVec& x, const Scalar& c) {
    FockVec r;
    fock_axpy(r, c, x);
    return r;
}

bool fock_equal(const FockVec& a, const FockVec& b) {
    FockVec d = a;
    fock_axpy(d, Scalar(-1), b);
    return d.empty();
}

// ---------------------------------------------------------------- rank one

std::vector<std::pair<int, Scalar>> pi_sl2_t(int a, int b, int d, int m) {
    if (a < 1 || a > 2 || b < 1 || b > 2) throw std::invalid_argument("t_{ab} index out of range");
    if (a == 1 && b == 1) {
        if (m == 0) return {};
        return {{m - 1, Scalar(1) - Scalar::q_pow(2L * d * m)}};
    }
    if (a == 1) return {{m, Scalar::q_pow(static_cast<long>(d) * m)}};
    if (b == 1) return {{m, -Scalar::q_pow(static_cast<long>(d) * (m + 1))}};
    return {{m + 1, Scalar(1)}};
}

namespace {

using Letters = std::vector<int>;

void poly_add(SL2Poly& p, const Letters& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = p.terms.try_emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) p.terms.erase(it);
}

// Left action of f through Delta(f) = f x k^{-1} + 1 x f; f t_{a1} = t_{a2}, k^{-1} t_{ab} = q^{-wt u_b} t_{ab}.
SL2Poly left_f(const SL2Poly& p) {
    SL2Poly r;
    for (const auto& [w, c] : p.terms) {
        for (size_t pos = 0; pos < w.size(); ++pos) {
            if (w[pos] % 2 != 0) continue;
            long e = 0;
            for (size_t r2 = pos + 1; r2 < w.size(); ++r2) e -= (w[r2] % 2 == 0) ? 1 : -1;
            Letters x = w;
            x[pos] += 1;
            poly_add(r, x, c * Scalar::q_pow(e));
        }
    }
    return r;
}

// Right action of e through Delta(e) = e x 1 + k x e; t_{1b} e = t_{2b}, t_{ab} k = q^{wt v_a} t_{ab}.
SL2Poly right_e(const SL2Poly& p) {
    SL2Poly r;
    for (const auto& [w, c] : p.terms) {
        for (size_t pos = 0; pos < w.size(); ++pos) {
            if (w[pos] / 2 != 0) continue;
            long e = 0;
            for (size_t r2 = 0; r2 < pos; ++r2) e += (w[r2] / 2 == 0) ? 1 : -1;
            Letters x = w;
            x[pos] += 2;
            poly_add(r, x, c * Scalar::q_pow(e));
        }
    }
    return r;
}

SL2Poly poly_scaled(const SL2Poly& p, const Scalar& s) {
    SL2Poly r;
    for (const auto& [w, c] : p.terms) poly_add(r, w, c * s);
    return r;
}

std::mutex& sl2_mutex() {
    static std::mutex mu;
    return mu;
}

const std::vector<std::pair<int, Scalar>>& sl2_apply_memo(int l, int s, int t, int d, int m) {
    static std::map<std::tuple<int, int, int, int, int>, std::vector<std::pair<int, Scalar>>> memo;
    const auto key = std::make_tuple(l, s, t, d, m);
    {
        std::lock_guard<std::mutex> lk(sl2_mutex());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    auto v = sl2_poly_apply(sl2_mco_poly(l, s, t), d, m);
    std::lock_guard<std::mutex> lk(sl2_mutex());
    return memo.emplace(key, std::move(v)).first->second;
}

std::string format_index(const MultiIndex& m) {
    std::string s = "(";
    for (size_t k = 0; k < m.size(); ++k) s += (k ? "," : "") + std::to_string(m[k]);
    return s + ")";
}

}  // namespace

SL2Poly sl2_mco_poly(int l, int s, int t) {
    if (l < 0 || s < 0 || t < 0 || s > l || t > l) throw std::invalid_argument("sl2 matrix coefficient index out of range");
    static std::map<std::tuple<int, int, int>, SL2Poly> memo;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find({l, s, t});
        if (it != memo.end()) return it->second;
    }
    SL2Poly p;
    p.terms.emplace(Letters(static_cast<size_t>(l), 0), Scalar(1));
    for (int k = 0; k < t; ++k) p = left_f(p);
    for (int k = 0; k < s; ++k) p = right_e(p);
    p = poly_scaled(p, Scalar(1) / (q_fact(t) * q_fact(s) * q_binom(l, s)));
    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(std::make_tuple(l, s, t), p);
    return p;
}

std::vector<std::pair<int, Scalar>> sl2_poly_apply(const SL2Poly& p, int d, int m) {
    std::map<int, Scalar> out;
    for (const auto& [w, c] : p.terms) {
        int cur = m;
        Scalar coef = c.dilate(d);
        bool dead = false;
        for (auto it = w.rbegin(); it != w.rend() && !dead; ++it) {
            auto r = pi_sl2_t(*it / 2 + 1, *it % 2 + 1, d, cur);
            if (r.empty() || r[0].second.is_zero()) {
                dead = true;
                break;
            }
            cur = r[0].first;
            coef *= r[0].second;
        }
        if (dead) continue;
        out[cur] += coef;
    }
    std::vector<std::pair<int, Scalar>> r;
    for (auto& [n, c] : out)
        if (!c.is_zero()) r.emplace_back(n, std::move(c));
    return r;
}

// ---------------------------------------------------------------- operators

FockOperator::FockOperator(Fn fn, RootVec shift) : memo_(std::make_shared<Memo>()), shift_(std::move(shift)) {
    memo_->fn = std::move(fn);
}

FockVec FockOperator::apply(const MultiIndex& m) const {
    if (!memo_) return {};
    {
        std::lock_guard<std::mutex> lk(memo_->mu);
        auto it = memo_->cache.find(m);
        if (it != memo_->cache.end()) return it->second;
    }
    FockVec r = memo_->fn(m);
    std::lock_guard<std::mutex> lk(memo_->mu);
    memo_->cache.emplace(m, r);
    return r;
}

FockVec FockOperator::apply(const FockVec& x) const {
    FockVec r;
    for (const auto& [m, c] : x) fock_axpy(r, c, apply(m));
    return r;
}

namespace {

RootVec sum_shift(const RootVec& a, const RootVec& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    RootVec r = a;
    for (size_t k = 0; k < r.size(); ++k) r[k] += b[k];
    return r;
}

const RootVec& common_shift(const RootVec& a, const RootVec& b) {
    if (a.empty()) return b;
    if (!b.empty() && a != b) throw std::invalid_argument("sum of Fock operators with different weight shifts");
    return a;
}

}  // namespace

FockOperator FockOperator::operator*(const FockOperator& o) const {
    FockOperator a = *this, b = o;
    return FockOperator([a, b](const MultiIndex& m) { return a.apply(b.apply(m)); }, sum_shift(shift_, o.shift_));
}

FockOperator FockOperator::operator+(const FockOperator& o) const {
    FockOperator a = *this, b = o;
    return FockOperator(
        [a, b](const MultiIndex& m) {
            FockVec r = a.apply(m);
            fock_axpy(r, Scalar(1), b.apply(m));
            return r;
        },
        common_shift(shift_, o.shift_));
}

FockOperator FockOperator::operator-(const FockOperator& o) const { return *this + o.scaled(Scalar(-1)); }

FockOperator FockOperator::scaled(const Scalar& c) const {
    FockOperator a = *this;
    return FockOperator([a, c](const MultiIndex& m) { return fock_scaled(a.apply(m), c); }, shift_);
}

FockOperator FockOperator::diagonal_inverse() const {
    FockOperator a = *this;
    RootVec s = shift_;
    for (auto& x : s) x = -x;
    return FockOperator(
        [a](const MultiIndex& m) {
            FockVec r = a.apply(m);
            if (r.size() != 1 || r.begin()->first != m)
                throw std::domain_error("operator is not diagonal at " + format_index(m));
            return FockVec{{m, r.begin()->second.inv()}};
        },
        s);
}

FockOperator FockOperator::identity(size_t rank) {
    return FockOperator([](const MultiIndex& m) { return FockVec{{m, Scalar(1)}}; }, RootVec(rank, 0));
}

// ---------------------------------------------------------------- contraction

// Basis of V(lambda) adapted to the sl2_i strings for each node i, with the
// inverse change of basis, and the transfer matrices between consecutive nodes of the word.
struct FockSpace::Contractor {
    struct Col {
        size_t string;
        int pos;
        int len;
    };
    struct NodeBasis {
        std::vector<Matrix> c, cinv;             // per space: columns are string vectors
        std::vector<std::vector<Col>> cols;      // per space
        std::map<std::pair<size_t, int>, std::pair<size_t, size_t>> where;  // (string, pos) -> (space, col)
    };

    std::shared_ptr<const FinModule> v;
    std::vector<NodeBasis> nodes;
    std::vector<std::vector<Matrix>> transfer;  // transfer[k][space] = cinv(word[k-1]) * c(word[k])
};


// ---------------------------------------------------------------- Fock space

FockSpace::FockSpace(std::shared_ptr<const RootDatum> rd, Word word, std::vector<int> cutoffs)
    : rd_(std::move(rd)), word_(std::move(word)), cutoffs_(std::move(cutoffs)) {
    if (!rd_->is_reduced_w0(word_)) throw std::invalid_argument("Fock space needs a reduced word of w0");
    if (cutoffs_.size() != word_.size()) throw std::invalid_argument("one cutoff per tensor factor expected");
    for (int c : cutoffs_)
        if (c < 0) throw std::invalid_argument("cutoffs must be nonnegative");
    betas_ = rd_->root_sequence(word_);
}

FockSpace::FockSpace(std::shared_ptr<const RootDatum> rd, Word word, int cutoff)
    : FockSpace(rd, word, std::vector<int>(word.size(), cutoff)) {}

bool FockSpace::in_window(const MultiIndex& m) const {
    if (m.size() != word_.size()) return false;
    for (size_t k = 0; k < m.size(); ++k)
        if (m[k] < 0 || m[k] > cutoffs_[k]) return false;
    return true;
}

std::vector<MultiIndex> FockSpace::window(int total) const {
    std::vector<MultiIndex> r;
    for (auto& m : multi_indices_up_to(word_.size(), total))
        if (in_window(m)) r.push_back(std::move(m));
    return r;
}

std::vector<MultiIndex> FockSpace::window_of_weight(const RootVec& gamma) const {
    std::vector<MultiIndex> r;
    for (auto& m : multi_indices_of_weight(betas_, gamma))
        if (in_window(m)) r.push_back(std::move(m));
    return r;
}

std::shared_ptr<const FinModule> FockSpace::module(const Weight& lambda) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->modules.find(lambda);
        if (it != cache_->modules.end()) return it->second;
    }
    auto m = std::make_shared<const FinModule>(FinModule::highest_weight(rd_, lambda));
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->modules.emplace(lambda, m).first->second;
}

std::shared_ptr<const FockSpace::Contractor> FockSpace::contractor(const Weight& lambda) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->contractors.find(lambda);
        if (it != cache_->contractors.end()) return it->second;
    }
    auto ct = std::make_shared<Contractor>();
    ct->v = module(lambda);
    const FinModule& V = *ct->v;
    const size_t ns = V.num_spaces();
    ct->nodes.resize(static_cast<size_t>(rd_->rank()));
    for (int i = 0; i < rd_->rank(); ++i) {
        auto& nb = ct->nodes[static_cast<size_t>(i)];
        std::vector<std::vector<Vec>> columns(ns);
        nb.cols.assign(ns, {});
        size_t string = 0;
        for (size_t s = 0; s < ns; ++s) {
            std::vector<Vec> tops;
            const size_t dim = V.space(s).dim;
            if (const Matrix* e = V.e_block(i, s)) {
                tops = nullspace(*e);
            } else {
                for (size_t k = 0; k < dim; ++k) {
                    Vec x(dim);
                    x[k] = Scalar(1);
                    tops.push_back(std::move(x));
                }
            }
            const int len = V.space(s).wt[static_cast<size_t>(i)];
            for (const auto& top : tops) {
                MVec w;
                w.parts.emplace(s, top);
                for (int p = 0; p <= len; ++p) {
                    if (p > 0) w = V.apply_f(i, w).scaled(Scalar(1) / q_int(p, rd_->d(i)));
                    if (w.parts.size() != 1) throw std::logic_error("sl2 string leaves a weight space");
                    const size_t sp = w.parts.begin()->first;
                    nb.where[{string, p}] = {sp, columns[sp].size()};
                    nb.cols[sp].push_back({string, p, len});
                    columns[sp].push_back(w.parts.begin()->second);
                }
                ++string;
            }
        }
        nb.c.resize(ns);
        nb.cinv.resize(ns);
        for (size_t s = 0; s < ns; ++s) {
            const size_t dim = V.space(s).dim;
            if (columns[s].size() != dim) throw std::logic_error("sl2 strings do not span a weight space");
            Matrix c(dim, dim);
            for (size_t k = 0; k < dim; ++k) c.set_col(k, columns[s][k]);
            nb.cinv[s] = inverse(c);
            nb.c[s] = std::move(c);
        }
    }
    ct->transfer.resize(word_.size());
    for (size_t k = 1; k < word_.size(); ++k) {
        const auto& a = ct->nodes[static_cast<size_t>(word_[k - 1])];
        const auto& b = ct->nodes[static_cast<size_t>(word_[k])];
        for (size_t s = 0; s < ns; ++s) ct->transfer[k].push_back(a.cinv[s] * b.c[s]);
    }
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->contractors.emplace(lambda, ct).first->second;
}

namespace {

// The single weight of a weight vector (as a space index), or nullopt for zero.
std::optional<size_t> weight_space_of(const MVec& x) {
    std::optional<size_t> s;
    for (const auto& [k, part] : x.parts) {
        if (is_zero(part)) continue;
        if (s) throw std::invalid_argument("matrix coefficient needs weight vectors");
        s = k;
    }
    return s;
}

RootVec weight_as_root(const RootDatum& rd, const Weight& w) {
    auto c = rd.weight_to_root(w);
    RootVec r(c.size());
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k].get_den() != 1) throw std::logic_error("weight outside the root lattice");
        r[k] = static_cast<int>(c[k].get_num().get_si());
    }
    return r;
}

}  // namespace

FockOperator FockSpace::mco_op(const Weight& lambda, const MVec& v, const MVec& u) const {
    auto ct = contractor(lambda);
    const FinModule& V = *ct->v;
    auto sv = weight_space_of(v), su = weight_space_of(u);
    if (!sv || !su) return FockOperator();
    // Weight shift (lambda - xi) + (w0 lambda - nu).
    Weight sh(static_cast<size_t>(rd_->rank()));
    const Weight w0l = rd_->w0_weight(lambda);
    for (size_t k = 0; k < sh.size(); ++k)
        sh[k] = lambda[k] - V.space(*sv).wt[k] + w0l[k] - V.space(*su).wt[k];
    const RootVec shift = weight_as_root(*rd_, sh);

    const Word word = word_;
    std::vector<int> ds;
    for (int i : word) ds.push_back(rd_->d(i));
    const size_t sv_ = *sv, su_ = *su;
    const Vec vpart = v.parts.at(sv_);
    const Vec ucoord = ct->nodes[static_cast<size_t>(word.back())].cinv[su_].apply(u.parts.at(su_));

    auto fn = [ct, word, ds, sv_, su_, vpart, ucoord](const MultiIndex& m) {
        using Key = std::tuple<size_t, size_t, MultiIndex>;  // (space, column, prefix)
        std::map<Key, Scalar> state;
        const size_t n = word.size();
        auto push = [&](std::map<Key, Scalar>& out, const Contractor::NodeBasis& nb, size_t sp, size_t col,
                        const Scalar& a, size_t k, const MultiIndex& prefix) {
            const auto& info = nb.cols[sp][col];
            for (int t = 0; t <= info.len; ++t) {
                const auto& res = sl2_apply_memo(info.len, info.pos, t, ds[k], m[k]);
                if (res.empty()) continue;
                const auto [sp2, col2] = nb.where.at({info.string, t});
                for (const auto& [nk, x] : res) {
                    MultiIndex p = prefix;
                    p.push_back(nk);
                    auto& slot = out[Key(sp2, col2, std::move(p))];
                    slot += a * x;
                }
            }
        };
        {
            const auto& nb = ct->nodes[static_cast<size_t>(word[0])];
            const Matrix& c = nb.c[sv_];
            for (size_t col = 0; col < c.cols(); ++col) {
                Scalar a;
                for (size_t r = 0; r < c.rows(); ++r)
                    if (!vpart[r].is_zero() && !c.at(r, col).is_zero()) a += vpart[r] * c.at(r, col);
                if (!a.is_zero()) push(state, nb, sv_, col, a, 0, {});
            }
        }
        for (size_t k = 1; k < n; ++k) {
            std::map<Key, Scalar> next;
            const auto& nb = ct->nodes[static_cast<size_t>(word[k])];
            for (const auto& [key, coef] : state) {
                if (coef.is_zero()) continue;
                const auto& [sp, col, prefix] = key;
                const Matrix& tr = ct->transfer[k][sp];
                for (size_t c2 = 0; c2 < tr.cols(); ++c2) {
                    const Scalar& b = tr.at(col, c2);
                    if (!b.is_zero()) push(next, nb, sp, c2, coef * b, k, prefix);
                }
            }
            state = std::move(next);
        }
        FockVec out;
        for (const auto& [key, coef] : state) {
            const auto& [sp, col, prefix] = key;
            if (sp != su_ || coef.is_zero()) continue;
            fock_add(out, prefix, coef * ucoord[col]);
        }
        return out;
    };
    return FockOperator(fn, shift);
}

FockOperator FockSpace::sigma(const Weight& lambda) const {
    auto V = module(lambda);
    return mco_op(lambda, V->top_vector(), lowest_vector(*V, word_));
}

FockOperator FockSpace::tau(const Weight& lambda) const {
    Weight dual = rd_->w0_weight(lambda);
    for (auto& x : dual) x = -x;
    auto V = module(dual);
    return mco_op(dual, lowest_covector(*V, word_), V->top_vector());
}

FockOperator FockSpace::sigma_e(int i) const {
    const Weight l = rd_->fundamental(i);
    auto V = module(l);
    return mco_op(l, V->right_e(i, V->top_vector()), lowest_vector(*V, word_));
}

FockOperator FockSpace::tau_f(int i) const {
    const Weight l = rd_->fundamental(rd_->w0_dual(i));
    auto V = module(l);
    return mco_op(l, V->right_f(i, lowest_covector(*V, word_)), V->top_vector());
}

FockOperator FockSpace::b_plus(int i) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->ops.find({'+', i});
        if (it != cache_->ops.end()) return it->second;
    }
    const Scalar qi2 = Scalar::q_pow(2L * rd_->d(i));
    FockOperator b = (sigma_e(i) * sigma(rd_->fundamental(i)).diagonal_inverse()).scaled(Scalar(1) / (Scalar(1) - qi2));
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->ops.emplace(std::make_pair('+', i), b).first->second;
}

FockOperator FockSpace::b_minus(int i) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->ops.find({'-', i});
        if (it != cache_->ops.end()) return it->second;
    }
    const Scalar qi2 = Scalar::q_pow(2L * rd_->d(i));
    FockOperator b = (tau_f(i) * tau(rd_->fundamental(i)).diagonal_inverse()).scaled(-qi2);
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->ops.emplace(std::make_pair('-', i), b).first->second;
}

// ---------------------------------------------------------------- closed forms

Scalar sigma_eigenvalue(const FockSpace& F, const Weight& lambda, const MultiIndex& m) {
    long e = 0;
    for (size_t k = 0; k < m.size(); ++k) e += static_cast<long>(m[k]) * F.root_datum().inner(F.betas()[k], lambda);
    return Scalar::q_pow(e);
}

Scalar tau_eigenvalue(const FockSpace& F, const Weight& lambda, const MultiIndex& m) {
    const RootDatum& rd = F.root_datum();
    long two_rho = 0, two_rho_dual = 0;
    for (const auto& b : rd.positive_roots()) {
        const int ip = rd.inner(b, lambda);
        two_rho += ip;
        two_rho_dual += 2L * ip / rd.inner_roots(b, b);
    }
    Scalar s = sigma_eigenvalue(F, lambda, m) * Scalar::q_pow(two_rho);
    return two_rho_dual % 2 ? -s : s;
}

namespace {

FockVec factorized(const FockSpace& F, const std::vector<int>& exps, int a, int b, const MultiIndex& m) {
    MultiIndex out = m;
    Scalar c(1);
    for (size_t k = 0; k < m.size(); ++k) {
        const int d = F.root_datum().d(F.word()[k]);
        for (int r = 0; r < exps[k]; ++r) {
            auto x = pi_sl2_t(a, b, d, out[k]);
            out[k] = x.at(0).first;
            c *= x.at(0).second;
        }
    }
    return FockVec{{out, c}};
}

}  // namespace

FockVec sigma_factorized(const FockSpace& F, const Weight& lambda, const MultiIndex& m) {
    std::vector<int> exps;
    Weight mu = lambda;
    for (int i : F.word()) {
        exps.push_back(mu[static_cast<size_t>(i)]);
        mu = F.root_datum().reflect(i, mu);
    }
    return factorized(F, exps, 1, 2, m);
}

FockVec tau_factorized(const FockSpace& F, const Weight& lambda, const MultiIndex& m) {
    Weight mu = F.root_datum().w0_weight(lambda);
    for (auto& x : mu) x = -x;
    std::vector<int> exps(F.size());
    for (size_t k = F.size(); k-- > 0;) {
        const int i = F.word()[k];
        exps[k] = mu[static_cast<size_t>(i)];
        mu = F.root_datum().reflect(i, mu);
    }
    return factorized(F, exps, 2, 1, m);
}

// ---------------------------------------------------------------- normalized basis

Scalar normalization(const FockSpace& F, const MultiIndex& m) {
    Scalar s(1);
    for (size_t k = 0; k < m.size(); ++k) {
        const long d = F.root_datum().d(F.word()[k]);
        const long mk = m[k];
        s *= Scalar::q_pow(-d * mk * (mk - 1) / 2) / (Scalar(1) - Scalar::q_pow(2 * d)).pow(mk);
    }
    return s;
}

FockVec to_normalized(const FockSpace& F, const FockVec& x) {
    FockVec r;
    for (const auto& [m, c] : x) fock_add(r, m, c / normalization(F, m));
    return r;
}

FockVec from_normalized(const FockSpace& F, const FockVec& x) {
    FockVec r;
    for (const auto& [m, c] : x) fock_add(r, m, c * normalization(F, m));
    return r;
}

FockVec apply_eword(const FockSpace& F, const WordPoly& x) {
    if (x.side() != Side::E) throw std::invalid_argument("apply_eword needs an e-side polynomial");
    const MultiIndex vac(F.size(), 0);
    std::map<Word, FockVec> memo;
    memo[Word{}] = FockVec{{vac, Scalar(1)}};
    std::function<const FockVec&(const Word&)> image = [&](const Word& w) -> const FockVec& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        Word rest(w.begin() + 1, w.end());
        FockVec r = F.b_plus(w[0]).apply(image(rest));
        return memo.emplace(w, std::move(r)).first->second;
    };
    FockVec out;
    for (const auto& [key, c] : x.terms()) {
        for (int b : key.first)
            if (b != 0) throw std::invalid_argument("apply_eword needs an undressed polynomial");
        fock_axpy(out, c, image(key.second));
    }
    return to_normalized(F, out);
}

std::map<MultiIndex, Scalar> psi_matrix(const FockSpace& Fj, const Word& i, const MultiIndex& m) {
    return apply_eword(Fj, pbw_monomial(Fj.root_datum_ptr(), i, m, Family::PrimePlus));
}

std::map<MultiIndex, Scalar> psi_matrix(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                        const MultiIndex& m) {
    FockSpace F(rd, j, 0);
    return psi_matrix(F, i, m);
}

std::vector<TransitionBlock> psi_blocks(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
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
    FockSpace F(rd, j, bound);
    std::vector<TransitionBlock> out(order.size());
    parallel_for(order.size(), jobs, [&](size_t ix) {
        const auto t0 = std::chrono::steady_clock::now();
        const RootVec& w = order[ix];
        TransitionBlock& b = out[ix];
        b.weight = w;
        b.source = by_weight.at(w);
        b.target = multi_indices_of_weight(bj, w);
        b.gamma = Matrix(b.source.size(), b.target.size());
        for (size_t a = 0; a < b.source.size(); ++a) {
            auto psi = psi_matrix(F, i, b.source[a]);
            for (size_t k = 0; k < b.target.size(); ++k) {
                auto it = psi.find(b.target[k]);
                if (it != psi.end()) b.gamma.at(a, k) = it->second;
                if (it != psi.end()) psi.erase(it);
            }
            if (!psi.empty()) throw std::logic_error("intertwiner image leaves its weight block");
        }
        b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    return out;
}

// ---------------------------------------------------------------- verification

namespace {

using VecFn = std::function<FockVec(const MultiIndex&)>;

RelationCheck compare(const std::string& name, const std::vector<MultiIndex>& window, const VecFn& lhs,
                      const VecFn& rhs) {
    RelationCheck r{name, true, ""};
    for (const auto& m : window) {
        FockVec d = lhs(m);
        fock_axpy(d, Scalar(-1), rhs(m));
        if (d.empty()) continue;
        r.pass = false;
        std::ostringstream os;
        os << "at " << format_index(m) << ": residual coefficient " << d.begin()->second << " on "
           << format_index(d.begin()->first);
        r.witness = os.str();
        break;
    }
    return r;
}

VecFn op_fn(const FockOperator& a) {
    return [a](const MultiIndex& m) { return a.apply(m); };
}

// a b - c b a
VecFn commutator(const FockOperator& a, const FockOperator& b, const Scalar& c) {
    return [a, b, c](const MultiIndex& m) {
        FockVec r = a.apply(b.apply(m));
        fock_axpy(r, -c, b.apply(a.apply(m)));
        return r;
    };
}

VecFn zero_fn() {
    return [](const MultiIndex&) { return FockVec{}; };
}

FockVec divided_power(const FockOperator& b, int r, int d, FockVec x) {
    for (int k = 0; k < r; ++k) x = b.apply(x);
    return fock_scaled(x, Scalar(1) / q_fact(r, d));
}

Scalar q_rat_pow(const mpq_class& e) {
    if (e.get_den() != 1) throw std::logic_error("non-integral q exponent");
    return Scalar::q_pow(e.get_num().get_si());
}

std::string node(int i) { return std::to_string(i + 1); }

}  // namespace

std::vector<RelationCheck> verify_relations(const FockSpace& F, int total) {
    const RootDatum& rd = F.root_datum();
    const int n = rd.rank();
    const auto win = F.window(total);
    std::vector<RelationCheck> out;
    std::vector<FockOperator> sig, tau, bp, bm;
    for (int i = 0; i < n; ++i) {
        sig.push_back(F.sigma(rd.fundamental(i)));
        tau.push_back(F.tau(rd.fundamental(i)));
        bp.push_back(F.b_plus(i));
        bm.push_back(F.b_minus(i));
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j) {
                out.push_back(compare("GB1 sigma_" + node(i) + " sigma_" + node(j), win, commutator(sig[i], sig[j], 1),
                                      zero_fn()));
                out.push_back(compare("GB1 tau_" + node(i) + " tau_" + node(j), win, commutator(tau[i], tau[j], 1),
                                      zero_fn()));
            }
            out.push_back(
                compare("GB1 sigma_" + node(i) + " tau_" + node(j), win, commutator(sig[i], tau[j], 1), zero_fn()));
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const long e = i == j ? rd.d(j) : 0;
            const std::string ij = node(i) + "," + node(j);
            out.push_back(compare("GB2 sigma b+ " + ij, win, commutator(sig[i], bp[j], Scalar::q_pow(e)), zero_fn()));
            out.push_back(compare("GB2 sigma b- " + ij, win, commutator(sig[i], bm[j], Scalar::q_pow(-e)), zero_fn()));
            out.push_back(compare("GB2 tau b+ " + ij, win, commutator(tau[i], bp[j], Scalar::q_pow(e)), zero_fn()));
            out.push_back(compare("GB2 tau b- " + ij, win, commutator(tau[i], bm[j], Scalar::q_pow(-e)), zero_fn()));
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Scalar c = Scalar::q_pow(-static_cast<long>(rd.d(i)) * rd.cartan(i, j));
            VecFn rhs = i == j ? VecFn([](const MultiIndex& m) { return FockVec{{m, Scalar(1)}}; }) : zero_fn();
            out.push_back(compare("GB3 " + node(i) + "," + node(j), win, commutator(bm[i], bp[j], c), rhs));
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int len = 1 - rd.cartan(i, j);
            const int d = rd.d(i);
            for (int sign = 0; sign < 2; ++sign) {
                const auto& b = sign == 0 ? bp : bm;
                VecFn serre = [&b, i, j, len, d](const MultiIndex& m) {
                    FockVec r;
                    for (int k = 0; k <= len; ++k) {
                        FockVec x = divided_power(b[i], len - k, d, FockVec{{m, Scalar(1)}});
                        x = b[j].apply(x);
                        x = divided_power(b[i], k, d, x);
                        fock_axpy(r, k % 2 ? Scalar(-1) : Scalar(1), x);
                    }
                    return r;
                };
                out.push_back(compare(std::string("GB4 ") + (sign == 0 ? "b+ " : "b- ") + node(i) + "," + node(j),
                                      win, serre, zero_fn()));
            }
        }

    {
        RelationCheck vac{"b- vacuum", true, ""};
        for (int i = 0; i < n && vac.pass; ++i)
            if (!bm[i].apply(MultiIndex(F.size(), 0)).empty()) {
                vac.pass = false;
                vac.witness = "b-_" + node(i) + " |0> != 0";
            }
        out.push_back(vac);
    }

    for (int i = 0; i < n; ++i) {
        FockOperator c = sig[i] * tau[i].diagonal_inverse();
        for (int j = 0; j < n; ++j) {
            out.push_back(compare("center c_" + node(i) + " b+_" + node(j), win, commutator(c, bp[j], 1), zero_fn()));
            out.push_back(compare("center c_" + node(i) + " b-_" + node(j), win, commutator(c, bm[j], 1), zero_fn()));
        }
    }

    // Commutation with matrix coefficients of the fundamental modules, on weight basis vectors.
    for (int l = 0; l < n; ++l) {
        const Weight mu = rd.fundamental(l);
        auto V = F.module(mu);
        for (size_t sv = 0; sv < V->num_spaces(); ++sv)
            for (size_t kv = 0; kv < V->space(sv).dim; ++kv)
                for (size_t su = 0; su < V->num_spaces(); ++su)
                    for (size_t ku = 0; ku < V->space(su).dim; ++ku) {
                        const MVec v = V->basis_vector(sv, kv), u = V->basis_vector(su, ku);
                        const Weight& xi = V->space(sv).wt;
                        const Weight& nu = V->space(su).wt;
                        const FockOperator phi = F.mco_op(mu, v, u);
                        const std::string tag = " V(varpi_" + node(l) + ") v" + std::to_string(V->offset(sv) + kv + 1) +
                                                " u" + std::to_string(V->offset(su) + ku + 1);
                        for (int i = 0; i < n; ++i) {
                            const long di = rd.d(i);
                            const long hx = xi[static_cast<size_t>(i)];
                            const FockOperator ve = F.mco_op(mu, V->right_e(i, v), u);
                            const FockOperator vf = F.mco_op(mu, V->right_f(i, v), u);
                            out.push_back(compare("b+ commutation i=" + node(i) + tag, win,
                                                  commutator(bp[i], phi, Scalar::q_pow(di * hx)), op_fn(ve)));
                            const Scalar cf = Scalar::q_pow(2 * di) * (Scalar::q_pow(di) - Scalar::q_pow(-di));
                            out.push_back(compare("b- commutation i=" + node(i) + tag, win,
                                                  commutator(phi, bm[i], Scalar::q_pow(-di * hx)),
                                                  op_fn(vf.scaled(cf))));

                            const Weight wi = rd.fundamental(i);
                            Weight top = wi;
                            for (size_t k = 0; k < top.size(); ++k) top[k] -= rd.alpha(i)[k];
                            const Scalar c1 = q_rat_pow(rd.inner_weights(rd.w0_weight(wi), nu) -
                                                        rd.inner_weights(top, xi));
                            const Scalar qd = Scalar::q_pow(di) - Scalar::q_pow(-di);
                            out.push_back(compare("sigma_e commutation i=" + node(i) + tag, win,
                                                  commutator(F.sigma_e(i), phi, c1),
                                                  op_fn((sig[i] * ve).scaled(-qd))));
                            const int id = rd.w0_dual(i);
                            const Weight wd = rd.fundamental(id);
                            Weight low = rd.w0_weight(wd);
                            for (size_t k = 0; k < low.size(); ++k) low[k] += rd.alpha(i)[k];
                            const Scalar c2 = q_rat_pow(rd.inner_weights(wd, nu) - rd.inner_weights(low, xi));
                            out.push_back(compare("tau_f commutation i=" + node(i) + tag, win,
                                                  commutator(phi, F.tau_f(i), c2), op_fn((vf * tau[i]).scaled(-qd))));
                        }
                    }
    }
    return out;
}

}  // namespace qg
