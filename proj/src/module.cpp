#include <algorithm>
#include <set>
#include <sstream>

#include "qg/repmod.hpp"

namespace qg {

// ---------------------------------------------------------------- MVec

bool MVec::is_zero() const {
    for (const auto& [s, v] : parts)
        if (!qg::is_zero(v)) return false;
    return true;
}

MVec& MVec::operator+=(const MVec& o) {
    for (const auto& [s, v] : o.parts) {
        auto it = parts.find(s);
        if (it == parts.end()) {
            parts.emplace(s, v);
        } else {
            for (size_t k = 0; k < v.size(); ++k)
                if (!v[k].is_zero()) it->second[k] += v[k];
        }
    }
    return *this;
}

MVec& MVec::operator-=(const MVec& o) { return *this += o.scaled(Scalar(-1)); }

MVec MVec::scaled(const Scalar& s) const {
    MVec r = *this;
    for (auto& [k, v] : r.parts)
        for (auto& x : v)
            if (!x.is_zero()) x *= s;
    return r;
}

bool operator==(const MVec& a, const MVec& b) {
    MVec d = a;
    d -= b;
    return d.is_zero();
}

Scalar MVec::coeff(size_t s, size_t k) const {
    auto it = parts.find(s);
    if (it == parts.end()) return Scalar();
    return it->second[k];
}

// ---------------------------------------------------------------- FinModule basics

size_t FinModule::add_space(const Weight& w, int depth, size_t dim) {
    size_t s = spaces_.size();
    spaces_.push_back(WeightSpace{w, depth, dim});
    index_.emplace(w, s);
    return s;
}

void FinModule::finalize() {
    const int n = rd_->rank();
    offsets_.assign(spaces_.size() + 1, 0);
    for (size_t s = 0; s < spaces_.size(); ++s) offsets_[s + 1] = offsets_[s] + spaces_[s].dim;
    eb_.resize(static_cast<size_t>(n));
    fb_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        eb_[static_cast<size_t>(i)].resize(spaces_.size());
        fb_[static_cast<size_t>(i)].resize(spaces_.size());
    }
}

std::optional<size_t> FinModule::find(const Weight& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

size_t FinModule::dim() const {
    size_t d = 0;
    for (const auto& s : spaces_) d += s.dim;
    return d;
}

std::optional<size_t> FinModule::e_target(int i, size_t s) const {
    Weight w = spaces_[s].wt;
    Weight a = rd_->alpha(i);
    for (size_t k = 0; k < w.size(); ++k) w[k] += a[k];
    return find(w);
}

std::optional<size_t> FinModule::f_target(int i, size_t s) const {
    Weight w = spaces_[s].wt;
    Weight a = rd_->alpha(i);
    for (size_t k = 0; k < w.size(); ++k) w[k] -= a[k];
    return find(w);
}

const Matrix* FinModule::e_block(int i, size_t s) const {
    const auto& b = eb_[static_cast<size_t>(i)][s];
    return b ? &*b : nullptr;
}

const Matrix* FinModule::f_block(int i, size_t s) const {
    if (truncated() && spaces_[s].depth >= max_depth_)
        throw TruncationError("f-action below truncation depth " + std::to_string(max_depth_));
    const auto& b = fb_[static_cast<size_t>(i)][s];
    return b ? &*b : nullptr;
}

MVec FinModule::basis_vector(size_t s, size_t k) const {
    MVec v;
    Vec x(spaces_[s].dim);
    x[k] = Scalar(1);
    v.parts.emplace(s, std::move(x));
    return v;
}

MVec FinModule::apply_e(int i, const MVec& v) const {
    MVec r;
    for (const auto& [s, x] : v.parts) {
        const Matrix* b = e_block(i, s);
        if (!b || qg::is_zero(x)) continue;
        MVec part;
        part.parts.emplace(*e_target(i, s), b->apply(x));
        r += part;
    }
    return r;
}

MVec FinModule::apply_f(int i, const MVec& v) const {
    MVec r;
    for (const auto& [s, x] : v.parts) {
        if (qg::is_zero(x)) continue;
        const Matrix* b = f_block(i, s);
        if (!b) continue;
        MVec part;
        part.parts.emplace(*f_target(i, s), b->apply(x));
        r += part;
    }
    return r;
}

MVec FinModule::apply_k(const RootVec& beta, const MVec& v) const {
    MVec r = v;
    for (auto& [s, x] : r.parts) {
        Scalar c = Scalar::q_pow(rd_->inner(beta, spaces_[s].wt));
        for (auto& y : x)
            if (!y.is_zero()) y *= c;
    }
    return r;
}

MVec FinModule::apply_word(Side side, const Word& w, const MVec& v) const {
    MVec r = v;
    for (size_t k = w.size(); k-- > 0;) {
        r = side == Side::E ? apply_e(w[k], r) : apply_f(w[k], r);
        if (r.parts.empty()) break;
    }
    return r;
}

MVec FinModule::apply_poly(const WordPoly& x, const MVec& v) const {
    MVec r;
    for (const auto& [key, c] : x.terms()) {
        MVec t = apply_word(x.side(), key.second, v);
        t = apply_k(key.first, t);
        r += t.scaled(c);
    }
    return r;
}

MVec FinModule::right_e(int i, const MVec& phi) const {
    // (phi e_i) on space s is E(s -> t)^T phi_t
    MVec r;
    for (const auto& [t, y] : phi.parts) {
        if (qg::is_zero(y)) continue;
        auto src = f_target(i, t);
        if (!src) continue;
        const Matrix* b = e_block(i, *src);
        if (!b) continue;
        MVec part;
        part.parts.emplace(*src, b->apply_transpose(y));
        r += part;
    }
    return r;
}

MVec FinModule::right_f(int i, const MVec& phi) const {
    MVec r;
    for (const auto& [t, y] : phi.parts) {
        if (qg::is_zero(y)) continue;
        auto src = e_target(i, t);
        if (!src) continue;
        const Matrix* b = f_block(i, *src);
        if (!b) continue;
        MVec part;
        part.parts.emplace(*src, b->apply_transpose(y));
        r += part;
    }
    return r;
}

MVec FinModule::right_k(const RootVec& beta, const MVec& phi) const { return apply_k(beta, phi); }

MVec FinModule::right_word(Side side, const Word& w, const MVec& phi) const {
    MVec r = phi;
    for (int i : w) {
        r = side == Side::E ? right_e(i, r) : right_f(i, r);
        if (r.parts.empty()) break;
    }
    return r;
}

MVec FinModule::right_poly(const WordPoly& x, const MVec& phi) const {
    MVec r;
    for (const auto& [key, c] : x.terms()) {
        MVec t = right_k(key.first, phi);
        t = right_word(x.side(), key.second, t);
        r += t.scaled(c);
    }
    return r;
}

MVec FinModule::pure_tensor(const MVec& x, const MVec& y) const {
    if (tensor_where_.empty()) throw std::logic_error("pure_tensor needs a tensor product module");
    MVec r;
    for (const auto& [sa, xa] : x.parts)
        for (const auto& [sb, yb] : y.parts) {
            const auto [s, off] = tensor_where_.at({sa, sb});
            auto& part = r.parts[s];
            if (part.empty()) part.assign(spaces_[s].dim, Scalar());
            const size_t db = tensor_bdims_[sb];
            for (size_t ka = 0; ka < xa.size(); ++ka) {
                if (xa[ka].is_zero()) continue;
                for (size_t kb = 0; kb < yb.size(); ++kb)
                    if (!yb[kb].is_zero()) part[off + ka * db + kb] += xa[ka] * yb[kb];
            }
        }
    return r;
}

Scalar FinModule::pairing(const MVec& phi, const MVec& u) const {
    Scalar s;
    for (const auto& [k, x] : phi.parts) {
        auto it = u.parts.find(k);
        if (it == u.parts.end()) continue;
        for (size_t j = 0; j < x.size(); ++j)
            if (!x[j].is_zero() && !it->second[j].is_zero()) s += x[j] * it->second[j];
    }
    return s;
}

MVec FinModule::from_dense(const Vec& x) const {
    MVec v;
    for (size_t s = 0; s < spaces_.size(); ++s) {
        Vec part(x.begin() + static_cast<long>(offsets_[s]), x.begin() + static_cast<long>(offsets_[s + 1]));
        if (!qg::is_zero(part)) v.parts.emplace(s, std::move(part));
    }
    return v;
}

Vec FinModule::to_dense(const MVec& v) const {
    Vec x(dim());
    for (const auto& [s, part] : v.parts)
        for (size_t k = 0; k < part.size(); ++k) x[offsets_[s] + k] = part[k];
    return x;
}

// ---------------------------------------------------------------- construction

namespace {

Weight add_alpha(const RootDatum& rd, const Weight& w, int i, int sign) {
    Weight r = w;
    Weight a = rd.alpha(i);
    for (size_t k = 0; k < r.size(); ++k) r[k] += sign * a[k];
    return r;
}

}  // namespace

FinModule FinModule::highest_weight(std::shared_ptr<const RootDatum> rd, const Weight& lambda, int max_depth) {
    const int n = rd->rank();
    if (static_cast<int>(lambda.size()) != n) throw std::invalid_argument("weight of wrong rank");
    for (int c : lambda)
        if (c < 0) throw std::invalid_argument("highest weight must be dominant");
    FinModule m(rd);
    m.max_depth_ = max_depth;
    m.add_space(lambda, 0, 1);
    // Blocks are filled as spaces appear; keep them in maps until finalize.
    std::map<std::pair<int, size_t>, Matrix> eblk, fblk;
    std::vector<size_t> frontier{0};
    for (int depth = 1; !frontier.empty() && (max_depth < 0 || depth <= max_depth); ++depth) {
        std::set<Weight> cand_weights;
        for (size_t s : frontier)
            for (int i = 0; i < n; ++i) cand_weights.insert(add_alpha(*rd, m.spaces_[s].wt, i, -1));
        std::vector<size_t> next;
        for (const Weight& mu : cand_weights) {
            // targets of e_j and parents of f_i
            std::vector<std::optional<size_t>> tgt(static_cast<size_t>(n));
            std::vector<size_t> off(static_cast<size_t>(n) + 1, 0);
            for (int j = 0; j < n; ++j) {
                tgt[static_cast<size_t>(j)] = m.find(add_alpha(*rd, mu, j, +1));
                off[static_cast<size_t>(j) + 1] =
                    off[static_cast<size_t>(j)] + (tgt[static_cast<size_t>(j)] ? m.spaces_[*tgt[static_cast<size_t>(j)]].dim : 0);
            }
            const size_t total = off.back();
            // candidate f_i b: its image under all e_j, stacked
            struct Cand {
                int i;
                size_t b;
                Vec img;
            };
            std::vector<Cand> cands;
            for (int i = 0; i < n; ++i) {
                auto p = tgt[static_cast<size_t>(i)];
                if (!p) continue;
                const int hi = mu[static_cast<size_t>(i)] + 2;  // <h_i, mu + alpha_i>
                for (size_t b = 0; b < m.spaces_[*p].dim; ++b) {
                    Vec img(total);
                    for (int j = 0; j < n; ++j) {
                        auto t = tgt[static_cast<size_t>(j)];
                        if (!t) continue;
                        // e_j f_i b = f_i e_j b + delta_ij [<h_i, mu+alpha_i>]_i b
                        Vec part(m.spaces_[*t].dim);
                        auto ej = eblk.find({j, *p});
                        if (ej != eblk.end()) {
                            Vec ejb = ej->second.col(b);
                            auto pj = m.find(add_alpha(*rd, m.spaces_[*p].wt, j, +1));
                            auto fi = fblk.find({i, *pj});
                            if (fi != fblk.end()) part = fi->second.apply(ejb);
                        }
                        if (i == j) part[b] += q_int(hi, rd->d(i));
                        for (size_t k = 0; k < part.size(); ++k) img[off[static_cast<size_t>(j)] + k] = part[k];
                    }
                    cands.push_back(Cand{i, b, std::move(img)});
                }
            }
            IncrementalBasis basis(total);
            std::vector<size_t> chosen;
            for (size_t c = 0; c < cands.size(); ++c)
                if (basis.add(cands[c].img)) chosen.push_back(c);
            if (chosen.empty()) continue;
            const size_t dim = chosen.size();
            size_t s = m.add_space(mu, depth, dim);
            next.push_back(s);
            // f_i blocks from parents into mu
            for (int i = 0; i < n; ++i) {
                auto p = tgt[static_cast<size_t>(i)];
                if (!p) continue;
                fblk.emplace(std::make_pair(i, *p), Matrix(dim, m.spaces_[*p].dim));
            }
            for (size_t c = 0; c < cands.size(); ++c) {
                Matrix& fb = fblk.at({cands[c].i, *tgt[static_cast<size_t>(cands[c].i)]});
                auto pos = std::find(chosen.begin(), chosen.end(), c);
                if (pos != chosen.end()) {
                    fb.at(static_cast<size_t>(pos - chosen.begin()), cands[c].b) = Scalar(1);
                } else {
                    fb.set_col(cands[c].b, *basis.express(cands[c].img));
                }
            }
            // e_j blocks out of mu
            for (int j = 0; j < n; ++j) {
                auto t = tgt[static_cast<size_t>(j)];
                if (!t) continue;
                Matrix eb(m.spaces_[*t].dim, dim);
                for (size_t k = 0; k < dim; ++k)
                    for (size_t r = 0; r < eb.rows(); ++r)
                        eb.at(r, k) = cands[chosen[k]].img[off[static_cast<size_t>(j)] + r];
                eblk.emplace(std::make_pair(j, s), std::move(eb));
            }
        }
        frontier = std::move(next);
    }
    m.finalize();
    for (auto& [key, b] : eblk) m.eb_[static_cast<size_t>(key.first)][key.second] = std::move(b);
    for (auto& [key, b] : fblk) m.fb_[static_cast<size_t>(key.first)][key.second] = std::move(b);
    return m;
}

FinModule FinModule::seed(std::shared_ptr<const RootDatum> rd) {
    // Chains of one-dimensional weight spaces: basis vector t is the image of
    // basis vector `from` under f_i^{(k)} inside an sl2_i-string of length l.
    struct Link {
        int i, from, to, k, l;
    };
    std::vector<Link> links;
    Weight top(static_cast<size_t>(rd->rank()), 0);
    top[0] = 1;
    int count = 0;
    if (rd->type() == 'A') {
        count = rd->rank() + 1;
        for (int i = 0; i < rd->rank(); ++i) links.push_back({i, i, i + 1, 1, 1});
    } else if (rd->type() == 'B' && rd->rank() == 2) {
        count = 5;
        links = {{0, 0, 1, 1, 1}, {1, 1, 2, 1, 2}, {1, 1, 3, 2, 2}, {0, 3, 4, 1, 1}};
    } else if (rd->type() == 'G') {
        count = 7;
        links = {{0, 0, 1, 1, 1}, {1, 1, 2, 1, 1}, {0, 2, 3, 1, 2}, {0, 2, 4, 2, 2}, {1, 4, 5, 1, 1}, {0, 5, 6, 1, 1}};
    } else {
        throw std::invalid_argument("no seed module for " + rd->name());
    }
    std::vector<Weight> wts(static_cast<size_t>(count));
    wts[0] = top;
    for (const auto& L : links) {
        Weight w = wts[static_cast<size_t>(L.from)];
        Weight a = rd->alpha(L.i);
        for (size_t k = 0; k < w.size(); ++k) w[k] -= L.k * a[k];
        wts[static_cast<size_t>(L.to)] = w;
    }
    FinModule m(rd);
    for (int t = 0; t < count; ++t) m.add_space(wts[static_cast<size_t>(t)], 0, 1);
    for (int t = 0; t < count; ++t) {
        Weight w0 = wts[static_cast<size_t>(t)];
        // depth = height of top - w
        auto c = rd->weight_to_root(top);
        auto d = rd->weight_to_root(w0);
        mpq_class h = 0;
        for (size_t k = 0; k < c.size(); ++k) h += c[k] - d[k];
        m.spaces_[static_cast<size_t>(t)].depth = static_cast<int>(h.get_num().get_si());
    }
    m.finalize();
    // Within a string with top u_0 and length l: f u_k = [k+1] u_{k+1}, e u_k = [l-k+1] u_{k-1}.
    for (const auto& L : links) {
        const int di = rd->d(L.i);
        // vector `to` is u_k, its predecessor in the string is u_{k-1}
        int prev = L.k == 1 ? L.from : -1;
        if (prev < 0) {
            for (const auto& M : links)
                if (M.i == L.i && M.from == L.from && M.k == L.k - 1) prev = M.to;
        }
        Matrix f(1, 1), e(1, 1);
        f.at(0, 0) = q_int(L.k, di);
        e.at(0, 0) = q_int(L.l - L.k + 1, di);
        m.fb_[static_cast<size_t>(L.i)][static_cast<size_t>(prev)] = f;
        m.eb_[static_cast<size_t>(L.i)][static_cast<size_t>(L.to)] = e;
    }
    m.check_relations();
    return m;
}

FinModule FinModule::tensor(const FinModule& a, const FinModule& b) {
    if (a.truncated() || b.truncated()) throw std::invalid_argument("tensor of truncated modules");
    if (!(a.root_datum() == b.root_datum())) throw std::invalid_argument("tensor of modules over different data");
    const RootDatum& rd = *a.rd_;
    const int n = rd.rank();
    FinModule m(a.rd_);
    // tensor weight -> list of (sa, sb)
    std::map<Weight, std::vector<std::pair<size_t, size_t>>> groups;
    std::vector<Weight> order;
    for (size_t sa = 0; sa < a.num_spaces(); ++sa)
        for (size_t sb = 0; sb < b.num_spaces(); ++sb) {
            Weight w = a.spaces_[sa].wt;
            for (size_t k = 0; k < w.size(); ++k) w[k] += b.spaces_[sb].wt[k];
            auto [it, fresh] = groups.try_emplace(w);
            if (fresh) order.push_back(w);
            it->second.emplace_back(sa, sb);
        }
    // order spaces by depth then weight for determinism
    auto depth_of = [&](const Weight& w) {
        for (const auto& [sa, sb] : groups.at(w)) return a.spaces_[sa].depth + b.spaces_[sb].depth;
        return 0;
    };
    std::stable_sort(order.begin(), order.end(), [&](const Weight& x, const Weight& y) {
        int dx = depth_of(x), dy = depth_of(y);
        return dx != dy ? dx < dy : x > y;
    });
    std::map<std::pair<size_t, size_t>, std::pair<size_t, size_t>> where;  // (sa,sb) -> (space, offset)
    for (const auto& w : order) {
        size_t dim = 0;
        for (const auto& [sa, sb] : groups.at(w)) dim += a.spaces_[sa].dim * b.spaces_[sb].dim;
        size_t s = m.add_space(w, depth_of(w), dim);
        size_t off = 0;
        for (const auto& [sa, sb] : groups.at(w)) {
            where[{sa, sb}] = {s, off};
            off += a.spaces_[sa].dim * b.spaces_[sb].dim;
        }
    }
    m.finalize();
    m.tensor_where_ = where;
    for (const auto& sp : b.spaces_) m.tensor_bdims_.push_back(sp.dim);
    auto idx = [&](size_t sa, size_t ka, size_t sb, size_t kb) {
        auto [s, off] = where.at({sa, sb});
        return std::make_pair(s, off + ka * b.spaces_[sb].dim + kb);
    };
    for (int i = 0; i < n; ++i) {
        const int di = rd.d(i);
        for (const auto& [pr, loc] : where) {
            const auto [sa, sb] = pr;
            const size_t s = loc.first;
            const Weight& wa = a.spaces_[sa].wt;
            const Weight& wb = b.spaces_[sb].wt;
            // e_i (x (x) y) = e_i x (x) y + q_i^{<h_i, wt x>} x (x) e_i y
            auto et = m.e_target(i, s);
            if (et) {
                auto& blk = m.eb_[static_cast<size_t>(i)][s];
                if (!blk) blk = Matrix(m.spaces_[*et].dim, m.spaces_[s].dim);
                const Matrix* ea = a.e_block(i, sa);
                const Matrix* eb = b.e_block(i, sb);
                Scalar kx = Scalar::q_pow(static_cast<long>(di) * wa[static_cast<size_t>(i)]);
                for (size_t ka = 0; ka < a.spaces_[sa].dim; ++ka)
                    for (size_t kb = 0; kb < b.spaces_[sb].dim; ++kb) {
                        const size_t col = idx(sa, ka, sb, kb).second;
                        if (ea) {
                            size_t ta = *a.e_target(i, sa);
                            for (size_t r = 0; r < ea->rows(); ++r)
                                if (!ea->at(r, ka).is_zero()) blk->at(idx(ta, r, sb, kb).second, col) += ea->at(r, ka);
                        }
                        if (eb) {
                            size_t tb = *b.e_target(i, sb);
                            for (size_t r = 0; r < eb->rows(); ++r)
                                if (!eb->at(r, kb).is_zero())
                                    blk->at(idx(sa, ka, tb, r).second, col) += kx * eb->at(r, kb);
                        }
                    }
            }
            // f_i (x (x) y) = q_i^{-<h_i, wt y>} f_i x (x) y + x (x) f_i y
            auto ft = m.f_target(i, s);
            if (ft) {
                auto& blk = m.fb_[static_cast<size_t>(i)][s];
                if (!blk) blk = Matrix(m.spaces_[*ft].dim, m.spaces_[s].dim);
                const Matrix* fa = a.f_block(i, sa);
                const Matrix* fbm = b.f_block(i, sb);
                Scalar ky = Scalar::q_pow(-static_cast<long>(di) * wb[static_cast<size_t>(i)]);
                for (size_t ka = 0; ka < a.spaces_[sa].dim; ++ka)
                    for (size_t kb = 0; kb < b.spaces_[sb].dim; ++kb) {
                        const size_t col = idx(sa, ka, sb, kb).second;
                        if (fa) {
                            size_t ta = *a.f_target(i, sa);
                            for (size_t r = 0; r < fa->rows(); ++r)
                                if (!fa->at(r, ka).is_zero())
                                    blk->at(idx(ta, r, sb, kb).second, col) += ky * fa->at(r, ka);
                        }
                        if (fbm) {
                            size_t tb = *b.f_target(i, sb);
                            for (size_t r = 0; r < fbm->rows(); ++r)
                                if (!fbm->at(r, kb).is_zero()) blk->at(idx(sa, ka, tb, r).second, col) += fbm->at(r, kb);
                        }
                    }
            }
        }
    }
    return m;
}

FinModule FinModule::cyclic_submodule(const MVec& v, std::vector<MVec>* embedding) const {
    const int n = rd_->rank();
    if (v.parts.size() != 1 || v.is_zero()) throw std::invalid_argument("cyclic_submodule needs a nonzero weight vector");
    for (int i = 0; i < n; ++i)
        if (!apply_e(i, v).is_zero()) throw std::invalid_argument("cyclic_submodule needs a highest weight vector");
    FinModule m(rd_);
    std::vector<std::vector<MVec>> vecs;  // per sub-space, ambient vectors
    const size_t s0 = v.parts.begin()->first;
    m.add_space(spaces_[s0].wt, 0, 1);
    vecs.push_back({v});
    std::map<std::pair<int, size_t>, Matrix> eblk, fblk;
    std::vector<size_t> frontier{0};
    auto coords_in = [&](size_t sub, const MVec& x) {
        // express ambient vector x in the sub-basis of space `sub`
        const size_t amb = *find(m.spaces_[sub].wt);
        IncrementalBasis b(spaces_[amb].dim);
        for (const auto& y : vecs[sub]) b.add(y.parts.count(amb) ? y.parts.at(amb) : Vec(spaces_[amb].dim));
        Vec xv = x.parts.count(amb) ? x.parts.at(amb) : Vec(spaces_[amb].dim);
        auto c = b.express(xv);
        if (!c) throw std::logic_error("cyclic_submodule: vector outside span");
        return *c;
    };
    for (int depth = 1; !frontier.empty(); ++depth) {
        std::set<Weight> cand_weights;
        for (size_t s : frontier)
            for (int i = 0; i < n; ++i) cand_weights.insert(add_alpha(*rd_, m.spaces_[s].wt, i, -1));
        std::vector<size_t> next;
        for (const Weight& mu : cand_weights) {
            auto amb = find(mu);
            if (!amb) continue;
            IncrementalBasis basis(spaces_[*amb].dim);
            std::vector<MVec> chosen;
            for (int i = 0; i < n; ++i) {
                auto p = m.find(add_alpha(*rd_, mu, i, +1));
                if (!p) continue;
                for (const auto& b : vecs[*p]) {
                    MVec fb = apply_f(i, b);
                    Vec x = fb.parts.count(*amb) ? fb.parts.at(*amb) : Vec(spaces_[*amb].dim);
                    if (basis.add(x)) chosen.push_back(fb);
                }
            }
            if (chosen.empty()) continue;
            size_t s = m.add_space(mu, depth, chosen.size());
            vecs.push_back(std::move(chosen));
            next.push_back(s);
            for (int i = 0; i < n; ++i) {
                auto p = m.find(add_alpha(*rd_, mu, i, +1));
                if (!p) continue;
                Matrix fb(m.spaces_[s].dim, m.spaces_[*p].dim);
                for (size_t k = 0; k < vecs[*p].size(); ++k) fb.set_col(k, coords_in(s, apply_f(i, vecs[*p][k])));
                fblk.emplace(std::make_pair(i, *p), std::move(fb));
                Matrix eb(m.spaces_[*p].dim, m.spaces_[s].dim);
                for (size_t k = 0; k < vecs[s].size(); ++k) eb.set_col(k, coords_in(*p, apply_e(i, vecs[s][k])));
                eblk.emplace(std::make_pair(i, s), std::move(eb));
            }
        }
        frontier = std::move(next);
    }
    m.finalize();
    for (auto& [key, b] : eblk) m.eb_[static_cast<size_t>(key.first)][key.second] = std::move(b);
    for (auto& [key, b] : fblk) m.fb_[static_cast<size_t>(key.first)][key.second] = std::move(b);
    if (embedding) {
        embedding->clear();
        for (auto& vs : vecs)
            for (auto& x : vs) embedding->push_back(x);
    }
    return m;
}

void FinModule::check_relations() const {
    const RootDatum& rd = *rd_;
    const int n = rd.rank();
    auto fail = [&](const std::string& what, size_t s, size_t k) {
        std::ostringstream os;
        os << "module relation failed: " << what << " on basis vector " << k << " of weight space " << s;
        throw std::logic_error(os.str());
    };
    for (size_t s = 0; s < spaces_.size(); ++s) {
        for (size_t k = 0; k < spaces_[s].dim; ++k) {
            const MVec u = basis_vector(s, k);
            try {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        MVec c = apply_e(i, apply_f(j, u));
                        c -= apply_f(j, apply_e(i, u));
                        if (i == j) c -= u.scaled(q_int(spaces_[s].wt[static_cast<size_t>(i)], rd.d(i)));
                        if (!c.is_zero()) fail("[e_" + std::to_string(i + 1) + ", f_" + std::to_string(j + 1) + "]", s, k);
                    }
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        if (i == j) continue;
                        for (Side side : {Side::E, Side::F}) {
                            WordPoly x = serre_element(rd_, side, i, j);
                            if (!apply_poly(x, u).is_zero())
                                fail(std::string(side == Side::E ? "e" : "f") + "-Serre(" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ")",
                                     s, k);
                        }
                    }
            } catch (const TruncationError&) {
                continue;
            }
        }
    }
}

}  // namespace qg
