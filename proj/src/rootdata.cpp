#include "qg/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <stdexcept>

namespace qg {

RootDatum::RootDatum(char type, int rank) : type_(static_cast<char>(std::toupper(type))), n_(rank) {
    const int n = n_;
    bool ok = (type_ == 'A' && n >= 1) || (type_ == 'B' && n >= 2) || (type_ == 'C' && n >= 2) ||
              (type_ == 'D' && n >= 3) || (type_ == 'G' && n == 2);
    if (!ok) throw std::invalid_argument("unsupported Cartan type " + std::string(1, type) + std::to_string(rank));
    a_.assign(static_cast<size_t>(n * n), 0);
    d_.assign(static_cast<size_t>(n), 1);
    auto set = [&](int i, int j, int v) { a_[static_cast<size_t>(i * n + j)] = v; };
    for (int i = 0; i < n; ++i) set(i, i, 2);
    if (type_ == 'G') {
        set(0, 1, -3);
        set(1, 0, -1);
        d_ = {1, 3};
    } else if (type_ == 'D') {
        for (int i = 0; i + 1 < n - 1; ++i) {
            set(i, i + 1, -1);
            set(i + 1, i, -1);
        }
        set(n - 3, n - 1, -1);
        set(n - 1, n - 3, -1);
    } else {
        for (int i = 0; i + 1 < n; ++i) {
            set(i, i + 1, -1);
            set(i + 1, i, -1);
        }
        if (type_ == 'B') {
            set(n - 1, n - 2, -2);
            for (int i = 0; i < n - 1; ++i) d_[static_cast<size_t>(i)] = 2;
        } else if (type_ == 'C') {
            set(n - 2, n - 1, -2);
            d_[static_cast<size_t>(n - 1)] = 2;
        }
    }
    // inverse Cartan matrix by Gauss-Jordan over Q
    std::vector<mpq_class> m(a_.begin(), a_.end());
    ainv_.assign(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) ainv_[static_cast<size_t>(i * n + i)] = 1;
    auto M = [&](int i, int j) -> mpq_class& { return m[static_cast<size_t>(i * n + j)]; };
    auto I = [&](int i, int j) -> mpq_class& { return ainv_[static_cast<size_t>(i * n + j)]; };
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (M(p, c) == 0) ++p;
        for (int j = 0; j < n; ++j) {
            std::swap(M(c, j), M(p, j));
            std::swap(I(c, j), I(p, j));
        }
        mpq_class inv = 1 / M(c, c);
        for (int j = 0; j < n; ++j) {
            M(c, j) *= inv;
            I(c, j) *= inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || M(r, c) == 0) continue;
            mpq_class f = M(r, c);
            for (int j = 0; j < n; ++j) {
                M(r, j) -= f * M(c, j);
                I(r, j) -= f * I(c, j);
            }
        }
    }
}

RootDatum RootDatum::from_name(const std::string& name) {
    if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0])))
        throw std::invalid_argument("bad algebra name: " + name);
    int r = 0;
    try {
        size_t used = 0;
        r = std::stoi(name.substr(1), &used);
        if (used != name.size() - 1) throw std::invalid_argument(name);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad algebra name: " + name);
    }
    return RootDatum(name[0], r);
}

std::string RootDatum::name() const { return std::string(1, type_) + std::to_string(n_); }

int RootDatum::braid_order(int i, int j) const {
    if (i == j) return 1;
    switch (cartan(i, j) * cartan(j, i)) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: throw std::logic_error("bad Cartan entry");
    }
}

Weight RootDatum::fundamental(int i) const {
    Weight w(static_cast<size_t>(n_), 0);
    w[static_cast<size_t>(i)] = 1;
    return w;
}

Weight RootDatum::rho() const { return Weight(static_cast<size_t>(n_), 1); }

Weight RootDatum::alpha(int i) const {
    Weight w(static_cast<size_t>(n_));
    for (int k = 0; k < n_; ++k) w[static_cast<size_t>(k)] = cartan(k, i);
    return w;
}

Weight RootDatum::root_to_weight(const RootVec& b) const {
    Weight w(static_cast<size_t>(n_), 0);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) w[static_cast<size_t>(k)] += cartan(k, j) * b[static_cast<size_t>(j)];
    return w;
}

std::vector<mpq_class> RootDatum::weight_to_root(const Weight& l) const {
    std::vector<mpq_class> c(static_cast<size_t>(n_), 0);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
            c[static_cast<size_t>(j)] += ainv_[static_cast<size_t>(j * n_ + k)] * l[static_cast<size_t>(k)];
    return c;
}

RootVec RootDatum::simple_root(int i) const {
    RootVec b(static_cast<size_t>(n_), 0);
    b[static_cast<size_t>(i)] = 1;
    return b;
}

int RootDatum::height(const RootVec& b) const {
    int h = 0;
    for (int x : b) h += x;
    return h;
}

int RootDatum::inner(const RootVec& b, const Weight& l) const {
    int s = 0;
    for (int j = 0; j < n_; ++j) s += b[static_cast<size_t>(j)] * d(j) * l[static_cast<size_t>(j)];
    return s;
}

int RootDatum::inner_roots(const RootVec& a, const RootVec& b) const { return inner(a, root_to_weight(b)); }

mpq_class RootDatum::inner_weights(const Weight& l, const Weight& m) const {
    auto c = weight_to_root(l);
    mpq_class s = 0;
    for (int j = 0; j < n_; ++j) s += c[static_cast<size_t>(j)] * d(j) * m[static_cast<size_t>(j)];
    return s;
}

int RootDatum::pair_h(int i, const RootVec& b) const {
    int s = 0;
    for (int j = 0; j < n_; ++j) s += cartan(i, j) * b[static_cast<size_t>(j)];
    return s;
}

RootVec RootDatum::coroot(const RootVec& b) const {
    const int bb = inner_roots(b, b);
    RootVec c(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        int num = 2 * d(i) * b[static_cast<size_t>(i)];
        if (num % bb != 0) throw std::logic_error("coroot of a non-root");
        c[static_cast<size_t>(i)] = num / bb;
    }
    return c;
}

Weight RootDatum::reflect(int i, const Weight& l) const {
    Weight r = l;
    const int c = l[static_cast<size_t>(i)];
    for (int k = 0; k < n_; ++k) r[static_cast<size_t>(k)] -= c * cartan(k, i);
    return r;
}

RootVec RootDatum::reflect_root(int i, const RootVec& b) const {
    RootVec r = b;
    r[static_cast<size_t>(i)] -= pair_h(i, b);
    return r;
}

Weight RootDatum::act(const Word& w, const Weight& l) const {
    Weight r = l;
    for (size_t k = w.size(); k-- > 0;) r = reflect(w[k], r);
    return r;
}

RootVec RootDatum::act_root(const Word& w, const RootVec& b) const {
    RootVec r = b;
    for (size_t k = w.size(); k-- > 0;) r = reflect_root(w[k], r);
    return r;
}

bool RootDatum::is_positive_root(const RootVec& b) const {
    auto roots = positive_roots();
    return std::find(roots.begin(), roots.end(), b) != roots.end();
}

std::vector<RootVec> RootDatum::positive_roots() const {
    std::set<RootVec> seen;
    std::deque<RootVec> todo;
    for (int i = 0; i < n_; ++i) {
        seen.insert(simple_root(i));
        todo.push_back(simple_root(i));
    }
    while (!todo.empty()) {
        RootVec b = todo.front();
        todo.pop_front();
        for (int i = 0; i < n_; ++i) {
            RootVec r = reflect_root(i, b);
            bool pos = std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
            if (pos && !seen.count(r)) {
                seen.insert(r);
                todo.push_back(r);
            }
        }
    }
    std::vector<RootVec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [this](const RootVec& x, const RootVec& y) {
        int hx = height(x), hy = height(y);
        return hx != hy ? hx < hy : x < y;
    });
    return out;
}

int RootDatum::num_positive_roots() const { return static_cast<int>(positive_roots().size()); }

std::vector<RootVec> RootDatum::root_sequence(const Word& w) const {
    std::vector<RootVec> out;
    Word prefix;
    for (int i : w) {
        out.push_back(act_root(prefix, simple_root(i)));
        prefix.push_back(i);
    }
    return out;
}

bool RootDatum::is_reduced_w0(const Word& w) const {
    if (static_cast<int>(w.size()) != num_positive_roots()) return false;
    for (int i : w)
        if (i < 0 || i >= n_) return false;
    for (const auto& b : root_sequence(w))
        if (!std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; })) return false;
    return true;
}

Word RootDatum::w0_word() const {
    Word w;
    const int N = num_positive_roots();
    while (static_cast<int>(w.size()) < N) {
        for (int i = 0; i < n_; ++i) {
            RootVec b = act_root(w, simple_root(i));
            if (std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; })) {
                w.push_back(i);
                break;
            }
        }
    }
    return w;
}

std::vector<Word> RootDatum::reduced_words_w0() const {
    std::set<Word> seen{w0_word()};
    std::deque<Word> todo{w0_word()};
    while (!todo.empty()) {
        Word w = todo.front();
        todo.pop_front();
        for (size_t p = 0; p < w.size(); ++p) {
            for (size_t len = 2; len <= 6 && p + len <= w.size(); ++len) {
                int i = w[p], j = w[p + 1];
                if (i == j || braid_order(i, j) != static_cast<int>(len)) continue;
                bool alt = true;
                for (size_t t = 0; t < len; ++t)
                    if (w[p + t] != (t % 2 == 0 ? i : j)) alt = false;
                if (!alt) continue;
                Word v = w;
                for (size_t t = 0; t < len; ++t) v[p + t] = (t % 2 == 0 ? j : i);
                if (seen.insert(v).second) todo.push_back(v);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

Weight RootDatum::w0_weight(const Weight& l) const { return act(w0_word(), l); }

int RootDatum::w0_dual(int i) const {
    Weight w = w0_weight(fundamental(i));
    for (int j = 0; j < n_; ++j) {
        Weight neg = fundamental(j);
        for (auto& x : neg) x = -x;
        if (neg == w) return j;
    }
    throw std::logic_error("w0 does not permute fundamental weights");
}

mpz_class RootDatum::weyl_dimension(const Weight& l) const {
    Weight lr = l;
    for (auto& x : lr) x += 1;
    mpq_class p = 1;
    for (const auto& b : positive_roots()) {
        mpq_class f(inner(b, lr), inner(b, rho()));
        f.canonicalize();
        p *= f;
    }
    return p.get_num();
}

}  // namespace qg
