#include "qg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace qg {

// ---------------------------------------------------------------- Poly

Poly::Poly(long c) {
    if (c != 0) c_.emplace_back(c);
}

Poly::Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const mpz_class& c, int deg) {
    Poly p;
    if (c == 0) return p;
    p.c_.assign(static_cast<size_t>(deg) + 1, mpz_class(0));
    p.c_.back() = c;
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return 0;
}

Poly Poly::shifted_down(int k) const {
    if (k == 0) return *this;
    Poly p;
    p.c_.assign(c_.begin() + k, c_.end());
    return p;
}

Poly Poly::shifted_up(int k) const {
    if (k == 0 || c_.empty()) return *this;
    Poly p;
    p.c_.assign(static_cast<size_t>(k), mpz_class(0));
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitive_part() const {
    if (c_.empty()) return *this;
    mpz_class g = content();
    if (c_.back() < 0) g = -g;
    if (g == 1) return *this;
    return divexact_scalar(g);
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& x : p.c_) x = -x;
    return p;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    const Poly& big = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    r.c_ = big.c_;
    for (size_t i = 0; i < small.size(); ++i) r.c_[i] += small.c_[i];
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    r.trim();
    return r;
}

Poly Poly::mul_scalar(const mpz_class& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Poly Poly::divexact_scalar(const mpz_class& s) const {
    Poly r = *this;
    for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
    return r;
}

Poly Poly::divexact(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (is_zero()) return Poly();
    if (d.size() == 1) {
        Poly r = *this;
        for (auto& x : r.c_) {
            if (!mpz_divisible_p(x.get_mpz_t(), d.c_[0].get_mpz_t()))
                throw std::logic_error("inexact polynomial division");
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.c_[0].get_mpz_t());
        }
        return r;
    }
    if (degree() < d.degree()) throw std::logic_error("inexact polynomial division");
    std::vector<mpz_class> rem = c_;
    std::vector<mpz_class> quo(static_cast<size_t>(degree() - d.degree() + 1));
    const int dd = d.degree();
    for (int k = degree() - dd; k >= 0; --k) {
        mpz_class& top = rem[static_cast<size_t>(k + dd)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), d.lc().get_mpz_t()))
            throw std::logic_error("inexact polynomial division");
        mpz_class qk;
        mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), d.lc().get_mpz_t());
        for (int j = 0; j <= dd; ++j)
            mpz_submul(rem[static_cast<size_t>(k + j)].get_mpz_t(), qk.get_mpz_t(),
                       d.c_[static_cast<size_t>(j)].get_mpz_t());
        quo[static_cast<size_t>(k)] = qk;
    }
    for (const auto& x : rem)
        if (x != 0) throw std::logic_error("inexact polynomial division");
    return Poly(std::move(quo));
}

mpq_class Poly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + mpq_class(c_[i]);
    return acc;
}

namespace {

// Primitive pseudo-remainder of primitive a by primitive b.
Poly prem_primitive(Poly a, const Poly& b) {
    const int db = b.degree();
    const mpz_class& lb = b.lc();
    std::vector<mpz_class> r = a.coeffs();
    int dr = static_cast<int>(r.size()) - 1;
    while (dr >= db) {
        mpz_class lr = r[static_cast<size_t>(dr)];
        if (lr != 0) {
            mpz_class g = gcd(lr, lb);
            mpz_class mb = lb / g;
            mpz_class mr = lr / g;
            for (auto& x : r) x *= mb;
            const int off = dr - db;
            for (int j = 0; j <= db; ++j)
                mpz_submul(r[static_cast<size_t>(off + j)].get_mpz_t(), mr.get_mpz_t(),
                           b[static_cast<size_t>(j)].get_mpz_t());
        }
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
    }
    return Poly(std::move(r)).primitive_part();
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? Poly() : (b.lc() < 0 ? -b : b);
    if (b.is_zero()) return a.lc() < 0 ? -a : a;
    mpz_class cg = gcd(a.content(), b.content());
    if (a.is_constant() || b.is_constant()) return Poly(std::vector<mpz_class>{cg});
    int va = a.valuation();
    int vb = b.valuation();
    int v = std::min(va, vb);
    Poly x = a.shifted_down(va).primitive_part();
    Poly y = b.shifted_down(vb).primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        if (y.is_constant()) {
            x = Poly(1);
            break;
        }
        Poly r = prem_primitive(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    Poly g = x.primitive_part().mul_scalar(cg);
    return g.shifted_up(v);
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : num_(), den_(1) {}

Scalar::Scalar(long c) : num_(c), den_(1) {}

Scalar::Scalar(const mpq_class& c)
    : num_(std::vector<mpz_class>{c.get_num()}), den_(std::vector<mpz_class>{c.get_den()}) {
    if (num_.is_zero()) den_ = Poly(1);
}

Scalar::Scalar(int shift, Poly num, Poly den) : shift_(shift), num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

Scalar Scalar::q() { return q_pow(1); }

Scalar Scalar::q_pow(long e) { return monomial(1, e); }

Scalar Scalar::monomial(const mpz_class& c, long e) {
    Scalar s;
    if (c == 0) return s;
    s.shift_ = static_cast<int>(e);
    s.num_ = Poly(std::vector<mpz_class>{c});
    return s;
}

Scalar Scalar::laurent(long lo, const std::vector<long>& coeffs) {
    std::vector<mpz_class> c;
    c.reserve(coeffs.size());
    for (long x : coeffs) c.emplace_back(x);
    return Scalar(static_cast<int>(lo), Poly(std::move(c)), Poly(1));
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        shift_ = 0;
        den_ = Poly(1);
        return;
    }
    int vn = num_.valuation();
    if (vn) {
        num_ = num_.shifted_down(vn);
        shift_ += vn;
    }
    int vd = den_.valuation();
    if (vd) {
        den_ = den_.shifted_down(vd);
        shift_ -= vd;
    }
    if (den_.is_one()) return;
    Poly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_.divexact(g);
        den_ = den_.divexact(g);
    }
    if (den_.lc() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int e = std::min(shift_, o.shift_);
    Poly a = num_.shifted_up(shift_ - e);
    Poly b = o.num_.shifted_up(o.shift_ - e);
    shift_ = e;
    if (den_ == o.den_) {
        num_ = a + b;
    } else if (den_.is_one()) {
        num_ = a * o.den_ + b;
        den_ = o.den_;
    } else if (o.den_.is_one()) {
        num_ = a + b * den_;
    } else {
        Poly g = poly_gcd(den_, o.den_);
        Poly d1 = den_.divexact(g);
        Poly d2 = o.den_.divexact(g);
        num_ = a * d2 + b * d1;
        den_ = den_ * d2;
    }
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = Scalar();
    shift_ += o.shift_;
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    if (!d2.is_one()) {
        Poly g = poly_gcd(n1, d2);
        if (!g.is_one()) {
            n1 = n1.divexact(g);
            d2 = d2.divexact(g);
        }
    }
    if (!d1.is_one()) {
        Poly g = poly_gcd(n2, d1);
        if (!g.is_one()) {
            n2 = n2.divexact(g);
            d1 = d1.divexact(g);
        }
    }
    num_ = n1 * n2;
    den_ = d1 * d2;
    if (den_.lc() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(q)");
    Scalar r;
    r.shift_ = -shift_;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.lc() < 0) {
        r.num_ = -r.num_;
        r.den_ = -r.den_;
    }
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::pow(long n) const {
    if (n < 0) return inv().pow(-n);
    Scalar r(1), b = *this;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

Scalar Scalar::dilate(int d) const {
    if (d == 1 || is_zero()) return *this;
    auto spread = [d](const Poly& p) {
        std::vector<mpz_class> c(static_cast<size_t>(p.degree()) * d + 1);
        for (size_t i = 0; i < p.size(); ++i) c[i * d] = p[i];
        return Poly(std::move(c));
    };
    Scalar r;
    r.shift_ = shift_ * d;
    r.num_ = spread(num_);
    r.den_ = spread(den_);
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
}

mpq_class Scalar::eval_at(const mpq_class& x) const {
    if (is_zero()) return 0;
    mpq_class d = den_.eval(x);
    if (d == 0 || (x == 0 && shift_ < 0)) throw std::domain_error("evaluation at a pole");
    mpq_class p = 1;
    mpq_class base = shift_ >= 0 ? x : mpq_class(1) / x;
    for (int k = 0; k < std::abs(shift_); ++k) p *= base;
    return p * num_.eval(x) / d;
}

namespace {

void write_terms(std::ostringstream& os, const Poly& p, int shift) {
    os << "( ";
    bool first = true;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!first) os << " + ";
        os << p[i].get_str() << "*q^" << (shift + static_cast<int>(i));
        first = false;
    }
    if (first) os << "0*q^0";
    os << " )";
}

// Parses "c*q^e + c*q^e ..." into a Laurent polynomial q^lo * P.
Scalar parse_terms(const std::string& s) {
    Scalar acc;
    std::string body;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t end = pos + 1;
        while (end < body.size() && body[end] != '+') ++end;
        std::string term = body.substr(pos, end - pos);
        pos = end + 1;
        size_t star = term.find('*');
        mpz_class c;
        long e = 0;
        if (star == std::string::npos) {
            if (term.size() > 1 && term[0] == 'q') {
                c = 1;
                e = std::stol(term.substr(term.find('^') + 1));
            } else if (term == "q") {
                c = 1;
                e = 1;
            } else {
                c = mpz_class(term);
            }
        } else {
            c = mpz_class(term.substr(0, star));
            std::string qp = term.substr(star + 1);
            size_t caret = qp.find('^');
            if (qp.empty() || qp[0] != 'q') throw std::invalid_argument("bad scalar term: " + term);
            e = caret == std::string::npos ? 1 : std::stol(qp.substr(caret + 1));
        }
        acc += Scalar::monomial(c, e);
    }
    return acc;
}

std::string strip_parens(const std::string& s) {
    size_t a = s.find('(');
    size_t b = s.rfind(')');
    if (a == std::string::npos || b == std::string::npos || b < a)
        throw std::invalid_argument("bad scalar string: " + s);
    return s.substr(a + 1, b - a - 1);
}

}  // namespace

std::string Scalar::to_string() const {
    std::ostringstream os;
    write_terms(os, num_, shift_);
    os << " / ";
    write_terms(os, den_, 0);
    return os.str();
}

Scalar Scalar::parse(const std::string& s) {
    // split at the '/' between the two parenthesised groups
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '/' && depth == 0) {
            Scalar n = parse_terms(strip_parens(s.substr(0, i)));
            Scalar d = parse_terms(strip_parens(s.substr(i + 1)));
            return n / d;
        }
    }
    if (s.find('(') != std::string::npos) return parse_terms(strip_parens(s));
    return parse_terms(s);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar q_int(long m, int d) {
    if (m < 0) return -q_int(-m, d);
    if (m == 0) return Scalar();
    std::vector<long> c(static_cast<size_t>(2 * d * (m - 1) + 1), 0);
    for (long k = 0; k < m; ++k) c[static_cast<size_t>(2 * d * k)] = 1;
    return Scalar::laurent(-d * (m - 1), c);
}

Scalar q_fact(long m, int d) {
    if (m < 0) throw std::invalid_argument("q_fact of negative integer");
    Scalar r(1);
    for (long k = 2; k <= m; ++k) r *= q_int(k, d);
    return r;
}

Scalar q_binom(long m, long k, int d) {
    if (k < 0) return Scalar();
    if (m >= 0 && k > m) return Scalar();
    Scalar r(1);
    for (long j = 0; j < k; ++j) r *= q_int(m - j, d);
    return r / q_fact(k, d);
}

}  // namespace qg
