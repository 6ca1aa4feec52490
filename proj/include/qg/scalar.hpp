// Exact elements of Q(q): rational functions with bignum coefficients.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

// Dense polynomial in Z[q], ascending coefficients, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(long c);
    explicit Poly(std::vector<mpz_class> coeffs);

    static Poly monomial(const mpz_class& c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& lc() const { return c_.back(); }
    const mpz_class& operator[](size_t i) const { return c_[i]; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    size_t size() const { return c_.size(); }

    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    // Multiplicity of q as a factor.
    int valuation() const;
    Poly shifted_down(int k) const;
    Poly shifted_up(int k) const;

    mpz_class content() const;
    Poly primitive_part() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly mul_scalar(const mpz_class& s) const;
    // Exact division; throws if the division leaves a remainder.
    Poly divexact(const Poly& d) const;
    Poly divexact_scalar(const mpz_class& s) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    mpq_class eval(const mpq_class& x) const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

// gcd in Z[q] with positive leading coefficient.
Poly poly_gcd(const Poly& a, const Poly& b);

// Canonical value q^shift * num / den with gcd(num, den) = 1 (content included),
// num(0) != 0 and den(0) != 0, lc(den) > 0. Zero is shift 0, num 0, den 1.
class Scalar {
public:
    Scalar();
    Scalar(long c);  // NOLINT(google-explicit-constructor)
    explicit Scalar(const mpq_class& c);
    Scalar(int shift, Poly num, Poly den);

    static Scalar q();
    static Scalar q_pow(long e);
    static Scalar monomial(const mpz_class& c, long e);
    // Laurent polynomial sum c_k q^(lo + k).
    static Scalar laurent(long lo, const std::vector<long>& coeffs);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }
    // Single term c q^e with c an integer.
    bool is_monomial() const { return den_.is_one() && num_.size() == 1; }

    int shift() const { return shift_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar inv() const;
    Scalar pow(long n) const;
    // Substitute q -> q^d for d >= 1.
    Scalar dilate(int d) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Throws std::domain_error at a pole.
    mpq_class eval_at(const mpq_class& x) const;

    // Rough size used for pivot selection.
    size_t complexity() const { return num_.size() + den_.size(); }

    // "( c0*q^e0 + c1*q^e1 ) / ( d0*q^0 + ... )", ascending exponents.
    std::string to_string() const;
    static Scalar parse(const std::string& s);

private:
    void normalize();
    int shift_ = 0;
    Poly num_;
    Poly den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// [m]_d = (q^{dm} - q^{-dm}) / (q^d - q^{-d}) for m >= 0; negative m gives -[-m]_d.
Scalar q_int(long m, int d = 1);
Scalar q_fact(long m, int d = 1);
// Gaussian binomial [m choose k]_d for m in Z, k >= 0.
Scalar q_binom(long m, long k, int d = 1);

}  // namespace qg
