// Dense exact linear algebra over Q(q).
#pragma once

#include <optional>
#include <vector>

#include "qg/scalar.hpp"

namespace qg {

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);
void axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a x

class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}
    static Matrix identity(size_t n);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Scalar& at(size_t i, size_t j) { return d_[i * c_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return d_[i * c_ + j]; }

    Vec col(size_t j) const;
    void set_col(size_t j, const Vec& v);
    Vec apply(const Vec& x) const;            // M x
    Vec apply_transpose(const Vec& y) const;  // M^T y
    Matrix transpose() const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(const Scalar& s) const;
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Scalar> d_;
};

// Echelon basis grown one vector at a time; expresses dependent vectors
// as combinations of the accepted ones.
class IncrementalBasis {
public:
    explicit IncrementalBasis(size_t dim) : dim_(dim) {}

    size_t rank() const { return rows_.size(); }
    size_t dim() const { return dim_; }

    // Coefficients over the accepted vectors, or nullopt if v is independent.
    std::optional<Vec> express(const Vec& v) const;
    // Adds v if independent; returns true when added.
    bool add(const Vec& v);

private:
    struct Row {
        Vec r;       // reduced vector, r[pivot] == 1
        size_t pivot;
        Vec comb;    // r = sum comb[k] * accepted_k
    };
    // Reduces x in place, returning the combination subtracted.
    Vec reduce(Vec& x) const;
    size_t dim_;
    std::vector<Row> rows_;
};

size_t rank(const Matrix& m);
// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Matrix& m);
// Solves m x = b; nullopt if inconsistent. Throws if the columns are dependent.
std::optional<Vec> solve_unique(const Matrix& m, const Vec& b);
Matrix inverse(const Matrix& m);

}  // namespace qg
