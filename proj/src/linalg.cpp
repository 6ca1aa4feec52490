#include "qg/linalg.hpp"

#include <stdexcept>

namespace qg {

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (a.is_zero()) return;
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) y[i] += a * x[i];
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Vec Matrix::col(size_t j) const {
    Vec v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
}

void Matrix::set_col(size_t j, const Vec& v) {
    for (size_t i = 0; i < r_; ++i) at(i, j) = v[i];
}

Vec Matrix::apply(const Vec& x) const {
    Vec y(r_);
    for (size_t j = 0; j < c_; ++j) {
        if (x[j].is_zero()) continue;
        for (size_t i = 0; i < r_; ++i)
            if (!at(i, j).is_zero()) y[i] += at(i, j) * x[j];
    }
    return y;
}

Vec Matrix::apply_transpose(const Vec& y) const {
    Vec x(c_);
    for (size_t i = 0; i < r_; ++i) {
        if (y[i].is_zero()) continue;
        for (size_t j = 0; j < c_; ++j)
            if (!at(i, j).is_zero()) x[j] += at(i, j) * y[i];
    }
    return x;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : d_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
        for (size_t k = 0; k < a.c_; ++k) {
            const Scalar& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.c_; ++j)
                if (!b.at(k, j).is_zero()) m.at(i, j) += x * b.at(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m = a;
    for (size_t i = 0; i < m.d_.size(); ++i) m.d_[i] += b.d_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix m = *this;
    for (auto& x : m.d_) x *= s;
    return m;
}

Vec IncrementalBasis::reduce(Vec& x) const {
    Vec alpha(rows_.size());
    for (const auto& row : rows_) {
        const Scalar c = x[row.pivot];
        if (c.is_zero()) continue;
        for (size_t i = 0; i < dim_; ++i)
            if (!row.r[i].is_zero()) x[i] -= c * row.r[i];
        axpy(alpha, c, row.comb);
    }
    return alpha;
}

std::optional<Vec> IncrementalBasis::express(const Vec& v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
    Vec x = v;
    Vec alpha = reduce(x);
    if (!is_zero(x)) return std::nullopt;
    return alpha;
}

bool IncrementalBasis::add(const Vec& v) {
    if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
    Vec x = v;
    Vec alpha = reduce(x);
    size_t piv = dim_;
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        if (piv == dim_ || x[i].complexity() < x[piv].complexity()) piv = i;
    }
    if (piv == dim_) return false;
    const size_t n = rows_.size();
    Scalar inv = x[piv].inv();
    for (auto& e : x)
        if (!e.is_zero()) e *= inv;
    Vec comb(n + 1);
    for (size_t k = 0; k < n; ++k) comb[k] = -alpha[k] * inv;
    comb[n] = inv;
    for (auto& row : rows_) row.comb.emplace_back();
    rows_.push_back(Row{std::move(x), piv, std::move(comb)});
    return true;
}

size_t rank(const Matrix& m) {
    IncrementalBasis b(m.rows());
    for (size_t j = 0; j < m.cols(); ++j) b.add(m.col(j));
    return b.rank();
}

std::vector<Vec> nullspace(const Matrix& m) {
    IncrementalBasis b(m.rows());
    std::vector<size_t> accepted;
    std::vector<Vec> out;
    for (size_t j = 0; j < m.cols(); ++j) {
        Vec c = m.col(j);
        if (auto alpha = b.express(c)) {
            Vec k(m.cols());
            k[j] = Scalar(1);
            for (size_t t = 0; t < accepted.size(); ++t) k[accepted[t]] = -(*alpha)[t];
            out.push_back(std::move(k));
        } else {
            b.add(c);
            accepted.push_back(j);
        }
    }
    return out;
}

std::optional<Vec> solve_unique(const Matrix& m, const Vec& rhs) {
    IncrementalBasis b(m.rows());
    for (size_t j = 0; j < m.cols(); ++j)
        if (!b.add(m.col(j))) throw std::runtime_error("solve_unique: dependent columns");
    return b.express(rhs);
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const size_t n = m.rows();
    IncrementalBasis b(n);
    for (size_t j = 0; j < n; ++j)
        if (!b.add(m.col(j))) throw std::runtime_error("singular matrix");
    Matrix inv(n, n);
    for (size_t i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = Scalar(1);
        inv.set_col(i, *b.express(e));
    }
    return inv;
}

}  // namespace qg
