#include "qg/rmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace qg {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ia = 0; ia < a.rows(); ++ia)
        for (size_t ja = 0; ja < a.cols(); ++ja) {
            const Scalar& x = a.at(ia, ja);
            if (x.is_zero()) continue;
            for (size_t ib = 0; ib < b.rows(); ++ib)
                for (size_t jb = 0; jb < b.cols(); ++jb)
                    if (!b.at(ib, jb).is_zero()) m.at(ia * b.rows() + ib, ja * b.cols() + jb) = x * b.at(ib, jb);
        }
    return m;
}

Matrix poly_matrix(const FinModule& m, const WordPoly& x) {
    return m.dense([&](const MVec& v) { return m.apply_poly(x, v); });
}

std::vector<Weight> dense_weights(const FinModule& m) {
    std::vector<Weight> w;
    for (size_t s = 0; s < m.num_spaces(); ++s)
        for (size_t k = 0; k < m.space(s).dim; ++k) w.push_back(m.space(s).wt);
    return w;
}

namespace {

Scalar exp_coeff(int d, int n) {
    const Scalar qd = Scalar::q_pow(d);
    return Scalar::q_pow(static_cast<long>(d) * n * (n - 1) / 2) * (qd - qd.inv()).pow(n) / q_fact(n, d);
}

// Powers x^0, x^1, ... up to the last nonzero one.
std::vector<Matrix> powers(const Matrix& x) {
    std::vector<Matrix> p{Matrix::identity(x.rows())};
    while (true) {
        Matrix nx = p.back() * x;
        if (nx.is_zero()) break;
        p.push_back(std::move(nx));
        if (p.size() > x.rows() + 1) throw std::logic_error("non-nilpotent root vector");
    }
    return p;
}

// One factor exp_{q_d}((q_d - q_d^{-1}) A (x) B) of a product over the word.
struct ExpFactor {
    int d;
    std::vector<Matrix> a, b;  // powers

    // Applied to a coefficient matrix C (u_a (x) u_b has coefficient C(a, b)): sum c_n A^n C (B^n)^T.
    Matrix apply(const Matrix& c) const {
        Matrix r(c.rows(), c.cols());
        const size_t top = std::min(a.size(), b.size());
        for (size_t n = 0; n < top; ++n) {
            Matrix t = a[n] * c * b[n].transpose();
            if (t.is_zero()) continue;
            r = r + t.scaled(exp_coeff(d, static_cast<int>(n)));
        }
        return r;
    }
};

Matrix columns_from(size_t dv, size_t dw, const std::function<Matrix(const Matrix&)>& op) {
    Matrix m(dv * dw, dv * dw);
    for (size_t a = 0; a < dv; ++a)
        for (size_t b = 0; b < dw; ++b) {
            Matrix c(dv, dw);
            c.at(a, b) = Scalar(1);
            Matrix r = op(c);
            for (size_t x = 0; x < dv; ++x)
                for (size_t y = 0; y < dw; ++y)
                    if (!r.at(x, y).is_zero()) m.at(x * dw + y, a * dw + b) = r.at(x, y);
        }
    return m;
}

std::vector<ExpFactor> word_factors(const Word& i, const FinModule& left, const FinModule& right, bool flipped) {
    auto rd = left.root_datum_ptr();
    auto& cache = RootVectorCache::instance();
    std::vector<ExpFactor> fs;
    // Application order: k = N first, so the operator is R~_1 R~_2 ... R~_N.
    for (size_t k = i.size(); k-- > 0;) {
        const WordPoly e = cache.get(rd, i, static_cast<int>(k), 'e');
        const WordPoly f = cache.get(rd, i, static_cast<int>(k), 'f');
        ExpFactor x;
        x.d = rd->d(i[k]);
        x.a = powers(poly_matrix(left, flipped ? f : e));
        x.b = powers(poly_matrix(right, flipped ? e : f));
        fs.push_back(std::move(x));
    }
    return fs;
}

Matrix diag_k(const FinModule& m, int i, int sign) {
    const auto w = dense_weights(m);
    Matrix k(w.size(), w.size());
    const long d = m.root_datum().d(i);
    for (size_t a = 0; a < w.size(); ++a) k.at(a, a) = Scalar::q_pow(sign * d * w[a][static_cast<size_t>(i)]);
    return k;
}

Matrix gen_matrix(const FinModule& m, char gen, int i) {
    if (gen == 'e') return m.dense([&](const MVec& v) { return m.apply_e(i, v); });
    if (gen == 'f') return m.dense([&](const MVec& v) { return m.apply_f(i, v); });
    return diag_k(m, i, 1);
}

std::string format_scalar(const Scalar& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

Scalar q_int_pow(const mpq_class& e) {
    if (e.get_den() != 1) throw std::logic_error("non-integral q exponent");
    return Scalar::q_pow(e.get_num().get_si());
}

}  // namespace

Matrix quasi_r_op(const Word& i, const FinModule& v, const FinModule& w) {
    const auto fs = word_factors(i, v, w, false);
    return columns_from(v.dim(), w.dim(), [&](const Matrix& c0) {
        Matrix c = c0;
        for (const auto& f : fs) c = f.apply(c);
        return c;
    });
}

ConstantR constant_r(std::shared_ptr<const FinModule> v, std::shared_ptr<const FinModule> w, const Word& i) {
    const RootDatum& rd = v->root_datum();
    ConstantR r;
    r.v = v;
    r.w = w;
    const mpq_class top = rd.inner_weights(v->top_weight(), w->top_weight());
    r.shift = top - mpz_class(top.get_num() / top.get_den());
    if (r.shift < 0) r.shift += 1;
    r.shift.canonicalize();
    const auto fs = word_factors(i, *v, *w, true);
    const auto wv = dense_weights(*v), ww = dense_weights(*w);
    r.mat = columns_from(v->dim(), w->dim(), [&](const Matrix& c0) {
        Matrix c = c0;
        for (const auto& f : fs) c = f.apply(c);
        for (size_t a = 0; a < c.rows(); ++a)
            for (size_t b = 0; b < c.cols(); ++b)
                if (!c.at(a, b).is_zero()) c.at(a, b) *= q_int_pow(rd.inner_weights(wv[a], ww[b]) - r.shift);
        return c;
    });
    return r;
}

nlohmann::ordered_json constant_r_json(const ConstantR& r) {
    using nlohmann::ordered_json;
    const size_t dw = r.w->dim();
    ordered_json entries = ordered_json::array();
    for (size_t col = 0; col < r.mat.cols(); ++col)
        for (size_t row = 0; row < r.mat.rows(); ++row)
            if (!r.mat.at(row, col).is_zero())
                entries.push_back({{"row", {row / dw + 1, row % dw + 1}},
                                   {"col", {col / dw + 1, col % dw + 1}},
                                   {"coeff", r.mat.at(row, col).to_string()}});
    return {{"lambda", r.v->top_weight()},
            {"mu", r.w->top_weight()},
            {"shift", r.shift.get_str()},
            {"basis_v", dense_weights(*r.v)},
            {"basis_w", dense_weights(*r.w)},
            {"entries", entries}};
}

Matrix coproduct_matrix(const FinModule& v, const FinModule& w, char gen, int i, bool opposite) {
    const Matrix iv = Matrix::identity(v.dim()), iw = Matrix::identity(w.dim());
    const Matrix xv = gen_matrix(v, gen, i), xw = gen_matrix(w, gen, i);
    if (gen == 'k') return kron(xv, xw);
    const Matrix kv = diag_k(v, i, 1), kw = diag_k(w, i, 1);
    const Matrix kvi = diag_k(v, i, -1), kwi = diag_k(w, i, -1);
    if (gen == 'e') return opposite ? kron(iv, xw) + kron(xv, kw) : kron(xv, iw) + kron(kv, xw);
    if (gen == 'f') return opposite ? kron(kvi, xw) + kron(xv, iw) : kron(xv, kwi) + kron(iv, xw);
    throw std::invalid_argument("generator must be e, f or k");
}

std::vector<RelationCheck> intertwining_check(const ConstantR& r) {
    std::vector<RelationCheck> out;
    const int n = r.v->root_datum().rank();
    for (char g : {'e', 'f', 'k'})
        for (int i = 0; i < n; ++i) {
            RelationCheck c{std::string("R Delta(") + g + "_" + std::to_string(i + 1) + ") = Delta'R", true, ""};
            Matrix lhs = r.mat * coproduct_matrix(*r.v, *r.w, g, i, false);
            Matrix rhs = coproduct_matrix(*r.v, *r.w, g, i, true) * r.mat;
            if (!(lhs == rhs)) {
                c.pass = false;
                Matrix d = lhs - rhs;
                for (size_t a = 0; a < d.rows() && c.witness.empty(); ++a)
                    for (size_t b = 0; b < d.cols(); ++b)
                        if (!d.at(a, b).is_zero()) {
                            c.witness = "entry (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
                            break;
                        }
            }
            out.push_back(c);
        }
    return out;
}

std::vector<RelationCheck> lowest_entry_check(const ConstantR& r, int i) {
    const FinModule& V = *r.v;
    const FinModule& W = *r.w;
    const RootDatum& rd = V.root_datum();
    const size_t dw = W.dim();
    const auto ww = dense_weights(W);
    std::vector<RelationCheck> out;

    // Lowest weight vector of V(varpi_i): the last dense index.
    const size_t low = V.dim() - 1;
    RelationCheck c1{"lowest column", true, ""};
    const Weight w0l = rd.w0_weight(V.top_weight());
    for (size_t l = 0; l < dw && c1.pass; ++l)
        for (size_t row = 0; row < r.mat.rows(); ++row) {
            const Scalar& x = r.mat.at(row, low * dw + l);
            const Scalar want = row == low * dw + l ? q_int_pow(rd.inner_weights(w0l, ww[l]) - r.shift) : Scalar();
            if (x != want) {
                c1.pass = false;
                c1.witness = "column u_low x u_" + std::to_string(l + 1) + ", row " + std::to_string(row + 1);
                break;
            }
        }
    out.push_back(c1);

    // (v_2 x v_t) R = q^{(varpi_i - alpha_i, xi)} (v_2 x v_t + (q_i - q_i^{-1}) v_1 x v_t e_i)
    RelationCheck c2{"second row", true, ""};
    const MVec v1 = V.top_vector(), v2 = V.right_e(i, v1);
    const Vec d1 = V.to_dense(v1), d2 = V.to_dense(v2);
    Weight top = V.top_weight();
    for (size_t k = 0; k < top.size(); ++k) top[k] -= rd.alpha(i)[k];
    const long di = rd.d(i);
    const Scalar qd = Scalar::q_pow(di) - Scalar::q_pow(-di);
    for (size_t t = 0; t < dw && c2.pass; ++t) {
        Vec vt(dw);
        vt[t] = Scalar(1);
        const Vec vte = W.to_dense(W.right_e(i, W.from_dense(vt)));
        const Scalar pre = q_int_pow(rd.inner_weights(top, ww[t]) - r.shift);
        for (size_t col = 0; col < r.mat.cols(); ++col) {
            const size_t k = col / dw, l = col % dw;
            Scalar lhs;
            for (size_t a = 0; a < V.dim(); ++a)
                if (!d2[a].is_zero()) lhs += d2[a] * r.mat.at(a * dw + t, col);
            Scalar rhs = d2[k] * (l == t ? Scalar(1) : Scalar()) + qd * d1[k] * vte[l];
            rhs *= pre;
            if (lhs != rhs) {
                c2.pass = false;
                c2.witness = "row v_2 x v_" + std::to_string(t + 1) + ", column " + std::to_string(col + 1);
                break;
            }
        }
    }
    out.push_back(c2);
    return out;
}

namespace {

std::vector<RootVec> monomial_betas(const RootDatum& rd) {
    std::vector<RootVec> b{RootVec(static_cast<size_t>(rd.rank()), 0)};
    for (int i = 0; i < rd.rank(); ++i) {
        RootVec p = rd.simple_root(i), m = p;
        for (auto& x : m) x = -x;
        b.push_back(p);
        b.push_back(m);
    }
    return b;
}

std::vector<MVec> dense_basis(const FinModule& m) {
    std::vector<MVec> b;
    for (size_t s = 0; s < m.num_spaces(); ++s)
        for (size_t k = 0; k < m.space(s).dim; ++k) b.push_back(m.basis_vector(s, k));
    return b;
}

std::string describe(const Monomial& p) {
    std::ostringstream os;
    os << "f[";
    for (size_t k = 0; k < p.f.size(); ++k) os << (k ? "," : "") << p.f[k] + 1;
    os << "] k[";
    for (size_t k = 0; k < p.beta.size(); ++k) os << (k ? "," : "") << p.beta[k];
    os << "] e[";
    for (size_t k = 0; k < p.e.size(); ++k) os << (k ? "," : "") << p.e[k] + 1;
    os << "]";
    return os.str();
}

}  // namespace

std::vector<RelationCheck> rtt_check(std::shared_ptr<const RootDatum> rd, const Weight& lambda, const Weight& mu,
                                     int degree, const Word& i) {
    auto V = std::make_shared<const FinModule>(FinModule::highest_weight(rd, lambda));
    auto W = std::make_shared<const FinModule>(FinModule::highest_weight(rd, mu));
    const ConstantR r = constant_r(V, W, i);
    const size_t dv = V->dim(), dw = W->dim();
    const auto bv = dense_basis(*V), bw = dense_basis(*W);
    const auto mons = triangular_monomials(rd->rank(), degree, monomial_betas(*rd));

    // ab[(m, k, p, l)][P] = <phi^V_{mk} phi^W_{pl}, P>, ba[(t, p, s, m)][P] = <phi^W_{tp} phi^V_{sm}, P>.
    auto idx4 = [](size_t a, size_t b, size_t c, size_t d, size_t nb, size_t nc, size_t nd) {
        return ((a * nb + b) * nc + c) * nd + d;
    };
    std::vector<Vec> ab(dv * dv * dw * dw), ba(dw * dw * dv * dv);
    for (size_t m = 0; m < dv; ++m)
        for (size_t k = 0; k < dv; ++k)
            for (size_t p = 0; p < dw; ++p)
                for (size_t l = 0; l < dw; ++l) {
                    Vec x, y;
                    for (const auto& mon : mons) {
                        x.push_back(mco_eval({{V.get(), bv[m], bv[k]}, {W.get(), bw[p], bw[l]}}, mon));
                        y.push_back(mco_eval({{W.get(), bw[p], bw[l]}, {V.get(), bv[m], bv[k]}}, mon));
                    }
                    ab[idx4(m, k, p, l, dv, dw, dw)] = std::move(x);
                    ba[idx4(p, l, m, k, dw, dv, dv)] = std::move(y);
                }

    RelationCheck c{"RTT", true, ""};
    for (size_t s = 0; s < dv && c.pass; ++s)
        for (size_t t = 0; t < dw && c.pass; ++t)
            for (size_t k = 0; k < dv && c.pass; ++k)
                for (size_t l = 0; l < dw && c.pass; ++l) {
                    Vec lhs(mons.size()), rhs(mons.size());
                    for (size_t m = 0; m < dv; ++m)
                        for (size_t p = 0; p < dw; ++p) {
                            const Scalar& x = r.mat.at(s * dw + t, m * dw + p);
                            if (!x.is_zero()) axpy(lhs, x, ab[idx4(m, k, p, l, dv, dw, dw)]);
                            const Scalar& y = r.mat.at(m * dw + p, k * dw + l);
                            if (!y.is_zero()) axpy(rhs, y, ba[idx4(t, p, s, m, dw, dv, dv)]);
                        }
                    for (size_t a = 0; a < mons.size(); ++a)
                        if (lhs[a] != rhs[a]) {
                            c.pass = false;
                            c.witness = "(s,t,k,l)=(" + std::to_string(s + 1) + "," + std::to_string(t + 1) + "," +
                                        std::to_string(k + 1) + "," + std::to_string(l + 1) + ") on " +
                                        describe(mons[a]);
                            break;
                        }
                }
    return {c};
}

std::vector<RelationCheck> sl2_coordinate_relations(int degree) {
    auto rd = std::make_shared<const RootDatum>(RootDatum::from_name("A1"));
    const FinModule v = FinModule::seed(rd);
    const MVec v1 = v.top_vector(), v2 = v.right_e(0, v1);
    const MVec u1 = v.top_vector(), u2 = v.apply_f(0, u1);
    const MVec vs[2] = {v1, v2}, us[2] = {u1, u2};
    const auto mons = triangular_monomials(1, degree, monomial_betas(*rd));
    const Scalar q = Scalar::q();

    // Terms: coefficient and the two letters (code 2(a-1) + (b-1)); constant term separately.
    struct Rel {
        std::string name;
        std::vector<std::pair<Scalar, std::pair<int, int>>> terms;
        Scalar constant;
    };
    const std::vector<Rel> rels = {
        {"t11 t21 = q t21 t11", {{1, {0, 2}}, {-q, {2, 0}}}, 0},
        {"t12 t22 = q t22 t12", {{1, {1, 3}}, {-q, {3, 1}}}, 0},
        {"t11 t12 = q t12 t11", {{1, {0, 1}}, {-q, {1, 0}}}, 0},
        {"t21 t22 = q t22 t21", {{1, {2, 3}}, {-q, {3, 2}}}, 0},
        {"t12 t21 = t21 t12", {{1, {1, 2}}, {-1, {2, 1}}}, 0},
        {"[t11, t22] = (q - q^-1) t21 t12", {{1, {0, 3}}, {-1, {3, 0}}, {-(q - q.inv()), {2, 1}}}, 0},
        {"t11 t22 - q t12 t21 = 1", {{1, {0, 3}}, {-q, {1, 2}}}, 1},
    };
    std::vector<RelationCheck> out;
    for (const auto& rel : rels) {
        RelationCheck c{rel.name, true, ""};
        for (const auto& mon : mons) {
            Scalar s = -rel.constant * counit(mon);
            for (const auto& [coef, w] : rel.terms)
                s += coef * mco_eval({{&v, vs[w.first / 2], us[w.first % 2]}, {&v, vs[w.second / 2], us[w.second % 2]}},
                                     mon);
            if (!s.is_zero()) {
                c.pass = false;
                c.witness = "on " + describe(mon) + ": " + format_scalar(s);
                break;
            }
        }
        out.push_back(c);
    }
    return out;
}

std::vector<RelationCheck> commutation_functional_checks(std::shared_ptr<const RootDatum> rd, const Weight& mu,
                                                         int degree) {
    const Word w0 = rd->w0_word();
    const FinModule vm = FinModule::highest_weight(rd, mu);
    const auto mons = triangular_monomials(rd->rank(), degree, monomial_betas(*rd));
    std::vector<RelationCheck> out;
    for (int i = 0; i < rd->rank(); ++i) {
        const Weight wi = rd->fundamental(i);
        const FinModule vi = FinModule::highest_weight(rd, wi);
        const MVec top = vi.top_vector(), low = lowest_vector(vi, w0);
        const MVec tope = vi.right_e(i, top);
        const long di = rd->d(i);
        const Scalar qd = Scalar::q_pow(di) - Scalar::q_pow(-di);
        Weight shifted = wi;
        for (size_t k = 0; k < shifted.size(); ++k) shifted[k] -= rd->alpha(i)[k];
        const Weight w0wi = rd->w0_weight(wi);
        RelationCheck c1{"sigma_" + std::to_string(i + 1) + " commutation", true, ""};
        RelationCheck c2{"sigma_" + std::to_string(i + 1) + " e_" + std::to_string(i + 1) + " commutation", true, ""};
        for (size_t sv = 0; sv < vm.num_spaces(); ++sv)
            for (size_t kv = 0; kv < vm.space(sv).dim; ++kv)
                for (size_t su = 0; su < vm.num_spaces(); ++su)
                    for (size_t ku = 0; ku < vm.space(su).dim; ++ku) {
                        const MVec v = vm.basis_vector(sv, kv), u = vm.basis_vector(su, ku);
                        const MVec ve = vm.right_e(i, v);
                        const Weight& xi = vm.space(sv).wt;
                        const Weight& nu = vm.space(su).wt;
                        const Scalar a1 = q_int_pow(rd->inner_weights(wi, xi) - rd->inner_weights(w0wi, nu));
                        const Scalar a2 = q_int_pow(rd->inner_weights(w0wi, nu) - rd->inner_weights(shifted, xi));
                        for (const auto& mon : mons) {
                            if (c1.pass) {
                                Scalar l = a1 * mco_eval({{&vi, top, low}, {&vm, v, u}}, mon);
                                Scalar r = mco_eval({{&vm, v, u}, {&vi, top, low}}, mon);
                                if (l != r) {
                                    c1.pass = false;
                                    c1.witness = "v" + std::to_string(vm.offset(sv) + kv + 1) + " u" +
                                                 std::to_string(vm.offset(su) + ku + 1) + " on " + describe(mon);
                                }
                            }
                            if (c2.pass) {
                                Scalar l = mco_eval({{&vi, tope, low}, {&vm, v, u}}, mon) -
                                           a2 * mco_eval({{&vm, v, u}, {&vi, tope, low}}, mon);
                                Scalar r = ve.is_zero() ? Scalar()
                                                        : -qd * mco_eval({{&vi, top, low}, {&vm, ve, u}}, mon);
                                if (l != r) {
                                    c2.pass = false;
                                    c2.witness = "v" + std::to_string(vm.offset(sv) + kv + 1) + " u" +
                                                 std::to_string(vm.offset(su) + ku + 1) + " on " + describe(mon);
                                }
                            }
                        }
                    }
        out.push_back(c1);
        out.push_back(c2);
    }
    return out;
}

std::vector<RelationCheck> coproduct_s_check(std::shared_ptr<const FinModule> v, std::shared_ptr<const FinModule> w) {
    const FinModule t = FinModule::tensor(*v, *w);
    const RootDatum& rd = v->root_datum();
    std::vector<RelationCheck> out;
    for (int i = 0; i < rd.rank(); ++i) {
        const int d = rd.d(i);
        RelationCheck c1{"Delta(S_" + std::to_string(i + 1) + ") = (S x S) exp(f x e)", true, ""};
        RelationCheck c2{"Delta(S_" + std::to_string(i + 1) + ") = exp(k^-1 e x f k) (S x S)", true, ""};
        for (size_t sa = 0; sa < v->num_spaces(); ++sa)
            for (size_t ka = 0; ka < v->space(sa).dim; ++ka)
                for (size_t sb = 0; sb < w->num_spaces(); ++sb)
                    for (size_t kb = 0; kb < w->space(sb).dim; ++kb) {
                        const MVec x = v->basis_vector(sa, ka), y = w->basis_vector(sb, kb);
                        const MVec lhs = s_op(t, i, +1, t.pure_tensor(x, y));
                        MVec r1, r2;
                        MVec fx = x, ey = y;
                        for (int n = 0; !fx.is_zero() && !ey.is_zero(); ++n) {
                            r1 += t.pure_tensor(s_op(*v, i, +1, fx), s_op(*w, i, +1, ey)).scaled(exp_coeff(d, n));
                            fx = v->apply_f(i, fx);
                            ey = w->apply_e(i, ey);
                        }
                        MVec sx = s_op(*v, i, +1, x), sy = s_op(*w, i, +1, y);
                        RootVec neg = rd.simple_root(i);
                        for (auto& z : neg) z = -z;
                        for (int n = 0; !sx.is_zero() && !sy.is_zero(); ++n) {
                            r2 += t.pure_tensor(sx, sy).scaled(exp_coeff(d, n));
                            sx = v->apply_k(neg, v->apply_e(i, sx));
                            sy = w->apply_f(i, w->apply_k(rd.simple_root(i), sy));
                        }
                        const std::string tag = "basis pair (" + std::to_string(v->offset(sa) + ka + 1) + "," +
                                                std::to_string(w->offset(sb) + kb + 1) + ")";
                        if (c1.pass && lhs != r1) {
                            c1.pass = false;
                            c1.witness = tag;
                        }
                        if (c2.pass && lhs != r2) {
                            c2.pass = false;
                            c2.witness = tag;
                        }
                    }
        out.push_back(c1);
        out.push_back(c2);
    }
    return out;
}

}  // namespace qg
