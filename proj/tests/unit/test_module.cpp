#include <doctest.h>

#include "qg/repmod.hpp"

using namespace qg;

namespace {

std::shared_ptr<const RootDatum> rdp(const char* nm) { return std::make_shared<const RootDatum>(RootDatum::from_name(nm)); }

// Compare two operators on every basis vector.
template <class A, class B>
bool same_operator(const FinModule& m, A&& a, B&& b) {
    for (size_t s = 0; s < m.num_spaces(); ++s)
        for (size_t k = 0; k < m.space(s).dim; ++k)
            if (a(m.basis_vector(s, k)) != b(m.basis_vector(s, k))) return false;
    return true;
}

}  // namespace

TEST_CASE("highest weight modules match the Weyl dimension") {
    struct Case {
        const char* name;
        Weight l;
    };
    for (const auto& c : {Case{"A1", {3}}, Case{"A2", {1, 1}}, Case{"A2", {2, 1}}, Case{"A3", {1, 0, 1}},
                          Case{"B2", {1, 1}}, Case{"B2", {0, 2}}, Case{"G2", {1, 0}}, Case{"G2", {0, 1}},
                          Case{"B3", {0, 0, 1}}, Case{"C3", {1, 0, 0}}}) {
        auto rd = rdp(c.name);
        FinModule m = FinModule::highest_weight(rd, c.l);
        CHECK(mpz_class(static_cast<unsigned long>(m.dim())) == rd->weyl_dimension(c.l));
        CHECK_NOTHROW(m.check_relations());
    }
}

TEST_CASE("seed modules") {
    for (const char* nm : {"A1", "A2", "A3", "B2", "G2"}) {
        auto rd = rdp(nm);
        FinModule s = FinModule::seed(rd);
        FinModule h = FinModule::highest_weight(rd, rd->fundamental(0));
        CHECK(s.dim() == h.dim());
        // e_i f_i acts by the same scalar on every weight space of both
        for (size_t t = 0; t < s.num_spaces(); ++t) {
            auto ht = h.find(s.space(t).wt);
            REQUIRE(ht);
            for (int i = 0; i < rd->rank(); ++i) {
                MVec a = s.apply_e(i, s.apply_f(i, s.basis_vector(t, 0)));
                MVec b = h.apply_e(i, h.apply_f(i, h.basis_vector(*ht, 0)));
                CHECK(a.coeff(t, 0) == b.coeff(*ht, 0));
            }
        }
    }
}

TEST_CASE("tensor products and cyclic submodules") {
    auto b2 = rdp("B2");
    FinModule v = FinModule::seed(b2);
    FinModule vv = FinModule::tensor(v, v);
    CHECK(vv.dim() == 25);
    CHECK_NOTHROW(vv.check_relations());
    std::vector<MVec> emb;
    FinModule sub = vv.cyclic_submodule(vv.top_vector(), &emb);
    CHECK(mpz_class(static_cast<unsigned long>(sub.dim())) == b2->weyl_dimension({2, 0}));
    CHECK(emb.size() == sub.dim());
    CHECK_NOTHROW(sub.check_relations());
}

TEST_CASE("sl2 S on small modules") {
    auto a1 = rdp("A1");
    FinModule v1 = FinModule::highest_weight(a1, {1});
    MVec u0 = v1.basis_vector(0, 0), u1 = v1.basis_vector(1, 0);
    CHECK(s_op_strings(v1, 0, 1, u0) == u1.scaled(-Scalar::q()));
    CHECK(s_op_strings(v1, 0, 1, u1) == u0);
    CHECK(s_op(v1, 0, 1, u0) == u1.scaled(-Scalar::q()));
    CHECK(s_op(v1, 0, 1, u1) == u0);
    FinModule v2 = FinModule::highest_weight(a1, {2});
    MVec w1 = v2.apply_f(0, v2.top_vector());
    CHECK(s_op_strings(v2, 0, 1, w1) == w1.scaled(-Scalar::q_pow(2)));
}

TEST_CASE("S_i: exponential product agrees with string decomposition") {
    for (const char* nm : {"A2", "B2", "G2"}) {
        auto rd = rdp(nm);
        FinModule m = FinModule::highest_weight(rd, rd->rho());
        for (int i = 0; i < rd->rank(); ++i)
            for (int sign : {1, -1}) {
                CAPTURE(nm);
                CAPTURE(i);
                CAPTURE(sign);
                CHECK(same_operator(
                    m, [&](const MVec& u) { return s_op(m, i, sign, u); },
                    [&](const MVec& u) { return s_op_strings(m, i, sign, u); }));
            }
        for (int i = 0; i < rd->rank(); ++i)
            CHECK(same_operator(
                m, [&](const MVec& u) { return s_op_strings(m, i, -1, s_op_strings(m, i, 1, u)); },
                [&](const MVec& u) { return u; }));
    }
}

TEST_CASE("S_i satisfy the braid relations and conjugate generators") {
    for (const char* nm : {"A2", "B2", "G2"}) {
        auto rd = rdp(nm);
        FinModule m = FinModule::highest_weight(rd, rd->rho());
        const int mij = rd->braid_order(0, 1);
        Word a, b;
        for (int t = 0; t < mij; ++t) {
            a.push_back(t % 2);
            b.push_back(1 - t % 2);
        }
        CAPTURE(nm);
        CHECK(same_operator(
            m, [&](const MVec& u) { return s_word(m, a, 1, u); }, [&](const MVec& u) { return s_word(m, b, 1, u); }));
        for (int i = 0; i < rd->rank(); ++i) {
            // S_i e_i S_i^{-1} = -f_i k_i and S_i f_i S_i^{-1} = -k_i^{-1} e_i
            RootVec ai = rd->simple_root(i), mai = ai;
            for (auto& x : mai) x = -x;
            CHECK(same_operator(
                m, [&](const MVec& u) { return s_op_strings(m, i, 1, m.apply_e(i, s_op_strings(m, i, -1, u))); },
                [&](const MVec& u) { return m.apply_f(i, m.apply_k(ai, u)).scaled(Scalar(-1)); }));
            CHECK(same_operator(
                m, [&](const MVec& u) { return s_op_strings(m, i, 1, m.apply_f(i, s_op_strings(m, i, -1, u))); },
                [&](const MVec& u) { return m.apply_k(mai, m.apply_e(i, u)).scaled(Scalar(-1)); }));
        }
    }
}

TEST_CASE("right action is the transpose") {
    auto rd = rdp("B2");
    FinModule m = FinModule::highest_weight(rd, {1, 1});
    const size_t n = m.dim();
    for (size_t a = 0; a < n; a += 3) {
        Vec x(n);
        x[a] = Scalar(1);
        MVec phi = m.from_dense(x);
        for (size_t s = 0; s < m.num_spaces(); ++s)
            for (size_t k = 0; k < m.space(s).dim; ++k) {
                MVec u = m.basis_vector(s, k);
                for (int i = 0; i < 2; ++i) {
                    CHECK(m.pairing(m.right_e(i, phi), u) == m.pairing(phi, m.apply_e(i, u)));
                    CHECK(m.pairing(m.right_f(i, phi), u) == m.pairing(phi, m.apply_f(i, u)));
                    CHECK(m.pairing(s_op_right(m, i, 1, phi), u) == m.pairing(phi, s_op_strings(m, i, 1, u)));
                }
            }
    }
}

TEST_CASE("lowest vectors") {
    for (const char* nm : {"A2", "B2", "G2"}) {
        auto rd = rdp(nm);
        Weight l = rd->rho();
        FinModule m = FinModule::highest_weight(rd, l);
        for (const Word& w0 : rd->reduced_words_w0()) {
            MVec u = lowest_vector(m, w0);
            REQUIRE(u.parts.size() == 1);
            CHECK(m.space(u.parts.begin()->first).wt == rd->w0_weight(l));
            for (int i = 0; i < rd->rank(); ++i) CHECK(m.apply_f(i, u).is_zero());
            MVec v = lowest_covector(m, w0);
            CHECK(m.pairing(v, u) != Scalar());
        }
    }
}

TEST_CASE("braid conjugation agrees with the explicit sums") {
    for (const char* nm : {"A2", "B2", "G2", "A3"}) {
        auto rd = rdp(nm);
        for (int j = 0; j < rd->rank(); ++j)
            for (int l = 0; l < rd->rank(); ++l) {
                if (j == l) continue;
                for (Side side : {Side::E, Side::F}) {
                    CAPTURE(nm);
                    CAPTURE(j);
                    CAPTURE(l);
                    WordPoly g = WordPoly::generator(rd, side, l);
                    WordPoly direct = braid_direct(rd, side, j, l);
                    WordPoly conj = braid_step(j, g);
                    // the conjugated form is expressed in the greedy word basis; compare on a module
                    FinModule m = FinModule::highest_weight(rd, rd->rho());
                    CHECK(same_operator(
                        m, [&](const MVec& u) { return m.apply_poly(direct, u); },
                        [&](const MVec& u) { return m.apply_poly(conj, u); }));
                }
            }
    }
    auto a2 = rdp("A2");
    WordPoly f = braid_root_vector_f(a2, {0, 1, 0}, 1);
    WordPoly expect = WordPoly::word(a2, Side::F, {1, 0}) - WordPoly::word(a2, Side::F, {0, 1}, Scalar::q());
    FinModule m = FinModule::highest_weight(a2, {1, 1});
    CHECK(same_operator(
        m, [&](const MVec& u) { return m.apply_poly(f, u); }, [&](const MVec& u) { return m.apply_poly(expect, u); }));
    CHECK(braid_root_vector_f(a2, {0, 1, 0}, 2) == WordPoly::generator(a2, Side::F, 1));
}

TEST_CASE("multi-indices") {
    std::vector<RootVec> betas{{1, 0}, {1, 1}, {0, 1}};
    auto ms = multi_indices_of_weight(betas, {1, 1});
    REQUIRE(ms.size() == 2);
    CHECK(ms[0] == MultiIndex{0, 1, 0});
    CHECK(ms[1] == MultiIndex{1, 0, 1});
    CHECK(multi_indices_up_to(3, 2).size() == 10);
    CHECK(multi_index_weight(betas, {1, 2, 0}) == RootVec{3, 2});
}

TEST_CASE("root vectors along reduced words") {
    auto a2 = rdp("A2");
    auto ep = root_vectors(a2, {0, 1, 0}, Family::PrimePlus);
    REQUIRE(ep.size() == 3);
    CHECK(ep[0] == WordPoly::generator(a2, Side::E, 0));
    CHECK(ep[1] == WordPoly::word(a2, Side::E, {1, 0}) - WordPoly::word(a2, Side::E, {0, 1}, Scalar::q()));
    CHECK(ep[2] == WordPoly::generator(a2, Side::E, 1));
    for (const char* nm : {"A2", "B2", "G2", "A3"}) {
        auto rd = rdp(nm);
        for (const Word& w : rd->reduced_words_w0()) {
            auto betas = rd->root_sequence(w);
            for (Family fam : {Family::PrimePlus, Family::DoublePrimePlus, Family::PrimeMinus, Family::DoublePrimeMinus}) {
                auto xs = root_vectors(rd, w, fam);
                for (size_t k = 0; k < xs.size(); ++k) {
                    CAPTURE(nm);
                    CAPTURE(k);
                    CHECK(xs[k].side() == Side::E);
                    CHECK(xs[k].weight() == betas[k]);
                }
            }
        }
    }
}
