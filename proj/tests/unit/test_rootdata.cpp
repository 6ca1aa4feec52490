#include <doctest.h>

#include "qg/rootdata.hpp"

using qg::RootDatum;
using qg::RootVec;
using qg::Weight;

TEST_CASE("Cartan conventions") {
    RootDatum b2('B', 2), g2('G', 2);
    CHECK(b2.cartan(0, 1) == -1);
    CHECK(b2.cartan(1, 0) == -2);
    CHECK(b2.d(0) == 2);
    CHECK(b2.d(1) == 1);
    CHECK(g2.cartan(0, 1) == -3);
    CHECK(g2.cartan(1, 0) == -1);
    CHECK(g2.d(0) == 1);
    CHECK(g2.d(1) == 3);
    for (const char* nm : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"}) {
        RootDatum r = RootDatum::from_name(nm);
        for (int i = 0; i < r.rank(); ++i)
            for (int j = 0; j < r.rank(); ++j) CHECK(r.d(i) * r.cartan(i, j) == r.d(j) * r.cartan(j, i));
    }
    CHECK_THROWS(RootDatum::from_name("E8"));
    CHECK_THROWS(RootDatum::from_name("G3"));
    CHECK_THROWS(RootDatum::from_name("A"));
}

TEST_CASE("positive roots and reduced words") {
    struct Case {
        const char* name;
        int roots;
        size_t words;
    };
    for (auto c : {Case{"A1", 1, 1}, Case{"A2", 3, 2}, Case{"A3", 6, 16}, Case{"B2", 4, 2}, Case{"G2", 6, 2},
                   Case{"B3", 9, 42}, Case{"C3", 9, 42}}) {
        RootDatum r = RootDatum::from_name(c.name);
        CHECK(r.num_positive_roots() == c.roots);
        auto words = r.reduced_words_w0();
        CHECK(words.size() == c.words);
        for (const auto& w : words) {
            CHECK(r.is_reduced_w0(w));
            auto seq = r.root_sequence(w);
            RootVec sum(static_cast<size_t>(r.rank()), 0);
            RootVec csum(static_cast<size_t>(r.rank()), 0);
            for (const auto& b : seq) {
                CHECK(r.is_positive_root(b));
                auto cb = r.coroot(b);
                for (int i = 0; i < r.rank(); ++i) {
                    sum[static_cast<size_t>(i)] += b[static_cast<size_t>(i)];
                    csum[static_cast<size_t>(i)] += cb[static_cast<size_t>(i)];
                }
            }
            // sum of positive roots is 2 rho: <h_i, 2 rho> = 2
            CHECK(r.root_to_weight(sum) == Weight(static_cast<size_t>(r.rank()), 2));
            // sum of positive coroots pairs to 2 with every simple root
            for (int j = 0; j < r.rank(); ++j) {
                int s = 0;
                for (int i = 0; i < r.rank(); ++i) s += csum[static_cast<size_t>(i)] * r.cartan(i, j);
                CHECK(s == 2);
            }
        }
    }
    CHECK_FALSE(RootDatum('A', 2).is_reduced_w0({0, 0, 1}));
    CHECK_FALSE(RootDatum('A', 2).is_reduced_w0({0, 1}));
}

TEST_CASE("root sequences") {
    RootDatum b2('B', 2);
    auto s = b2.root_sequence({0, 1, 0, 1});
    CHECK(s == std::vector<RootVec>{{1, 0}, {1, 1}, {1, 2}, {0, 1}});
    RootDatum g2('G', 2);
    auto roots = g2.positive_roots();
    CHECK(roots == std::vector<RootVec>{{0, 1}, {1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 2}});
    RootDatum a2('A', 2);
    CHECK(a2.root_sequence({0, 1, 0}) == std::vector<RootVec>{{1, 0}, {1, 1}, {0, 1}});
}

TEST_CASE("w0 and duality") {
    RootDatum a2('A', 2), a3('A', 3), b2('B', 2), g2('G', 2);
    CHECK(a2.w0_dual(0) == 1);
    CHECK(a3.w0_dual(0) == 2);
    CHECK(a3.w0_dual(1) == 1);
    CHECK(b2.w0_dual(0) == 0);
    CHECK(g2.w0_dual(1) == 1);
    CHECK(a2.w0_weight({1, 0}) == Weight{0, -1});
}

TEST_CASE("inner products") {
    RootDatum a1('A', 1), a2('A', 2), g2('G', 2);
    CHECK(a1.inner_weights({1}, {1}) == mpq_class(1, 2));
    CHECK(a2.inner_weights({1, 0}, {1, 0}) == mpq_class(2, 3));
    CHECK(a2.inner_weights({1, 0}, {0, 1}) == mpq_class(1, 3));
    CHECK(g2.inner_roots({1, 0}, {0, 1}) == -3);
    CHECK(g2.inner_roots({0, 1}, {0, 1}) == 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(g2.inner_weights(g2.alpha(i), g2.fundamental(j)) == (i == j ? g2.d(i) : 0));
}

TEST_CASE("Weyl dimension formula") {
    RootDatum a2('A', 2), b2('B', 2), g2('G', 2);
    CHECK(a2.weyl_dimension({1, 1}) == 8);
    CHECK(a2.weyl_dimension({2, 0}) == 6);
    CHECK(b2.weyl_dimension({1, 0}) == 5);
    CHECK(b2.weyl_dimension({0, 1}) == 4);
    CHECK(b2.weyl_dimension({1, 1}) == 16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            long v = (a + 1L) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) * (a + 3 * b + 4) * (2 * a + 3 * b + 5) / 120;
            CHECK(g2.weyl_dimension({a, b}) == v);
        }
    CHECK(g2.weyl_dimension({3, 2}) == 1547);
}
