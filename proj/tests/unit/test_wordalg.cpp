#include <doctest.h>

#include "qg/serialize.hpp"
#include "qg/wordalg.hpp"

using namespace qg;

namespace {
std::shared_ptr<const RootDatum> rdp(const char* nm) { return std::make_shared<const RootDatum>(RootDatum::from_name(nm)); }
}  // namespace

TEST_CASE("words of content") {
    auto ws = words_of_content({2, 1});
    REQUIRE(ws.size() == 3);
    CHECK(ws[0] == Word{0, 0, 1});
    CHECK(ws[1] == Word{0, 1, 0});
    CHECK(ws[2] == Word{1, 0, 0});
    CHECK(words_of_content({0, 0}).size() == 1);
}

TEST_CASE("q-boson derivation") {
    auto a2 = rdp("A2");
    WordPoly e11 = WordPoly::word(a2, Side::E, {0, 0});
    WordPoly r = qboson_fprime(0, e11);
    CHECK(r == WordPoly::word(a2, Side::E, {0}, Scalar(1) + Scalar::q_pow(-2)));
    // twisted Leibniz rule on a product
    WordPoly x = WordPoly::word(a2, Side::E, {1, 0}) - WordPoly::word(a2, Side::E, {0, 1}, Scalar::q());
    WordPoly y = WordPoly::word(a2, Side::E, {0, 1, 0});
    for (int i = 0; i < 2; ++i) {
        int h = a2->pair_h(i, x.weight());
        WordPoly lhs = qboson_fprime(i, x * y);
        WordPoly rhs = qboson_fprime(i, x) * y + (x * qboson_fprime(i, y)).scaled(Scalar::q_pow(-a2->d(i) * h));
        CHECK(lhs == rhs);
    }
    // e2 e1 - q e1 e2 is killed by f'_2 and f'_1 sends it to (1 - q^2)... up to ordering
    WordPoly z = WordPoly::word(a2, Side::E, {1, 0}) - WordPoly::word(a2, Side::E, {0, 1}, Scalar::q());
    CHECK(qboson_fprime(0, z) == WordPoly::word(a2, Side::E, {1}, Scalar::q_pow(1) - Scalar::q()));
}

TEST_CASE("star and omega") {
    auto b2 = rdp("B2");
    WordPoly x(b2, Side::E);
    x.add_term({1, 0}, {0, 1, 1}, Scalar::q());
    x.add_term({0, 0}, {1, 0, 1}, Scalar(3));
    CHECK(x.star().star() == x);
    CHECK(x.omega().omega() == x);
    CHECK(x.omega().side() == Side::F);
    WordPoly y = WordPoly::word(b2, Side::E, {1, 0});
    // star is an anti-automorphism
    CHECK((x * y).star() == y.star() * x.star());
    CHECK((x * y).omega() == x.omega() * y.omega());
    WordPoly f = x.omega();
    CHECK((f * y.omega()).star() == y.omega().star() * f.star());
}

TEST_CASE("k normal ordering") {
    auto a1 = rdp("A1");
    WordPoly e = WordPoly::generator(a1, Side::E, 0);
    WordPoly k(a1, Side::E);
    k.add_term({1}, {}, Scalar(1));
    // e k = q^{-2} k e
    WordPoly ek = e * k;
    WordPoly expect(a1, Side::E);
    expect.add_term({1}, {0}, Scalar::q_pow(-2));
    CHECK(ek == expect);
    WordPoly f = WordPoly::generator(a1, Side::F, 0);
    WordPoly kf(a1, Side::F);
    kf.add_term({1}, {}, Scalar(1));
    WordPoly fk = f * kf;
    WordPoly expf(a1, Side::F);
    expf.add_term({1}, {0}, Scalar::q_pow(2));
    CHECK(fk == expf);
}

TEST_CASE("serialization round trip") {
    auto g2 = rdp("G2");
    WordPoly x(g2, Side::F);
    x.add_term({0, 2}, {0, 1, 0}, Scalar::parse("(q^2 + 1)/(q^3 - 2)"));
    x.add_term({0, 0}, {1, 0, 0}, Scalar(-5));
    CHECK(wordpoly_from_json(g2, Side::F, wordpoly_to_json(x)) == x);
    Scalar big = Scalar::q_pow(3) * Scalar(mpq_class("123456789012345678901234567890"));
    CHECK(scalar_from_json(scalar_to_json(big)) == big);
    CHECK(parse_word("1,2,1") == Word{0, 1, 0});
    CHECK(format_word({0, 1, 0}) == "1,2,1");
    CHECK_THROWS(parse_word("1,,2"));
    CHECK_THROWS(parse_word("0"));
    CHECK_THROWS(parse_word("a"));
}
