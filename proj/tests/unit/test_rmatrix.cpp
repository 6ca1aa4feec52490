#include <doctest.h>

#include "qg/rmatrix.hpp"

using namespace qg;

namespace {

std::shared_ptr<const RootDatum> rdp(const char* nm) { return std::make_shared<const RootDatum>(RootDatum::from_name(nm)); }

std::shared_ptr<const FinModule> hw(const std::shared_ptr<const RootDatum>& rd, const Weight& l) {
    return std::make_shared<const FinModule>(FinModule::highest_weight(rd, l));
}

void require_all(const std::vector<RelationCheck>& rs) {
    for (const auto& r : rs) {
        INFO(r.relation << " " << r.witness);
        CHECK(r.pass);
    }
}

}  // namespace

TEST_CASE("rank one quasi R-matrix") {
    auto rd = rdp("A1");
    const FinModule v = FinModule::seed(rd);
    const Matrix e = v.dense([&](const MVec& x) { return v.apply_e(0, x); });
    const Matrix f = v.dense([&](const MVec& x) { return v.apply_f(0, x); });
    const Scalar q = Scalar::q();
    const Matrix want = Matrix::identity(4) + kron(e, f).scaled(q - q.inv());
    CHECK(quasi_r_op({0}, v, v) == want);
}

TEST_CASE("quasi R-matrix does not depend on the reduced word") {
    auto rd = rdp("A2");
    for (auto [l, m] : {std::pair{Weight{1, 0}, Weight{0, 1}}, std::pair{Weight{1, 1}, Weight{1, 0}}}) {
        auto V = hw(rd, l), W = hw(rd, m);
        CHECK(quasi_r_op({0, 1, 0}, *V, *W) == quasi_r_op({1, 0, 1}, *V, *W));
        CHECK(constant_r(V, W, {0, 1, 0}).mat == constant_r(V, W, {1, 0, 1}).mat);
    }
    auto b = rdp("B2");
    auto V = hw(b, {1, 0}), W = hw(b, {0, 1});
    CHECK(quasi_r_op({0, 1, 0, 1}, *V, *W) == quasi_r_op({1, 0, 1, 0}, *V, *W));
}

TEST_CASE("constant R-matrix intertwines the coproducts") {
    for (const char* nm : {"A1", "A2", "B2", "G2"}) {
        auto rd = rdp(nm);
        std::vector<Weight> ws;
        for (int i = 0; i < rd->rank(); ++i) ws.push_back(rd->fundamental(i));
        for (const auto& l : ws)
            for (const auto& m : ws) {
                if (std::string(nm) == "G2" && l != m) continue;
                auto V = hw(rd, l), W = hw(rd, m);
                const ConstantR r = constant_r(V, W, rd->w0_word());
                INFO(std::string(nm));
                require_all(intertwining_check(r));
                const Matrix inv = inverse(r.mat);
                CHECK(inv * r.mat == Matrix::identity(r.mat.rows()));
                // highest weight vectors
                const mpq_class e = rd->inner_weights(l, m) - r.shift;
                CHECK(r.mat.at(0, 0) == Scalar::q_pow(e.get_num().get_si()));
            }
    }
}

TEST_CASE("fractional exponent of R") {
    auto rd = rdp("A2");
    auto V = hw(rd, {1, 0});
    const ConstantR r = constant_r(V, V, rd->w0_word());
    CHECK(r.shift == mpq_class(2, 3));
    CHECK(r.exponent(0) == mpq_class(2, 3));
    auto rd1 = rdp("A1");
    auto v1 = hw(rd1, {1});
    CHECK(constant_r(v1, v1, {0}).shift == mpq_class(1, 2));
}

TEST_CASE("lowest entries of R") {
    for (const char* nm : {"A1", "A2", "B2"}) {
        auto rd = rdp(nm);
        for (int i = 0; i < rd->rank(); ++i)
            for (int j = 0; j < rd->rank(); ++j) {
                INFO(std::string(nm) << " " << i << " " << j);
                const ConstantR r = constant_r(hw(rd, rd->fundamental(i)), hw(rd, rd->fundamental(j)), rd->w0_word());
                require_all(lowest_entry_check(r, i));
            }
    }
}

TEST_CASE("RTT relations") {
    auto a1 = rdp("A1");
    require_all(rtt_check(a1, {1}, {1}, 3, {0}));
    auto a2 = rdp("A2");
    require_all(rtt_check(a2, {1, 0}, {1, 0}, 2, {0, 1, 0}));
}

TEST_CASE("A_q(sl2) relations from matrix coefficients") { require_all(sl2_coordinate_relations(3)); }

TEST_CASE("commutation with fundamental matrix coefficients") {
    auto a2 = rdp("A2");
    require_all(commutation_functional_checks(a2, {1, 0}, 2));
    auto a1 = rdp("A1");
    require_all(commutation_functional_checks(a1, {2}, 3));
}

TEST_CASE("coproduct of the braid operators") {
    for (const char* nm : {"A1", "A2", "B2"}) {
        auto rd = rdp(nm);
        INFO(std::string(nm));
        require_all(coproduct_s_check(hw(rd, rd->fundamental(0)), hw(rd, rd->fundamental(rd->rank() - 1))));
    }
}

TEST_CASE("R preserves weight and is triangular") {
    for (const char* nm : {"A2", "B2"}) {
        auto rd = rdp(nm);
        auto V = hw(rd, rd->fundamental(0)), W = hw(rd, rd->fundamental(1));
        const ConstantR r = constant_r(V, W, rd->w0_word());
        const auto wv = dense_weights(*V), ww = dense_weights(*W);
        const size_t dw = W->dim();
        for (size_t row = 0; row < r.mat.rows(); ++row)
            for (size_t col = 0; col < r.mat.cols(); ++col) {
                if (r.mat.at(row, col).is_zero()) continue;
                // u_s (x) u_t in the image of u_k (x) u_l: wt_k - wt_s = wt_t - wt_l is a sum of positive roots.
                const Weight& s = wv[row / dw];
                const Weight& k = wv[col / dw];
                const Weight& t = ww[row % dw];
                const Weight& l = ww[col % dw];
                Weight d1(s.size()), d2(s.size());
                for (size_t a = 0; a < s.size(); ++a) {
                    d1[a] = k[a] - s[a];
                    d2[a] = t[a] - l[a];
                }
                CHECK(d1 == d2);
                for (const auto& c : rd->weight_to_root(d1)) CHECK(c >= 0);
            }
    }
}

TEST_CASE("R-matrix JSON dump") {
    auto rd = rdp("A1");
    auto v = hw(rd, {1});
    const auto j = constant_r_json(constant_r(v, v, {0}));
    CHECK(j["shift"] == "1/2");
    CHECK(j["entries"].size() == 5);
    CHECK(j["entries"][0]["row"] == nlohmann::json::array({1, 1}));
    CHECK(Scalar::parse(j["entries"][2]["coeff"].get<std::string>()) == Scalar(1) - Scalar::q_pow(-2));
}
