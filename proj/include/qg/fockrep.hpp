// Tensor Fock representations of the quantized coordinate ring along a reduced word,
// the generalized q-boson operators b_i^{+-} and the intertwiner matrix.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qg/dpair.hpp"
#include "qg/repmod.hpp"
#include "qg/report.hpp"

namespace qg {

// Finitely supported vector over the basis |m> (or |m>>, for normalized vectors).
using FockVec = std::map<MultiIndex, Scalar>;

void fock_add(FockVec& x, const MultiIndex& m, const Scalar& c);
void fock_axpy(FockVec& y, const Scalar& a, const FockVec& x);  // y += a x
FockVec fock_scaled(const FockVec& x, const Scalar& c);
bool fock_equal(const FockVec& a, const FockVec& b);

// ---------------------------------------------------------------- rank one

// Single-factor Fock operator of pi(t_{ab}) (a, b in {1, 2}) at parameter q^d applied to |m>:
// t11 -> a^-, t12 -> k, t21 -> -q k, t22 -> a^+.
std::vector<std::pair<int, Scalar>> pi_sl2_t(int a, int b, int d, int m);

// Noncommutative polynomial in the generators t_{ab}; letter code 2(a-1) + (b-1).
struct SL2Poly {
    std::map<std::vector<int>, Scalar> terms;
};

// Matrix coefficient Phi(v_s x u_t) of V(l) for the bases u_t = f^{(t)} u_0 and their dual,
// as a polynomial in t_{ab} (generic q).
SL2Poly sl2_mco_poly(int l, int s, int t);
// pi(poly) |m> at parameter q^d.
std::vector<std::pair<int, Scalar>> sl2_poly_apply(const SL2Poly& p, int d, int m);

// ---------------------------------------------------------------- operators

// Linear operator on the tensor Fock module, given on basis vectors and memoized.
// Results are exact: vectors are finitely supported, so no truncation enters the action.
class FockOperator {
public:
    using Fn = std::function<FockVec(const MultiIndex&)>;

    FockOperator() = default;
    FockOperator(Fn fn, RootVec shift);

    const RootVec& shift() const { return shift_; }
    FockVec apply(const MultiIndex& m) const;
    FockVec apply(const FockVec& x) const;

    FockOperator operator*(const FockOperator& o) const;  // composition, o first
    FockOperator operator+(const FockOperator& o) const;
    FockOperator operator-(const FockOperator& o) const;
    FockOperator scaled(const Scalar& c) const;
    // Inverse of an operator acting diagonally; throws std::domain_error otherwise.
    FockOperator diagonal_inverse() const;
    static FockOperator identity(size_t n);

private:
    struct Memo {
        Fn fn;
        std::mutex mu;
        std::map<MultiIndex, FockVec> cache;
    };
    std::shared_ptr<Memo> memo_;
    RootVec shift_;
};

// ---------------------------------------------------------------- Fock space

class FockSpace {
public:
    // Window: 0 <= m_k <= cutoffs[k].
    FockSpace(std::shared_ptr<const RootDatum> rd, Word word, std::vector<int> cutoffs);
    FockSpace(std::shared_ptr<const RootDatum> rd, Word word, int cutoff);

    const RootDatum& root_datum() const { return *rd_; }
    const std::shared_ptr<const RootDatum>& root_datum_ptr() const { return rd_; }
    const Word& word() const { return word_; }
    size_t size() const { return word_.size(); }
    const std::vector<RootVec>& betas() const { return betas_; }
    const std::vector<int>& cutoffs() const { return cutoffs_; }

    RootVec weight(const MultiIndex& m) const { return multi_index_weight(betas_, m); }
    bool in_window(const MultiIndex& m) const;
    // Window elements with |m| <= total, lexicographic.
    std::vector<MultiIndex> window(int total) const;
    std::vector<MultiIndex> window_of_weight(const RootVec& gamma) const;

    // Memoized V(lambda).
    std::shared_ptr<const FinModule> module(const Weight& lambda) const;
    // pi(Phi(v x u)) for v a dual vector and u a vector of V(lambda), both weight vectors.
    FockOperator mco_op(const Weight& lambda, const MVec& v, const MVec& u) const;

    FockOperator sigma(const Weight& lambda) const;
    FockOperator tau(const Weight& lambda) const;
    FockOperator sigma_e(int i) const;  // Phi(v_{varpi_i} e_i x u_{w0 varpi_i})
    FockOperator tau_f(int i) const;    // Phi(v_{w0 varpi_i'} f_i x u_{varpi_i'})
    FockOperator b_plus(int i) const;
    FockOperator b_minus(int i) const;

private:
    struct Contractor;
    std::shared_ptr<const Contractor> contractor(const Weight& lambda) const;

    std::shared_ptr<const RootDatum> rd_;
    Word word_;
    std::vector<int> cutoffs_;
    std::vector<RootVec> betas_;
    Word w0_;

    struct Cache {
        std::mutex mu;
        std::map<Weight, std::shared_ptr<const FinModule>> modules;
        std::map<Weight, std::shared_ptr<const Contractor>> contractors;
        std::map<std::pair<char, int>, FockOperator> ops;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Closed forms: eigenvalues of sigma_lambda and tau_lambda on |m>.
Scalar sigma_eigenvalue(const FockSpace& F, const Weight& lambda, const MultiIndex& m);
Scalar tau_eigenvalue(const FockSpace& F, const Weight& lambda, const MultiIndex& m);
// Factorized forms (t12)^{c_1} x ... and (t21)^{c'_1} x ... evaluated factorwise.
FockVec sigma_factorized(const FockSpace& F, const Weight& lambda, const MultiIndex& m);
FockVec tau_factorized(const FockSpace& F, const Weight& lambda, const MultiIndex& m);

// |m>> = normalization(m) |m>.
Scalar normalization(const FockSpace& F, const MultiIndex& m);
FockVec to_normalized(const FockSpace& F, const FockVec& x);
FockVec from_normalized(const FockSpace& F, const FockVec& x);

// Image of x |0> under e_i -> b_i^+, in normalized coordinates.
FockVec apply_eword(const FockSpace& F, const WordPoly& x);

// Psi_m^n with Psi(|m>>_i) = sum_n Psi_m^n |n>>_j, F built on j.
std::map<MultiIndex, Scalar> psi_matrix(const FockSpace& Fj, const Word& i, const MultiIndex& m);
std::map<MultiIndex, Scalar> psi_matrix(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                        const MultiIndex& m);
// Weight blocks of Psi(i -> j) for |m| <= bound, laid out as transition_blocks.
std::vector<TransitionBlock> psi_blocks(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                         int bound, int jobs = 1);

// ---------------------------------------------------------------- verification

// Operator identities on the window |m| <= total:
// GB1-GB4, commutation with matrix coefficients, (sigma_i e_i)-commutation and centrality of sigma_i tau_i^{-1}.
std::vector<RelationCheck> verify_relations(const FockSpace& F, int total);

}  // namespace qg
