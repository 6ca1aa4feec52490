// Universal R-matrix images on pairs of modules, constant R-matrices and RTT checks.
#pragma once

#include <memory>
#include <vector>

#include <json.hpp>

#include "qg/repmod.hpp"
#include "qg/report.hpp"

namespace qg {

// Operators on V (x) W are dense matrices on the basis u_a (x) u_b with index a * dim W + b,
// a and b being dense indices of V and W.
Matrix kron(const Matrix& a, const Matrix& b);
// Dense matrix of a word polynomial acting on a module.
Matrix poly_matrix(const FinModule& m, const WordPoly& x);
// Diagonal of weights: weight_of_index(m)[a] is the weight of basis vector a.
std::vector<Weight> dense_weights(const FinModule& m);

// R~_1 R~_2 ... R~_N on V (x) W for the reduced word i (e''-factors on V, f''-factors on W).
Matrix quasi_r_op(const Word& i, const FinModule& v, const FinModule& w);

// R = q^shift * mat with 0 <= shift < 1; R = (pi_V x pi_W)(sigma R-universal),
// normalized so that R(u_low x u) = q^{(w0 lambda, wt u)} u_low x u.
struct ConstantR {
    std::shared_ptr<const FinModule> v, w;
    mpq_class shift;
    Matrix mat;

    // Total exponent of q on an entry whose Laurent part is q^e.
    mpq_class exponent(long e) const { return shift + e; }
};
ConstantR constant_r(std::shared_ptr<const FinModule> v, std::shared_ptr<const FinModule> w, const Word& i);
// {"lambda", "mu", "shift", "basis_v": [weights], "basis_w": [weights], "entries": [{"row": [s, t], "col": [k, l],
// "coeff"}]} with 1-based dense indices.
nlohmann::ordered_json constant_r_json(const ConstantR& r);

// Delta(X) (opposite: Delta'(X)) on V (x) W for X = e_i ('e'), f_i ('f') or k_i ('k').
Matrix coproduct_matrix(const FinModule& v, const FinModule& w, char gen, int i, bool opposite);

// R Delta(X) = Delta'(X) R for all generators.
std::vector<RelationCheck> intertwining_check(const ConstantR& r);
// Entries R_{st, N_i l} for u_{N_i} lowest and rows (v_2 (x) v_t) R, for V = V(varpi_i).
std::vector<RelationCheck> lowest_entry_check(const ConstantR& r, int i);

// RTT relations sum R_{st,mp} phi_{mk} phi_{pl} = sum phi_{tp} phi_{sm} R_{mp,kl} as functionals
// on triangular monomials of degree <= degree.
std::vector<RelationCheck> rtt_check(std::shared_ptr<const RootDatum> rd, const Weight& lambda, const Weight& mu,
                                     int degree, const Word& i);
// The seven defining relations of A_q(sl2) among t_{ab}, as functionals.
std::vector<RelationCheck> sl2_coordinate_relations(int degree);
// sigma_i Phi(v x u) against Phi(v x u) sigma_i and the (sigma_i e_i)-commutation, as functionals on V(mu).
std::vector<RelationCheck> commutation_functional_checks(std::shared_ptr<const RootDatum> rd, const Weight& mu,
                                                         int degree);

// Delta(S_i) = (S_i x S_i) exp_{q_i}((q_i - q_i^{-1}) f_i x e_i)
//           = exp_{q_i}((q_i - q_i^{-1}) k_i^{-1} e_i x f_i k_i) (S_i x S_i) on pure tensors of V (x) W.
std::vector<RelationCheck> coproduct_s_check(std::shared_ptr<const FinModule> v, std::shared_ptr<const FinModule> w);

}  // namespace qg
