// The Drinfeld pairing between U_q^{>=0} and U_q^{<=0}, Gram coordinates and PBW transitions.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qg/linalg.hpp"
#include "qg/repmod.hpp"
#include "qg/wordalg.hpp"

namespace qg {

// Values (X, Y) for Y running over the f-words of the content of X (lexicographic).
struct GramVector {
    RootVec content;
    std::vector<Word> words;
    Vec values;

    bool is_zero() const { return qg::is_zero(values); }
};

class DrinfeldPairing {
public:
    // Shared instance per root datum.
    static DrinfeldPairing& for_datum(std::shared_ptr<const RootDatum> rd);
    explicit DrinfeldPairing(std::shared_ptr<const RootDatum> rd) : rd_(std::move(rd)) {}

    const std::shared_ptr<const RootDatum>& root_datum_ptr() const { return rd_; }

    // (x, y) for a dressed e-side x and a dressed f-side y.
    Scalar pair(const WordPoly& x, const WordPoly& y);
    // Gram vector of an undressed homogeneous e-polynomial; `content` is used when x is zero.
    GramVector gram_vector(const WordPoly& x, const RootVec& content);
    GramVector gram_vector(const WordPoly& x) { return gram_vector(x, x.weight()); }
    // Coordinates of x in a linearly independent list of elements of the same weight.
    // Throws std::invalid_argument on a dependent basis, std::domain_error if x is outside the span.
    Vec coords_in_basis(const WordPoly& x, const std::vector<WordPoly>& basis);

private:
    // (e_w, f_y) times prod_i (q_i - q_i^{-1})^{content_i}, for all f-words y of the content of w.
    const std::map<Word, Scalar>& raw(const Word& w);
    Scalar prefactor(const RootVec& content) const;

    std::shared_ptr<const RootDatum> rd_;
    std::mutex mu_;
    std::map<Word, std::map<Word, Scalar>> memo_;
};

// Antipode on dressed f-side and e-side polynomials: S(f_i) = -f_i k_i, S(e_i) = -k_i^{-1} e_i.
WordPoly antipode(const WordPoly& x);

// Gamma_m^n with e'_{i,1}(m) = sum_n Gamma_m^n e'_{j,1}(n).
std::map<MultiIndex, Scalar> transition_gamma(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                              const MultiIndex& m);

// Weight block of Gamma(i -> j): rows are source multi-indices, columns target multi-indices.
struct TransitionBlock {
    RootVec weight;
    std::vector<MultiIndex> source, target;
    Matrix gamma;  // gamma.at(a, b) = Gamma_{source[a]}^{target[b]}
    double seconds = 0;  // wall time spent on the block
};
// Blocks are ordered by first occurrence of their weight among lexicographic m; `jobs` threads share them.
std::vector<TransitionBlock> transition_blocks(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j,
                                               int bound, int jobs = 1);

// Matrix of left multiplication by e_gen in the basis e'_{i,1}(m): columns indexed by the
// multi-indices of weight gamma, rows by those of weight gamma + alpha_gen.
struct LeftMulBlock {
    std::vector<MultiIndex> cols, rows;
    Matrix rho;
};
LeftMulBlock leftmul_matrix(std::shared_ptr<const RootDatum> rd, const Word& i, int gen, const RootVec& gamma);

// Right-hand side of the diagonal formula: prod_k q_k^{-m_k(m_k-1)/2} [m_k]_k! / (q_k - q_k^{-1})^{m_k}.
Scalar lusztig_diagonal(const RootDatum& rd, const Word& i, const MultiIndex& m);

}  // namespace qg
