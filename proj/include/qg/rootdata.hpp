// Cartan data, Weyl group combinatorics and reduced words of the longest element.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qg {

using Weight = std::vector<int>;   // coordinates in the fundamental weights
using RootVec = std::vector<int>;  // coordinates in the simple roots
using Word = std::vector<int>;     // 0-based node indices

// Node conventions: a_ij = <h_i, alpha_j>, (alpha_i, alpha_j) = d_i a_ij, short roots have d = 1.
//   B_n: alpha_n short.  C_n: alpha_n long.  G_2: alpha_1 short, alpha_2 long (d = 1, 3).
class RootDatum {
public:
    RootDatum(char type, int rank);
    // "A2", "b3", "G2", ...
    static RootDatum from_name(const std::string& name);

    char type() const { return type_; }
    int rank() const { return n_; }
    std::string name() const;

    int cartan(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    int d(int i) const { return d_[static_cast<size_t>(i)]; }
    // Bond order m_ij of s_i s_j.
    int braid_order(int i, int j) const;

    Weight fundamental(int i) const;
    Weight rho() const;
    Weight alpha(int i) const;
    Weight root_to_weight(const RootVec& b) const;
    std::vector<mpq_class> weight_to_root(const Weight& l) const;
    RootVec simple_root(int i) const;
    int height(const RootVec& b) const;

    // (beta, lambda) for beta in the root lattice; always an integer.
    int inner(const RootVec& b, const Weight& l) const;
    int inner_roots(const RootVec& a, const RootVec& b) const;
    mpq_class inner_weights(const Weight& l, const Weight& m) const;
    // <h_i, beta>
    int pair_h(int i, const RootVec& b) const;
    // Coroot of a root in simple-coroot coordinates.
    RootVec coroot(const RootVec& b) const;

    Weight reflect(int i, const Weight& l) const;
    RootVec reflect_root(int i, const RootVec& b) const;
    // s_{w_1} ... s_{w_k} applied to l (rightmost first).
    Weight act(const Word& w, const Weight& l) const;
    RootVec act_root(const Word& w, const RootVec& b) const;

    std::vector<RootVec> positive_roots() const;  // by height, then lexicographic
    int num_positive_roots() const;
    bool is_positive_root(const RootVec& b) const;

    // Lexicographically smallest reduced word of w0.
    Word w0_word() const;
    // All reduced words of w0 (braid-move closure), sorted.
    std::vector<Word> reduced_words_w0() const;
    bool is_reduced_w0(const Word& w) const;
    // beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})
    std::vector<RootVec> root_sequence(const Word& w) const;
    // i' with w0 varpi_{i'} = -varpi_i
    int w0_dual(int i) const;
    Weight w0_weight(const Weight& l) const;

    // Weyl dimension formula.
    mpz_class weyl_dimension(const Weight& l) const;

    bool operator==(const RootDatum& o) const { return type_ == o.type_ && n_ == o.n_; }

private:
    char type_;
    int n_;
    std::vector<int> a_;
    std::vector<int> d_;
    std::vector<mpq_class> ainv_;  // inverse Cartan matrix, row-major
};

}  // namespace qg
