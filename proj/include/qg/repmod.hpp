// Finite-dimensional integrable modules, S_i operators, braid conjugation and
// extraction of PBW root vectors as word polynomials.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qg/linalg.hpp"
#include "qg/rootdata.hpp"
#include "qg/wordalg.hpp"

namespace qg {

// Raised when an operation needs weight spaces below a truncated module's depth.
class TruncationError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct WeightSpace {
    Weight wt;
    int depth = 0;  // height of (top weight - wt); 0 for non-highest-weight modules
    size_t dim = 0;
};

// Vector of a module (or of its dual, for right actions) stored per weight space.
struct MVec {
    std::map<size_t, Vec> parts;

    bool is_zero() const;
    MVec& operator+=(const MVec& o);
    MVec& operator-=(const MVec& o);
    MVec scaled(const Scalar& s) const;
    friend bool operator==(const MVec& a, const MVec& b);
    friend bool operator!=(const MVec& a, const MVec& b) { return !(a == b); }
    // Coefficient of basis vector k of space s.
    Scalar coeff(size_t s, size_t k) const;
};

class FinModule {
public:
    // V(lambda) by top-down weight-space recursion; max_depth >= 0 truncates below that depth.
    static FinModule highest_weight(std::shared_ptr<const RootDatum> rd, const Weight& lambda, int max_depth = -1);
    // Explicit defining representation (A_n natural, B2 vector, G2 7-dim).
    static FinModule seed(std::shared_ptr<const RootDatum> rd);
    // Generator matrices assembled from the coproduct.
    static FinModule tensor(const FinModule& a, const FinModule& b);
    // Submodule generated by a highest weight vector v (e_i v = 0 for all i).
    // Basis: top vector, then f_i-images greedily as in highest_weight.
    // If embedding is given it receives the images of the new basis vectors in this module.
    FinModule cyclic_submodule(const MVec& v, std::vector<MVec>* embedding = nullptr) const;
    // x (x) y in a module built by tensor(a, b); x in a, y in b.
    MVec pure_tensor(const MVec& x, const MVec& y) const;

    const RootDatum& root_datum() const { return *rd_; }
    const std::shared_ptr<const RootDatum>& root_datum_ptr() const { return rd_; }
    size_t num_spaces() const { return spaces_.size(); }
    const WeightSpace& space(size_t s) const { return spaces_[s]; }
    std::optional<size_t> find(const Weight& w) const;
    size_t dim() const;
    bool truncated() const { return max_depth_ >= 0; }
    int max_depth() const { return max_depth_; }
    const Weight& top_weight() const { return spaces_.front().wt; }

    // Matrix of e_i (resp. f_i) from space s into the space of weight wt(s) +- alpha_i;
    // nullptr if that weight is absent. Throws when the block lies beyond a truncation.
    const Matrix* e_block(int i, size_t s) const;
    const Matrix* f_block(int i, size_t s) const;
    std::optional<size_t> e_target(int i, size_t s) const;
    std::optional<size_t> f_target(int i, size_t s) const;

    MVec basis_vector(size_t s, size_t k) const;
    MVec top_vector() const { return basis_vector(0, 0); }

    MVec apply_e(int i, const MVec& v) const;
    MVec apply_f(int i, const MVec& v) const;
    // k^beta for beta in the root lattice.
    MVec apply_k(const RootVec& beta, const MVec& v) const;
    MVec apply_word(Side side, const Word& w, const MVec& v) const;  // rightmost letter first
    MVec apply_poly(const WordPoly& x, const MVec& v) const;
    // Right actions on dual vectors: <phi X, u> = <phi, X u>.
    MVec right_e(int i, const MVec& phi) const;
    MVec right_f(int i, const MVec& phi) const;
    MVec right_k(const RootVec& beta, const MVec& phi) const;
    MVec right_word(Side side, const Word& w, const MVec& phi) const;  // leftmost letter first
    MVec right_poly(const WordPoly& x, const MVec& phi) const;
    Scalar pairing(const MVec& phi, const MVec& u) const;

    // Throws std::logic_error naming the first failing relation.
    void check_relations() const;

    // Dense matrix of a linear operator given by its action on basis vectors.
    template <class F>
    Matrix dense(F&& op) const;
    size_t offset(size_t s) const { return offsets_[s]; }
    MVec from_dense(const Vec& x) const;
    Vec to_dense(const MVec& v) const;

    // Matrix of S_i^{sign} from space s to the space of weight s_i(wt s), by sl2 strings. Memoized.
    const Matrix& s_block(int i, int sign, size_t s) const;

private:
    explicit FinModule(std::shared_ptr<const RootDatum> rd) : rd_(std::move(rd)) {}
    size_t add_space(const Weight& w, int depth, size_t dim);
    void finalize();

    std::shared_ptr<const RootDatum> rd_;
    std::vector<WeightSpace> spaces_;
    std::map<Weight, size_t> index_;
    // blocks_[side][i][s]
    std::vector<std::vector<std::optional<Matrix>>> eb_, fb_;
    std::vector<size_t> offsets_;
    int max_depth_ = -1;
    // For tensor products: (sa, sb) -> (space, offset), and the space dimensions of b.
    std::map<std::pair<size_t, size_t>, std::pair<size_t, size_t>> tensor_where_;
    std::vector<size_t> tensor_bdims_;

    struct SCache {
        std::mutex mu;
        std::map<std::tuple<int, int, size_t>, std::unique_ptr<Matrix>> blocks;
    };
    std::shared_ptr<SCache> scache_ = std::make_shared<SCache>();
};

template <class F>
Matrix FinModule::dense(F&& op) const {
    const size_t n = dim();
    Matrix m(n, n);
    for (size_t s = 0; s < num_spaces(); ++s)
        for (size_t k = 0; k < spaces_[s].dim; ++k) m.set_col(offsets_[s] + k, to_dense(op(basis_vector(s, k))));
    return m;
}

// ---------------------------------------------------------------- S operators

// Exponential-product S_i (sign = -1 gives S_i^{-1}); requires an untruncated module.
MVec s_op(const FinModule& m, int i, int sign, const MVec& v);
// S_i by sl2-string decomposition; valid on truncated modules inside the truncation.
MVec s_op_strings(const FinModule& m, int i, int sign, const MVec& v);
// Right action phi -> phi S_i^{sign}, i.e. <phi S, u> = <phi, S u>.
MVec s_op_right(const FinModule& m, int i, int sign, const MVec& phi);
// S_{w} = S_{w_1} ... S_{w_l}; sign -1 applies the inverse.
MVec s_word(const FinModule& m, const Word& w, int sign, const MVec& v);
MVec s_word_right(const FinModule& m, const Word& w, int sign, const MVec& phi);

// u_{w0 lambda} = S_{w0}^{-1} u_lambda and v_{w0 lambda} = v_lambda S_{w0}.
MVec lowest_vector(const FinModule& m, const Word& w0);
MVec lowest_covector(const FinModule& m, const Word& w0);

// ---------------------------------------------------------------- root vectors

// Families of PBW root vectors along a reduced word i.
enum class Family {
    PrimePlus,          // e'_{i,1;k} (e-side), ascending product
    DoublePrimeMinus,   // e''_{i,-1}(m) = (e'_{i,1}(m))^*
    DoublePrimePlus,    // e''_{i,1;k} (e-side), ascending product
    PrimeMinus          // e'_{i,-1}(m) = (e''_{i,1}(m))^*
};

// c_j >= gamma_j: lambda = sum gamma_j varpi_j (at least one nonzero).
Weight faithful_lambda(const RootVec& gamma);

// f''_{i,1;k} = T''_{i_1,1} ... T''_{i_{k-1},1}(f_{i_k}) (k is 0-based here).
WordPoly braid_root_vector_f(std::shared_ptr<const RootDatum> rd, const Word& i, int k);
// e''_{i,1;k} = T''_{i_1,1} ... T''_{i_{k-1},1}(e_{i_k}).
WordPoly braid_root_vector_e(std::shared_ptr<const RootDatum> rd, const Word& i, int k);
// One step T''_{j,1}(X) by conjugation, for X homogeneous on either side.
WordPoly braid_step(int j, const WordPoly& x);
// T''_{j,1}(e_l), T''_{j,1}(f_l) for j != l from the explicit sums.
WordPoly braid_direct(std::shared_ptr<const RootDatum> rd, Side side, int j, int l);

// Persistent, process-wide store of root vectors (optionally backed by a directory).
class RootVectorCache {
public:
    static RootVectorCache& instance();
    // Changing the directory, or turning recheck on, drops the in-memory entries so the disk is consulted.
    void set_directory(const std::string& dir);
    void set_recheck(bool on);
    // family: 'f' for f''_{i,1;k}, 'e' for e''_{i,1;k}
    WordPoly get(std::shared_ptr<const RootDatum> rd, const Word& i, int k, char family);
    void clear_memory();
    size_t recheck_failures() const { return recheck_failures_; }

private:
    std::string dir_;
    bool recheck_ = false;
    size_t recheck_failures_ = 0;
    std::map<std::string, WordPoly> mem_;
};

using MultiIndex = std::vector<int>;

// Root vectors of the given family (undressed e-side polynomials), index k = 0..N-1.
std::vector<WordPoly> root_vectors(std::shared_ptr<const RootDatum> rd, const Word& i, Family fam);
// PBW monomial of the family; Side::F gives the image under omega.
WordPoly pbw_monomial(std::shared_ptr<const RootDatum> rd, const Word& i, const MultiIndex& m, Family fam,
                      Side side = Side::E);

// All multi-indices with sum m_k beta_k = gamma, lexicographic.
std::vector<MultiIndex> multi_indices_of_weight(const std::vector<RootVec>& betas, const RootVec& gamma);
// All multi-indices with |m| <= bound, lexicographic.
std::vector<MultiIndex> multi_indices_up_to(size_t n, int bound);
RootVec multi_index_weight(const std::vector<RootVec>& betas, const MultiIndex& m);

// ---------------------------------------------------------------- matrix coefficients

// A factor <v, . u> of a product of matrix coefficients.
struct MatrixCoefficient {
    const FinModule* module;
    MVec v;  // dual vector
    MVec u;
};

// Triangular monomial f_word * k^beta * e_word.
struct Monomial {
    Word f;
    RootVec beta;
    Word e;
};

// <phi_1 ... phi_n, P> = <v_1 x ... x v_n, Delta^{(n-1)}(P) (u_1 x ... x u_n)>.
Scalar mco_eval(const std::vector<MatrixCoefficient>& factors, const Monomial& p);
// Counit of a triangular monomial.
Scalar counit(const Monomial& p);
// All triangular monomials with |f| + |e| <= degree and beta in the given list.
std::vector<Monomial> triangular_monomials(int rank, int degree, const std::vector<RootVec>& betas);

}  // namespace qg
