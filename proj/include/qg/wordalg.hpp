// Free word polynomials in the e's or the f's, with an optional k^beta dressing on the left.
#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "qg/rootdata.hpp"
#include "qg/scalar.hpp"

namespace qg {

enum class Side { E, F };

RootVec word_content(const Word& w, int rank);
// All words with the given content, lexicographically sorted.
std::vector<Word> words_of_content(const RootVec& content);

class WordPoly {
public:
    using Key = std::pair<RootVec, Word>;  // (dressing, word)

    WordPoly(std::shared_ptr<const RootDatum> rd, Side side) : rd_(std::move(rd)), side_(side) {}
    static WordPoly generator(std::shared_ptr<const RootDatum> rd, Side side, int i);
    static WordPoly one(std::shared_ptr<const RootDatum> rd, Side side);
    static WordPoly word(std::shared_ptr<const RootDatum> rd, Side side, const Word& w, Scalar c = Scalar(1));

    Side side() const { return side_; }
    const RootDatum& root_datum() const { return *rd_; }
    const std::shared_ptr<const RootDatum>& root_datum_ptr() const { return rd_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_undressed() const;
    size_t size() const { return terms_.size(); }

    void add_term(const RootVec& dress, const Word& w, const Scalar& c);
    void add_term(const Word& w, const Scalar& c);

    WordPoly& operator+=(const WordPoly& o);
    WordPoly& operator-=(const WordPoly& o);
    friend WordPoly operator+(WordPoly a, const WordPoly& b) { return a += b; }
    friend WordPoly operator-(WordPoly a, const WordPoly& b) { return a -= b; }
    WordPoly scaled(const Scalar& s) const;
    // Product in the algebra with k-dressings moved to the left.
    friend WordPoly operator*(const WordPoly& a, const WordPoly& b);
    WordPoly pow(int n) const;
    friend bool operator==(const WordPoly& a, const WordPoly& b) {
        return a.side_ == b.side_ && a.terms_ == b.terms_;
    }

    // Content of a homogeneous polynomial; throws if inhomogeneous or zero.
    RootVec weight() const;

    // Anti-automorphism fixing e_i, f_i, sending k to k^{-1}.
    WordPoly star() const;
    // Automorphism swapping e_i and f_i, sending k to k^{-1}.
    WordPoly omega() const;

private:
    std::shared_ptr<const RootDatum> rd_;
    Side side_;
    std::map<Key, Scalar> terms_;
};

// q-boson derivation on undressed e-polynomials:
// f'_i(e_j) = delta_ij, f'_i(XY) = f'_i(X) Y + q_i^{-<h_i, wt X>} X f'_i(Y).
WordPoly qboson_fprime(int i, const WordPoly& x);

// q-Serre element sum_r (-1)^r e_i^{(1-a_ij-r)} e_j e_i^{(r)} on the given side.
WordPoly serre_element(std::shared_ptr<const RootDatum> rd, Side side, int i, int j);

}  // namespace qg
