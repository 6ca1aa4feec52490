#include "qg/verify.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qg/dpair.hpp"
#include "qg/fockrep.hpp"
#include "qg/parallel.hpp"
#include "qg/rmatrix.hpp"

namespace qg {

namespace {

std::string idx(const MultiIndex& m) {
    std::ostringstream os;
    os << "(";
    for (size_t k = 0; k < m.size(); ++k) os << (k ? "," : "") << m[k];
    os << ")";
    return os.str();
}

std::string word_label(const Word& w) {
    std::string s;
    for (int x : w) s += std::to_string(x + 1);
    return s;
}

void append(std::vector<RelationCheck>& out, const std::vector<RelationCheck>& more, const std::string& prefix = "") {
    for (auto c : more) {
        if (!prefix.empty()) c.relation = prefix + c.relation;
        out.push_back(std::move(c));
    }
}

std::string scalar_str(const Scalar& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

// Matrix comparison of two block lists with identical layout.
RelationCheck compare_blocks(const std::string& name, const std::vector<TransitionBlock>& a,
                             const std::vector<TransitionBlock>& b) {
    RelationCheck c{name, true, ""};
    if (a.size() != b.size()) return {name, false, "block counts differ"};
    for (size_t k = 0; k < a.size() && c.pass; ++k) {
        if (a[k].source != b[k].source || a[k].target != b[k].target) {
            c = {name, false, "layout differs at block " + std::to_string(k + 1)};
            break;
        }
        for (size_t r = 0; r < a[k].source.size() && c.pass; ++r)
            for (size_t s = 0; s < a[k].target.size(); ++s)
                if (a[k].gamma.at(r, s) != b[k].gamma.at(r, s)) {
                    c.pass = false;
                    c.witness = "m=" + idx(a[k].source[r]) + " n=" + idx(a[k].target[s]) + ": " +
                                scalar_str(a[k].gamma.at(r, s)) + " vs " + scalar_str(b[k].gamma.at(r, s));
                    break;
                }
    }
    return c;
}

std::vector<std::pair<int, int>> ordered_pairs(int n) {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) p.emplace_back(i, j);
    return p;
}

}  // namespace

int default_bound(const std::string& algebra) {
    if (!algebra.empty() && algebra[0] == 'A') return 3;
    if (algebra == "B2") return 2;
    return 1;
}

std::vector<RelationCheck> check_pairing(std::shared_ptr<const RootDatum> rd, int bound, int jobs) {
    auto& dp = DrinfeldPairing::for_datum(rd);
    std::vector<RelationCheck> out;
    for (const auto& w : rd->reduced_words_w0()) {
        const auto betas = rd->root_sequence(w);
        std::map<RootVec, std::vector<MultiIndex>> by_weight;
        for (const auto& m : multi_indices_up_to(w.size(), bound)) by_weight[multi_index_weight(betas, m)].push_back(m);
        std::vector<const std::vector<MultiIndex>*> blocks;
        for (const auto& [g, ms] : by_weight) blocks.push_back(&ms);
        std::vector<RelationCheck> res(blocks.size(), RelationCheck{"", true, ""});
        parallel_for(blocks.size(), jobs, [&](size_t b) {
            const auto& ms = *blocks[b];
            for (const auto& m : ms) {
                const WordPoly x = pbw_monomial(rd, w, m, Family::DoublePrimeMinus);
                for (const auto& n : ms) {
                    const Scalar v = dp.pair(x, pbw_monomial(rd, w, n, Family::PrimeMinus, Side::F));
                    const Scalar want = m == n ? lusztig_diagonal(*rd, w, m) : Scalar();
                    if (v != want) {
                        res[b] = {"", false, "m=" + idx(m) + " n=" + idx(n) + ": " + scalar_str(v)};
                        return;
                    }
                }
            }
        });
        RelationCheck c{"Lusztig diagonal pairing, word " + word_label(w), true, ""};
        for (const auto& r : res)
            if (!r.pass) {
                c.pass = false;
                c.witness = r.witness;
                break;
            }
        out.push_back(c);
    }
    for (auto [i, j] : ordered_pairs(rd->rank())) {
        const bool zero = dp.gram_vector(serre_element(rd, Side::E, i, j)).is_zero();
        out.push_back({"Serre element (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") pairs to zero", zero,
                       zero ? "" : "nonzero Gram vector"});
    }
    return out;
}

std::vector<RelationCheck> check_braid(std::shared_ptr<const RootDatum> rd) {
    std::vector<RelationCheck> out;
    const FinModule m = FinModule::highest_weight(rd, rd->rho());
    for (int i = 0; i < rd->rank(); ++i)
        for (int j = i + 1; j < rd->rank(); ++j) {
            const int mij = rd->braid_order(i, j);
            Word a, b;
            for (int t = 0; t < mij; ++t) {
                a.push_back(t % 2 ? j : i);
                b.push_back(t % 2 ? i : j);
            }
            RelationCheck c{"braid relation S_" + word_label(a) + " = S_" + word_label(b) + " on V(rho)", true, ""};
            for (size_t s = 0; s < m.num_spaces() && c.pass; ++s)
                for (size_t k = 0; k < m.space(s).dim; ++k) {
                    const MVec u = m.basis_vector(s, k);
                    if (s_word(m, a, 1, u) != s_word(m, b, 1, u)) {
                        c.pass = false;
                        c.witness = "basis vector " + std::to_string(m.offset(s) + k + 1);
                        break;
                    }
                }
            out.push_back(c);
        }
    auto v = std::make_shared<const FinModule>(FinModule::highest_weight(rd, rd->fundamental(0)));
    auto w = std::make_shared<const FinModule>(FinModule::highest_weight(rd, rd->fundamental(rd->rank() - 1)));
    append(out, coproduct_s_check(v, w));
    return out;
}

std::vector<RelationCheck> check_rtt(std::shared_ptr<const RootDatum> rd, int degree) {
    std::vector<RelationCheck> out;
    const Weight w1 = rd->fundamental(0);
    if (rd->rank() == 1) append(out, sl2_coordinate_relations(degree));
    append(out, rtt_check(rd, w1, w1, degree, rd->w0_word()), "varpi_1 x varpi_1: ");
    append(out, commutation_functional_checks(rd, w1, degree), "V(varpi_1): ");
    for (int i = 0; i < rd->rank(); ++i)
        for (int j = 0; j < rd->rank(); ++j) {
            auto v = std::make_shared<const FinModule>(FinModule::highest_weight(rd, rd->fundamental(i)));
            auto w = std::make_shared<const FinModule>(FinModule::highest_weight(rd, rd->fundamental(j)));
            const ConstantR r = constant_r(v, w, rd->w0_word());
            const std::string tag = "varpi_" + std::to_string(i + 1) + " x varpi_" + std::to_string(j + 1) + ": ";
            append(out, intertwining_check(r), tag);
            append(out, lowest_entry_check(r, i), tag);
        }
    return out;
}

std::vector<RelationCheck> check_spectra(std::shared_ptr<const RootDatum> rd, int bound) {
    std::vector<RelationCheck> out;
    std::vector<std::pair<std::string, Weight>> lams;
    for (int i = 0; i < rd->rank(); ++i) lams.emplace_back("varpi_" + std::to_string(i + 1), rd->fundamental(i));
    lams.emplace_back("rho", rd->rho());
    for (const auto& w : rd->reduced_words_w0()) {
        FockSpace F(rd, w, bound);
        for (const auto& [name, lam] : lams) {
            RelationCheck cs{"sigma_" + name + " spectrum, word " + word_label(w), true, ""};
            RelationCheck ct{"tau_" + name + " spectrum, word " + word_label(w), true, ""};
            auto sg = F.sigma(lam), tg = F.tau(lam);
            for (const auto& m : F.window(bound)) {
                const FockVec basis{{m, Scalar(1)}};
                if (cs.pass && (!fock_equal(sg.apply(m), fock_scaled(basis, sigma_eigenvalue(F, lam, m))) ||
                                !fock_equal(sg.apply(m), sigma_factorized(F, lam, m)))) {
                    cs.pass = false;
                    cs.witness = "m=" + idx(m);
                }
                if (ct.pass && (!fock_equal(tg.apply(m), fock_scaled(basis, tau_eigenvalue(F, lam, m))) ||
                                !fock_equal(tg.apply(m), tau_factorized(F, lam, m)))) {
                    ct.pass = false;
                    ct.witness = "m=" + idx(m);
                }
            }
            out.push_back(cs);
            out.push_back(ct);
        }
    }
    return out;
}

std::vector<RelationCheck> check_relations(std::shared_ptr<const RootDatum> rd, int bound) {
    FockSpace F(rd, rd->w0_word(), bound);
    return verify_relations(F, bound);
}

std::vector<RelationCheck> check_vacuum_pbw(std::shared_ptr<const RootDatum> rd, int bound, int jobs) {
    std::vector<RelationCheck> out;
    for (const auto& w : rd->reduced_words_w0()) {
        FockSpace F(rd, w, bound);
        const auto ms = F.window(bound);
        std::vector<std::string> bad(ms.size());
        parallel_for(ms.size(), jobs, [&](size_t k) {
            const FockVec got = apply_eword(F, pbw_monomial(rd, w, ms[k], Family::PrimePlus));
            if (!fock_equal(got, FockVec{{ms[k], Scalar(1)}})) bad[k] = "m=" + idx(ms[k]);
        });
        RelationCheck c{"b+ monomials on the vacuum, word " + word_label(w), true, ""};
        for (const auto& b : bad)
            if (!b.empty()) {
                c.pass = false;
                c.witness = b;
                break;
            }
        out.push_back(c);
    }
    FockSpace F0(rd, rd->w0_word(), 0);
    for (auto [i, j] : ordered_pairs(rd->rank())) {
        const bool zero = apply_eword(F0, serre_element(rd, Side::E, i, j)).empty();
        out.push_back({"Serre element (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") kills the vacuum",
                       zero, zero ? "" : "nonzero image"});
    }
    return out;
}

std::vector<RelationCheck> check_psi_gamma(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j, int bound,
                                     int jobs) {
    const auto psi = psi_blocks(rd, i, j, bound, jobs);
    const auto gam = transition_blocks(rd, i, j, bound, jobs);
    return {compare_blocks("Psi = Gamma, " + word_label(i) + " -> " + word_label(j), psi, gam)};
}

std::vector<RelationCheck> check_inverses(std::shared_ptr<const RootDatum> rd, int bound, int jobs) {
    std::vector<RelationCheck> out;
    const auto words = rd->reduced_words_w0();
    for (size_t a = 0; a < words.size(); ++a)
        for (size_t b = a + 1; b < words.size(); ++b)
            for (int kind = 0; kind < 2; ++kind) {
                const auto& i = words[a];
                const auto& j = words[b];
                auto fwd = kind ? psi_blocks(rd, i, j, bound, jobs) : transition_blocks(rd, i, j, bound, jobs);
                auto bwd = kind ? psi_blocks(rd, j, i, bound, jobs) : transition_blocks(rd, j, i, bound, jobs);
                RelationCheck c{std::string(kind ? "Psi" : "Gamma") + " inverse, " + word_label(i) + " <-> " +
                                    word_label(j),
                                true, ""};
                std::map<RootVec, const TransitionBlock*> back;
                for (const auto& x : bwd) back[x.weight] = &x;
                for (const auto& x : fwd) {
                    // Blocks with |m| <= bound are complete only when both sides list the whole weight space.
                    auto it = back.find(x.weight);
                    if (it == back.end() || it->second->source != x.target || it->second->target != x.source) continue;
                    if (!(x.gamma * it->second->gamma == Matrix::identity(x.source.size()))) {
                        c.pass = false;
                        c.witness = "weight block " + idx(x.weight);
                        break;
                    }
                }
                out.push_back(c);
            }
    return out;
}

std::vector<RelationCheck> check_pi_rho(std::shared_ptr<const RootDatum> rd, int height) {
    std::vector<RelationCheck> out;
    for (const auto& w : rd->reduced_words_w0()) {
        FockSpace F(rd, w, height + 1);
        std::set<RootVec> weights;
        for (const auto& m : F.window(height)) {
            RootVec g = F.weight(m);
            int ht = 0;
            for (int x : g) ht += x;
            if (ht <= height) weights.insert(g);
        }
        RelationCheck c{"pi(b+) = rho(e), word " + word_label(w), true, ""};
        for (const auto& g : weights)
            for (int gen = 0; gen < rd->rank() && c.pass; ++gen) {
                const auto blk = leftmul_matrix(rd, w, gen, g);
                for (size_t col = 0; col < blk.cols.size() && c.pass; ++col) {
                    FockVec img =
                        to_normalized(F, F.b_plus(gen).apply(from_normalized(F, FockVec{{blk.cols[col], Scalar(1)}})));
                    for (size_t r = 0; r < blk.rows.size(); ++r) {
                        auto it = img.find(blk.rows[r]);
                        const Scalar got = it == img.end() ? Scalar() : it->second;
                        if (it != img.end()) img.erase(it);
                        if (got != blk.rho.at(r, col)) {
                            c.pass = false;
                            c.witness = "e_" + std::to_string(gen + 1) + " on " + idx(blk.cols[col]) + " at " +
                                        idx(blk.rows[r]);
                            break;
                        }
                    }
                    if (c.pass && !img.empty()) {
                        c.pass = false;
                        c.witness = "e_" + std::to_string(gen + 1) + " on " + idx(blk.cols[col]) + " leaves the block";
                    }
                }
            }
        out.push_back(c);
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"relations", "pairing", "braid", "rtt", "spectra", "main2"};
    return names;
}

std::vector<RelationCheck> run_suite(const std::string& suite, std::shared_ptr<const RootDatum> rd, int bound,
                                     int jobs) {
    if (suite == "relations") return check_relations(rd, bound);
    if (suite == "pairing") return check_pairing(rd, bound, jobs);
    if (suite == "braid") return check_braid(rd);
    if (suite == "rtt") return check_rtt(rd, bound);
    if (suite == "spectra") return check_spectra(rd, bound);
    if (suite == "main2") return check_vacuum_pbw(rd, bound, jobs);
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace qg
