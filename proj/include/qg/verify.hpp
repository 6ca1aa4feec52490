// Verification suites shared by the command line and the acceptance runner.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qg/report.hpp"
#include "qg/rootdata.hpp"

namespace qg {

// Default |m| bound per algebra: A_n -> 3, B2 -> 2, G2 -> 1, otherwise 1.
int default_bound(const std::string& algebra);

// Lusztig's diagonal formula on all reduced words, |m| <= bound; Serre elements have zero Gram vector.
std::vector<RelationCheck> check_pairing(std::shared_ptr<const RootDatum> rd, int bound, int jobs = 1);
// Braid relations of the S_i on V(rho) and Delta(S_i) on fundamental pairs.
std::vector<RelationCheck> check_braid(std::shared_ptr<const RootDatum> rd);
// RTT and the sigma_i commutations on monomials of height <= degree with lambda = mu = varpi_1,
// intertwining and lowest entries of R;
// rank one adds the coordinate ring relations.
std::vector<RelationCheck> check_rtt(std::shared_ptr<const RootDatum> rd, int degree);
// sigma/tau closed forms for lambda in {varpi_i, rho} on all reduced words, |m| <= bound.
std::vector<RelationCheck> check_spectra(std::shared_ptr<const RootDatum> rd, int bound);
// q-boson identities on the Fock window |m| <= bound along the first reduced word.
std::vector<RelationCheck> check_relations(std::shared_ptr<const RootDatum> rd, int bound);
// b^+ monomials on the vacuum give |m>> on all reduced words; Serre elements act by zero.
std::vector<RelationCheck> check_vacuum_pbw(std::shared_ptr<const RootDatum> rd, int bound, int jobs = 1);
// Psi = Gamma blockwise for i -> j.
std::vector<RelationCheck> check_psi_gamma(std::shared_ptr<const RootDatum> rd, const Word& i, const Word& j, int bound,
                                     int jobs = 1);
// Gamma(i -> j) Gamma(j -> i) = id and Psi(i -> j) Psi(j -> i) = id for all pairs of reduced words.
std::vector<RelationCheck> check_inverses(std::shared_ptr<const RootDatum> rd, int bound, int jobs = 1);
// b^+ in the normalized basis equals left multiplication, weight blocks of height <= height.
std::vector<RelationCheck> check_pi_rho(std::shared_ptr<const RootDatum> rd, int height);

// Suites: relations, pairing, braid, rtt, spectra, main2. Throws std::invalid_argument on unknown names.
std::vector<RelationCheck> run_suite(const std::string& suite, std::shared_ptr<const RootDatum> rd, int bound,
                                     int jobs = 1);
const std::vector<std::string>& suite_names();

}  // namespace qg
