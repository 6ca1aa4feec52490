// JSON forms of scalars and word polynomials.
#pragma once

#include <json.hpp>

#include "qg/scalar.hpp"
#include "qg/wordalg.hpp"

namespace qg {

// {"num": [[c, e], ...], "den": [[c, e], ...]}; coefficients beyond 64 bits are strings.
nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

// [{"word": [1-based], "coeff": scalar, "dress": [root coords]?}, ...]
nlohmann::json wordpoly_to_json(const WordPoly& x);
WordPoly wordpoly_from_json(std::shared_ptr<const RootDatum> rd, Side side, const nlohmann::json& j);

// Comma-separated 1-based indices <-> 0-based word.
Word parse_word(const std::string& s);
std::string format_word(const Word& w);

}  // namespace qg
