#include "qg/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace qg {

namespace {

nlohmann::json coeff_json(const mpz_class& c) {
    if (c.fits_slong_p()) return c.get_si();
    return c.get_str();
}

mpz_class coeff_from(const nlohmann::json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    return mpz_class(j.get<long>());
}

nlohmann::json terms_json(const Poly& p, int shift) {
    nlohmann::json a = nlohmann::json::array();
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) a.push_back({coeff_json(p[i]), shift + static_cast<int>(i)});
    return a;
}

Scalar terms_from(const nlohmann::json& a) {
    Scalar s;
    for (const auto& t : a) s += Scalar::monomial(coeff_from(t.at(0)), t.at(1).get<long>());
    return s;
}

}  // namespace

nlohmann::json scalar_to_json(const Scalar& s) {
    return {{"num", terms_json(s.num(), s.shift())}, {"den", terms_json(s.den(), 0)}};
}

Scalar scalar_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long>());
    Scalar d = terms_from(j.at("den"));
    if (d.is_zero()) throw std::invalid_argument("scalar JSON with zero denominator");
    return terms_from(j.at("num")) / d;
}

nlohmann::json wordpoly_to_json(const WordPoly& x) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, c] : x.terms()) {
        nlohmann::json w = nlohmann::json::array();
        for (int i : k.second) w.push_back(i + 1);
        nlohmann::json t = {{"word", w}, {"coeff", scalar_to_json(c)}};
        bool dressed = false;
        for (int b : k.first) dressed |= b != 0;
        if (dressed) t["dress"] = k.first;
        a.push_back(t);
    }
    return a;
}

WordPoly wordpoly_from_json(std::shared_ptr<const RootDatum> rd, Side side, const nlohmann::json& j) {
    WordPoly x(rd, side);
    for (const auto& t : j) {
        Word w;
        for (const auto& i : t.at("word")) {
            int v = i.get<int>() - 1;
            if (v < 0 || v >= rd->rank()) throw std::invalid_argument("word letter out of range");
            w.push_back(v);
        }
        RootVec d(static_cast<size_t>(rd->rank()), 0);
        if (t.contains("dress")) d = t.at("dress").get<RootVec>();
        x.add_term(d, w, scalar_from_json(t.at("coeff")));
    }
    return x;
}

Word parse_word(const std::string& s) {
    Word w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad word entry '" + tok + "'");
        }
        if (used != tok.size() || v < 1) throw std::invalid_argument("bad word entry '" + tok + "'");
        w.push_back(v - 1);
    }
    if (w.empty()) throw std::invalid_argument("empty word");
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(w[k] + 1);
    }
    return s;
}

}  // namespace qg
