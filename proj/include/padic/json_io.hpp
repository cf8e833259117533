#pragma once

#include <json.hpp>

#include "padic/dist.hpp"
#include "padic/filtmod.hpp"
#include "padic/intertwine.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

inline Json to_json(const PadicScalar& x) {
    Json j;
    j["p"] = x.prime();
    j["residue"] = x.unit_residue().get_str();
    j["abs_prec"] = x.rel_prec();
    j["e"] = x.ram_index();
    j["scale"] = x.pi_exponent();
    return j;
}

inline PadicScalar scalar_from_json(const Json& j) {
    long p = j.at("p").get<long>();
    Int res(j.at("residue").get<std::string>());
    int rel = j.at("abs_prec").get<int>();
    int e = j.value("e", 1);
    long t = j.value("scale", 0L);
    if (rel == 0) return PadicScalar::make(p, e, t, 0, 0);
    return PadicScalar::make(p, e, t, res, rel);
}

inline Json to_json(const CycloElement& x) {
    Json j;
    j["m"] = x.level();
    Json cs = Json::array();
    for (const auto& c : x.coeffs()) cs.push_back(to_json(c));
    j["coeffs"] = cs;
    return j;
}

inline CycloElement cyclo_from_json(const Json& j) {
    int m = j.at("m").get<int>();
    std::vector<PadicScalar> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(scalar_from_json(c));
    if (cs.empty()) throw DomainError("cyclo_from_json: empty coefficient list");
    long p = cs[0].prime();
    return CycloElement(p, m, std::move(cs));
}

inline Json to_json(const TruncatedSeries& f) {
    Json j;
    j["i_min"] = f.ord_lower();
    Json cs = Json::object();
    for (const auto& [n, v] : f.coeffs()) cs[std::to_string(n)] = to_json(v);
    j["coeffs"] = cs;
    j["exact"] = f.exact();
    if (!f.exact()) j["tail_order"] = f.tail_order();
    j["coeff_prec"] = rat_str(f.coeff_prec());
    return j;
}

inline TruncatedSeries series_from_json(long p, const Json& j) {
    bool exact = j.value("exact", false);
    TruncatedSeries f = exact ? TruncatedSeries(p)
                              : TruncatedSeries(p, j.at("tail_order").get<long>());
    for (const auto& [k, v] : j.at("coeffs").items()) f.set(std::stol(k), scalar_from_json(v));
    return f;
}

inline Json to_json(const LocalDistribution& mu) {
    Json j;
    j["p"] = mu.prime();
    j["level"] = mu.level();
    j["degree"] = mu.degree();
    Json rows = Json::array();
    for (long a = 0; a < mu.classes(); ++a) {
        Json row = Json::array();
        for (int i = 0; i < mu.degree(); ++i) row.push_back(to_json(mu.entry(a, i)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    Rational prec(kZeroPrec);
    for (long a = 0; a < mu.classes(); ++a)
        for (int i = 0; i < mu.degree(); ++i)
            if (mu.entry(a, i).abs_prec() < prec) prec = mu.entry(a, i).abs_prec();
    j["abs_prec"] = rat_str(prec);
    j["full"] = mu.full();
    return j;
}

inline LocalDistribution dist_from_json(const Json& j) {
    long p = j.at("p").get<long>();
    int h = j.at("level").get<int>();
    int M = j.at("degree").get<int>();
    LocalDistribution mu(p, h, M, j.value("full", true));
    const auto& rows = j.at("entries");
    for (long a = 0; a < mu.classes(); ++a)
        for (int i = 0; i < M; ++i) mu.set_entry(a, i, scalar_from_json(rows.at(a).at(i)));
    return mu;
}

inline Json to_json(const SmoothCharacter& t) {
    Json j;
    j["conductor"] = t.conductor();
    j["gen_value"] = Json{{"teich", t.j_teich()}, {"wild", t.j_wild().get_str()}};
    j["at_p"] = to_json(t.at_p());
    return j;
}

inline SmoothCharacter smooth_from_json(long p, const Json& j) {
    return SmoothCharacter(p, j.at("conductor").get<int>(),
                           j.at("gen_value").at("teich").get<long>(),
                           Int(j.at("gen_value").at("wild").get<std::string>()),
                           scalar_from_json(j.at("at_p")));
}

inline Json to_json(const ContinuousCharacter& c) {
    Json j = to_json(c.smooth());
    j["alg_exp"] = c.alg_exp();
    return j;
}

inline ContinuousCharacter continuous_from_json(long p, const Json& j) {
    return ContinuousCharacter(smooth_from_json(p, j), j.value("alg_exp", 0L));
}

inline Json to_json(const ElementaryFunction& h) {
    Json j;
    j["ball"] = Json{{"a", h.ball_a.get_str()}, {"n", h.ball_n}};
    j["j"] = h.j;
    j["y"] = rat_str(h.y);
    return j;
}

inline ElementaryFunction elementary_from_json(long p, const Json& j) {
    return ElementaryFunction{p, Int(j.at("ball").at("a").get<std::string>()),
                              j.at("ball").at("n").get<int>(), j.at("j").get<long>(),
                              rat_from_str(j.at("y").get<std::string>())};
}

inline Json to_json(const FilteredPhiModule& D) {
    Json j;
    j["p"] = D.p;
    j["k"] = D.k;
    j["level"] = D.n;
    j["basis"] = Json::array({D.b1, D.b2});
    Json phi = Json::object();
    phi[D.b1] = Json::array({to_json(D.phi[0][0]), to_json(D.phi[1][0])});
    phi[D.b2] = Json::array({to_json(D.phi[0][1]), to_json(D.phi[1][1])});
    j["phi"] = phi;
    j["fil_line"] = Json{{D.b1, to_json(D.line1)}, {D.b2, to_json(D.line2)}};
    return j;
}

// Character grammar: "ur(a/b)", "quadratic",
// "cond:n;gen:j;at_p:a/b" (tau(g) = zeta^j for the canonical generator zeta
// of the value group mu_{(p-1)p^{n-1}}), optionally prefixed "x^k*".
namespace detail {

inline ContinuousCharacter parse_character_impl(long p, const std::string& spec, int rel) {
    std::string s = spec;
    long alg = 0;
    if (s.rfind("x^", 0) == 0) {
        size_t star = s.find('*');
        if (star == std::string::npos) {
            // pure algebraic character
            return ContinuousCharacter::x_pow(p, std::stol(s.substr(2)));
        }
        alg = std::stol(s.substr(2, star - 2));
        s = s.substr(star + 1);
    }
    if (s == "quadratic")
        return ContinuousCharacter(SmoothCharacter(p, 1, (p - 1) / 2, 0, PadicScalar::one(p, rel)),
                                   alg);
    if (s == "abs") return ContinuousCharacter(SmoothCharacter::abs_value(p), alg);
    if (s.rfind("ur(", 0) == 0 && s.back() == ')') {
        Rational c = rat_from_str(s.substr(3, s.size() - 4));
        return ContinuousCharacter(SmoothCharacter::unramified(
                                       p, PadicScalar::from_rational(p, c, rel)),
                                   alg);
    }
    int cond = -1;
    Int j = 0;
    PadicScalar at_p = PadicScalar::one(p, rel);
    size_t pos = 0;
    while (pos < s.size()) {
        size_t semi = s.find(';', pos);
        std::string part = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        size_t colon = part.find(':');
        if (colon == std::string::npos) throw DomainError("parse_character: bad field " + part);
        std::string key = part.substr(0, colon), val = part.substr(colon + 1);
        if (key == "cond")
            cond = std::stoi(val);
        else if (key == "gen")
            j = Int(val);
        else if (key == "at_p")
            at_p = PadicScalar::from_rational(p, rat_from_str(val), rel);
        else
            throw DomainError("parse_character: unknown field " + key);
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (cond < 0) throw DomainError("parse_character: missing conductor");
    long jt = mod_pos(j, p - 1).get_si();
    Int jw = cond >= 2 ? mod_pos(j, pow_long(p, cond - 1)) : Int(0);
    return ContinuousCharacter(SmoothCharacter(p, cond, jt, jw, at_p), alg);
}

} // namespace detail

// Character grammar wrapper: converts parser failures into DomainError.
inline ContinuousCharacter parse_character(long p, const std::string& spec,
                                           int rel = kDefaultPrec) {
    try {
        return detail::parse_character_impl(p, spec, rel);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw DomainError(std::string("parse_character: ") + e.what());
    }
}

// Minimal polynomial-in-T parser: terms like "3T^2", "-T", "5", "T^-1",
// coefficients as rationals.
inline TruncatedSeries parse_series(long p, const std::string& s, int rel = kDefaultPrec) {
    TruncatedSeries f(p);
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= s.size()) break;
        int sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw DomainError("parse_series: expected + or - between terms");
        }
        skip_ws();
        std::string num;
        while (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) {
            num += s[i];
            ++i;
        }
        Rational c = num.empty() ? Rational(1) : rat_from_str(num);
        if (sgn < 0) c = -c;
        skip_ws();
        long expo = 0;
        if (i < s.size() && (s[i] == 'T' || s[i] == 't')) {
            ++i;
            expo = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string es;
                if (i < s.size() && s[i] == '-') {
                    es += '-';
                    ++i;
                }
                while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
                    es += s[i];
                    ++i;
                }
                expo = std::stol(es);
            }
        } else if (num.empty()) {
            throw DomainError("parse_series: empty term");
        }
        PadicScalar cur = f.known(expo) ? f.coeff(expo) : PadicScalar::zero(p, kZeroPrec);
        f.set(expo, cur + PadicScalar::from_rational(p, c, rel));
        first = false;
    }
    return f;
}

} // namespace padic
