#pragma once

#include <array>

#include "padic/chars.hpp"

namespace padic {

// Rank-2 filtered phi-module over L with coefficients for the middle
// filtration step in L_n.  The filtration is in standard shape: everything
// below -(k-1), the stored line on [-(k-2), 0], zero above.
struct FilteredPhiModule {
    long p;
    int k;
    int n; // level of the filtration coefficients
    std::array<std::array<PadicScalar, 2>, 2> phi; // columns = images of basis
    SmoothCharacter gamma1, gamma2;                // unit actions on the basis
    CycloElement line1, line2;                     // middle line generator coords
    std::string b1 = "e_alpha", b2 = "e_beta";

    PadicScalar det_phi() const { return phi[0][0] * phi[1][1] - phi[0][1] * phi[1][0]; }
};

// D(alpha, beta): diagonal phi with the Gauss-sum filtration line when
// alpha != beta, the non-semisimple matrix and the e_beta line when equal.
inline FilteredPhiModule build_D(const CharacterPair& pr, int n, int rel = kDefaultPrec) {
    long p = pr.prime();
    if (n < std::max(pr.alpha().conductor(), pr.beta().conductor()))
        throw LevelError("build_D: level below max(n(alpha), n(beta))");
    FilteredPhiModule D{p,
                        pr.k(),
                        n,
                        {},
                        pr.alpha(),
                        pr.beta(),
                        CycloElement::one(p, 0, rel),
                        CycloElement::one(p, 0, rel)};
    PadicScalar zero = PadicScalar::zero(p, kZeroPrec);
    PadicScalar ap = pr.alpha().at_p(), bp = pr.beta().at_p();
    if (!pr.exceptional()) {
        D.phi = {{{ap, zero}, {zero, bp}}};
        D.line1 = CycloElement::one(p, 0, rel);
        D.line2 = gauss_sum_std(pr.alpha_beta_inv(), rel);
        if (D.line2.level() > n) throw LevelError("build_D: Gauss sum level exceeds n");
    } else {
        // phi(e_alpha) = alpha(p) e_alpha, phi(e_beta) = beta(p)(e_beta - e_alpha)
        D.phi = {{{ap, -bp}, {zero, bp}}};
        D.line1 = CycloElement::zero(p, 0, rel);
        D.line2 = CycloElement::one(p, 0, rel);
    }
    return D;
}

struct AdmissibilityReport {
    bool admissible = true;
    bool irreducible = true;
    Rational t_newton;
    Rational t_hodge;
    std::vector<std::string> witnesses;
};

namespace detail {

// Projective equality of lines over L_n at tracked precision.
inline bool same_line(const CycloElement& x1, const CycloElement& x2, const CycloElement& y1,
                      const CycloElement& y2) {
    return (x1 * y2 - x2 * y1).is_zero_at_prec();
}

struct StableLine {
    CycloElement c1, c2;
    PadicScalar eigenvalue;
    std::string name;
};

} // namespace detail

// Weak admissibility (t_N >= t_H on every stable line, equality on the whole
// module) and irreducibility (strict inequality on every proper stable line).
// Stable lines are enumerated for (upper-)triangular phi; the Gamma-action
// restricts the candidates when the two unit characters differ.
inline AdmissibilityReport weakly_admissible_irreducible(const FilteredPhiModule& D) {
    long p = D.p;
    AdmissibilityReport rep;
    rep.t_newton = D.det_phi().val().value();
    rep.t_hodge = Rational(-(D.k - 1));
    if (rep.t_newton != rep.t_hodge) {
        rep.admissible = false;
        rep.witnesses.push_back("t_N(D) != t_H(D)");
    }
    if (!D.phi[1][0].is_zero_at_prec())
        throw DomainError("weakly_admissible_irreducible: phi must be upper triangular");
    bool gamma_scalar = D.gamma1 == D.gamma2;
    std::vector<detail::StableLine> lines;
    CycloElement one = CycloElement::one(p, 0);
    CycloElement zero = CycloElement::zero(p, 0);
    // e1 is always phi-stable for triangular phi
    lines.push_back({one, zero, D.phi[0][0], std::string(D.b1) + "-line"});
    if (D.phi[0][1].is_zero_at_prec()) {
        lines.push_back({zero, one, D.phi[1][1], std::string(D.b2) + "-line"});
        if (gamma_scalar && !
            (D.phi[1][1] - D.phi[0][0]).definitely_nonzero()) {
            // scalar phi and scalar Gamma: every line is stable; the middle
            // filtration line is the binding one beyond the axes
            lines.push_back({D.line1, D.line2, D.phi[0][0], "middle filtration line"});
        }
    } else if (gamma_scalar) {
        PadicScalar dd = D.phi[1][1] - D.phi[0][0];
        if (dd.definitely_nonzero()) {
            PadicScalar x = D.phi[0][1] / dd;
            lines.push_back({CycloElement::from_scalar(x), one, D.phi[1][1], "second eigenline"});
        }
        // non-semisimple: e1 is the unique stable line, already listed
    }
    // remaining case (distinct unit characters, phi[0][1] != 0): e2 is not
    // phi-stable and off-axis lines are not Gamma-stable, so only e1 counts
    for (const auto& ln : lines) {
        bool in_middle = detail::same_line(ln.c1, ln.c2, D.line1, D.line2);
        Rational th = in_middle ? Rational(0) : Rational(-(D.k - 1));
        Rational tn = ln.eigenvalue.val().value();
        if (tn < th) {
            rep.admissible = false;
            rep.witnesses.push_back(ln.name + ": t_N < t_H");
        }
        if (!(tn > th)) {
            rep.irreducible = false;
            rep.witnesses.push_back(ln.name + ": t_N = t_H (admissible subobject)");
        }
    }
    return rep;
}

struct DualTwistReport {
    FilteredPhiModule dual_twisted; // Hom(D, L) twisted by (k-1), mapped basis
    FilteredPhiModule target;       // build_D of the dual pair
    CycloElement dual_line_coef_e_alpha; // the literal -e'_beta + G e'_alpha data
    CycloElement dual_line_coef_e_beta;
    std::vector<std::string> mismatches;
};

// Dual-with-twist: Hom(D(alpha,beta), L) carries inverse-transpose phi,
// inverse unit characters, and Fil^i = Fil^{1-i}(D)^perp; twisting by (k-1)
// lands in standard shape.  The basis map -e'_beta -> e_{first}, e'_alpha ->
// e_{second} is checked against build_D of the pair
// (beta^{-1}|x|^{k-1}, alpha^{-1}|x|^{k-1}).
inline DualTwistReport dual_twist(const CharacterPair& pr, int n, int rel = kDefaultPrec) {
    long p = pr.prime();
    FilteredPhiModule D = build_D(pr, n, rel);
    int k = pr.k();

    // dual basis data
    std::array<std::array<PadicScalar, 2>, 2> phid; // inverse transpose
    PadicScalar det = D.det_phi();
    PadicScalar dinv = det.inverse();
    phid[0][0] = D.phi[1][1] * dinv;
    phid[1][1] = D.phi[0][0] * dinv;
    phid[0][1] = -(D.phi[1][0] * dinv);
    phid[1][0] = -(D.phi[0][1] * dinv);
    // orthogonal complement of the middle line: (m2, -m1)
    CycloElement dl1 = D.line2;  // e'_alpha coefficient
    CycloElement dl2 = -D.line1; // e'_beta coefficient

    // twist by (k-1): phi multiplies by p^{1-k}; unit characters unchanged
    PadicScalar tw = PadicScalar::from_int(p, p, rel).pow(1 - k);
    for (auto& row : phid)
        for (auto& v : row) v = v * tw;

    // mapped module under -e'_beta -> e_first, e'_alpha -> e_second:
    // coordinates (f1, f2) in (e'_alpha, e'_beta) map to (-f2, f1).
    FilteredPhiModule mapped{p,
                             k,
                             n,
                             {},
                             pr.beta().inv(),
                             pr.alpha().inv(),
                             -dl2,
                             dl1};
    // conjugate phid by M = [[0,-1],[1,0]]: M phid M^{-1}
    // M^{-1} = [[0,1],[-1,0]]
    // (M phid)(i,j) then times M^{-1}
    std::array<std::array<PadicScalar, 2>, 2> mp;
    mp[0][0] = -phid[1][0];
    mp[0][1] = -phid[1][1];
    mp[1][0] = phid[0][0];
    mp[1][1] = phid[0][1];
    std::array<std::array<PadicScalar, 2>, 2> conj;
    conj[0][0] = -mp[0][1];
    conj[0][1] = mp[0][0];
    conj[1][0] = -mp[1][1];
    conj[1][1] = mp[1][0];
    mapped.phi = conj;
    mapped.b1 = "e_{beta^{-1}|x|^{k-1}}";
    mapped.b2 = "e_{alpha^{-1}|x|^{k-1}}";

    // the dual pair
    SmoothCharacter xk = SmoothCharacter::unramified(
        p, PadicScalar::from_rational(p, Rational(1, pow_long(p, k - 1)), rel));
    CharacterPair dual_pair(pr.beta().inv().mul(xk), pr.alpha().inv().mul(xk), k);
    FilteredPhiModule target = build_D(dual_pair, n, rel);

    DualTwistReport rep{mapped, target, dl1, dl2, {}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!indistinguishable(mapped.phi[i][j], target.phi[i][j]))
                rep.mismatches.push_back("phi entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
    if (!(mapped.gamma1.unit_part() == target.gamma1.unit_part()))
        rep.mismatches.push_back("unit character on e_1");
    if (!(mapped.gamma2.unit_part() == target.gamma2.unit_part()))
        rep.mismatches.push_back("unit character on e_2");
    if (!detail::same_line(mapped.line1, mapped.line2, target.line1, target.line2))
        rep.mismatches.push_back("filtration middle line");
    return rep;
}

enum class TriClass { NG, CRIS, ST, NONE };

inline const char* tri_class_name(TriClass c) {
    switch (c) {
        case TriClass::NG: return "NG";
        case TriClass::CRIS: return "CRIS";
        case TriClass::ST: return "ST";
        default: return "NONE";
    }
}

// Parameter s = (delta_1, delta_2, hbar) through its invariants
// u(s) = val(delta_1(p)) and w(s) = w(delta_1) - w(delta_2).
struct TriangulationParams {
    Rational u;
    Rational w;
    bool hbar_infinite;

    TriangulationParams(Rational u_, Rational w_, bool hbar)
        : u(std::move(u_)), w(std::move(w_)), hbar_infinite(hbar) {
        if (u < 0) throw DomainError("TriangulationParams: val(delta_1(p)) >= 0 required");
    }

    static TriangulationParams from_characters(const ContinuousCharacter& d1,
                                               const ContinuousCharacter& d2, bool hbar) {
        Rational u = d1.at_p().val().value();
        Rational v2 = d2.at_p().val().value();
        if (u + v2 != 0)
            throw DomainError("TriangulationParams: val(d1(p)) + val(d2(p)) != 0");
        return TriangulationParams(u, Rational(d1.weight()) - Rational(d2.weight()), hbar);
    }
};

struct ClassifyResult {
    TriClass cls;
    Rational u;
    Rational w;
};

inline ClassifyResult classify_triangulation(const TriangulationParams& s) {
    bool w_int_ge1 = (s.w.get_den() == 1) && (s.w >= 1);
    if (!w_int_ge1 && s.u > 0) return {TriClass::NG, s.u, s.w};
    if (w_int_ge1 && s.u > 0 && s.u < s.w)
        return {s.hbar_infinite ? TriClass::CRIS : TriClass::ST, s.u, s.w};
    return {TriClass::NONE, s.u, s.w};
}

} // namespace padic
