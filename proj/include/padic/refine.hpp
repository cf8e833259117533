#pragma once

#include "padic/chars.hpp"

namespace padic {

// Refinement datum (eta, c, r): the crystalline-period map r is carried as
// the symbolic eigenvector tag only.
struct Refinement {
    ContinuousCharacter eta;
    PadicScalar c;
    enum class Tag { EAlpha, EBeta } tag;
};

struct TorusCharacter {
    ContinuousCharacter first;
    ContinuousCharacter second;

    bool operator==(const TorusCharacter& o) const {
        return first == o.first && second == o.second;
    }
    bool operator!=(const TorusCharacter& o) const { return !(*this == o); }
};

inline ContinuousCharacter ur_char(long p, const PadicScalar& c) {
    return ContinuousCharacter::from_smooth(SmoothCharacter::unramified(p, c));
}

// det V_{alpha,beta} = alpha beta x^{k-1}: the normalization pinned by
// requiring the sigma displays below (and consistent with the central
// character (alpha beta)(z)|z|^{-1} z^{k-2} = det * (x|x|)^{-1}).
inline ContinuousCharacter det_character(const CharacterPair& pr) {
    return ContinuousCharacter(pr.alpha().mul(pr.beta()), pr.k() - 1);
}

// The two refinements: eigenvalue alpha(p) p^{k-1} on e_alpha with
// eta = x^{k-1} beta ur(alpha(p)^{-1} p^{1-k}), and symmetrically on e_beta.
inline std::vector<Refinement> refinements_of(const CharacterPair& pr) {
    if (pr.exceptional()) throw DomainError("refinements_of: alpha = beta is excluded");
    long p = pr.prime();
    int k = pr.k();
    PadicScalar pk = PadicScalar::from_int(p, p).pow(k - 1);
    PadicScalar ca = pr.alpha().at_p() * pk;
    PadicScalar cb = pr.beta().at_p() * pk;
    ContinuousCharacter eta_a(pr.beta().mul(SmoothCharacter::unramified(p, ca.inverse())), k - 1);
    ContinuousCharacter eta_b(pr.alpha().mul(SmoothCharacter::unramified(p, cb.inverse())), k - 1);
    return {Refinement{eta_a, ca, Refinement::Tag::EAlpha},
            Refinement{eta_b, cb, Refinement::Tag::EBeta}};
}

// sigma(R) = (eta ur(c), (det V) eta^{-1} ur(c^{-1})).
inline TorusCharacter sigma(const Refinement& R, const CharacterPair& pr) {
    long p = pr.prime();
    ContinuousCharacter first = R.eta.mul(ur_char(p, R.c));
    ContinuousCharacter second = det_character(pr).mul(R.eta.inv()).mul(ur_char(p, R.c.inverse()));
    return TorusCharacter{first, second};
}

// Equivalence: exists a unit c' with eta2 = eta1 ur(c'^{-1}), c2 = c' c1 and
// matching period tags.
inline bool refinement_equivalent(const Refinement& a, const Refinement& b) {
    if (a.tag != b.tag) return false;
    PadicScalar q = b.c / a.c;
    if (!q.definitely_nonzero() || q.val().value() != 0) return false;
    long p = a.c.prime();
    return b.eta == a.eta.mul(ur_char(p, q.inverse()));
}

// dim Ref^{sigma}(V) in the projective convention: 0 for a point, -1 empty.
inline int dim_ref(const CharacterPair& pr, const TorusCharacter& s) {
    auto refs = refinements_of(pr);
    for (const auto& R : refs)
        if (sigma(R, pr) == s) return 0;
    return -1;
}

// Jacquet exponents of the locally analytic vectors:
//   x^{k-2} beta (x) alpha|x|^{-1}  and  x^{k-2} alpha (x) beta|x|^{-1}.
inline std::vector<TorusCharacter> jacquet_exponents(const CharacterPair& pr) {
    if (pr.exceptional()) throw DomainError("jacquet_exponents: alpha = beta is excluded");
    long p = pr.prime();
    int k = pr.k();
    SmoothCharacter absinv = SmoothCharacter::abs_value(p).inv();
    TorusCharacter e1{ContinuousCharacter(pr.beta(), k - 2),
                      ContinuousCharacter(pr.alpha().mul(absinv), 0)};
    TorusCharacter e2{ContinuousCharacter(pr.alpha(), k - 2),
                      ContinuousCharacter(pr.beta().mul(absinv), 0)};
    return {e1, e2};
}

struct EmertonCheck {
    int lhs;
    int rhs;
    bool equal;
};

// dim Ref^{eta (x) psi}(V) versus the Jacquet-exponent count of the twisted
// locally analytic vectors, re-indexed at (eta|x|, x psi).
inline EmertonCheck verify_emerton(const CharacterPair& pr, const ContinuousCharacter& eta,
                                   const ContinuousCharacter& psi) {
    long p = pr.prime();
    int lhs = dim_ref(pr, TorusCharacter{eta, psi});
    ContinuousCharacter xabs = ContinuousCharacter::cyclotomic(p);
    TorusCharacter target{eta.mul(ContinuousCharacter::from_smooth(SmoothCharacter::abs_value(p))),
                          psi.mul(ContinuousCharacter::x_pow(p, 1))};
    int rhs = -1;
    for (const auto& e : jacquet_exponents(pr)) {
        TorusCharacter tw{e.first.mul(xabs), e.second.mul(xabs)};
        if (tw == target) rhs = 0;
    }
    return EmertonCheck{lhs, rhs, lhs == rhs};
}

} // namespace padic
