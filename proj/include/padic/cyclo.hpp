#pragma once

#include <ostream>
#include <vector>

#include "padic/scalar.hpp"

namespace padic {

// Element of L_m = L[X] / Phi_{p^m}(X), coefficients tracked as PadicScalar.
// The class of X is the distinguished primitive p^m-th root of unity; the
// tower embedding L_m -> L_{m+1} sends X to X^p, so that the compatible
// system eps^(m) satisfies (eps^(m+1))^p = eps^(m).  Level m = 0 is the base
// field itself (degree 1).
class CycloElement {
public:
    CycloElement() : p_(3), m_(0), c_(1, PadicScalar::zero(3)) {}

    CycloElement(long p, int m, std::vector<PadicScalar> coeffs)
        : p_(p), m_(m), c_(std::move(coeffs)) {
        c_.resize(static_cast<size_t>(degree(p, m)), PadicScalar::zero(p));
    }

    static long degree(long p, int m) { return m == 0 ? 1 : (p - 1) * pow_long(p, m - 1).get_si(); }

    static CycloElement zero(long p, int m, long prec = kDefaultPrec) {
        return CycloElement(p, m,
                            std::vector<PadicScalar>(static_cast<size_t>(degree(p, m)),
                                                     PadicScalar::zero(p, prec)));
    }

    static CycloElement from_scalar(const PadicScalar& s, int m = 0) {
        CycloElement x = zero(s.prime(), m);
        x.c_[0] = s;
        return x;
    }

    static CycloElement one(long p, int m = 0, int rel = kDefaultPrec) {
        return from_scalar(PadicScalar::one(p, rel), m);
    }

    // The distinguished root eps^(m) (i.e. the class of X), raised to power a.
    static CycloElement root_pow(long p, int m, const Int& a, int rel = kDefaultPrec) {
        if (m == 0) return one(p, 0, rel);
        Int r = mod_pos(a, pow_long(p, m));
        CycloElement x = zero(p, m, rel);
        std::vector<std::pair<long, PadicScalar>> mono{
            {r.get_si(), PadicScalar::one(p, rel)}};
        x.accumulate(mono);
        return x;
    }

    static CycloElement root(long p, int m, int rel = kDefaultPrec) {
        return root_pow(p, m, 1, rel);
    }

    long prime() const { return p_; }
    int level() const { return m_; }
    long deg() const { return static_cast<long>(c_.size()); }
    const std::vector<PadicScalar>& coeffs() const { return c_; }
    const PadicScalar& coeff(long i) const { return c_[static_cast<size_t>(i)]; }

    bool is_zero_at_prec() const {
        for (const auto& x : c_)
            if (x.definitely_nonzero()) return false;
        return true;
    }

    // X -> X^{p^(m2-m)}; coherent with the tower convention above.
    CycloElement embed_to(int m2) const {
        if (m2 == m_) return *this;
        if (m2 < m_) throw LevelError("CycloElement::embed_to: cannot lower level");
        if (m_ == 0) {
            CycloElement x = zero(p_, m2);
            x.c_[0] = c_[0];
            return x;
        }
        Int step = pow_long(p_, m2 - m_);
        CycloElement x = zero(p_, m2);
        std::vector<std::pair<long, PadicScalar>> terms;
        for (long i = 0; i < deg(); ++i)
            if (c_[static_cast<size_t>(i)].definitely_nonzero() ||
                !c_[static_cast<size_t>(i)].is_zero_at_prec())
                terms.emplace_back(Int(i * step).get_si(), c_[static_cast<size_t>(i)]);
        x.accumulate(terms);
        return x;
    }

    // Galois twist sigma_u: X -> X^u for u a unit mod p^m.
    CycloElement galois(const Int& u) const {
        if (m_ == 0) return *this;
        Int pm = pow_long(p_, m_);
        Int r = mod_pos(u, pm);
        if (r % p_ == 0) throw DomainError("CycloElement::galois: exponent not a unit");
        CycloElement x = zero(p_, m_);
        std::vector<std::pair<long, PadicScalar>> terms;
        for (long i = 0; i < deg(); ++i)
            terms.emplace_back(Int(mod_pos(r * i, pm)).get_si(), c_[static_cast<size_t>(i)]);
        x.accumulate(terms);
        return x;
    }

    CycloElement operator-() const {
        CycloElement x = *this;
        for (auto& v : x.c_) v = -v;
        return x;
    }

    friend CycloElement operator+(const CycloElement& a, const CycloElement& b) {
        auto [x, y] = unify(a, b);
        for (long i = 0; i < x.deg(); ++i)
            x.c_[static_cast<size_t>(i)] = x.c_[static_cast<size_t>(i)] + y.c_[static_cast<size_t>(i)];
        return x;
    }

    friend CycloElement operator-(const CycloElement& a, const CycloElement& b) { return a + (-b); }

    friend CycloElement operator*(const CycloElement& a, const CycloElement& b) {
        auto [x, y] = unify(a, b);
        if (x.m_ == 0) return from_scalar(x.c_[0] * y.c_[0]);
        std::vector<std::pair<long, PadicScalar>> terms;
        for (long i = 0; i < x.deg(); ++i) {
            if (x.c_[static_cast<size_t>(i)].is_zero_at_prec() &&
                !x.c_[static_cast<size_t>(i)].definitely_nonzero() &&
                x.c_[static_cast<size_t>(i)].abs_pi() >= kZeroPrec)
                continue;
            for (long j = 0; j < y.deg(); ++j)
                terms.emplace_back(i + j,
                                   x.c_[static_cast<size_t>(i)] * y.c_[static_cast<size_t>(j)]);
        }
        CycloElement r = zero(x.p_, x.m_);
        r.accumulate(terms);
        return r;
    }

    friend CycloElement operator*(const PadicScalar& s, const CycloElement& a) {
        CycloElement x = a;
        for (auto& v : x.c_) v = s * v;
        return x;
    }

    friend CycloElement operator*(const CycloElement& a, const PadicScalar& s) { return s * a; }

    // Multiplication by the monomial X^e (an exponent rotation).
    CycloElement mul_root_pow(const Int& e) const {
        if (m_ == 0) return *this;
        Int pm = pow_long(p_, m_);
        Int r = mod_pos(e, pm);
        CycloElement x = zero(p_, m_);
        std::vector<std::pair<long, PadicScalar>> terms;
        for (long i = 0; i < deg(); ++i)
            terms.emplace_back(Int(mod_pos(r + i, pm)).get_si(), c_[static_cast<size_t>(i)]);
        x.accumulate(terms);
        return x;
    }

    CycloElement pow(Int n) const {
        if (n < 0) throw DomainError("CycloElement::pow: negative exponent (use root_pow)");
        CycloElement r = one(p_, m_);
        CycloElement b = *this;
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    friend bool indistinguishable(const CycloElement& a, const CycloElement& b) {
        return (a - b).is_zero_at_prec();
    }

    // True iff this element lies in the base field at tracked precision;
    // returns the constant coefficient.
    bool scalar_part(PadicScalar& out) const {
        for (long i = 1; i < deg(); ++i)
            if (c_[static_cast<size_t>(i)].definitely_nonzero()) return false;
        out = c_[0];
        return true;
    }

    PadicScalar expect_scalar(const char* what = "CycloElement") const {
        PadicScalar s;
        if (!scalar_part(s)) throw PrecisionError(std::string(what) + ": value is not a base-field scalar");
        return s;
    }

    std::string str() const {
        std::string s = "[";
        for (long i = 0; i < deg(); ++i) {
            if (i) s += ", ";
            s += c_[static_cast<size_t>(i)].str();
        }
        return s + "] (level " + std::to_string(m_) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloElement& x) {
        return os << x.str();
    }

private:
    static std::pair<CycloElement, CycloElement> unify(const CycloElement& a,
                                                       const CycloElement& b) {
        if (a.p_ != b.p_) throw DomainError("CycloElement: mixed primes");
        int m = std::max(a.m_, b.m_);
        return {a.embed_to(m), b.embed_to(m)};
    }

    // Add monomial terms X^k (0 <= k < p^m) into this element, reducing
    // modulo Phi_{p^m}: X^(d+r) = -sum_{j=0}^{p-2} X^(j p^(m-1) + r).
    void accumulate(const std::vector<std::pair<long, PadicScalar>>& terms) {
        if (m_ == 0) {
            for (const auto& [k, v] : terms) c_[0] = c_[0] + v;
            return;
        }
        long pm = pow_long(p_, m_).get_si();
        long d = deg();
        long q = pm / p_; // p^{m-1}
        std::vector<PadicScalar> full(static_cast<size_t>(pm), PadicScalar::zero(p_));
        for (const auto& [k, v] : terms) {
            long kk = ((k % pm) + pm) % pm;
            full[static_cast<size_t>(kk)] = full[static_cast<size_t>(kk)] + v;
        }
        for (long k = pm - 1; k >= d; --k) {
            PadicScalar v = full[static_cast<size_t>(k)];
            if (v.is_zero_at_prec() && v.abs_pi() >= kZeroPrec) continue;
            long r = k - d;
            for (long j = 0; j <= p_ - 2; ++j) {
                long tgt = j * q + r;
                full[static_cast<size_t>(tgt)] = full[static_cast<size_t>(tgt)] - v;
            }
            full[static_cast<size_t>(k)] = PadicScalar::zero(p_);
        }
        for (long i = 0; i < d; ++i) c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] + full[static_cast<size_t>(i)];
    }

    long p_;
    int m_;
    std::vector<PadicScalar> c_;
};

namespace detail {

// Determinant by Gaussian elimination with minimal-valuation pivoting.
inline PadicScalar det_gauss(std::vector<std::vector<PadicScalar>> a, long p) {
    size_t n = a.size();
    PadicScalar det = PadicScalar::one(p);
    for (size_t col = 0; col < n; ++col) {
        size_t best = n;
        Rational best_val;
        for (size_t r = col; r < n; ++r) {
            if (!a[r][col].definitely_nonzero()) continue;
            Rational v = a[r][col].val().value();
            if (best == n || v < best_val) {
                best = r;
                best_val = v;
            }
        }
        if (best == n) throw PrecisionError("det_gauss: pivot indistinguishable from 0");
        if (best != col) {
            std::swap(a[best], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        PadicScalar inv = a[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero_at_prec() && a[r][col].abs_pi() >= kZeroPrec) continue;
            PadicScalar f = a[r][col] * inv;
            for (size_t cc = col; cc < n; ++cc) a[r][cc] = a[r][cc] - f * a[col][cc];
        }
    }
    return det;
}

} // namespace detail

// val(x) = val_p(Norm_{L_m/Q_p}(x)) / deg Phi_{p^m}, via the resultant of the
// representative with Phi_{p^m}.
inline Valuation cyclo_val(const CycloElement& x) {
    long p = x.prime();
    if (x.level() == 0) return x.coeff(0).val();
    if (x.is_zero_at_prec()) throw PrecisionError("cyclo_val: element indistinguishable from 0");
    long d = x.deg();
    // trim the representative's degree
    long df = d - 1;
    while (df > 0 && !x.coeff(df).definitely_nonzero() && x.coeff(df).is_zero_at_prec()) --df;
    if (df == 0) {
        // scalar representative: val = val of the constant (norm = c^d)
        return x.coeff(0).val();
    }
    // Sylvester matrix of f (degree df) and Phi (degree d, coefficients 0/1)
    long q = pow_long(p, x.level() - 1).get_si();
    std::vector<PadicScalar> phi(static_cast<size_t>(d + 1), PadicScalar::zero(p, kZeroPrec));
    for (long j = 0; j <= p - 1; ++j) phi[static_cast<size_t>(j * q)] = PadicScalar::one(p);
    size_t n = static_cast<size_t>(d + df);
    std::vector<std::vector<PadicScalar>> m(
        n, std::vector<PadicScalar>(n, PadicScalar::zero(p, kZeroPrec)));
    for (long r = 0; r < df; ++r)
        for (long j = 0; j <= d; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(r + d - j)] = phi[static_cast<size_t>(j)];
    for (long r = 0; r < d; ++r)
        for (long j = 0; j <= df; ++j)
            m[static_cast<size_t>(df + r)][static_cast<size_t>(r + df - j)] = x.coeff(j);
    PadicScalar res = detail::det_gauss(std::move(m), p);
    Valuation v = res.val();
    Rational out = v.v / d;
    out.canonicalize();
    return v.lower_bound ? Valuation::at_least(out) : Valuation::exact(out);
}

// eta^a for a given as an integer or a residue known to at least the order of
// eta.  residue_mod: modulus the caller knows a modulo (0 = exact integer).
inline CycloElement cyclo_power(const CycloElement& eta, const Int& a, const Int& residue_mod = 0) {
    long p = eta.prime();
    int m = eta.level();
    if (m == 0) return eta; // only roots of unity of p-power order live here
    Int order = pow_long(p, m);
    if (residue_mod != 0 && mod_pos(residue_mod, order) != 0)
        throw DomainError("cyclo_power: exponent modulus smaller than the root's order");
    // monomial fast path
    long nz = -1;
    bool monomial = true;
    for (long i = 0; i < eta.deg(); ++i) {
        if (eta.coeff(i).definitely_nonzero()) {
            if (nz >= 0) {
                monomial = false;
                break;
            }
            nz = i;
        }
    }
    if (monomial && nz >= 0) {
        CycloElement r = CycloElement::root_pow(p, m, mod_pos(a * nz, order));
        PadicScalar c = eta.coeff(nz);
        Int aa = mod_pos(a, order);
        PadicScalar cp = PadicScalar::one(p);
        // c must itself be a root of unity times precision; power the scalar
        Int t = aa;
        PadicScalar b = c;
        while (t > 0) {
            if (mpz_odd_p(t.get_mpz_t())) cp = cp * b;
            b = b * b;
            t >>= 1;
        }
        return cp * r;
    }
    return eta.pow(mod_pos(a, order));
}

} // namespace padic
