#pragma once

#include <set>

#include "padic/series.hpp"

namespace padic {

// Locally analytic function on Z_p in the level-h local-polynomial model:
// on the class b + p^h Z_p the function is sum_i c[b][i] ((z-b)/p^h)^i,
// optionally multiplied by eta^z for a p-power root of unity eta.
class LocalFunction {
public:
    LocalFunction(long p, int h, int deg)
        : p_(p), h_(h),
          c_(static_cast<size_t>(pow_long(p, h).get_si()),
             std::vector<PadicScalar>(static_cast<size_t>(deg), PadicScalar::zero(p, kZeroPrec))) {}

    // Polynomial sum_j q[j] z^j re-expanded at level h.
    static LocalFunction from_z_poly(long p, int h, const std::vector<PadicScalar>& q) {
        LocalFunction f(p, h, static_cast<int>(q.size()));
        long ph = pow_long(p, h).get_si();
        PadicScalar phs = PadicScalar::from_int(p, pow_long(p, h), kDefaultPrec + 16);
        for (long b = 0; b < ph; ++b) {
            PadicScalar bs = PadicScalar::from_int(p, b, kDefaultPrec + 16);
            for (size_t j = 0; j < q.size(); ++j) {
                // (b + p^h u)^j = sum_i C(j,i) b^{j-i} p^{hi} u^i
                for (size_t i = 0; i <= j; ++i) {
                    PadicScalar term =
                        q[j] *
                        PadicScalar::from_int(p, detail::pascal(static_cast<long>(j),
                                                                static_cast<long>(i)),
                                              kDefaultPrec + 16) *
                        bs.pow(static_cast<long>(j - i)) * phs.pow(static_cast<long>(i));
                    f.c_[static_cast<size_t>(b)][i] = f.c_[static_cast<size_t>(b)][i] + term;
                }
            }
        }
        return f;
    }

    static LocalFunction constant_one(long p) {
        return from_z_poly(p, 0, {PadicScalar::one(p)});
    }

    static LocalFunction z_pow(long p, long j) {
        std::vector<PadicScalar> q(static_cast<size_t>(j) + 1, PadicScalar::zero(p, kZeroPrec));
        q[static_cast<size_t>(j)] = PadicScalar::one(p);
        return from_z_poly(p, 0, q);
    }

    // z(z-1)...(z-j+1), exact integer coefficients.
    static LocalFunction falling_factorial(long p, long j) {
        std::vector<Int> q{1};
        for (long t = 0; t < j; ++t) {
            std::vector<Int> r(q.size() + 1, 0);
            for (size_t i = 0; i < q.size(); ++i) {
                r[i + 1] += q[i];
                r[i] -= q[i] * t;
            }
            q = std::move(r);
        }
        std::vector<PadicScalar> qs;
        qs.reserve(q.size());
        for (const auto& v : q) qs.push_back(PadicScalar::from_int(p, v, kDefaultPrec + 16));
        return from_z_poly(p, 0, qs);
    }

    // Twist by eta^z where eta = (eps^(m))^exponent; order_level bounds the
    // local constancy level of eta^z (the order exponent of eta).
    LocalFunction with_twist_root(int m, const Int& exponent, int order_level) const {
        LocalFunction f = *this;
        f.has_twist_ = true;
        f.twist_level_ = m;
        f.twist_exp_ = exponent;
        f.twist_order_ = order_level;
        return f;
    }

    // Convenience overload extracting the root data from a monomial element.
    LocalFunction with_twist(const CycloElement& eta, int order_level) const {
        long nz = -1;
        for (long i = 0; i < eta.deg(); ++i)
            if (eta.coeff(i).definitely_nonzero()) {
                if (nz >= 0) throw DomainError("with_twist: twist must be a power of eps^(m)");
                nz = i;
            }
        if (nz < 0) throw DomainError("with_twist: twist indistinguishable from 0");
        if (!indistinguishable(eta.coeff(nz), PadicScalar::one(eta.prime())))
            throw DomainError("with_twist: twist must be a root of unity with coefficient 1");
        return with_twist_root(eta.level(), nz, order_level);
    }

    long prime() const { return p_; }
    int level() const { return h_; }
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_[0].size()); }
    bool has_twist() const { return has_twist_; }
    int twist_level() const { return twist_level_; }
    const Int& twist_exp() const { return twist_exp_; }
    int twist_order() const { return twist_order_; }
    const std::vector<std::vector<PadicScalar>>& data() const { return c_; }
    std::vector<std::vector<PadicScalar>>& data() { return c_; }

    // ||f||_{LA_h} = sup |c[b][i]| (untwisted part; |eta^z| = 1).
    Valuation norm_la() const {
        bool have = false;
        Rational best;
        bool lower = false;
        for (const auto& row : c_)
            for (const auto& v : row) {
                Valuation val = v.val();
                if (val.lower_bound) {
                    lower = true;
                    continue;
                }
                if (!have || val.v < best) {
                    best = val.v;
                    have = true;
                }
            }
        if (!have) return Valuation::at_least(Rational(kZeroPrec));
        (void)lower;
        return Valuation::exact(best);
    }

private:
    long p_;
    int h_;
    std::vector<std::vector<PadicScalar>> c_;
    bool has_twist_ = false;
    int twist_level_ = 0;
    Int twist_exp_ = 0;
    int twist_order_ = 0;
};

// Distribution on Z_p in the level-h, degree-M local-moment model:
// d[a][i] = integral over a + p^h Z_p of ((z-a)/p^h)^i dmu.
class LocalDistribution {
public:
    LocalDistribution(long p, int h, int M, bool full = true)
        : p_(p), h_(h), M_(M), full_(full),
          d_(static_cast<size_t>(pow_long(p, h).get_si()),
             std::vector<PadicScalar>(static_cast<size_t>(M), PadicScalar::zero(p))) {}

    static LocalDistribution dirac(long p, const Int& c, int h, int M,
                                   int rel = kDefaultPrec) {
        LocalDistribution mu(p, h, M);
        Int ph = pow_long(p, h);
        Int a = mod_pos(c, ph);
        PadicScalar base = PadicScalar::from_rational(p, Rational(c - a) / Rational(ph), rel);
        for (int i = 0; i < M; ++i)
            mu.d_[static_cast<size_t>(a.get_si())][static_cast<size_t>(i)] = base.pow(i);
        return mu;
    }

    long prime() const { return p_; }
    int level() const { return h_; }
    int degree() const { return M_; }
    bool full() const { return full_; }
    long classes() const { return static_cast<long>(d_.size()); }

    const PadicScalar& entry(long a, int i) const {
        return d_[static_cast<size_t>(a)][static_cast<size_t>(i)];
    }
    void set_entry(long a, int i, const PadicScalar& v) {
        d_[static_cast<size_t>(a)][static_cast<size_t>(i)] = v;
    }

    LocalDistribution operator+(const LocalDistribution& o) const {
        require_shape(o);
        LocalDistribution r = *this;
        for (long a = 0; a < classes(); ++a)
            for (int i = 0; i < M_; ++i) r.set_entry(a, i, entry(a, i) + o.entry(a, i));
        r.full_ = full_ && o.full_;
        return r;
    }

    LocalDistribution scale(const PadicScalar& s) const {
        LocalDistribution r = *this;
        for (auto& row : r.d_)
            for (auto& v : row) v = s * v;
        return r;
    }

    bool indistinguishable_from(const LocalDistribution& o) const {
        require_shape(o);
        for (long a = 0; a < classes(); ++a)
            for (int i = 0; i < M_; ++i)
                if (!indistinguishable(entry(a, i), o.entry(a, i))) return false;
        return true;
    }

    // ||mu||_{LA_h} = sup |d[a][i]|; exact for full measures, a lower bound
    // otherwise.
    Valuation norm_la() const {
        bool have = false;
        Rational best;
        Rational pending = Rational(kZeroPrec);
        for (const auto& row : d_)
            for (const auto& v : row) {
                Valuation val = v.val();
                if (val.lower_bound) {
                    if (val.v < pending) pending = val.v;
                    continue;
                }
                if (!have || val.v < best) {
                    best = val.v;
                    have = true;
                }
            }
        if (!have) return Valuation::at_least(pending);
        return Valuation::exact(best);
    }

    long min_entry_val_floor() const {
        Valuation v = norm_la();
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), v.v.get_num().get_mpz_t(), v.v.get_den().get_mpz_t());
        return fl.get_si();
    }

private:
    void require_shape(const LocalDistribution& o) const {
        if (p_ != o.p_ || h_ != o.h_ || M_ != o.M_)
            throw DomainError("LocalDistribution: shape mismatch");
    }

    long p_;
    int h_;
    int M_;
    bool full_;
    std::vector<std::vector<PadicScalar>> d_;
};

// integral of f dmu; exact for in-contract inputs.
inline CycloElement integrate(const LocalDistribution& mu, const LocalFunction& f) {
    long p = mu.prime();
    if (f.level() > mu.level()) throw LevelError("integrate: function finer than the distribution");
    if (f.has_twist() && f.twist_order() > mu.level())
        throw LevelError("integrate: twist order exceeds the distribution level");
    if (f.degree() > mu.degree()) throw DegreeError("integrate: polynomial degree >= M");
    int out_level = f.has_twist() ? f.twist_level() : 0;
    CycloElement acc = CycloElement::zero(p, out_level);
    long ph = mu.classes();
    long phl = pow_long(p, f.level()).get_si();
    long shift = mu.level() - f.level();
    PadicScalar pshift = PadicScalar::from_int(p, pow_long(p, shift), kDefaultPrec + 16);
    for (long A = 0; A < ph; ++A) {
        long b = A % phl;
        // re-expand ((z-b)/p^{h'})^i at z = A + p^h u:
        // ((A-b)/p^{h'} + p^{h-h'} u)^i = sum_j C(i,j) ((A-b)/p^{h'})^{i-j} p^{(h-h')j} u^j
        PadicScalar off = PadicScalar::from_rational(
            p, Rational(A - b) / Rational(pow_long(p, f.level())), kDefaultPrec + 16);
        PadicScalar classval = PadicScalar::zero(p, kZeroPrec);
        for (int j = 0; j < f.degree(); ++j) {
            PadicScalar w = PadicScalar::zero(p, kZeroPrec);
            for (int i = j; i < f.degree(); ++i)
                w = w + f.data()[static_cast<size_t>(b)][static_cast<size_t>(i)] *
                            PadicScalar::from_int(p, detail::pascal(i, j), kDefaultPrec + 16) *
                            off.pow(i - j);
            classval = classval + w * pshift.pow(j) * mu.entry(A, j);
        }
        if (f.has_twist())
            acc = acc + CycloElement::root_pow(p, f.twist_level(), f.twist_exp() * A) * classval;
        else
            acc = acc + CycloElement::from_scalar(classval, 0);
    }
    return acc;
}

inline Valuation dist_norm_la(const LocalDistribution& mu) { return mu.norm_la(); }

// gamma action: class b pulls back to s = a^{-1} b; with integer class
// representatives, (a z - b)/p^h = (a s - b)/p^h + a (z - s)/p^h, so
// d'[b][i] = sum_j C(i,j) c0^{i-j} a^j d[s][j] with c0 = (a s - b)/p^h.
inline LocalDistribution dist_gamma(const PadicScalar& a, const LocalDistribution& mu) {
    long p = mu.prime();
    if (!a.definitely_nonzero() || a.val().value() != 0)
        throw DomainError("dist_gamma: multiplier must be a unit");
    if (a.rel_prec() < mu.level() + 1)
        throw PrecisionError("dist_gamma: unit known to insufficient precision");
    Int ph = pow_long(p, mu.level());
    Int ar = a.unit_residue();
    Int ainv = inv_mod(mod_pos(ar, ph), ph);
    LocalDistribution r(p, mu.level(), mu.degree(), mu.full());
    for (long b = 0; b < mu.classes(); ++b) {
        Int s = mod_pos(ainv * b, ph);
        PadicScalar c0 = PadicScalar::make(p, 1, 0, (ar * s - b) / ph,
                                           a.rel_prec() - mu.level());
        for (int i = 0; i < mu.degree(); ++i) {
            PadicScalar acc = PadicScalar::zero(p, kZeroPrec);
            for (int j = 0; j <= i; ++j)
                acc = acc + PadicScalar::from_int(p, detail::pascal(i, j), kDefaultPrec + 16) *
                                c0.pow(i - j) * a.pow(j) * mu.entry(s.get_si(), j);
            r.set_entry(b, i, acc);
        }
    }
    return r;
}

// phi: supported on p Z_p at level h+1, d'[pa][i] = d[a][i].
inline LocalDistribution dist_phi(const LocalDistribution& mu) {
    long p = mu.prime();
    LocalDistribution r(p, mu.level() + 1, mu.degree(), mu.full());
    for (long a = 0; a < mu.classes(); ++a)
        for (int i = 0; i < mu.degree(); ++i) r.set_entry(p * a, i, mu.entry(a, i));
    return r;
}

// psi: d'[a][i] = d[pa mod p^h][i] at level h-1.
inline LocalDistribution dist_psi(const LocalDistribution& mu) {
    long p = mu.prime();
    if (mu.level() == 0) throw LevelError("dist_psi: level 0 has no psi");
    LocalDistribution r(p, mu.level() - 1, mu.degree(), mu.full());
    Int ph = pow_long(p, mu.level());
    for (long a = 0; a < r.classes(); ++a) {
        long src = mod_pos(Int(p) * a, ph).get_si();
        for (int i = 0; i < mu.degree(); ++i) r.set_entry(a, i, mu.entry(src, i));
    }
    return r;
}

// Restriction to a union of classes modulo p^{h'}.
inline LocalDistribution dist_res(const LocalDistribution& mu, int hprime,
                                  const std::set<long>& classes_mod) {
    long p = mu.prime();
    if (hprime > mu.level()) throw LevelError("dist_res: restriction level exceeds h");
    long phl = pow_long(p, hprime).get_si();
    LocalDistribution r(p, mu.level(), mu.degree(), mu.full());
    for (long a = 0; a < mu.classes(); ++a) {
        bool keep = classes_mod.count(a % phl) > 0;
        for (int i = 0; i < mu.degree(); ++i)
            r.set_entry(a, i, keep ? mu.entry(a, i) : PadicScalar::zero(p, kZeroPrec));
    }
    return r;
}

inline LocalDistribution dist_res_units(const LocalDistribution& mu) {
    std::set<long> units;
    for (long a = 1; a < mu.prime(); ++a) units.insert(a);
    return dist_res(mu, 1, units);
}

inline bool supported_on_units(const LocalDistribution& mu) {
    long p = mu.prime();
    for (long a = 0; a < mu.classes(); ++a) {
        if (a % p != 0) continue;
        for (int i = 0; i < mu.degree(); ++i)
            if (mu.entry(a, i).definitely_nonzero()) return false;
    }
    return true;
}

// integral of z^j eta^z dmu for eta = (eps^(m))^a.
inline CycloElement integrate_zpow_root(const LocalDistribution& mu, long j, int m, const Int& a,
                                        int order_level) {
    LocalFunction f = LocalFunction::z_pow(mu.prime(), j).with_twist_root(m, a, order_level);
    return integrate(mu, f);
}

// Same for a monomial root element.
inline CycloElement integrate_zpow_root(const LocalDistribution& mu, long j,
                                        const CycloElement& eta, int order_level) {
    LocalFunction f = LocalFunction::z_pow(mu.prime(), j).with_twist(eta, order_level);
    return integrate(mu, f);
}

// Amice transform: sum_{n<=N} T^n * integral of C(z,n) dmu.
inline TruncatedSeries amice(const LocalDistribution& mu, long N) {
    long p = mu.prime();
    if (N >= mu.degree()) throw DegreeError("amice: order must stay below the moment degree");
    TruncatedSeries f(p, N);
    Int fact = 1;
    for (long n = 0; n <= N; ++n) {
        if (n > 0) fact *= n;
        CycloElement m = integrate(mu, LocalFunction::falling_factorial(p, n));
        PadicScalar c = m.expect_scalar("amice") / PadicScalar::from_int(p, fact, kDefaultPrec + 16);
        f.set(n, c);
    }
    return f;
}

enum class WSide { Alpha, Beta };

// w-involution on Z_p^x-supported distributions:
// integral of f d(w mu) = sign * integral of delta(z) f(1/z) dmu with
// delta = delta_alpha (resp. delta_beta) and sign = beta(-1)(-1)^k (resp.
// alpha(-1)(-1)^k).  The inversion series is truncated at degree M with the
// valuation loss h(M-m) + min-entry-val recorded in the output precision.
inline LocalDistribution w_involution(const LocalDistribution& mu, const CharacterPair& pr,
                                      WSide side = WSide::Alpha) {
    long p = mu.prime();
    int h = mu.level();
    int M = mu.degree();
    int k = pr.k();
    const SmoothCharacter ratio =
        (side == WSide::Alpha) ? pr.beta_alpha_inv() : pr.alpha_beta_inv();
    if (ratio.conductor() >= 2)
        throw DomainError("w_involution: conductor >= 2 twists leave the scalar entry model");
    if (h < std::max(1, ratio.conductor()))
        throw LevelError("w_involution: level below max(1, n(beta alpha^{-1}))");
    if (!supported_on_units(mu))
        throw SupportError("w_involution: distribution not supported on Z_p^x");
    const SmoothCharacter& sign_char = (side == WSide::Alpha) ? pr.beta() : pr.alpha();
    PadicScalar sign = sign_char.eval_unit(-1).expect_scalar("w_involution sign");
    if (k % 2) sign = -sign;
    long v_floor = mu.min_entry_val_floor();
    Int ph = pow_long(p, h);
    PadicScalar phs = PadicScalar::from_int(p, ph, kDefaultPrec + 16);
    LocalDistribution r(p, h, M, mu.full());
    for (long a = 1; a < r.classes(); ++a) {
        if (a % p == 0) continue;
        Int s = inv_mod(Int(a), ph); // source class
        PadicScalar ss = PadicScalar::make(p, 1, 0, s, kDefaultPrec + 16);
        PadicScalar sinv = ss.inverse();
        // G(u) = (1/z - a)/p^h on z = s + p^h u:
        //   c0 + sum_{n>=1} (-1)^n s^{-(n+1)} p^{h(n-1)} u^n,  c0 = (s^{-1}-a)/p^h
        std::vector<PadicScalar> G(static_cast<size_t>(M), PadicScalar::zero(p, kZeroPrec));
        G[0] = (sinv - PadicScalar::from_int(p, a, kDefaultPrec + 16)) / phs;
        for (int n = 1; n < M; ++n) {
            PadicScalar c = sinv.pow(n + 1) * phs.pow(n - 1);
            if (n % 2) c = -c;
            G[static_cast<size_t>(n)] = c;
        }
        // zpow(u) = (s + p^h u)^{k-2}
        std::vector<PadicScalar> zpow(static_cast<size_t>(M), PadicScalar::zero(p, kZeroPrec));
        for (int j = 0; j <= k - 2 && j < M; ++j)
            zpow[static_cast<size_t>(j)] = PadicScalar::from_int(p, detail::pascal(k - 2, j),
                                                                 kDefaultPrec + 16) *
                                           ss.pow(k - 2 - j) * phs.pow(j);
        PadicScalar ratio_val = ratio.eval_unit(s).expect_scalar("w_involution ratio");
        // accumulate powers of G times zpow, truncated below degree M
        std::vector<PadicScalar> pw(static_cast<size_t>(M), PadicScalar::zero(p, kZeroPrec));
        pw[0] = PadicScalar::one(p, kDefaultPrec + 16);
        for (int m = 0; m < M; ++m) {
            // P = zpow * G^m (pw)
            std::vector<PadicScalar> P(static_cast<size_t>(M), PadicScalar::zero(p, kZeroPrec));
            for (int i = 0; i < M; ++i)
                for (int j = 0; i + j < M; ++j)
                    P[static_cast<size_t>(i + j)] =
                        P[static_cast<size_t>(i + j)] +
                        zpow[static_cast<size_t>(i)] * pw[static_cast<size_t>(j)];
            PadicScalar acc = PadicScalar::zero(p, kZeroPrec);
            for (int i = 0; i < M; ++i) acc = acc + P[static_cast<size_t>(i)] * mu.entry(s.get_si(), i);
            acc = sign * ratio_val * acc;
            long loss = static_cast<long>(h) * (M - m) + v_floor;
            r.set_entry(a, m, acc.truncate_pi(std::min(acc.abs_pi(), loss)));
            // pw <- pw * G
            if (m + 1 < M) {
                std::vector<PadicScalar> nx(static_cast<size_t>(M),
                                            PadicScalar::zero(p, kZeroPrec));
                for (int i = 0; i < M; ++i)
                    for (int j = 0; i + j < M; ++j)
                        nx[static_cast<size_t>(i + j)] =
                            nx[static_cast<size_t>(i + j)] +
                            pw[static_cast<size_t>(i)] * G[static_cast<size_t>(j)];
                pw = std::move(nx);
            }
        }
    }
    return r;
}

// ((d/dT)^j A(mu))(eta - 1) computed distribution-side:
// j! eta^{-j} * integral of C(z,j) eta^z dmu.
inline CycloElement derivative_at_root(const LocalDistribution& mu, long j,
                                       const CycloElement& eta, int order_level) {
    long p = mu.prime();
    if (order_level > mu.level()) throw LevelError("derivative_at_root: root finer than level");
    if (j >= mu.degree()) throw DegreeError("derivative_at_root: derivative order >= M");
    LocalFunction f = LocalFunction::falling_factorial(p, j).with_twist(eta, order_level);
    CycloElement integral = integrate(mu, f);
    return integral * cyclo_power(eta, -Int(j));
}

} // namespace padic
