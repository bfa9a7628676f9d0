#ifndef CARLITZ_UEXP_HPP
#define CARLITZ_UEXP_HPP

#include "carlitz/carlitz.hpp"

namespace carlitz {

// u-expansion engine: u_a, Goss polynomials, Eisenstein series E_w, the cusp
// forms h (two independent formulas) and Δ = -h^{q-1}, the normalized g, and
// the coefficient forms α_i of the rank-2 exponential.
//
// Coefficient domains follow a ladder: exact K-coefficients (QSeries) where
// the objects are rational (u_a, Goss, h, Δ), Laurent coefficients in 1/θ
// (USeries) where π̃-powers and ζ-values enter (E_w, g, α_i). Conversions are
// explicit. The P parameters below are absolute 1/θ truncation orders.

using ZSeries = Series<USeries>;  // Z on the outside, then u, then 1/θ

// u^{|a|} C_a(1/u) = Σ_i [a]_i u^{q^d - q^i}: the reciprocal-u polynomial
// whose inverse generates u_a. Exact, constant term 1 for monic a.
inline QSeries u_recip_poly(const Fq& F, const FqPoly& a) {
    if (a.is_zero()) throw DomainMismatch("u_a needs a nonzero polynomial");
    std::vector<FqPoly> coeffs = carlitz_action_coeffs(F, a);
    int d = a.deg();
    long long qd = 1;
    for (int i = 0; i < d; ++i) qd *= F.q;
    QSeries r = QSeries::zero(Var::u);
    long long qi = 1;
    for (int i = 0; i <= d; ++i, qi *= F.q)
        r = r + QSeries::monomial(Var::u, int(qd - qi), RatFunc(coeffs[size_t(i)]));
    return r;
}

// u(az) as a series u_a ∈ u^{|a|} A[[u]], truncated at u^U
inline QSeries u_sub_a(const Fq& F, const FqPoly& a, int U) {
    if (!a.is_monic()) throw NonMonicInput("u_a is exposed for monic a; scale by the leading coefficient otherwise");
    int d = a.deg();
    long long qd = 1;
    for (int i = 0; i < d; ++i) qd *= F.q;
    if (qd >= U) return QSeries::zero(Var::u, U);
    QSeries inv = inverse(u_recip_poly(F, a), int(U - qd));
    return shifted(inv, int(qd));
}

// Goss polynomials G_1..G_nmax (G_n = D_{n-1}): D_0 = u and
// D_m = u Σ_{q^k <= m} D_{m-q^k} / d_k. Exact polynomials in u over K;
// G_n = u^n for n <= q and G_n ∈ u²K[u] for n >= 2.
inline std::vector<QSeries> goss_table(BracketCache& B, int nmax) {
    const Fq& F = B.field();
    std::vector<QSeries> D(size_t(std::max(1, nmax)));
    D[0] = QSeries::monomial(Var::u, 1, RatFunc::one(F));
    QSeries u = D[0];
    for (int m = 1; m < nmax; ++m) {
        QSeries acc = QSeries::zero(Var::u);
        for (long long qk = 1, k = 0; qk <= m; qk *= F.q, ++k) {
            B.extend(int(k));
            RatFunc dk_inv(FqPoly::one(F), B.d[size_t(k)]);
            acc = acc + scaled(D[size_t(m - qk)], dk_inv);
        }
        D[size_t(m)] = u * acc;
    }
    std::vector<QSeries> G(size_t(nmax) + 1);
    for (int n = 1; n <= nmax; ++n) G[size_t(n)] = D[size_t(n - 1)];
    return G;
}

inline QSeries goss_poly(BracketCache& B, int n) {
    if (n < 1) throw UnsupportedSize("Goss polynomials start at G_1");
    return goss_table(B, n)[size_t(n)];
}

// K-coefficients -> Laurent coefficients at absolute truncation T_abs
inline USeries useries_of_qseries(const QSeries& f, int T_abs) {
    USeries r = USeries::zero(Var::u, f.trunc);
    for (int k = f.val; k < f.val + int(f.c.size()); ++k) {
        const RatFunc* c = f.stored(k);
        if (!c || ring_is_zero(*c)) continue;
        long long v = c->den.deg() - c->num.deg();
        LSeries lc = v >= T_abs ? LSeries::zero(Var::inv_theta, T_abs) : laurent_of_ratfunc(*c, T_abs);
        r = r + USeries::monomial(Var::u, k, std::move(lc), f.trunc);
    }
    return r;
}

inline USeries scaled_useries(const USeries& f, const LSeries& s) {
    USeries r = f;
    for (auto& c : r.c) c = c * s;
    r.normalize();
    return r;
}

inline bool qseries_is_integral(const QSeries& f) {
    for (auto& c : f.c)
        if (!c.is_null() && c.den.deg() > 0) return false;
    return true;
}

// E_w(z) = -ζ_A(w) - π̃^w Σ_{a monic} G_w(u_a), truncated at u^U with
// Laurent coefficients of absolute order >= P. Zero when (q-1) does not
// divide w.
inline USeries eisenstein_uexp(BracketCache& B, int w, int U, int P) {
    const Fq& F = B.field();
    if (w < 1) throw NonpositiveWeight("Eisenstein weight must be >= 1");
    if (w % (F.q - 1) != 0) return USeries::zero(Var::u, U);
    int lift = int((long long)w * F.q / (F.q - 1)) + 8;  // |π̃^w| = q^{wq/(q-1)}
    int T_abs = P + lift;
    QSeries Gw = goss_poly(B, w);
    QSeries sum = QSeries::zero(Var::u, U);
    for (int d = 0; B.qpow(d) < U; ++d) {
        monic_enumerate(F, d, [&](const FqPoly& a) { sum = sum + compose(Gw, u_sub_a(F, a, U)); });
    }
    USeries tail = scaled_useries(useries_of_qseries(sum, T_abs), pi_power(F, w, T_abs + int((long long)w * F.q / (F.q - 1))));
    USeries r = -tail - USeries::monomial(Var::u, 0, zeta_carlitz(B, w, T_abs), U);
    for (auto& c : r.c) c = truncated(c, T_abs);
    r.normalize();
    return truncated(r, U);
}

// h = -Σ_{a monic} a^q u_a ∈ A[[u]] (López)
inline QSeries h_lopez(BracketCache& B, int U) {
    const Fq& F = B.field();
    if (U < 2) throw UnsupportedSize("h needs order >= 2");
    QSeries h = QSeries::zero(Var::u, U);
    for (int d = 0; B.qpow(d) < U; ++d)
        monic_enumerate(F, d, [&](const FqPoly& a) {
            h = h - scaled(u_sub_a(F, a, U), RatFunc(a.frobenius()));
        });
    return h;
}

// h = -u ∏_{a monic} (u^{|a|} C_a(1/u))^{q²-1} ∈ A[[u]] (Gekeler)
inline QSeries h_gekeler(BracketCache& B, int U) {
    const Fq& F = B.field();
    if (U < 2) throw UnsupportedSize("h needs order >= 2");
    QSeries h = QSeries::monomial(Var::u, 1, RatFunc(FqPoly::constant(FqElem(F, F.neg(1)))), U);
    // the factor for a of degree d is 1 + O(u^{q^d - q^{d-1}})
    for (int d = 1; B.qpow(d) - B.qpow(d - 1) < U; ++d)
        monic_enumerate(F, d, [&](const FqPoly& a) {
            h = h * truncated(powi(u_recip_poly(F, a), (long long)F.q * F.q - 1), U);
        });
    return truncated(h, U);
}

// Δ = -h^{q-1}
inline QSeries delta_uexp(BracketCache& B, int U) {
    const Fq& F = B.field();
    return -powi(h_lopez(B, U), F.q - 1);
}

// g = (θ^q - θ) π̃^{1-q} E_{q-1}: weight q-1, type 0, constant u-term 1
inline USeries g_uexp(BracketCache& B, int U, int P) {
    const Fq& F = B.field();
    B.extend(1);
    int T_abs = P + 2 * F.q + 8;
    USeries E = eisenstein_uexp(B, F.q - 1, U, T_abs);
    LSeries factor = laurent_window_of_poly(B.d[1], T_abs + F.q) * pi_power(F, 1 - F.q, T_abs + F.q);
    USeries g = scaled_useries(E, factor);
    LSeries c0 = g.coeff(0);
    if (c0.c.empty() || c0.valuation() != 0 || !(c0.c[0] == FqElem(F, 1)))
        throw CrossCheckFailed("g normalization lost the constant term 1");
    for (auto& c : g.c) c = truncated(c, P);
    g.normalize();
    return g;
}

// α_i by the recursion α_i = (g̃ α_{i-1}^q + Δ̃ α_{i-2}^{q²})/(θ^{q^i} - θ),
// α_0 = 1, α_{-1} = 0, with g̃ = (θ^q - θ)E_{q-1} and Δ̃ = -π̃^{q²-1} h^{q-1}.
// Constant terms are checked against c_{i,0} = π̃^{q^i - 1}/d_i.
inline std::vector<USeries> alpha_uexp(BracketCache& B, int imax, int U, int P) {
    const Fq& F = B.field();
    B.extend(std::max(imax, 2));
    long long q = F.q;
    int lift = int(q * q * q / (q - 1)) + 16;
    int T_abs = P + lift;

    USeries g_t = scaled_useries(eisenstein_uexp(B, int(q - 1), U, T_abs + 2 * int(q)),
                                 laurent_window_of_poly(B.d[1], T_abs + 2 * int(q)));
    QSeries h = h_lopez(B, U);
    USeries delta_t = scaled_useries(useries_of_qseries(-powi(h, q - 1), T_abs + lift),
                                     pi_power(F, q * q - 1, T_abs + lift));

    std::vector<USeries> alpha(size_t(imax) + 1);
    alpha[0] = USeries::monomial(Var::u, 0, LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1)), kExact);
    for (int i = 1; i <= imax; ++i) {
        USeries acc = g_t * frobenius(alpha[size_t(i - 1)]);
        if (i >= 2) acc = acc + delta_t * frobenius(frobenius(alpha[size_t(i - 2)]));
        FqPoly theta_qi_minus_theta = FqPoly::monomial(F, int(B.qpow(i)), 1) - FqPoly::theta(F);
        acc = truncated(scaled_useries(acc, laurent_inv_abs(theta_qi_minus_theta, T_abs)), U);
        for (auto& c : acc.c) c = truncated(c, T_abs);
        acc.normalize();
        alpha[size_t(i)] = acc;
        // constant term c_{i,0} = π̃^{q^i-1}/d_i
        LSeries expect = truncated(pi_power(F, B.qpow(i) - 1, T_abs + int(q) * 4) *
                                       laurent_inv_abs(B.d[size_t(i)], T_abs + int(q) * 4),
                                   std::min(T_abs, acc.coeff(0).trunc));
        if (first_mismatch(acc.coeff(0), expect))
            throw CrossCheckFailed("α constant term disagrees with π̃^{q^i-1}/d_i at i = " + std::to_string(i));
    }
    return alpha;
}

// 𝔼(z,Z) = Z (1 - Σ_{(q-1)|k} E_k Z^k)^{-1}: recovers the α_i from the
// Eisenstein series alone (independent of h). Returns the Z-series of 𝔼
// truncated past Z^{q²}.
inline ZSeries exp_lattice_from_eisenstein(BracketCache& B, int U, int P) {
    const Fq& F = B.field();
    int q = F.q;
    int Zmax = q * q + 1;
    LSeries one_l = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    USeries one_u = USeries::monomial(Var::u, 0, one_l);
    ZSeries S = ZSeries::monomial(Var::Z, 0, one_u, Zmax);
    for (int k = q - 1; k <= q * q - 1; k += q - 1)
        S = S - ZSeries::monomial(Var::Z, k, eisenstein_uexp(B, k, U, P), Zmax);
    return ZSeries::monomial(Var::Z, 1, one_u, kExact) * inverse(S, Zmax);
}

// Z/𝔼 = 1 - Σ E_k Z^k cross-check: build 𝔼 from the α recursion, invert,
// and compare every extracted E_k with the direct u-expansion. Also asserts
// the k = 0 slot is absent and the (q-1) ∤ k slots vanish.
struct ZECheckReport {
    bool pass = true;
    int first_bad_k = -1;
    int first_bad_udeg = 0;
    int digits = 0;  // guaranteed digit box of the comparison
};

inline ZECheckReport ze_cross_check(BracketCache& B, int U, int P) {
    const Fq& F = B.field();
    int q = F.q;
    int kmax = q * q - 1;
    std::vector<USeries> alpha = alpha_uexp(B, 2, U, P);
    LSeries one_l = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    USeries one_u = USeries::monomial(Var::u, 0, one_l);
    int Zmax = kmax + 2;
    ZSeries E = ZSeries::monomial(Var::Z, 1, one_u, Zmax);
    for (int i = 1; i <= 2; ++i)
        if (B.qpow(i) < Zmax) E = E + ZSeries::monomial(Var::Z, int(B.qpow(i)), alpha[size_t(i)], Zmax);
    ZSeries ratio = ZSeries::monomial(Var::Z, 1, one_u, Zmax) * inverse(E, Zmax);  // Z/𝔼

    ZECheckReport rep;
    rep.digits = P;
    auto flag = [&](int k, int udeg) {
        if (rep.pass) {
            rep.pass = false;
            rep.first_bad_k = k;
            rep.first_bad_udeg = udeg;
        }
    };
    // constant slot is exactly 1
    if (first_mismatch(ratio.coeff(0), one_u)) flag(0, 0);
    for (int k = 1; k <= kmax; ++k) {
        USeries got = -ratio.coeff(k);
        if (k % (q - 1) != 0) {
            if (ring_has_known_digit(got)) flag(k, got.valuation());
            continue;
        }
        USeries expect = eisenstein_uexp(B, k, U, P);
        if (auto mm = first_mismatch(got, expect)) flag(k, *mm);
    }
    return rep;
}

}  // namespace carlitz

#endif
