#ifndef CARLITZ_PERKINS_HPP
#define CARLITZ_PERKINS_HPP

#include "carlitz/carlitz.hpp"

namespace carlitz {

// Rank-one, single-variable specialization of the twisted lattice sums: the
// evaluation character χ_t(a) = a(t), the Eisenstein series 𝓔(j;χ_t), the
// Perkins series ψ, and the machine check of the identity
//
//   exp_A(Z) ω(t) Σ_{a∈A} a(t)/(Z-a) = π̃ · exp_A(Z/(θ-t))
//                                      = Σ_i d_i^{-1} π̃^{q^i} (θ^{q^i}-t)^{-1} Z^{q^i},
//
// equivalently exp_A(Z) ψ(Z) ω_A = exp_A(Z/(θ-t)) with the special function
// ω_A = exp_A(1/(θ-t)) = ω(t)/π̃ of the lattice A. The π̃ on the right is
// pinned at the Z¹ slot by L(χ_t,1)(t-θ)ω(t) = -π̃, and the denominators
// carry θ^{q^i}-t (not θ^{q^i}-t^{q^i}): t is central for τ, so
// τ^i(1/(θ-t)) = 1/(θ^{q^i}-t).

using ZTSeries = Series<TSeries>;  // Z outside, then t, then the inner Laurent

// χ_t(a) = a(t): substitute θ -> t, an F_q-algebra homomorphism
inline Series<FqElem> chi_t(const FqPoly& a) {
    if (a.is_null()) return Series<FqElem>::zero(Var::t);
    std::vector<FqElem> c;
    c.reserve(a.c.size());
    for (auto v : a.c) c.emplace_back(*a.F, v);
    Series<FqElem> r = Series<FqElem>::make(Var::t, 0, std::move(c));
    r.frob_cov = false;
    return r;
}

// 𝓔(j;χ_t) = Σ'_{a∈A} a(t)/a^j = -Σ_{a monic} a(t)/a^j when j ≡ 1 (mod q-1),
// identically zero otherwise. t-degrees below t_order, inner absolute
// precision P in 1/θ.
inline TSeries eisenstein_chi(BracketCache& B, int j, int t_order, int P) {
    const Fq& F = B.field();
    if (j < 1) throw NonpositiveWeight("Eisenstein weight must be >= 1");
    TSeries acc = TSeries::zero(Var::t, t_order);
    acc.frob_cov = false;
    if ((j - 1) % (F.q - 1) != 0) return acc;
    for (int d = 0; (long long)j * d < P; ++d) {
        if (d >= 1 && B.qpow(d) - 1 >= P) break;  // v(S_d(j;t)) >= q^d - 1
        acc = acc - stratum_twisted_sums(B, d, j, t_order, P)[size_t(j)];
    }
    for (auto& c : acc.c) c = truncated(c, P);
    acc.normalize();
    return acc;
}

// untwisted companion Σ'_{a∈A} a^{-j} = -ζ_A(j) when (q-1) | j, else 0
inline LSeries eisenstein_scalar(BracketCache& B, int j, int P) {
    const Fq& F = B.field();
    if (j % (F.q - 1) != 0) return LSeries::zero(Var::inv_theta, P);
    return -zeta_carlitz(B, j, P);
}

// ψ(Z) = Σ_{a∈A} a(t)/(Z-a) = -Σ_{j≡1 (q-1)} Z^{j-1} 𝓔(j;χ_t), truncated
// past Z^{Z_order-1}
inline ZTSeries perkins_psi(BracketCache& B, int Z_order, int t_order, int P) {
    const Fq& F = B.field();
    if (Z_order < 1) throw UnsupportedSize("Z_order must be >= 1");
    ZTSeries psi = ZTSeries::zero(Var::Z, Z_order);
    for (int j = 1; j <= Z_order; j += F.q - 1)
        psi = psi - ZTSeries::monomial(Var::Z, j - 1, eisenstein_chi(B, j, t_order, P), Z_order);
    return psi;
}

// The translation rule ψ(Z-b) = ψ(Z) - b(t)/exp_A(Z) reduces, through the
// reindexing Σ_a (a(t)-b(t))/(Z-a), to the logarithmic-derivative identity
//   Σ_{a∈A} 1/(Z-a) = 1/exp_A(Z),
// i.e. exp_A(Z)·(Z^{-1} - Σ_j Z^{j-1} Σ'_a a^{-j}) = 1. This verifies it as a
// Z-Laurent identity with Laurent coefficients (P digits); the b(t)
// bookkeeping is exact by linearity of χ_t.
struct PsiTranslationReport {
    bool pass = true;
    int first_bad_z = 0;
};

inline PsiTranslationReport psi_translation_check(BracketCache& B, int Z_order, int P) {
    const Fq& F = B.field();
    Series<LSeries> logderiv = Series<LSeries>::monomial(Var::Z, -1, LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1)),
                                                         Z_order);
    for (int j = 1; j <= Z_order; ++j) {
        LSeries e = eisenstein_scalar(B, j, P);
        if (!e.c.empty() || !e.is_exact())
            logderiv = logderiv - Series<LSeries>::monomial(Var::Z, j - 1, e, Z_order);
    }
    Series<LSeries> expa = Series<LSeries>::zero(Var::Z, Z_order + 1);
    for (int i = 0; B.qpow(i) <= Z_order; ++i) {
        B.extend(i);
        LSeries c = laurent_inv_abs(B.d[size_t(i)], P + 3 * F.q) * pi_power(F, B.qpow(i) - 1, P + 3 * F.q);
        expa = expa + Series<LSeries>::monomial(Var::Z, int(B.qpow(i)), truncated(c, P), Z_order + 1);
    }
    Series<LSeries> prod = expa * logderiv;
    PsiTranslationReport rep;
    LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    auto mm = first_mismatch(prod, Series<LSeries>::monomial(Var::Z, 0, one, prod.trunc));
    if (mm) {
        rep.pass = false;
        rep.first_bad_z = *mm;
    }
    return rep;
}

// full digit-box check of the Perkins identity in the ramified field
struct PerkinsReport {
    bool pass = true;
    int first_bad_z = 0, first_bad_t = 0, first_bad_inner = 0;
    int z_box = 0, t_box = 0, inner_box = 0;  // guaranteed digit box
};

inline PerkinsReport perkins_identity_check(BracketCache& B, int Z_order, int t_order, int P) {
    const Fq& F = B.field();
    int q = F.q;
    // inner ramified precision: P θ-digits = P(q-1) s-digits, plus headroom
    // for the π̃^{q^i} scalings (valuation -q^i·q/(q-1) in θ-digits)
    long long max_qi = 1;
    while (max_qi * q <= Z_order) max_qi *= q;
    int lift_s = int(max_qi * q + 2 * q);
    RamifiedContext ctx(F, P * (q - 1) + lift_s + 8);

    TSeries omega = omega_series(ctx, t_order);

    // ψ with ramified inner coefficients
    ZTSeries psi = perkins_psi(B, Z_order, t_order, P + int(max_qi) + 4);
    ZTSeries psi_r = ZTSeries::zero(Var::Z, psi.trunc);
    for (int k = psi.val; k < psi.val + int(psi.c.size()); ++k) {
        const TSeries* c = psi.stored(k);
        if (!c) continue;
        TSeries rc = TSeries::zero(Var::t, c->trunc);
        rc.frob_cov = false;
        for (int m = c->val; m < c->val + int(c->c.size()); ++m) {
            const LSeries* inner = c->stored(m);
            if (!inner) continue;
            rc = rc + TSeries::monomial(Var::t, m, ctx.embed(*inner), c->trunc);
        }
        psi_r = psi_r + ZTSeries::monomial(Var::Z, k, rc, psi.trunc);
    }

    auto t_const = [&](const LSeries& x) {
        TSeries r = TSeries::monomial(Var::t, 0, x, t_order);
        r.frob_cov = false;
        return r;
    };

    // LHS = exp_A(Z) · ω(t) · ψ(Z)
    ZTSeries expa = ZTSeries::zero(Var::Z, Z_order + 1);
    for (long long qi = 1; qi <= Z_order; qi *= q) {
        int i = 0;
        for (long long t = 1; t < qi; t *= q) ++i;
        B.extend(i);
        LSeries coeff = ctx.embed(laurent_inv_abs(B.d[size_t(i)], P + int(qi) + 4)) *
                        powi(ctx.embed(pi_pow_q_minus_1(F, P + int(qi) + 4)), (qi - 1) / (q - 1));
        expa = expa + ZTSeries::monomial(Var::Z, int(qi), t_const(coeff), Z_order + 1);
    }
    ZTSeries lhs = expa * psi_r;
    for (auto& c : lhs.c) {
        c = c * omega;
        c = truncated(c, t_order);
    }
    lhs.normalize();

    // RHS = Σ d_i^{-1} π̃^{q^i} (θ^{q^i} - t)^{-1} Z^{q^i}
    LSeries pi_r = ctx.embed(pi_pow_q_minus_1(F, P + int(max_qi) * 2 + 8));
    LSeries pi_tilde = pi_ramified(ctx, P + int(max_qi) * 2 + 8);

    ZTSeries rhs = ZTSeries::zero(Var::Z, Z_order + 1);
    for (long long qi = 1; qi <= Z_order; qi *= q) {
        int i = 0;
        for (long long t = 1; t < qi; t *= q) ++i;
        LSeries coeff = ctx.embed(laurent_inv_abs(B.d[size_t(i)], P + int(qi) * 2 + 8)) *
                        powi(pi_r, (qi - 1) / (q - 1)) * pi_tilde;
        // (θ^{q^i} - t)^{-1} as a t-series
        TSeries den = t_const(ctx.mul_theta_pow(ctx.one(), qi));
        if (1 < t_order) den = den - TSeries::monomial(Var::t, 1, ctx.one(), t_order);
        TSeries inv_den = inverse(den, t_order);
        rhs = rhs + ZTSeries::monomial(Var::Z, int(qi), scaled(inv_den, coeff), Z_order + 1);
    }

    PerkinsReport rep;
    rep.z_box = Z_order;
    rep.t_box = t_order;
    rep.inner_box = kExact;
    ZTSeries lhs_t = truncated(lhs, Z_order);
    ZTSeries rhs_t = truncated(rhs, Z_order);
    for (int k = 0; k < Z_order; ++k) {
        TSeries a = lhs_t.coeff(k);
        TSeries b = rhs_t.coeff(k);
        if (auto mm = first_mismatch(a, b)) {
            rep.pass = false;
            rep.first_bad_z = k;
            rep.first_bad_t = *mm;
            LSeries diff = a.coeff(*mm) - b.coeff(*mm);
            rep.first_bad_inner = diff.c.empty() ? diff.trunc : diff.valuation();
            return rep;
        }
        // digit box: smallest guaranteed inner truncation over the block
        for (int m = 0; m < t_order; ++m) {
            int tr = std::min(a.coeff(m).trunc, b.coeff(m).trunc);
            rep.inner_box = std::min(rep.inner_box, tr);
        }
    }
    return rep;
}

}  // namespace carlitz

#endif
