#ifndef CARLITZ_GEOMETRY_HPP
#define CARLITZ_GEOMETRY_HPP

#include "carlitz/rational.hpp"
#include "carlitz/series.hpp"

namespace carlitz {

// Desk-scale model of the Drinfeld upper half-plane: points are truncated
// Laurent series over F_{q^m} in the variable w = π^{1/e} (π = 1/θ, so
// θ = w^{-e}); exponents are integers counting w-digits. |z| = q^{-val/e}.
// The residue tests deciding |z|_Im are certified on the truncated data and
// fail loudly (IndistinguishableFromKInfinity) when the window is exhausted.
struct GeomContext {
    const Fq* base;  // F_q: coefficients of A
    const Fq* big;   // F_{q^m}: coefficients of points
    const Fq::Embedding* emb;
    int e;     // ramification index of the point variable
    int prec;  // default absolute truncation for fresh points

    GeomContext(const Fq& base_field, int m, int e_, int precision)
        : base(&base_field), big(&base_field.ext(m)), emb(&big->embedding_from(base_field)), e(e_), prec(precision) {}

    bool coeff_in_base(const FqElem& c) const { return emb->in_im[c.v]; }
    FqElem lift(int base_idx) const { return FqElem(*big, emb->map[size_t(base_idx)]); }

    // a(θ) with θ = w^{-e}, coefficients embedded into F_{q^m}; exact
    LSeries embed_poly(const FqPoly& a) const {
        LSeries r = LSeries::zero(Var::geom, kExact, e);
        for (int j = 0; j <= a.deg(); ++j)
            if (a.c[size_t(j)]) r = r + LSeries::monomial(Var::geom, -e * j, lift(a.c[size_t(j)]), kExact, e);
        return r;
    }

    Rational logq_abs(const LSeries& z) const {
        if (z.c.empty()) throw IndistinguishableFromKInfinity("point is zero to truncation");
        return Rational(-z.valuation(), e);
    }
};

// 2x2 matrix over A acting by homographies; GL_2(A) membership means
// det ∈ F_q^×.
struct Matrix2 {
    FqPoly a, b, c, d;

    static Matrix2 identity(const Fq& F) {
        return {FqPoly::one(F), FqPoly::zero(F), FqPoly::zero(F), FqPoly::one(F)};
    }
    FqPoly det() const { return a * d - b * c; }
    bool in_gl2() const { return det().deg() == 0; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

// |z|_Im through the constructive decomposition z = z_0 + z_1: strip leading
// terms that lie in F_q[π, π^{-1}] (integer π-exponent and residue in F_q)
// until the first failing term; then |z|_Im = |z_1|.
struct ImNorm {
    Rational logq_im;  // log_q |z|_Im
    LSeries z0, z1;
};

inline ImNorm imaginary_norm(const GeomContext& ctx, const LSeries& z) {
    ImNorm out;
    out.z0 = LSeries::zero(Var::geom, kExact, ctx.e);
    out.z1 = z;
    for (;;) {
        if (out.z1.c.empty())
            throw IndistinguishableFromKInfinity("strip reached the truncation order; deepen the precision");
        int k = out.z1.val;
        FqElem head = out.z1.c[0];
        if (k % ctx.e == 0 && ctx.coeff_in_base(head)) {
            LSeries term = LSeries::monomial(Var::geom, k, head, kExact, ctx.e);
            out.z0 = out.z0 + term;
            out.z1 = out.z1 - term;
            continue;
        }
        out.logq_im = Rational(-k, ctx.e);
        return out;
    }
}

inline LSeries homography(const GeomContext& ctx, const Matrix2& g, const LSeries& z) {
    if (g.det().is_zero()) throw DomainMismatch("singular matrix");
    LSeries num = ctx.embed_poly(g.a) * z + ctx.embed_poly(g.b);
    LSeries den = ctx.embed_poly(g.c) * z + ctx.embed_poly(g.d);
    if (den.c.empty()) throw PoleHit("cz + d vanishes to truncation");
    LSeries r = num * inverse(den);
    if (r.c.empty() && !r.is_exact() && r.trunc <= r.val) throw PrecisionExhausted("homography lost every digit");
    return r;
}

inline bool in_fundamental(const GeomContext& ctx, const LSeries& z) {
    if (z.c.empty()) throw IndistinguishableFromKInfinity("point is zero to truncation");
    int k = z.val;
    bool strippable = (k % ctx.e == 0) && ctx.coeff_in_base(z.c[0]);
    return !strippable && k <= 0;  // |z| = |z|_Im >= 1
}

// Reduce z into the fundamental domain 𝔉 = {|z| = |z|_Im >= 1}: translate by
// the A-part of the head, then either invert (head not in K_∞ direction) or
// apply the Borel step with row (θ^n, -β) that strictly increases |z|_Im.
inline std::pair<Matrix2, LSeries> reduce_to_fundamental(const GeomContext& ctx, LSeries z, int max_steps = 64) {
    const Fq& Fb = *ctx.base;
    Matrix2 acc = Matrix2::identity(Fb);
    for (int step = 0; step < max_steps; ++step) {
        // translation by -t, t ∈ A: strip leading F_q[θ]-terms of size >= 1
        FqPoly t = FqPoly::zero(Fb);
        for (;;) {
            if (z.c.empty()) throw IndistinguishableFromKInfinity("point collapsed into K_∞ to truncation");
            int k = z.val;
            if (k > 0 || k % ctx.e != 0 || !ctx.coeff_in_base(z.c[0])) break;
            int j = -k / ctx.e;
            int base_idx = 0;
            for (int s = 0; s < ctx.base->q; ++s)
                if (ctx.emb->map[size_t(s)] == z.c[0].v) base_idx = s;
            FqPoly term = FqPoly::monomial(Fb, j, base_idx);
            t = t + term;
            z = z - ctx.embed_poly(term);
        }
        if (!t.is_zero()) acc = Matrix2{FqPoly::one(Fb), -t, FqPoly::zero(Fb), FqPoly::one(Fb)} * acc;

        int k = z.val;
        bool strippable = (k % ctx.e == 0) && ctx.coeff_in_base(z.c[0]);
        if (k <= 0 && !strippable) return {acc, z};  // in 𝔉

        if (!strippable) {
            // |z| = |z|_Im < 1: invert
            Matrix2 inv{FqPoly::zero(Fb), FqPoly::one(Fb), FqPoly::one(Fb), FqPoly::zero(Fb)};
            z = homography(ctx, inv, z);
            acc = inv * acc;
        } else {
            // head βπ^n with β ∈ F_q^×, n >= 1: row (θ^n, -β) contracts it
            int n = k / ctx.e;
            int beta = 0;
            for (int s = 0; s < ctx.base->q; ++s)
                if (ctx.emb->map[size_t(s)] == z.c[0].v) beta = s;
            int beta_inv = Fb.inv(beta);
            Matrix2 borel{FqPoly::monomial(Fb, 0, Fb.neg(beta_inv)), FqPoly::zero(Fb), FqPoly::monomial(Fb, n, 1),
                          FqPoly::monomial(Fb, 0, Fb.neg(beta))};
            z = homography(ctx, borel, z);
            acc = borel * acc;
        }
    }
    throw StepLimitExceeded("fundamental-domain reduction did not terminate");
}

// Gekeler's finite j-invariant j_0(z) = -(1+z^{q-1})^{q+1}/z^{q-1} as an
// exact rational function (the polynomial variable standing for z).
inline RatFunc j0_symbol(const Fq& F) {
    FqPoly z = FqPoly::theta(F);
    FqPoly zq1 = z.pow(F.q - 1);
    FqPoly one = FqPoly::one(F);
    return RatFunc(-(one + zq1).pow(F.q + 1), zq1);
}

// The full GL_2(F_q) quotient invariant J(z) = (z^{q²}-z)^{q+1}/(z^q-z)^{q²+1}
// of degree q³-q: invariant under all homography generators (z+μ, λz, 1/z),
// unlike j_0 which only survives the scalings. Equals (1+y)^{q+1}/y^q with
// y = (z^q-z)^{q-1}.
inline RatFunc gl2_invariant(const Fq& F) {
    FqPoly z = FqPoly::theta(F);
    FqPoly num = FqPoly::monomial(F, F.q * F.q, 1) - z;  // z^{q²} - z
    FqPoly den = FqPoly::monomial(F, F.q, 1) - z;        // z^q - z
    return RatFunc(num.pow(F.q + 1), den.pow((long long)F.q * F.q + 1));
}

// substitutions for the GL_2(F_q) invariance checks
inline FqPoly poly_reverse(const FqPoly& p, int up_to_deg) {
    FqPoly r(*p.F);
    r.c.assign(size_t(up_to_deg) + 1, 0);
    for (int i = 0; i <= p.deg(); ++i) r.c[size_t(up_to_deg - i)] = p.c[size_t(i)];
    r.trim();
    return r;
}

inline RatFunc ratfunc_sub_inv(const RatFunc& r) {  // z -> 1/z
    int m = std::max(r.num.deg(), r.den.deg());
    return RatFunc(poly_reverse(r.num, m), poly_reverse(r.den, m));
}

inline RatFunc ratfunc_sub_scale(const RatFunc& r, FqElem lam) {  // z -> λz
    auto scale = [&](const FqPoly& p) {
        FqPoly s = p;
        FqElem pw = FqElem(*lam.F, 1);
        for (size_t i = 0; i < s.c.size(); ++i) {
            s.c[i] = uint16_t((FqElem(*lam.F, s.c[i]) * pw).v);
            pw = pw * lam;
        }
        s.trim();
        return s;
    };
    return RatFunc(scale(r.num), scale(r.den));
}

inline RatFunc ratfunc_sub_shift(const RatFunc& r, FqElem mu) {  // z -> z + μ
    auto shift = [&](const FqPoly& p) {
        const Fq& F = *p.F;
        FqPoly acc = FqPoly::zero(F);
        FqPoly zmu = FqPoly::theta(F) + FqPoly::constant(mu);
        for (int i = p.deg(); i >= 0; --i) acc = acc * zmu + FqPoly::constant(FqElem(F, p.c[size_t(i)]));
        return acc;
    };
    return RatFunc(shift(r.num), shift(r.den));
}

// point evaluation of j_0
inline LSeries j0_point(const GeomContext& ctx, const LSeries& z) {
    const Fq& F = *ctx.big;
    if (z.c.empty()) throw PoleHit("j_0 needs a nonzero point");
    LSeries zq1 = powi(z, ctx.base->q - 1);
    LSeries one = LSeries::monomial(Var::geom, 0, FqElem(F, 1), kExact, ctx.e);
    LSeries num = -powi(one + zq1, ctx.base->q + 1);
    if (zq1.c.empty()) throw PoleHit("z^{q-1} vanishes to truncation");
    return num * inverse(zq1);
}

}  // namespace carlitz

#endif
