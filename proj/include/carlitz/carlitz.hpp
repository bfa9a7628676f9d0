#ifndef CARLITZ_CARLITZ_HPP
#define CARLITZ_CARLITZ_HPP

#include "carlitz/ore.hpp"
#include "carlitz/power_sums.hpp"

namespace carlitz {

// ---- Carlitz module action -------------------------------------------------

// C_a for a ∈ A: the unique F_q-algebra map with C_θ = θ + τ. Exact Ore
// polynomial over K with coefficients in A and τ-degree deg a.
inline Twisted<RatFunc> carlitz_action(const Fq& F, const FqPoly& a) {
    RatFunc one = RatFunc::one(F);
    RatFunc theta = RatFunc(FqPoly::theta(F));
    Twisted<RatFunc> C_theta({theta, one});
    Twisted<RatFunc> C_theta_k = Twisted<RatFunc>::one(one);  // C_{θ^k}, k = 0
    Twisted<RatFunc> acc;
    for (int k = 0; k <= a.deg(); ++k) {
        if (a.c[size_t(k)]) {
            RatFunc s(FqPoly::constant(FqElem(F, a.c[size_t(k)])));
            acc = acc + ore_mul(ore_scalar(s), C_theta_k);
        }
        if (k < a.deg()) C_theta_k = ore_mul(C_theta, C_theta_k);
    }
    if (acc.c.empty()) acc = Twisted<RatFunc>({}, kExact);
    return acc;
}

// τ-coefficients of C_a as elements of A (they are integral)
inline std::vector<FqPoly> carlitz_action_coeffs(const Fq& F, const FqPoly& a) {
    Twisted<RatFunc> C = carlitz_action(F, a);
    std::vector<FqPoly> out;
    out.reserve(C.c.size());
    for (auto& r : C.c) {
        if (r.is_null()) {
            out.push_back(FqPoly::zero(F));
            continue;
        }
        if (r.den.deg() != 0) throw DomainMismatch("Carlitz action coefficient not integral");
        out.push_back(r.num);
    }
    return out;
}

// exp_C = Σ d_i^{-1} τ^i and log_C = Σ l_i^{-1} τ^i mod τ^N
inline Twisted<RatFunc> exp_c(BracketCache& B, int N) {
    if (N < 1) throw UnsupportedSize("truncation order must be >= 1");
    B.extend(N - 1);
    std::vector<RatFunc> c;
    c.reserve(size_t(N));
    for (int i = 0; i < N; ++i) c.push_back(RatFunc(FqPoly::one(B.field()), B.d[size_t(i)]));
    return Twisted<RatFunc>(std::move(c), N);
}

inline Twisted<RatFunc> log_c(BracketCache& B, int N) {
    if (N < 1) throw UnsupportedSize("truncation order must be >= 1");
    B.extend(N - 1);
    std::vector<RatFunc> c;
    c.reserve(size_t(N));
    for (int i = 0; i < N; ++i) c.push_back(RatFunc(FqPoly::one(B.field()), B.l[size_t(i)]));
    return Twisted<RatFunc>(std::move(c), N);
}

// Convergence audit for exp_C = lim_m C_{θ^m} θ^{-m}: the τ^i-coefficient of
// C_{θ^m}·θ^{-m} differs from 1/d_i by Σ_{k<i} d_k^{-1} l_{i-k}^{-q^k} θ^{m(q^k - q^i)},
// so the 1/θ-adic error valuation must increase strictly with m. Reports, per
// i, the first m at which the coefficient carries `digits` correct digits.
struct LimitCheckReport {
    bool ok = true;
    std::vector<int> first_m;  // index i < N; -1 when `digits` not reached by Nsteps
    std::string detail;
};

inline LimitCheckReport exp_c_limit_check(BracketCache& B, int N, int Nsteps, int digits) {
    if (Nsteps < N) throw UnsupportedSize("Nsteps must be >= N");
    const Fq& F = B.field();
    B.extend(N);
    LimitCheckReport rep;
    rep.first_m.assign(size_t(N), -1);
    FqPoly theta_pow = FqPoly::one(F);
    Twisted<RatFunc> C_theta_m = Twisted<RatFunc>::one(RatFunc::one(F));
    Twisted<RatFunc> C_theta({RatFunc(FqPoly::theta(F)), RatFunc::one(F)});
    for (int m = 0; m <= Nsteps; ++m) {
        if (m > 0) {
            C_theta_m = ore_mul(C_theta, C_theta_m);
            theta_pow = theta_pow * FqPoly::theta(F);
        }
        Twisted<RatFunc> scaled = ore_mul(C_theta_m, ore_scalar(RatFunc(FqPoly::one(F), theta_pow)));
        for (int i = 0; i < N && i <= m; ++i) {
            RatFunc err = scaled.coeff(i) - RatFunc(FqPoly::one(F), B.d[size_t(i)]);
            long long v = err.is_zero() ? (1LL << 30) : err.den.deg() - err.num.deg();
            if (rep.first_m[size_t(i)] < 0 && v >= digits) rep.first_m[size_t(i)] = m;
        }
    }
    for (int i = 0; i < N; ++i)
        if (rep.first_m[size_t(i)] < 0) {
            rep.ok = false;
            rep.detail += "coefficient " + std::to_string(i) + " not stabilized; ";
        }
    return rep;
}

// ---- Carlitz polynomials ----------------------------------------------------

// E_k(z) = Σ_{i<=k} d_i^{-1} l_{k-i}^{-q^i} z^{q^i}, stored by q-power slot.
struct LinPoly {
    const Fq* F = nullptr;
    std::vector<RatFunc> c;  // c[i] multiplies z^{q^i}

    RatFunc eval(const RatFunc& x) const {
        RatFunc acc(*F);
        RatFunc xq = x;
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) xq = xq.frobenius();
            if (!ring_is_zero(c[i])) acc = acc + c[i] * xq;
        }
        return acc;
    }
    // E^q: Frobenius the coefficients and shift the q-power slots
    LinPoly frobenius_twist() const {
        LinPoly r;
        r.F = F;
        r.c.assign(c.size() + 1, RatFunc(*F));
        for (size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i].frobenius();
        return r;
    }
    friend LinPoly operator+(const LinPoly& a, const LinPoly& b) {
        LinPoly r;
        r.F = a.F ? a.F : b.F;
        r.c.assign(std::max(a.c.size(), b.c.size()), RatFunc(*r.F));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] = r.c[i] + a.c[i];
            if (i < b.c.size()) r.c[i] = r.c[i] + b.c[i];
        }
        return r;
    }
    friend LinPoly operator*(const RatFunc& s, const LinPoly& a) {
        LinPoly r = a;
        for (auto& x : r.c) x = s * x;
        return r;
    }
};

inline LinPoly carlitz_poly(BracketCache& B, int k) {
    if (k < 0) throw UnsupportedSize("Carlitz polynomial index must be >= 0");
    B.extend(k);
    LinPoly E;
    E.F = B.F;
    E.c.reserve(size_t(k) + 1);
    for (int i = 0; i <= k; ++i) {
        FqPoly den = B.d[size_t(i)] * B.l[size_t(k - i)].pow(B.qpow(i));
        E.c.push_back(RatFunc(FqPoly::one(B.field()), den));
    }
    return E;
}

// ---- the period ---------------------------------------------------------

// π̃^{q-1} = -θ^q ∏_{i>0} (1 - θ^{1-q^i})^{-(q-1)} ∈ K_∞, v = -q, P digits
inline LSeries pi_pow_q_minus_1(const Fq& F, int P) {
    if (P < 1) throw UnsupportedSize("precision must be >= 1");
    LSeries acc = LSeries::monomial(Var::inv_theta, -F.q, FqElem(F, F.neg(1)), -F.q + P);
    for (long long qi = F.q; qi - 1 < P; qi *= F.q) {
        LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
        LSeries factor = one - LSeries::monomial(Var::inv_theta, int(qi - 1), FqElem(F, 1));
        acc = acc * powi(inverse(factor, P), F.q - 1);
    }
    return acc;
}

// π̃^m for any m divisible by q-1 (positive or negative), P relative digits
inline LSeries pi_power(const Fq& F, long long m, int P) {
    if (m % (F.q - 1) != 0) throw DomainMismatch("only powers of π̃^(q-1) live in K_∞");
    LSeries base = pi_pow_q_minus_1(F, P + 2);
    return powi(base, m / (F.q - 1));
}

// exp_A = Σ d_i^{-1} π̃^{q^i - 1} τ^i mod τ^N, coefficients carrying P digits
inline Twisted<LSeries> exp_a(BracketCache& B, int N, int P) {
    const Fq& F = B.field();
    B.extend(N - 1);
    std::vector<LSeries> c;
    c.reserve(size_t(N));
    for (int i = 0; i < N; ++i) {
        LSeries di_inv = laurent_inv_of_poly(B.d[size_t(i)], P + 2);
        c.push_back(di_inv * pi_power(F, B.qpow(i) - 1, P + 2));
    }
    return Twisted<LSeries>(std::move(c), N);
}

// the k-th factor of the non-commutative product expansion of exp_A:
// (1 - τ) for k = 0, then (1 - τ l_k^{-(q-1)})
inline Twisted<LSeries> exp_a_factor(BracketCache& B, int k, int P) {
    const Fq& F = B.field();
    B.extend(k);
    LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    LSeries coeff = k == 0 ? LSeries::monomial(Var::inv_theta, 0, FqElem(F, F.neg(1)))
                           : -powi(laurent_inv_of_poly(B.l[size_t(k)], P + 2), F.q - 1);
    return Twisted<LSeries>({one, coeff});
}

// exact partial product over K: (1 - τ/l_{N-1}^{q-1}) ... (1 - τ/l_1^{q-1})(1 - τ)
inline Twisted<RatFunc> exp_a_partial_product_exact(BracketCache& B, int N) {
    const Fq& F = B.field();
    B.extend(std::max(0, N - 1));
    RatFunc one = RatFunc::one(F);
    Twisted<RatFunc> prod = Twisted<RatFunc>::one(one);
    for (int k = 0; k < N; ++k) {
        RatFunc coeff = k == 0 ? -one : -RatFunc(FqPoly::one(F), B.l[size_t(k)].pow(F.q - 1));
        prod = ore_mul(Twisted<RatFunc>({one, coeff}), prod);
    }
    return prod;
}

// ---- ramified context: θ = -s^(q-1) -----------------------------------------

// Elements of F_q((1/s)) in the variable 1/s. Embedding of K_∞ substitutes
// θ^k -> (-1)^k s^(k(q-1)); the distinguished (q-1)-th root of -θ is s itself,
// which pins the same root choice inside π̃, λ_1 and ω.
struct RamifiedContext {
    const Fq* F;
    int prec;  // absolute truncation in 1/s digits

    RamifiedContext(const Fq& field, int precision) : F(&field), prec(precision) {}

    int ram() const { return F->q - 1; }

    LSeries embed(const LSeries& a) const {
        if (a.var != Var::inv_theta) throw VariableMismatch("ramified embedding expects a 1/θ series");
        LSeries r;
        r.var = Var::inv_s;
        r.val = a.val * ram();
        r.trunc = a.is_exact() ? kExact : a.trunc * ram();
        if (!a.c.empty()) {
            r.c.assign((a.c.size() - 1) * size_t(ram()) + 1, FqElem(*F, 0));
            for (size_t i = 0; i < a.c.size(); ++i) {
                int k = a.val + int(i);
                FqElem x = a.c[i];
                if ((k % 2 != 0) && F->p != 2) x = -x;
                r.c[i * size_t(ram())] = x;
            }
        }
        r.normalize();
        return r;
    }
    LSeries embed(const FqPoly& a) const { return embed(laurent_of_poly(a)); }

    LSeries s_elem() const { return LSeries::monomial(Var::inv_s, -1, FqElem(*F, 1)); }
    LSeries one() const { return LSeries::monomial(Var::inv_s, 0, FqElem(*F, 1)); }

    // multiply by θ^k = (-1)^k s^(k(q-1))
    LSeries mul_theta_pow(const LSeries& a, long long k) const {
        LSeries r = shifted(a, int(-k * ram()));
        if ((k % 2 != 0) && F->p != 2)
            for (auto& x : r.c) x = -x;
        return r;
    }
};

// π̃ = θ·s·∏_{i>0}(1 - θ^{1-q^i})^{-1} in the ramified field, with the
// (q-1)-th root of -θ pinned to s. P_theta is the relative digit window of
// the unramified product part.
inline LSeries pi_ramified(const RamifiedContext& ctx, int P_theta) {
    const Fq& F = *ctx.F;
    LSeries prod = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1), P_theta);
    for (long long qi = F.q; qi - 1 < P_theta; qi *= F.q) {
        LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
        prod = prod * inverse(one - LSeries::monomial(Var::inv_theta, int(qi - 1), FqElem(F, 1)), P_theta);
    }
    return truncated(ctx.mul_theta_pow(ctx.embed(prod), 1) * ctx.s_elem(), ctx.prec);
}

// λ-tower: C_θ(λ_{i+1}) = λ_i with λ_1 = s, solved by the contraction
// x <- (λ_i - x^q)/θ; μ_i = θ^i λ_i converges to π̃.
struct LambdaMu {
    std::vector<LSeries> lambda;  // index 1..imax
    std::vector<LSeries> mu;
};

inline LambdaMu lambda_mu_sequence(const RamifiedContext& ctx, int imax) {
    const Fq& F = *ctx.F;
    LambdaMu out;
    out.lambda.assign(size_t(imax) + 1, LSeries());
    out.mu.assign(size_t(imax) + 1, LSeries());
    LSeries lam = truncated(ctx.s_elem(), ctx.prec);
    out.lambda[1] = lam;
    out.mu[1] = ctx.mul_theta_pow(lam, 1);
    for (int i = 2; i <= imax; ++i) {
        LSeries prev = out.lambda[size_t(i - 1)];
        LSeries x = truncated(ctx.mul_theta_pow(prev, -1), ctx.prec);
        bool settled = false;
        for (int it = 0; it < ctx.prec + 16; ++it) {
            LSeries next = truncated(ctx.mul_theta_pow(prev - frobenius(x), -1), ctx.prec);
            if (next == x) {
                settled = true;
                break;
            }
            if (next.valuation() < x.valuation() - 1) throw ContractionDiverged("λ iteration lost valuation");
            x = next;
        }
        if (!settled) throw ContractionDiverged("λ iteration did not reach a fixed point");
        if (x.valuation() != (F.q - 1) * i - F.q) throw PrecisionExhausted("λ valuation drifted; raise the ramified precision");
        out.lambda[size_t(i)] = x;
        out.mu[size_t(i)] = ctx.mul_theta_pow(x, i);
    }
    return out;
}

// ω(t) = Σ λ_{i+1} t^i (λ route)
inline TSeries omega_lambda_route(const RamifiedContext& ctx, int t_order) {
    LambdaMu lm = lambda_mu_sequence(ctx, t_order);
    TSeries w = TSeries::zero(Var::t, t_order);
    w.frob_cov = false;
    for (int i = 0; i < t_order; ++i) w = w + TSeries::monomial(Var::t, i, lm.lambda[size_t(i + 1)], t_order);
    return w;
}

// ω(t) = s ∏_{i>=0} (1 - t/θ^{q^i})^{-1} (product route)
inline TSeries omega_series(const RamifiedContext& ctx, int t_order) {
    if (t_order < 1) throw UnsupportedSize("t_order must be >= 1");
    const Fq& F = *ctx.F;
    TSeries w = TSeries::monomial(Var::t, 0, truncated(ctx.s_elem(), ctx.prec), t_order);
    w.frob_cov = false;
    for (long long qi = 1;; qi *= F.q) {
        // the factor contributes at s-valuation (q-1)·q^i in every t-degree >= 1
        if ((F.q - 1) * qi >= ctx.prec + 2) break;
        LSeries theta_inv_qi = ctx.embed(LSeries::monomial(Var::inv_theta, int(qi), FqElem(F, 1)));
        TSeries factor = TSeries::monomial(Var::t, 0, ctx.one(), t_order) - TSeries::monomial(Var::t, 1, theta_inv_qi, t_order);
        factor.frob_cov = false;
        w = w * inverse(factor, t_order);
    }
    for (auto& c : w.c) c = truncated(c, ctx.prec);
    w.normalize();
    return w;
}

// Σ g_k θ^k for a t-series g: the t -> θ substitution. The unknown t-tail is
// accounted for through `tail_val_bound`, a lower bound for v_s(g_k θ^k) over
// k >= t-truncation.
inline LSeries eval_t_at_theta(const RamifiedContext& ctx, const TSeries& g, int tail_val_bound) {
    LSeries acc = LSeries::zero(Var::inv_s, std::min(ctx.prec, tail_val_bound));
    for (int k = g.val; k < g.trunc; ++k) {
        const LSeries* c = g.stored(k);
        if (!c || c->c.empty()) continue;
        acc = acc + ctx.mul_theta_pow(*c, k);
    }
    return truncated(acc, std::min(ctx.prec, tail_val_bound));
}

}  // namespace carlitz

#endif
