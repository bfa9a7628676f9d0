#ifndef CARLITZ_POWER_SUMS_HPP
#define CARLITZ_POWER_SUMS_HPP

#include "carlitz/brackets.hpp"
#include "carlitz/series.hpp"

namespace carlitz {

// Degree-d strata of zeta-type sums over monic polynomials, computed through
// the generating identity
//
//   Σ_{a monic, deg a = d} χ(a)/(a - T) = l_d^{-1} (b_d(t) + Σ_{i<d} b_i(t) E_i(T)) (1 - E_d(T))^{-1}
//
// where E_i(T) = Σ_k T^{q^k}/(d_k l_{i-k}^{q^k}) are the Carlitz polynomials,
// b_i(t) = ∏_{k<i}(t - θ^{q^k}), and χ(a) = a(t). It follows from
// ∏_{deg v < d}(X - v) = d_d E_d(X) (an F_q-linear polynomial with constant
// derivative d_d/l_d and d_d E_d(θ^d) = d_d) together with the interpolation
// P_d(X) = Σ_{i<d} b_i(t) E_i(X) of a ↦ a(t) on polynomials of degree < d.
// Extracting the T^{j-1} coefficient yields Σ χ(a) a^{-j}; dropping the
// twist (b_i ≡ 1 ≡ numerator) yields the plain power sums Σ a^{-j}.
//
// Strata vanish fast: v(S_d(w)) ≥ max(w·d, q^d) and the twisted sums satisfy
// v ≥ max(j·d, q^d - 1), so only O(log_q P) strata carry digits below P.

using TSeries = Series<LSeries>;  // series in t with Laurent coefficients

inline LSeries laurent_inv_abs(const FqPoly& a, int T_abs, Var v = Var::inv_theta) {
    if (a.is_zero()) throw DivisionByZeroPoly("inverse of zero polynomial");
    int window = T_abs - a.deg();
    if (window <= 0) return LSeries::zero(v, T_abs);
    return laurent_inv_of_poly(a, window, v);
}

// 1/(d_k l_{i-k}^{q^k}) with absolute truncation T_abs
inline LSeries carlitz_coeff_inv(const BracketCache& B, int i, int k, int T_abs) {
    const Fq& F = B.field();
    long long deg = B.deg_d(k) + B.qpow(k) * B.deg_l(i - k);
    if (deg >= T_abs) return LSeries::zero(Var::inv_theta, T_abs);
    int W = int(T_abs - deg);
    LSeries dk = laurent_window_of_poly(B.d[k], W);
    LSeries lk = frobenius_iter(laurent_window_of_poly(B.l[i - k], W), k);
    (void)F;
    return inverse(truncated(dk * lk, int(-deg + W)), W);
}

// E_i as a polynomial in the scratch variable T truncated at T^J, with
// Laurent coefficients at absolute order T_abs
inline Series<LSeries> carlitz_poly_series(const BracketCache& B, int i, int J, int T_abs) {
    std::vector<std::pair<int, LSeries>> terms;
    for (int k = 0; k <= i; ++k) {
        long long e = B.qpow(k);
        if (e >= J) break;
        terms.emplace_back(int(e), carlitz_coeff_inv(B, i, k, T_abs));
    }
    Series<LSeries> r = Series<LSeries>::zero(Var::aux, J);
    for (auto& [e, c] : terms) r = r + Series<LSeries>::monomial(Var::aux, e, c, J);
    return r;
}

// plain power sums S_d(w) for w = 1..W, absolute precision P
inline std::vector<LSeries> stratum_power_sums(BracketCache& B, int d, int W, int P) {
    B.extend(d);
    const Fq& F = B.field();
    int T_abs = P + 8;
    std::vector<LSeries> S(size_t(W) + 1, LSeries::zero(Var::inv_theta, T_abs));
    LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    if (d == 0) {
        for (int w = 1; w <= W; ++w) S[size_t(w)] = one;
        return S;
    }
    Series<LSeries> one_minus_ed = Series<LSeries>::monomial(Var::aux, 0, one, W) - carlitz_poly_series(B, d, W, T_abs);
    Series<LSeries> inv = inverse(one_minus_ed, W);
    LSeries ld_inv = laurent_inv_abs(B.l[d], T_abs);
    for (int w = 1; w <= W; ++w) S[size_t(w)] = truncated(inv.coeff(w - 1) * ld_inv, T_abs);
    return S;
}

// b_i(t) = ∏_{k<i}(t - θ^{q^k}) as an exact t-polynomial with Laurent coefficients
inline TSeries twist_factorial(const BracketCache& B, int i, int t_order) {
    const Fq& F = B.field();
    LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    TSeries b = TSeries::monomial(Var::t, 0, one);
    b.frob_cov = false;
    for (int k = 0; k < i; ++k) {
        LSeries theta_qk = LSeries::monomial(Var::inv_theta, int(-B.qpow(k)), FqElem(F, 1));
        TSeries factor = TSeries::make(Var::t, 0, {-theta_qk, one});
        factor.frob_cov = false;
        b = truncated(b * factor, t_order);
    }
    return b;
}

// twisted sums S_d(j;t) = Σ_{a monic, deg a = d} a(t) a^{-j} for j = 1..J,
// t-degrees below t_order, inner absolute precision P
inline std::vector<TSeries> stratum_twisted_sums(BracketCache& B, int d, int J, int t_order, int P) {
    B.extend(d);
    const Fq& F = B.field();
    int T_abs = P + 8;
    LSeries one = LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1));
    TSeries t_one = TSeries::monomial(Var::t, 0, one);
    t_one.frob_cov = false;

    std::vector<TSeries> S(size_t(J) + 1, TSeries::zero(Var::t, t_order));
    if (d == 0) {
        for (int j = 1; j <= J; ++j) S[size_t(j)] = t_one;
        return S;
    }

    auto lift = [&](const LSeries& x) {
        TSeries r = TSeries::monomial(Var::t, 0, x);
        r.frob_cov = false;
        return r;
    };

    // numerator b_d(t) + Σ_{i<d} b_i(t) E_i(T);  denominator 1 - E_d(T)
    Series<TSeries> numer = Series<TSeries>::monomial(Var::aux, 0, twist_factorial(B, d, t_order), J);
    for (int i = 0; i < d; ++i) {
        TSeries bi = twist_factorial(B, i, t_order);
        for (int k = 0; k <= i; ++k) {
            long long e = B.qpow(k);
            if (e >= J) break;
            LSeries c = carlitz_coeff_inv(B, i, k, T_abs);
            numer = numer + Series<TSeries>::monomial(Var::aux, int(e), truncated(bi * lift(c), t_order), J);
        }
    }
    Series<TSeries> den = Series<TSeries>::monomial(Var::aux, 0, t_one, J);
    for (int k = 0; k <= d; ++k) {
        long long e = B.qpow(k);
        if (e >= J) break;
        den = den - Series<TSeries>::monomial(Var::aux, int(e), lift(carlitz_coeff_inv(B, d, k, T_abs)), J);
    }
    Series<TSeries> prod = numer * inverse(den, J);
    TSeries ld_inv = lift(laurent_inv_abs(B.l[d], T_abs));
    for (int j = 1; j <= J; ++j) {
        TSeries v = truncated(prod.coeff(j - 1) * ld_inv, t_order);
        for (auto& cc : v.c) cc = truncated(cc, T_abs);
        v.normalize();
        S[size_t(j)] = v;
    }
    return S;
}

// ζ_A(w) = Σ_{d≥0} Σ_{a monic, deg a = d} a^{-w}, absolute precision P
inline LSeries zeta_carlitz(BracketCache& B, int w, int P) {
    if (w < 1) throw NonpositiveWeight("zeta weight must be >= 1");
    LSeries acc = LSeries::zero(Var::inv_theta, P);
    for (int d = 0; (long long)w * d < P; ++d) {
        if (d >= 1 && B.qpow(d) >= P + 1) break;  // v(S_d(w)) >= q^d
        acc = acc + truncated(stratum_power_sums(B, d, w, P)[size_t(w)], P);
    }
    return truncated(acc, P);
}

// Thakur multiple zeta value ζ_A(n_1,...,n_r): sum over monic tuples with
// strictly decreasing degrees, stratified by deg a_1
inline LSeries mzv(BracketCache& B, const std::vector<int>& weights, int P) {
    if (weights.empty()) throw EmptyInput("mzv needs at least one weight");
    for (int n : weights)
        if (n < 1) throw NonpositiveWeight("mzv weights must be >= 1");
    int r = int(weights.size());
    int dmax = (P + weights[0] - 1) / weights[0];
    while (dmax >= 1 && B.qpow(dmax) >= P + 1) --dmax;  // v(S_d) >= q^d: deeper strata carry no digits
    B.extend(dmax);

    // tail[j][D] = Σ_{D >= d_j > ... > d_r >= 0} ∏_i S_{d_i}(n_i)
    std::vector<std::vector<LSeries>> Sd(size_t(dmax) + 1);
    for (int d = 0; d <= dmax; ++d) {
        int wmax = *std::max_element(weights.begin(), weights.end());
        Sd[size_t(d)] = stratum_power_sums(B, d, wmax, P);
    }
    std::vector<LSeries> tail(size_t(dmax) + 1, LSeries::zero(Var::inv_theta, P));
    for (int j = r - 1; j >= 0; --j) {
        std::vector<LSeries> next(size_t(dmax) + 1, LSeries::zero(Var::inv_theta, P));
        LSeries acc = LSeries::zero(Var::inv_theta, P);
        for (int D = 0; D <= dmax; ++D) {
            LSeries term = Sd[size_t(D)][size_t(weights[size_t(j)])];
            if (j + 1 < r)
                term = D >= 1 ? term * tail[size_t(D - 1)] : LSeries::zero(Var::inv_theta, P);
            acc = truncated(acc + term, P);
            next[size_t(D)] = acc;
        }
        tail = std::move(next);
    }
    return tail[size_t(dmax)];
}

}  // namespace carlitz

#endif
