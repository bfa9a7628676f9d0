#ifndef CARLITZ_ORE_HPP
#define CARLITZ_ORE_HPP

#include <functional>
#include <vector>

#include "carlitz/series.hpp"

namespace carlitz {

// Element of R[τ] / R[[τ]] with τ b = b^q τ (q-power Frobenius twist).
// trunc == kExact marks a genuine polynomial; otherwise coefficients are
// known below τ^trunc only. Multiplication is noncommutative:
//   (fg)_k = Σ_{i+j=k} f_i · τ^i(g_j).
template <class R>
struct Twisted {
    std::vector<R> c;
    int trunc = kExact;

    Twisted() = default;
    Twisted(std::vector<R> coeffs, int tr = kExact) : c(std::move(coeffs)), trunc(tr) { normalize(); }

    static Twisted one(const R& one_val, int tr = kExact) { return Twisted({one_val}, tr); }

    void normalize() {
        if (trunc != kExact && int(c.size()) > trunc) c.resize(size_t(trunc));
        while (!c.empty() && ring_is_exact_zero(c.back())) c.pop_back();
    }
    bool is_exact() const { return trunc == kExact; }
    int deg_tau() const { return int(c.size()) - 1; }  // exact polynomials only
    R coeff(int i) const {
        if (i < 0 || i >= int(c.size())) return c.empty() ? R{} : ring_zero_like(c[0]);
        return c[size_t(i)];
    }

    friend Twisted operator+(const Twisted& a, const Twisted& b) {
        Twisted r;
        r.trunc = std::min(a.trunc, b.trunc);
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size())
                r.c[i] = a.c[i] + b.c[i];
            else if (i < a.c.size())
                r.c[i] = a.c[i];
            else
                r.c[i] = b.c[i];
        }
        r.normalize();
        return r;
    }
    friend Twisted operator-(const Twisted& a, const Twisted& b) { return a + (-b); }
    Twisted operator-() const {
        Twisted r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend bool operator==(const Twisted& a, const Twisted& b) { return a.trunc == b.trunc && a.c == b.c; }
    friend bool operator!=(const Twisted& a, const Twisted& b) { return !(a == b); }
};

template <class R>
Twisted<R> ore_mul(const Twisted<R>& f, const Twisted<R>& g) {
    Twisted<R> r;
    r.trunc = std::min(f.trunc, g.trunc);
    if (f.c.empty() || g.c.empty()) return r;
    size_t len = f.c.size() + g.c.size() - 1;
    if (r.trunc != kExact) len = std::min(len, size_t(r.trunc));
    r.c.assign(len, ring_zero_like(f.c[0]));
    std::vector<R> gtw = g.c;  // τ^i applied incrementally
    for (size_t i = 0; i < f.c.size() && i < len; ++i) {
        if (i > 0)
            for (auto& x : gtw) x = ring_frobenius(x);
        if (ring_is_exact_zero(f.c[i])) continue;
        for (size_t j = 0; j < gtw.size() && i + j < len; ++j) {
            if (ring_is_exact_zero(gtw[j])) continue;
            r.c[i + j] = r.c[i + j] + f.c[i] * gtw[j];
        }
    }
    r.normalize();
    return r;
}

// Scalar (τ-degree 0) factors.
template <class R>
Twisted<R> ore_scalar(R x, int tr = kExact) {
    return Twisted<R>({std::move(x)}, tr);
}

// f(x) = Σ f_i τ^i(x). Exact polynomials evaluate unconditionally; a
// truncated operand needs x of positive valuation (so the unknown tail at
// and beyond τ^N, whose coefficients are only assumed integral, stays below
// the reported precision).
template <class R>
R ore_eval(const Twisted<R>& f, const R& x) {
    if (f.c.empty()) return ring_is_null(x) ? x : (x - x);
    if (f.is_exact()) {
        R tw = x;
        R acc = f.c[0] * tw;
        for (size_t i = 1; i < f.c.size(); ++i) {
            tw = ring_frobenius(tw);
            acc = acc + f.c[i] * tw;
        }
        return acc;
    }
    if constexpr (requires(const R& s) { s.valuation(); s.trunc; }) {
        long long vx = x.valuation();
        if (vx <= 0) throw DivergentEvaluation("evaluation of a truncated operator needs v(x) > 0");
        for (auto& fi : f.c)
            if (!fi.c.empty() && fi.valuation() < 0)
                throw DivergentEvaluation("truncated operator has coefficients of negative valuation");
        long long q = ring_char_q(x);
        long long tail = vx;  // v(x^{q^N}) with unit-size tail coefficients
        for (int i = 0; i < f.trunc; ++i) tail = std::min<long long>(tail * q, kExact);
        R tw = x;
        R acc = f.c[0] * tw;
        for (size_t i = 1; i < f.c.size(); ++i) {
            tw = ring_frobenius(tw);
            acc = acc + f.c[i] * tw;
        }
        return truncated(acc, int(std::min<long long>(acc.trunc, tail)));
    } else {
        throw DivergentEvaluation("cannot certify convergence in this coefficient domain");
    }
}

// Two-sided inverse mod τ^N by triangular recursion on coefficients.
template <class R>
Twisted<R> ore_invert(const Twisted<R>& f, int N) {
    if (f.c.empty() || ring_is_zero(f.c[0])) throw NonUnitConstantTerm("Ore inverse needs an invertible constant term");
    Twisted<R> g;
    g.trunc = std::min(N, f.trunc);
    R f0inv = ring_inverse(f.c[0]);
    g.c.assign(size_t(std::min(N, g.trunc)), ring_zero_like(f.c[0]));
    g.c[0] = f0inv;
    for (int k = 1; k < int(g.c.size()); ++k) {
        R acc = ring_zero_like(f.c[0]);
        for (int i = 1; i <= k && i < int(f.c.size()); ++i) {
            R gi = g.c[size_t(k - i)];
            for (int m = 0; m < i; ++m) gi = ring_frobenius(gi);
            acc = acc + f.c[size_t(i)] * gi;
        }
        g.c[size_t(k)] = -(f0inv * acc);
    }
    g.normalize();
    return g;
}

// Truncated non-commutative product: consumes exactly N factors from the
// stream, each required to be ≡ 1 mod τ, multiplying new factors on the LEFT
// (stream order f0, f1, ... yields ... f2 f1 f0). Result is reported mod τ^N.
template <class R>
Twisted<R> ore_product_truncated(const std::function<Twisted<R>(int)>& factor, int N, const R& one_val) {
    Twisted<R> prod = Twisted<R>::one(one_val, N);
    for (int k = 0; k < N; ++k) {
        Twisted<R> f = factor(k);
        if (f.c.empty() || !ring_is_zero(f.c[0] - one_val))
            throw NotUnipotentFactor("infinite-product factor is not 1 + O(τ)");
        prod = ore_mul(f, prod);
    }
    prod.trunc = std::min(prod.trunc, N);
    prod.normalize();
    return prod;
}

}  // namespace carlitz

#endif
