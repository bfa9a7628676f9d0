#ifndef CARLITZ_SERIES_HPP
#define CARLITZ_SERIES_HPP

#include <algorithm>
#include <climits>
#include <optional>
#include <vector>

#include "carlitz/fq_poly.hpp"

namespace carlitz {

// ring trait layer -----------------------------------------------------------
//
// Series<R> works over any coefficient ring R exposing these hooks. FqElem,
// RatFunc and Series<R> itself qualify, so nested series (u-, t-, Z-expansions
// over Laurent coefficients) come for free.

inline bool ring_is_zero(const FqElem& x) { return x.is_zero(); }
inline bool ring_is_exact_zero(const FqElem& x) { return x.is_zero(); }
inline bool ring_has_known_digit(const FqElem& x) { return !x.is_zero(); }
inline bool ring_is_null(const FqElem& x) { return x.is_null(); }
inline FqElem ring_zero_like(const FqElem& x) { return x.F ? FqElem(*x.F, 0) : FqElem(); }
inline FqElem ring_one_like(const FqElem& x) {
    if (!x.F) throw DomainMismatch("one_like of anonymous zero");
    return FqElem(*x.F, 1);
}
inline FqElem ring_inverse(const FqElem& x) { return x.inverse(); }
inline FqElem ring_frobenius(const FqElem& x) { return x.frobenius(); }
inline int ring_char_q(const FqElem& x) { return x.F ? x.F->q : 0; }

inline bool ring_is_zero(const RatFunc& x) { return x.is_null() || x.is_zero(); }
inline bool ring_is_exact_zero(const RatFunc& x) { return x.is_null() || x.is_zero(); }
inline bool ring_has_known_digit(const RatFunc& x) { return !(x.is_null() || x.is_zero()); }
inline bool ring_is_null(const RatFunc& x) { return x.is_null(); }
inline RatFunc ring_zero_like(const RatFunc& x) { return x.is_null() ? RatFunc() : RatFunc(*x.num.F); }
inline RatFunc ring_one_like(const RatFunc& x) {
    if (x.is_null()) throw DomainMismatch("one_like of anonymous zero");
    return RatFunc::one(*x.num.F);
}
inline RatFunc ring_inverse(const RatFunc& x) { return x.inverse(); }
inline RatFunc ring_frobenius(const RatFunc& x) { return x.frobenius(); }
inline int ring_char_q(const RatFunc& x) { return x.is_null() ? 0 : x.num.F->q; }

// series ----------------------------------------------------------------------

enum class Var : uint8_t {
    none = 0,
    inv_theta,  // x = 1/θ, the uniformizer of K_∞
    inv_s,      // 1/s with θ = -s^(q-1), the ramified field
    u,          // uniformizer at infinity, Frobenius-covariant
    t,          // Tate variable, central for τ
    Z,          // lattice-sum variable, Frobenius-covariant
    geom,       // π^(1/e) over F_{q^m} for half-plane points
    aux,        // scratch variable for power-sum generating series
};

inline const char* var_name(Var v) {
    switch (v) {
        case Var::inv_theta: return "1/theta";
        case Var::inv_s: return "1/s";
        case Var::u: return "u";
        case Var::t: return "t";
        case Var::Z: return "Z";
        case Var::geom: return "pi^(1/e)";
        case Var::aux: return "T";
        default: return "?";
    }
}

constexpr int kExact = INT_MAX / 2;

// Truncated Laurent series c[0] x^val + ... + O(x^trunc). Exponents are in
// units of x^(1/ram) (ram > 1 only for ramified/Puiseux-style use; arithmetic
// itself is ordinary Laurent arithmetic on the integer grid). trunc == kExact
// marks an exact (polynomial) value. Stored coefficients cover exponents
// [val, val+c.size()); exponents beyond the store but below trunc are known
// zeros. Normal form: leading stored coefficient nonzero.
template <class R>
struct Series {
    Var var = Var::none;
    int ram = 1;
    bool frob_cov = true;
    int val = 0;
    int trunc = kExact;
    std::vector<R> c;

    Series() = default;

    static Series make(Var v, int val, std::vector<R> coeffs, int trunc = kExact, int ram = 1) {
        Series s;
        s.var = v;
        s.val = val;
        s.c = std::move(coeffs);
        s.trunc = trunc;
        s.ram = ram;
        s.frob_cov = (v != Var::t);
        s.normalize();
        return s;
    }
    static Series zero(Var v, int trunc = kExact, int ram = 1) { return make(v, trunc == kExact ? 0 : trunc, {}, trunc, ram); }
    static Series monomial(Var v, int exp, R coef, int trunc = kExact, int ram = 1) {
        return make(v, exp, {std::move(coef)}, trunc, ram);
    }

    bool is_null() const { return var == Var::none && c.empty() && trunc == kExact; }
    bool is_zero() const { return c.empty(); }  // zero exactly or to truncation
    bool is_exact() const { return trunc >= kExact; }

    void normalize() {
        size_t lead = 0;
        while (lead < c.size() && ring_is_exact_zero(c[lead])) ++lead;
        if (lead) {
            c.erase(c.begin(), c.begin() + lead);
            val += int(lead);
        }
        while (!c.empty() && ring_is_exact_zero(c.back())) c.pop_back();
        if (!is_exact() && int(c.size()) > trunc - val) c.resize(size_t(std::max(0, trunc - val)));
        if (c.empty()) val = is_exact() ? 0 : trunc;
    }

    // valuation of a nonzero series; zero-to-truncation reports its trunc
    int valuation() const { return c.empty() ? trunc : val; }

    const R* stored(int k) const {
        if (k < val || k >= val + int(c.size())) return nullptr;
        return &c[size_t(k - val)];
    }
    // coefficient of x^k, known-zero outside the store; no precision check
    R coeff(int k) const {
        const R* p = stored(k);
        return p ? *p : zero_coeff();
    }
    // coefficient with the precision contract enforced
    R known_coeff(int k) const {
        if (k >= trunc) throw PrecisionExhausted("coefficient at or beyond truncation order");
        return coeff(k);
    }
    R zero_coeff() const { return c.empty() ? R{} : ring_zero_like(c[0]); }

    static void check_compat(const Series& a, const Series& b) {
        if (a.var != Var::none && b.var != Var::none) {
            if (a.var != b.var) throw VariableMismatch(std::string(var_name(a.var)) + " vs " + var_name(b.var));
            if (a.ram != b.ram) throw VariableMismatch("ramification index mismatch");
        }
    }
    static Var join_var(const Series& a, const Series& b) { return a.var != Var::none ? a.var : b.var; }

    friend Series operator+(const Series& a, const Series& b) {
        check_compat(a, b);
        int trunc = std::min(a.trunc, b.trunc);
        int lo = std::min(a.c.empty() ? trunc : a.val, b.c.empty() ? trunc : b.val);
        int hi = std::min({trunc, std::max(a.val + int(a.c.size()), b.val + int(b.c.size()))});
        Series r;
        r.var = join_var(a, b);
        r.ram = std::max(a.ram, b.ram);
        r.frob_cov = a.frob_cov && b.frob_cov;
        r.val = lo;
        r.trunc = trunc;
        if (hi > lo) {
            r.c.reserve(size_t(hi - lo));
            for (int k = lo; k < hi; ++k) {
                const R* x = a.stored(k);
                const R* y = b.stored(k);
                if (x && y)
                    r.c.push_back(*x + *y);
                else if (x)
                    r.c.push_back(*x);
                else if (y)
                    r.c.push_back(*y);
                else
                    r.c.push_back(a.c.empty() ? b.zero_coeff() : a.zero_coeff());
            }
        }
        r.normalize();
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        check_compat(a, b);
        Series r;
        r.var = join_var(a, b);
        r.ram = std::max(a.ram, b.ram);
        r.frob_cov = a.frob_cov && b.frob_cov;
        // tightest-order rule: mul -> min(T_a + val_b, T_b + val_a)
        long long t1 = a.is_exact() ? kExact : (long long)a.trunc + b.valuation();
        long long t2 = b.is_exact() ? kExact : (long long)b.trunc + a.valuation();
        long long tr = std::min(t1, t2);
        r.trunc = tr >= kExact ? kExact : int(tr);
        if (a.c.empty() || b.c.empty()) {
            r.val = r.is_exact() ? 0 : r.trunc;
            return r;
        }
        r.val = a.val + b.val;
        int len = int(a.c.size() + b.c.size()) - 1;
        if (!r.is_exact()) len = std::min(len, r.trunc - r.val);
        if (len <= 0) {
            r.c.clear();
            r.val = r.trunc;
            return r;
        }
        r.c.assign(size_t(len), a.zero_coeff());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (ring_is_exact_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j) {
                if (i + j >= size_t(len)) break;
                if (ring_is_exact_zero(b.c[j])) continue;
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
            }
        }
        r.normalize();
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.var == b.var && a.ram == b.ram && a.val == b.val && a.trunc == b.trunc && a.c == b.c;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }
};

template <class R>
Series<R> shifted(Series<R> a, int k) {
    a.val += k;
    if (!a.is_exact()) a.trunc += k;
    if (a.c.empty() && a.is_exact()) a.val = 0;
    return a;
}

template <class R>
Series<R> truncated(Series<R> a, int T) {
    if (T < a.trunc) {
        a.trunc = T;
        a.normalize();
    }
    return a;
}

template <class R>
Series<R> scaled(const Series<R>& a, const R& s) {
    Series<R> r = a;
    for (auto& x : r.c) x = x * s;
    r.normalize();
    return r;
}

// Multiplicative inverse. For a truncated input the result keeps the same
// relative digit window; an exact input needs an explicit window unless it is
// a monomial.
template <class R>
Series<R> inverse(const Series<R>& a, int window = -1) {
    if (a.c.empty()) throw InvertZeroToTruncation("inverse of series with no digits");
    int W;
    if (!a.is_exact())
        W = a.trunc - a.val;
    else if (a.c.size() == 1)
        W = window > 0 ? window : 1;
    else {
        if (window <= 0) throw PrecisionExhausted("inverse of exact multi-term series needs a digit window");
        W = window;
    }
    if (window > 0) W = std::min(W, window);
    if (W <= 0) throw PrecisionExhausted("inverse would carry zero retained digits");

    Series<R> r;
    r.var = a.var;
    r.ram = a.ram;
    r.frob_cov = a.frob_cov;
    r.val = -a.val;
    r.trunc = (a.is_exact() && a.c.size() == 1 && window <= 0) ? kExact : -a.val + W;
    R u0inv = ring_inverse(a.c[0]);
    r.c.assign(size_t(W), ring_zero_like(a.c[0]));
    r.c[0] = u0inv;
    for (int k = 1; k < W; ++k) {
        R acc = ring_zero_like(a.c[0]);
        for (int j = 1; j <= k && j < int(a.c.size()); ++j) acc = acc + a.c[size_t(j)] * r.c[size_t(k - j)];
        r.c[size_t(k)] = -(u0inv * acc);
    }
    r.normalize();
    if (r.c.empty() && r.is_exact()) r.val = 0;
    return r;
}

template <class R>
Series<R> operator/(const Series<R>& a, const Series<R>& b) {
    return a * inverse(b);
}

template <class R>
Series<R> powi(const Series<R>& a, long long n) {
    if (n < 0) return powi(inverse(a), -n);
    if (n == 0) {
        if (a.c.empty()) throw DomainMismatch("0^0 of a series with no digits");
        return Series<R>::monomial(a.var, 0, ring_one_like(a.c[0]), kExact, a.ram);
    }
    Series<R> r, b = a;
    bool have = false;
    while (n) {
        if (n & 1) {
            r = have ? r * b : b;
            have = true;
        }
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

// Frobenius x -> x^q on the coefficients; exponents stretch by q exactly when
// the variable is Frobenius-covariant (u, Z, Laurent uniformizers), and stay
// put for the central variable t.
template <class R>
Series<R> frobenius(const Series<R>& a) {
    if (a.c.empty()) return a;  // zero to its truncation; stretching would only widen the window
    Series<R> r;
    r.var = a.var;
    r.ram = a.ram;
    r.frob_cov = a.frob_cov;
    if (a.frob_cov) {
        int q = ring_char_q(a.c[0]);
        r.val = a.val * q;
        r.trunc = a.is_exact() ? kExact : a.trunc * q;
        r.c.assign(a.c.size() ? (a.c.size() - 1) * size_t(q) + 1 : 0, a.zero_coeff());
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i * size_t(q)] = ring_frobenius(a.c[i]);
    } else {
        r.val = a.val;
        r.trunc = a.trunc;
        r.c.reserve(a.c.size());
        for (auto& x : a.c) r.c.push_back(ring_frobenius(x));
    }
    r.normalize();
    return r;
}

template <class R>
Series<R> frobenius_iter(Series<R> a, int times) {
    for (int i = 0; i < times; ++i) a = frobenius(a);
    return a;
}

// f(g) for g with positive valuation. Horner on the stored coefficients of f;
// Laurent f factors through x^val.
template <class R>
Series<R> compose(const Series<R>& f, const Series<R>& g) {
    if (g.valuation() < 1) throw DomainMismatch("composition needs a series of positive valuation");
    if (f.c.empty()) {
        Series<R> r = Series<R>::zero(g.var, f.is_exact() ? kExact : f.trunc * std::max(1, g.valuation()), g.ram);
        return r;
    }
    Series<R> acc = Series<R>::monomial(g.var, 0, f.c.back(), kExact, g.ram);
    for (size_t i = f.c.size() - 1; i-- > 0;) {
        acc = acc * g;
        Series<R> term = Series<R>::monomial(g.var, 0, f.c[i], kExact, g.ram);
        acc = acc + term;
    }
    if (f.val != 0) acc = acc * powi(g, f.val);
    if (!f.is_exact()) {
        long long lim = (long long)f.trunc * g.valuation();
        acc = truncated(acc, int(std::min<long long>(lim, kExact)));
    }
    if (!g.is_exact()) acc = truncated(acc, g.trunc);
    return acc;
}

// ring hooks so Series<R> can itself be a coefficient ring ------------------

template <class R>
bool ring_is_zero(const Series<R>& x) {
    return x.c.empty();
}
// exact zero only: a series that merely has no digits below its truncation
// still carries precision information and must not be dropped
template <class R>
bool ring_is_exact_zero(const Series<R>& x) {
    return x.c.empty() && x.is_exact();
}
// some digit at some depth is known nonzero
template <class R>
bool ring_has_known_digit(const Series<R>& x) {
    for (auto& c : x.c)
        if (ring_has_known_digit(c)) return true;
    return false;
}
template <class R>
bool ring_is_null(const Series<R>& x) {
    return x.is_null();
}
template <class R>
Series<R> ring_zero_like(const Series<R>& x) {
    return Series<R>::zero(x.var, kExact, x.ram);
}
template <class R>
Series<R> ring_one_like(const Series<R>& x) {
    if (x.c.empty()) throw DomainMismatch("one_like of series with no digits");
    return Series<R>::monomial(x.var, 0, ring_one_like(x.c[0]), kExact, x.ram);
}
template <class R>
Series<R> ring_inverse(const Series<R>& x) {
    return inverse(x);
}
template <class R>
Series<R> ring_frobenius(const Series<R>& x) {
    return frobenius(x);
}
template <class R>
int ring_char_q(const Series<R>& x) {
    return x.c.empty() ? 0 : ring_char_q(x.c[0]);
}

// comparison helpers ---------------------------------------------------------

// First exponent (below the common truncation) where a and b disagree.
template <class R>
std::optional<int> first_mismatch(const Series<R>& a, const Series<R>& b) {
    int T = std::min(a.trunc, b.trunc);
    int lo = std::min(a.c.empty() ? T : a.val, b.c.empty() ? T : b.val);
    int hi = std::min(T, std::max(a.val + int(a.c.size()), b.val + int(b.c.size())));
    for (int k = lo; k < hi; ++k) {
        const R* x = a.stored(k);
        const R* y = b.stored(k);
        if (x && y) {
            if (ring_has_known_digit(*x - *y)) return k;
        } else if (x) {
            if (ring_has_known_digit(*x)) return k;
        } else if (y) {
            if (ring_has_known_digit(*y)) return k;
        }
    }
    return std::nullopt;
}

// a and b agree on every digit below min(trunc) and carry at least `digits`
// common digits past the reference valuation.
template <class R>
bool agree_to_digits(const Series<R>& a, const Series<R>& b, int digits) {
    if (first_mismatch(a, b)) return false;
    int T = std::min(a.trunc, b.trunc);
    int ref = std::min(a.valuation(), b.valuation());
    return T - ref >= digits;
}

// leaf aliases and conversions -----------------------------------------------

using LSeries = Series<FqElem>;          // Laurent over a finite field
using USeries = Series<Series<FqElem>>;  // outer series with Laurent coefficients
using QSeries = Series<RatFunc>;         // series over K = F_q(θ)

// a = Σ c_j θ^j as a Laurent series in x = 1/θ (exponent -j), exact
inline LSeries laurent_of_poly(const FqPoly& a, Var v = Var::inv_theta, int ram = 1) {
    if (a.is_null() || a.is_zero()) return LSeries::zero(v, kExact, ram);
    std::vector<FqElem> cs;
    cs.reserve(a.c.size());
    for (size_t i = a.c.size(); i-- > 0;) cs.push_back(FqElem(*a.F, a.c[i]));
    return LSeries::make(v, -a.deg(), std::move(cs), kExact, ram);
}

// top W digits of a polynomial as a truncated Laurent series (val = -deg);
// avoids materializing coefficient tails that the window can never see
inline LSeries laurent_window_of_poly(const FqPoly& a, int W, Var v = Var::inv_theta, int ram = 1) {
    if (a.is_null() || a.is_zero()) return LSeries::zero(v, kExact, ram);
    std::vector<FqElem> cs;
    int take = std::min<int>(W, int(a.c.size()));
    cs.reserve(size_t(take));
    for (size_t i = a.c.size(); i-- > a.c.size() - size_t(take);) cs.push_back(FqElem(*a.F, a.c[i]));
    return LSeries::make(v, -a.deg(), std::move(cs), -a.deg() + W, ram);
}

// 1/a to W relative digits (val = +deg a)
inline LSeries laurent_inv_of_poly(const FqPoly& a, int W, Var v = Var::inv_theta) {
    if (a.is_null() || a.is_zero()) throw DivisionByZeroPoly("inverse of zero polynomial");
    return inverse(laurent_window_of_poly(a, W, v), W);
}

// num/den expanded to the absolute truncation order T in x = 1/θ
inline LSeries laurent_of_ratfunc(const RatFunc& r, int T, Var v = Var::inv_theta) {
    if (r.is_null() || r.is_zero()) return LSeries::zero(v, T);
    LSeries num = laurent_of_poly(r.num, v);
    LSeries den = laurent_of_poly(r.den, v);
    int window = T - (num.val - den.val);
    if (window <= 0) throw PrecisionExhausted("rational function vanishes past requested truncation");
    return truncated(num * inverse(den, window), T);
}

}  // namespace carlitz

#endif
