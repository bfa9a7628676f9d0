#ifndef CARLITZ_FQ_POLY_HPP
#define CARLITZ_FQ_POLY_HPP

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "carlitz/fq.hpp"

namespace carlitz {

// Dense polynomial over F_q in the implicit variable θ. No trailing zero
// coefficients; the zero polynomial has an empty coefficient vector and
// degree -1 standing in for -infinity. |a| = q^deg a, |0| = 0.
struct FqPoly {
    const Fq* F = nullptr;
    std::vector<uint16_t> c;

    FqPoly() = default;
    explicit FqPoly(const Fq& field) : F(&field) {}
    // integer initializers are prime-subfield residues
    FqPoly(const Fq& field, const std::vector<int>& coeffs) : F(&field) {
        c.reserve(coeffs.size());
        for (int x : coeffs) c.push_back(uint16_t(((x % field.p) + field.p) % field.p));
        trim();
    }

    static FqPoly zero(const Fq& field) { return FqPoly(field); }
    static FqPoly one(const Fq& field) { return monomial(field, 0, 1); }
    static FqPoly theta(const Fq& field) { return monomial(field, 1, 1); }
    static FqPoly constant(FqElem x) {
        FqPoly r(*x.F);
        if (!x.is_zero()) r.c = {x.v};
        return r;
    }
    static FqPoly monomial(const Fq& field, int degree, int idx) {
        FqPoly r(field);
        if (idx % field.q != 0) {
            r.c.assign(degree + 1, 0);
            r.c[degree] = uint16_t(idx % field.q);
        }
        return r;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    bool is_null() const { return F == nullptr; }
    int deg() const { return int(c.size()) - 1; }  // -1 marks deg(0) = -infinity
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    FqElem coeff(int i) const {
        if (!F || i < 0 || i >= int(c.size())) return F ? FqElem(*F, 0) : FqElem();
        return FqElem(*F, c[i]);
    }
    FqElem lead() const { return coeff(deg()); }

    static const Fq* join(const FqPoly& a, const FqPoly& b) {
        if (a.F && b.F && a.F != b.F) throw FieldMismatch("polynomials over different fields");
        return a.F ? a.F : b.F;
    }

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b) {
        const Fq* F = join(a, b);
        if (!F) return {};
        FqPoly r(*F);
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (size_t i = 0; i < r.c.size(); ++i) {
            int x = i < a.c.size() ? a.c[i] : 0;
            int y = i < b.c.size() ? b.c[i] : 0;
            r.c[i] = uint16_t(F->add(x, y));
        }
        r.trim();
        return r;
    }
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b) { return a + (-b); }
    FqPoly operator-() const {
        FqPoly r = *this;
        if (F)
            for (auto& x : r.c) x = uint16_t(F->neg(x));
        return r;
    }
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b) {
        const Fq* F = join(a, b);
        if (!F || a.is_zero() || b.is_zero()) return F ? FqPoly(*F) : FqPoly();
        FqPoly r(*F);
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (!a.c[i]) continue;
            for (size_t j = 0; j < b.c.size(); ++j) {
                if (!b.c[j]) continue;
                r.c[i + j] = uint16_t(F->add(r.c[i + j], F->mul(a.c[i], b.c[j])));
            }
        }
        r.trim();
        return r;
    }
    friend FqPoly operator*(FqElem s, const FqPoly& a) {
        if (!a.F || s.is_zero()) return a.F ? FqPoly(*a.F) : FqPoly();
        FqPoly r = a;
        for (auto& x : r.c) x = uint16_t(a.F->mul(x, s.v));
        r.trim();
        return r;
    }

    friend bool operator==(const FqPoly& a, const FqPoly& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.F == b.F && a.c == b.c;
    }
    friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

    // quotient/remainder; deg(rem) < deg(b)
    friend std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
        const Fq* F = join(a, b);
        if (!F || b.is_zero()) throw DivisionByZeroPoly("polynomial division by zero");
        FqPoly q(*F), r = a;
        if (r.is_null()) r = FqPoly(*F);
        if (r.deg() < b.deg()) return {q, r};
        q.c.assign(r.deg() - b.deg() + 1, 0);
        int binv = F->inv(b.c.back());
        while (r.deg() >= b.deg()) {
            int k = r.deg() - b.deg();
            int f = F->mul(r.c.back(), binv);
            q.c[k] = uint16_t(f);
            for (size_t i = 0; i < b.c.size(); ++i)
                r.c[k + i] = uint16_t(F->sub(r.c[k + i], F->mul(f, b.c[i])));
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    friend FqPoly operator/(const FqPoly& a, const FqPoly& b) { return divmod(a, b).first; }
    friend FqPoly operator%(const FqPoly& a, const FqPoly& b) { return divmod(a, b).second; }

    friend FqPoly gcd(FqPoly a, FqPoly b) {
        const Fq* F = join(a, b);
        if (!F) return {};
        while (!b.is_zero()) {
            FqPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = FqElem(*F, F->inv(a.c.back())) * a;  // monic gcd
        return a;
    }

    FqElem eval(FqElem x) const {
        if (!F) return {};
        FqElem acc(*F, 0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + FqElem(*F, c[i]);
        return acc;
    }

    // a -> a^q: coefficient Frobenius plus exponent stretch
    FqPoly frobenius() const {
        if (!F || is_zero()) return *this;
        FqPoly r(*F);
        r.c.assign(size_t(deg()) * F->q + 1, 0);
        for (size_t i = 0; i < c.size(); ++i) r.c[i * F->q] = uint16_t(F->frob_q(c[i]));
        return r;
    }

    FqPoly pow(long long n) const {
        if (!F) throw DomainMismatch("pow of null polynomial");
        FqPoly r = one(*F), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    // canonical text form: coefficients low-to-high, prime-subfield residues
    // when e = 1, coordinate vectors otherwise
    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) s += ",";
            if (F->e == 1)
                s += std::to_string(c[i]);
            else {
                s += "[";
                auto co = F->coords(c[i]);
                for (size_t j = 0; j < co.size(); ++j) {
                    if (j) s += ",";
                    s += std::to_string(co[j]);
                }
                s += "]";
            }
        }
        return s + "]";
    }
    friend std::ostream& operator<<(std::ostream& os, const FqPoly& a) { return os << a.str(); }
};

// All q^d monic polynomials of exact degree d, in base-q counter order on the
// low coefficients. Streaming form so callers can stop early.
inline void monic_enumerate(const Fq& F, int d, const std::function<void(const FqPoly&)>& fn) {
    if (d < 0) return;
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= F.q;
    FqPoly a(F);
    a.c.assign(d + 1, 0);
    a.c[d] = 1;
    for (long long n = 0; n < count; ++n) {
        long long x = n;
        for (int i = 0; i < d; ++i) {
            a.c[i] = uint16_t(x % F.q);
            x /= F.q;
        }
        fn(a);
    }
}

inline std::vector<FqPoly> monic_list(const Fq& F, int d) {
    std::vector<FqPoly> out;
    monic_enumerate(F, d, [&](const FqPoly& a) { out.push_back(a); });
    return out;
}

// Reduced rational function num/den with monic denominator.
struct RatFunc {
    FqPoly num, den;

    RatFunc() = default;
    RatFunc(const Fq& F) : num(FqPoly::zero(F)), den(FqPoly::one(F)) {}
    RatFunc(FqPoly n) : num(std::move(n)) {
        if (num.F) den = FqPoly::one(*num.F);
        reduce();
    }
    RatFunc(FqPoly n, FqPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw DivisionByZeroPoly("rational function with zero denominator");
        reduce();
    }

    static RatFunc one(const Fq& F) { return RatFunc(FqPoly::one(F)); }

    void reduce() {
        if (num.is_null() || den.is_null()) return;
        if (num.is_zero()) {
            den = FqPoly::one(*den.F);
            return;
        }
        if (den.deg() == 0) {
            num = FqElem(*den.F, den.F->inv(den.c[0])) * num;
            den = FqPoly::one(*den.F);
            return;
        }
        FqPoly g = gcd(num, den);
        if (g.deg() > 0) {
            num = num / g;
            den = den / g;
        }
        FqElem lead = den.lead();
        if (lead.v != 1) {
            FqElem li = lead.inverse();
            num = li * num;
            den = li * den;
        }
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_null() const { return num.is_null(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_null()) return b;
        if (b.is_null()) return a;
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num = -r.num;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_null()) return b.is_null() ? RatFunc() : RatFunc(*b.num.F);
        if (b.is_null()) return RatFunc(*a.num.F);
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    RatFunc inverse() const {
        if (is_null() || is_zero()) throw DivisionByZeroPoly("inverse of zero rational function");
        return RatFunc(den, num);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc frobenius() const {
        if (is_null()) return {};
        return RatFunc(num.frobenius(), den.frobenius());
    }

    RatFunc pow(long long n) const {
        if (n < 0) return inverse().pow(-n);
        RatFunc r = RatFunc::one(*num.F), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        if (a.is_null() || b.is_null()) return (a.is_null() || a.is_zero()) && (b.is_null() || b.is_zero());
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) {
        return os << r.num << "/" << r.den;
    }
};

}  // namespace carlitz

#endif
