#ifndef CARLITZ_FQ_HPP
#define CARLITZ_FQ_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "carlitz/errors.hpp"

namespace carlitz {

// F_q with q = p^e, realized as F_p[x]/(modulus) with the lexicographically
// smallest monic irreducible modulus (coefficient vectors compared via their
// base-p integer encoding, constant term least significant). Elements are
// indices 0..q-1 packing the e coordinates base p. Field objects are interned
// and immutable; FqElem values hold a plain pointer into the registry.
class Fq {
   public:
    int p, e, q;
    std::vector<int> modulus;  // length e+1, monic

    static const Fq& get(int p, int e);
    // Extension of the same characteristic with degree e*m over F_p, i.e.
    // F_{q^m}. Just another interned prime-power field.
    const Fq& ext(int m) const { return get(p, e * m); }

    int add(int a, int b) const {
        if (add_tab_.empty()) return add_slow(a, b);
        return add_tab_[size_t(a) * q + b];
    }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return neg_tab_[a]; }
    int mul(int a, int b) const {
        if (mul_tab_.empty()) return mul_slow(a, b);
        return mul_tab_[size_t(a) * q + b];
    }
    int inv(int a) const {
        if (a == 0) throw DivisionByZeroPoly("inverse of zero in F_q");
        return inv_tab_[a];
    }
    int frob_p(int a) const { return frob_tab_[a]; }  // x -> x^p
    int frob_q(int a) const {                         // x -> x^q of a subfield-q... here full q = p^e
        int r = a;
        for (int i = 0; i < e; ++i) r = frob_tab_[r];
        return r;
    }
    int pow(int a, long long n) const;

    int from_int(long long n) const {  // prime-subfield residue
        long long r = n % p;
        if (r < 0) r += p;
        return int(r);
    }
    int one() const { return 1; }

    // Coordinates in the power basis (length e, each in [0,p)).
    std::vector<int> coords(int a) const {
        std::vector<int> c(e);
        for (int i = 0; i < e; ++i) {
            c[i] = a % p;
            a /= p;
        }
        return c;
    }
    int from_coords(const std::vector<int>& c) const {
        if (int(c.size()) > e) throw UnsupportedSize("coordinate vector longer than extension degree");
        int a = 0;
        for (size_t i = c.size(); i-- > 0;) {
            int r = c[i] % p;
            if (r < 0) r += p;
            a = a * p + r;
        }
        return a;
    }

    // Embedding of a subfield (same p, sub.e divides e): index map plus a
    // membership flag per element of this field. Deterministic: the image of
    // the subfield generator is the smallest-index root of sub.modulus here.
    struct Embedding {
        const Fq* sub;
        const Fq* big;
        std::vector<uint16_t> map;   // sub index -> big index
        std::vector<uint8_t> in_im;  // big index -> 0/1
    };
    const Embedding& embedding_from(const Fq& sub) const;

   private:
    Fq(int p_, int e_);
    int add_slow(int a, int b) const;
    int mul_slow(int a, int b) const;

    std::vector<uint16_t> add_tab_, mul_tab_;
    std::vector<uint16_t> neg_tab_, inv_tab_, frob_tab_;
    std::vector<uint16_t> reduce_rows_;  // x^(e+k) mod modulus, k < e-1, as digit rows
    mutable std::map<std::pair<int, int>, std::unique_ptr<Embedding>> embeddings_;
    mutable std::mutex emb_mutex_;

    friend struct FqRegistry;
};

// Value type for an element of an interned field. A default-constructed
// element is the "anonymous zero": it compares equal to any field's zero and
// coerces on first arithmetic contact. This keeps generic series/polynomial
// code free of explicit field plumbing.
struct FqElem {
    const Fq* F = nullptr;
    uint16_t v = 0;

    FqElem() = default;
    FqElem(const Fq& field, int value) : F(&field), v(uint16_t(value)) {}

    bool is_zero() const { return v == 0; }
    bool is_null() const { return F == nullptr; }

    static const Fq* join(const FqElem& a, const FqElem& b) {
        if (a.F && b.F && a.F != b.F) throw FieldMismatch("operands from different fields");
        return a.F ? a.F : b.F;
    }

    friend FqElem operator+(FqElem a, FqElem b) {
        const Fq* F = join(a, b);
        if (!F) return {};
        return {*F, F->add(a.v, b.v)};
    }
    friend FqElem operator-(FqElem a, FqElem b) {
        const Fq* F = join(a, b);
        if (!F) return {};
        return {*F, F->sub(a.v, b.v)};
    }
    friend FqElem operator*(FqElem a, FqElem b) {
        const Fq* F = join(a, b);
        if (!F) return {};
        return {*F, (a.v && b.v) ? F->mul(a.v, b.v) : 0};
    }
    FqElem operator-() const { return F ? FqElem{*F, F->neg(v)} : FqElem{}; }
    FqElem inverse() const {
        if (!F || v == 0) throw DivisionByZeroPoly("inverse of zero element");
        return {*F, F->inv(v)};
    }
    friend FqElem operator/(FqElem a, FqElem b) { return a * b.inverse(); }
    FqElem frobenius() const { return F ? FqElem{*F, F->frob_q(v)} : FqElem{}; }  // x -> x^q
    FqElem pow(long long n) const { return F ? FqElem{*F, F->pow(v, n)} : FqElem{}; }

    friend bool operator==(FqElem a, FqElem b) {
        if (!a.F || !b.F) return a.v == b.v && (a.v == 0 || a.F == b.F);
        return a.F == b.F && a.v == b.v;
    }
    friend bool operator!=(FqElem a, FqElem b) { return !(a == b); }
};

namespace detail {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; 1LL * d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense F_p polynomial helpers for modulus construction
using PPoly = std::vector<int>;

inline PPoly pmul(const PPoly& a, const PPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

inline PPoly pmod(PPoly a, const PPoly& m, int p) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (a.size() >= m.size()) {
        int lead = a.back();  // m monic
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

inline bool divides(const PPoly& d, const PPoly& a, int p) { return pmod(a, d, p).empty(); }

// irreducibility by trial division over F_p
inline bool irreducible(const PPoly& f, int p) {
    int n = int(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    // enumerate monic divisors of degree 1..n/2
    for (int d = 1; 2 * d <= n; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long c = 0; c < count; ++c) {
            PPoly g(d + 1, 0);
            long long x = c;
            for (int i = 0; i < d; ++i) {
                g[i] = int(x % p);
                x /= p;
            }
            g[d] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace detail

inline Fq::Fq(int p_, int e_) : p(p_), e(e_) {
    if (!detail::is_prime(p)) throw NonPrimeCharacteristic("p = " + std::to_string(p));
    if (e < 1) throw UnsupportedSize("extension degree must be >= 1");
    long long qq = 1;
    for (int i = 0; i < e; ++i) {
        qq *= p;
        if (qq > (1 << 14)) throw UnsupportedSize("q = p^e exceeds supported table size");
    }
    q = int(qq);

    // lexicographically smallest monic irreducible modulus
    if (e == 1) {
        modulus = {0, 1};  // x
    } else {
        long long count = qq;
        for (long long c = 0;; ++c) {
            if (c >= count) throw UnsupportedSize("no irreducible modulus found");
            detail::PPoly f(e + 1, 0);
            long long x = c;
            for (int i = 0; i < e; ++i) {
                f[i] = int(x % p);
                x /= p;
            }
            f[e] = 1;
            if (detail::irreducible(f, p)) {
                modulus = f;
                break;
            }
        }
    }

    // reduction rows: x^(e+k) mod modulus for k = 0..e-2
    reduce_rows_.assign(size_t(std::max(0, e - 1)) * e, 0);
    {
        detail::PPoly cur(e + 1, 0);
        cur[e] = 1;
        for (int k = 0; k + 1 < e; ++k) {
            detail::PPoly r = detail::pmod(cur, modulus, p);
            for (size_t i = 0; i < r.size(); ++i) reduce_rows_[size_t(k) * e + i] = uint16_t(r[i]);
            cur.insert(cur.begin(), 0);
        }
    }

    neg_tab_.resize(q);
    for (int a = 0; a < q; ++a) {
        int r = 0, pw = 1, x = a;
        for (int i = 0; i < e; ++i) {
            int d = x % p;
            x /= p;
            r += ((p - d) % p) * pw;
            pw *= p;
        }
        neg_tab_[a] = uint16_t(r);
    }

    if (q <= 512) {
        add_tab_.resize(size_t(q) * q);
        mul_tab_.resize(size_t(q) * q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                add_tab_[size_t(a) * q + b] = uint16_t(add_slow(a, b));
                mul_tab_[size_t(a) * q + b] = uint16_t(mul_slow(a, b));
            }
    }

    inv_tab_.assign(q, 0);
    for (int a = 1; a < q; ++a) {
        if (inv_tab_[a]) continue;
        for (int b = 1; b < q; ++b)
            if (mul(a, b) == 1) {
                inv_tab_[a] = uint16_t(b);
                inv_tab_[b] = uint16_t(a);
                break;
            }
    }

    frob_tab_.resize(q);
    for (int a = 0; a < q; ++a) {
        int r = a;
        for (int i = 1; i < p; ++i) r = mul(r, a);
        frob_tab_[a] = uint16_t(r);
    }
}

inline int Fq::add_slow(int a, int b) const {
    int r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
        int d = (a % p + b % p) % p;
        a /= p;
        b /= p;
        r += d * pw;
        pw *= p;
    }
    return r;
}

inline int Fq::mul_slow(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    std::vector<int> da(e), db(e), prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i) {
        da[i] = a % p;
        a /= p;
        db[i] = b % p;
        b /= p;
    }
    for (int i = 0; i < e; ++i)
        if (da[i])
            for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    // reduce degrees e .. 2e-2
    for (int k = 2 * e - 2; k >= e; --k) {
        int c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        const uint16_t* row = &reduce_rows_[size_t(k - e) * e];
        for (int i = 0; i < e; ++i) prod[i] = (prod[i] + c * row[i]) % p;
    }
    int r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
        r += prod[i] * pw;
        pw *= p;
    }
    return r;
}

inline int Fq::pow(int a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    int r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

struct FqRegistry {
    std::map<std::pair<int, int>, std::unique_ptr<Fq>> fields;
    std::mutex mutex;
    static FqRegistry& instance() {
        static FqRegistry reg;
        return reg;
    }
};

inline const Fq& Fq::get(int p, int e) {
    auto& reg = FqRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mutex);
    auto key = std::make_pair(p, e);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) it = reg.fields.emplace(key, std::unique_ptr<Fq>(new Fq(p, e))).first;
    return *it->second;
}

inline const Fq::Embedding& Fq::embedding_from(const Fq& sub) const {
    if (sub.p != p || e % sub.e != 0) throw FieldMismatch("not a subfield");
    std::lock_guard<std::mutex> lock(emb_mutex_);
    auto key = std::make_pair(sub.p, sub.e);
    auto it = embeddings_.find(key);
    if (it != embeddings_.end()) return *it->second;

    auto emb = std::make_unique<Embedding>();
    emb->sub = &sub;
    emb->big = this;
    // image of the subfield generator: smallest-index root of sub.modulus here
    int root = -1;
    for (int a = 0; a < q; ++a) {
        int acc = 0, pw = 1;  // evaluate sub.modulus at a
        for (size_t i = 0; i < sub.modulus.size(); ++i) {
            int coef = sub.modulus[i] % p;  // prime-subfield scalar: index == residue
            int term = pw;
            for (int rep = 0; rep < coef; ++rep) acc = add(acc, term);
            pw = mul(pw, a);
        }
        if (acc == 0) {
            root = a;
            break;
        }
    }
    if (root < 0) throw FieldMismatch("no root of subfield modulus in extension");
    emb->map.resize(sub.q);
    emb->in_im.assign(q, 0);
    for (int s = 0; s < sub.q; ++s) {
        int acc = 0, pw = 1, x = s;
        for (int i = 0; i < sub.e; ++i) {
            int d = x % sub.p;
            x /= sub.p;
            int term = pw;
            for (int rep = 0; rep < d; ++rep) acc = add(acc, term);
            pw = mul(pw, root);
        }
        emb->map[s] = uint16_t(acc);
        emb->in_im[acc] = 1;
    }
    auto& slot = embeddings_[key];
    slot = std::move(emb);
    return *slot;
}

}  // namespace carlitz

#endif
