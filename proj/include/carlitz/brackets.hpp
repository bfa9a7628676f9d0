#ifndef CARLITZ_BRACKETS_HPP
#define CARLITZ_BRACKETS_HPP

#include "carlitz/fq_poly.hpp"

namespace carlitz {

// The bracket sequences
//   d_0 = 1,  d_i = (θ^{q^i} - θ) d_{i-1}^q        (deg d_i = i q^i)
//   l_0 = 1,  l_i = (θ - θ^{q^i}) l_{i-1}          (deg l_i = q(q^i-1)/(q-1))
// Reciprocals are the τ-coefficients of exp_C and log_C respectively.
struct BracketCache {
    const Fq* F = nullptr;
    std::vector<FqPoly> d, l;

    const Fq& field() const { return *F; }
    int imax() const { return int(d.size()) - 1; }

    long long qpow(int i) const {
        long long r = 1;
        while (i-- > 0) r *= F->q;
        return r;
    }
    long long deg_d(int i) const { return i * qpow(i); }
    long long deg_l(int i) const { return (long long)F->q * (qpow(i) - 1) / (F->q - 1); }

    static BracketCache build(const Fq& F, int imax) {
        BracketCache B;
        B.F = &F;
        B.extend(imax);
        return B;
    }

    void extend(int imax) {
        if (d.empty()) {
            d.push_back(FqPoly::one(*F));
            l.push_back(FqPoly::one(*F));
        }
        for (int i = int(d.size()); i <= imax; ++i) {
            long long qi = qpow(i);
            if (qi > (1LL << 28)) throw UnsupportedSize("bracket degree exceeds supported size");
            FqPoly theta_qi = FqPoly::monomial(*F, int(qi), 1);
            FqPoly theta = FqPoly::theta(*F);
            d.push_back((theta_qi - theta) * d[i - 1].frobenius());
            l.push_back((theta - theta_qi) * l[i - 1]);
            if (d[i].deg() != deg_d(i) || l[i].deg() != deg_l(i))
                throw StabilizationFailure("bracket degree invariant violated");
        }
    }
};

}  // namespace carlitz

#endif
