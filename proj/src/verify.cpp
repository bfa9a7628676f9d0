#include "carlitz/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "carlitz/geometry.hpp"
#include "carlitz/json_io.hpp"
#include "carlitz/perkins.hpp"
#include "carlitz/uexp.hpp"

namespace carlitz {

int RunConfig::q() const {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

RunConfig RunConfig::from_env() {
    RunConfig cfg;
    auto env_int = [](const char* name, int& slot) {
        if (const char* v = std::getenv(name)) slot = std::atoi(v);
    };
    env_int("CARLITZ_TAU_ORDER", cfg.tau_order);
    env_int("CARLITZ_U_ORDER", cfg.u_order);
    env_int("CARLITZ_PRECISION", cfg.precision);
    env_int("CARLITZ_T_ORDER", cfg.t_order);
    env_int("CARLITZ_Z_ORDER", cfg.z_order);
    return cfg;
}

void SuiteReport::sort_by_id() {
    std::sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["pass"] = ok();
    j["checks"] = nlohmann::json::array();
    for (auto& c : checks)
        j["checks"].push_back({{"id", c.id}, {"anchor", c.anchor}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

namespace {

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed ^ 0x6a09e667f3bcc908ULL) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return int(next() % uint64_t(n)); }
};

FqPoly random_poly(Rng& rng, const Fq& F, int max_deg) {
    FqPoly a(F);
    int d = rng.below(max_deg + 1);
    for (int i = 0; i <= d; ++i) a.c.push_back(uint16_t(rng.below(F.q)));
    a.trim();
    return a;
}

CheckResult run_guarded(std::string id, std::string anchor, const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    try {
        auto [ok, detail] = body();
        r.pass = ok;
        r.detail = detail;
    } catch (const error& err) {
        r.pass = false;
        r.detail = std::string("error: ") + err.what();
    }
    return r;
}

std::string digit_note(int digits) { return "digits=" + std::to_string(digits); }

}  // namespace

namespace checks {

CheckResult exp_log_inverse(const RunConfig& cfg) {
    return run_guarded("carlitz/exp-log-inverse", "exp_C·log_C = log_C·exp_C = 1 in K_∞[[τ]]", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, cfg.tau_order);
        auto e = exp_c(B, cfg.tau_order);
        auto l = log_c(B, cfg.tau_order);
        auto one = Twisted<RatFunc>::one(RatFunc::one(F), cfg.tau_order);
        bool ok = ore_mul(e, l) == one && ore_mul(l, e) == one && ore_invert(e, cfg.tau_order) == l;
        return std::pair{ok, "exact mod τ^" + std::to_string(cfg.tau_order)};
    });
}

CheckResult carlitz_conjugation(const RunConfig& cfg) {
    return run_guarded("carlitz/conjugation", "C_a = exp_C · a · log_C", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 6);
        Rng rng(cfg.seed);
        for (int it = 0; it < 20; ++it) {
            FqPoly a = random_poly(rng, F, 5);
            if (a.is_zero()) continue;
            int N = a.deg() + 1;
            auto lhs = carlitz_action(F, a);
            lhs.trunc = N;
            lhs.normalize();
            auto rhs = ore_mul(ore_mul(exp_c(B, N), ore_scalar(RatFunc(a), N)), log_c(B, N));
            if (!(lhs == rhs)) return std::pair{false, "failed at a = " + a.str()};
        }
        return std::pair{true, std::string("20 random a, deg <= 5, exact")};
    });
}

CheckResult carlitz_poly_product(const RunConfig& cfg, int kmax) {
    return run_guarded("carlitz/poly-product", "E_k(z) = d_k^{-1} ∏_{|a|<q^k} (z-a)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, kmax);
        for (int k = 1; k <= kmax; ++k) {
            std::vector<FqPoly> prod{FqPoly::one(F)};
            long long count = B.qpow(k);
            for (long long n = 0; n < count; ++n) {
                FqPoly a(F);
                long long x = n;
                for (int i = 0; i < k; ++i) {
                    a.c.push_back(uint16_t(x % F.q));
                    x /= F.q;
                }
                a.trim();
                std::vector<FqPoly> next(prod.size() + 1, FqPoly::zero(F));
                for (size_t i = 0; i < prod.size(); ++i) {
                    next[i + 1] = next[i + 1] + prod[i];
                    next[i] = next[i] - prod[i] * a;
                }
                prod = std::move(next);
            }
            LinPoly Ek = carlitz_poly(B, k);
            for (size_t zdeg = 0; zdeg < prod.size(); ++zdeg) {
                RatFunc expect(prod[zdeg], B.d[size_t(k)]);
                long long qi = 1;
                int slot = -1;
                for (int i = 0; i <= k; ++i, qi *= F.q)
                    if (qi == (long long)zdeg) slot = i;
                bool good = slot >= 0 ? Ek.c[size_t(slot)].num * expect.den == expect.num * Ek.c[size_t(slot)].den
                                      : expect.is_zero();
                if (!good) return std::pair{false, "k=" + std::to_string(k) + " z-degree " + std::to_string(zdeg)};
            }
        }
        return std::pair{true, "exact for k <= " + std::to_string(kmax)};
    });
}

CheckResult carlitz_poly_frobenius(const RunConfig& cfg, int kmax) {
    return run_guarded("carlitz/poly-frobenius", "E_k^q = E_k + (θ^{q^{k+1}} - θ) E_{k+1}", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, kmax + 1);
        for (int k = 0; k <= kmax; ++k) {
            LinPoly lhs = carlitz_poly(B, k).frobenius_twist();
            RatFunc factor(FqPoly::monomial(F, int(B.qpow(k + 1)), 1) - FqPoly::theta(F));
            LinPoly rhs = carlitz_poly(B, k) + factor * carlitz_poly(B, k + 1);
            if (lhs.c.size() != rhs.c.size()) return std::pair{false, "size mismatch at k=" + std::to_string(k)};
            for (size_t i = 0; i < lhs.c.size(); ++i)
                if (lhs.c[i].num * rhs.c[i].den != rhs.c[i].num * lhs.c[i].den)
                    return std::pair{false, "k=" + std::to_string(k) + " slot " + std::to_string(i)};
        }
        return std::pair{true, "exact for k <= " + std::to_string(kmax)};
    });
}

CheckResult exp_a_factorization(const RunConfig& cfg, int digits) {
    return run_guarded("carlitz/exp-a-factorization",
                       "exp_A = ⋯(1-τ/l_n^{q-1})⋯(1-τ) = Σ d_i^{-1} π̃^{q^i-1} τ^i", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 1);
        int N = cfg.tau_order;
        // a factor at index m changes the τ^i coefficient at relative depth
        // q^{m-i+1}-1; consume extra factors until that clears `digits`
        int extra = 1;
        for (;; ++extra) {
            long long dev = 1;
            for (int t = 0; t < extra + 1; ++t) dev *= F.q;
            if (dev - 1 >= digits + 4) break;
        }
        int P = digits + 10;
        auto prod = ore_product_truncated<LSeries>([&](int k) { return exp_a_factor(B, k, P + 6); }, N + extra,
                                                   LSeries::monomial(Var::inv_theta, 0, FqElem(F, 1)));
        prod.trunc = N;
        prod.normalize();
        Twisted<LSeries> ea = exp_a(B, N, P + 6);
        int worst = 1 << 20;
        for (int i = 0; i < N; ++i) {
            if (first_mismatch(prod.coeff(i), ea.coeff(i))) return std::pair{false, "mismatch at τ^" + std::to_string(i)};
            worst = std::min(worst, std::min(prod.coeff(i).trunc, ea.coeff(i).trunc) - ea.coeff(i).valuation());
        }
        return std::pair{worst >= digits, digit_note(worst) + ", factors=" + std::to_string(N + extra)};
    });
}

CheckResult pi_mu_consistency(const RunConfig& cfg, int digits) {
    return run_guarded("carlitz/pi-mu", "μ = ν = θ(-θ)^{1/(q-1)} ∏_{i>0} (1-θ^{1-q^i})^{-1}", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        // v_s(μ - μ_N) = (q-1)((q-1)N + q) - q²: take N = max(12, enough for `digits`)
        int N = 12;
        while ((q - 1) * ((q - 1) * N + q) - q * q < digits + q + 2) ++N;
        RamifiedContext ctx(F, digits + q + 4 + N * (q - 1));
        LambdaMu lm = lambda_mu_sequence(ctx, N);
        LSeries mu_pow = powi(lm.mu[size_t(N)], q - 1);
        LSeries pi_emb = ctx.embed(pi_pow_q_minus_1(F, digits + 2 * q + 4));
        if (first_mismatch(mu_pow, pi_emb)) return std::pair{false, std::string("digit mismatch")};
        int got = std::min(mu_pow.trunc, pi_emb.trunc) - pi_emb.valuation();
        LSeries pi_direct = pi_ramified(ctx, digits + 2 * q + 4);
        if (first_mismatch(powi(pi_direct, q - 1), pi_emb)) return std::pair{false, std::string("ramified product mismatch")};
        if (first_mismatch(lm.mu[size_t(N)], pi_direct)) return std::pair{false, std::string("μ_N vs π̃ mismatch")};
        int tail12 = (q - 1) * ((q - 1) * 12 + q) - q * q;
        return std::pair{got >= digits, digit_note(got) + ", N=" + std::to_string(N) + " (μ_12 tail bound " +
                                            std::to_string(tail12) + " s-digits)"};
    });
}

CheckResult newton_slopes(const RunConfig& cfg) {
    return run_guarded("carlitz/newton-slopes", "slopes of 𝒩(exp_C) are i + q/(q-1)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        std::vector<std::pair<long long, Rational>> pts;
        long long qi = 1;
        for (int i = 0; i < 5; ++i) {
            pts.push_back({qi, Rational(i) * Rational(qi)});  // v(1/d_i) = i q^i
            qi *= F.q;
        }
        NewtonPolygon np = newton_polygon(pts);
        if (np.sides.size() != 4) return std::pair{false, std::string("wrong side count")};
        long long len = F.q - 1;
        for (int i = 0; i < 4; ++i) {
            if (np.sides[size_t(i)].slope != Rational(i) + Rational(F.q, F.q - 1))
                return std::pair{false, "slope " + std::to_string(i)};
            if (np.sides[size_t(i)].length != len) return std::pair{false, "length " + std::to_string(i)};
            len *= F.q;
        }
        if (zero_count_at_valuation(np, Rational(F.q, F.q - 1)) != F.q - 1)
            return std::pair{false, std::string("zero count at q/(q-1)")};
        return std::pair{true, std::string("exp_C at τ^5: slopes i+q/(q-1), i<5, exact")};
    });
}

CheckResult mzv_depth1(const RunConfig& cfg, int digits) {
    return run_guarded("carlitz/mzv-depth1", "ζ_A(q-1) = -π̃^{q-1}/d_1", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 2);
        int P = digits + q + 2;
        LSeries lhs = mzv(B, {q - 1}, P);
        LSeries rhs = truncated(-pi_power(F, q - 1, P + q) * laurent_inv_of_poly(B.d[1], P + q), P);
        if (first_mismatch(lhs, rhs)) return std::pair{false, std::string("digit mismatch")};
        int got = std::min(lhs.trunc, rhs.trunc) - rhs.valuation();
        return std::pair{got >= digits, digit_note(got)};
    });
}

CheckResult mzv_depth2(const RunConfig& cfg, int digits) {
    return run_guarded("carlitz/mzv-depth2", "ζ_A(q-1, q(q-1)) = π̃^{q²-1}/d_2", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 3);
        int P = digits + 2 * q + 4;
        LSeries lhs = mzv(B, {q - 1, q * (q - 1)}, P);
        LSeries rhs = truncated(pi_power(F, (long long)q * q - 1, P + 3 * q) * laurent_inv_of_poly(B.d[2], P + 3 * q), P);
        if (first_mismatch(lhs, rhs)) return std::pair{false, std::string("digit mismatch")};
        int got = std::min(lhs.trunc, rhs.trunc) - rhs.valuation();
        return std::pair{got >= digits, digit_note(got)};
    });
}

CheckResult exp_c_limit(const RunConfig& cfg) {
    return run_guarded("carlitz/exp-c-limit", "exp_C = lim_N C_{θ^N} θ^{-N}", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 5);
        auto rep = exp_c_limit_check(B, 4, 10, 6);
        std::string detail = "first m with 6 digits per τ^i:";
        for (int m : rep.first_m) detail += " " + std::to_string(m);
        return std::pair{rep.ok && rep.first_m[0] == 0, detail};
    });
}

CheckResult omega_two_routes(const RunConfig& cfg) {
    return run_guarded("carlitz/omega-two-routes", "ω(t) = Σ λ_{i+1} t^i = (-θ)^{1/(q-1)} ∏ (1-t/θ^{q^i})^{-1}", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        RamifiedContext ctx(F, (F.q - 1) * cfg.precision);
        TSeries prod_route = omega_series(ctx, cfg.t_order);
        TSeries lam_route = omega_lambda_route(ctx, cfg.t_order);
        if (first_mismatch(prod_route, lam_route)) return std::pair{false, std::string("route mismatch")};
        return std::pair{true,
                         "t-order " + std::to_string(cfg.t_order) + ", " + std::to_string(ctx.prec) + " s-digits"};
    });
}

CheckResult omega_functional_equation(const RunConfig& cfg) {
    return run_guarded("carlitz/omega-functional-eq", "τω = (t-θ)ω", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        RamifiedContext ctx(F, (F.q - 1) * cfg.precision);
        TSeries w = omega_series(ctx, cfg.t_order);
        TSeries t_poly = TSeries::make(Var::t, 0, {-ctx.embed(FqPoly::theta(F)), ctx.one()});
        t_poly.frob_cov = false;
        if (first_mismatch(frobenius(w), truncated(t_poly * w, cfg.t_order)))
            return std::pair{false, std::string("digit mismatch")};
        return std::pair{true, "digit box " + std::to_string(cfg.t_order) + "×" + std::to_string(ctx.prec)};
    });
}

CheckResult omega_residue(const RunConfig& cfg, int digits) {
    return run_guarded("carlitz/omega-residue", "μ = -lim_{t→θ} (t-θ)ω(t)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        int t_order = cfg.t_order;
        while ((q - 1) * (q - 1) * t_order - q < digits + q) ++t_order;
        RamifiedContext ctx(F, (q - 1) * cfg.precision + 2 * q);
        TSeries w = omega_series(ctx, t_order);
        TSeries t_poly = TSeries::make(Var::t, 0, {-ctx.embed(FqPoly::theta(F)), ctx.one()});
        t_poly.frob_cov = false;
        int tail_bound = (q - 1) * (q - 1) * t_order - q;
        LSeries lim = eval_t_at_theta(ctx, t_poly * w, tail_bound);
        LSeries pi_direct = pi_ramified(ctx, digits + 2 * q + 4);
        if (first_mismatch(-lim, pi_direct)) return std::pair{false, std::string("digit mismatch")};
        int got = std::min(lim.trunc, pi_direct.trunc) + q;  // v_s(μ) = -q
        return std::pair{got >= digits, digit_note(got) + ", t-order " + std::to_string(t_order)};
    });
}

CheckResult h_two_routes(const RunConfig& cfg) {
    return run_guarded("uexp/h-two-routes", "h = -Σ a^q u_a = -u ∏ (u^{|a|} C_a(1/u))^{q²-1} ∈ A[[u]]", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 2);
        QSeries h1 = h_lopez(B, cfg.u_order);
        QSeries h2 = h_gekeler(B, cfg.u_order);
        if (ring_has_known_digit(h1 - h2)) return std::pair{false, std::string("routes disagree")};
        if (!qseries_is_integral(h1) || !qseries_is_integral(h2))
            return std::pair{false, std::string("non-integral coefficient")};
        RatFunc minus_one(FqPoly::constant(FqElem(F, F.neg(1))));
        if (!(h1.coeff(1) == minus_one)) return std::pair{false, std::string("u-coefficient is not -1")};
        int gap = (F.q - 1) * (F.q - 1);
        for (int k = 2; k <= gap && k < cfg.u_order; ++k)
            if (!h1.coeff(k).is_null() && !h1.coeff(k).is_zero())
                return std::pair{false, "nonzero at u^" + std::to_string(k)};
        if (gap + 1 < cfg.u_order && !(h1.coeff(gap + 1) == minus_one))
            return std::pair{false, std::string("missing -1 at u^{(q-1)^2+1}")};
        return std::pair{true,
                         "agree mod u^" + std::to_string(cfg.u_order) + ", coefficients in A, leading pattern exact"};
    });
}

CheckResult delta_alpha_route(const RunConfig& cfg, int digits) {
    return run_guarded("uexp/delta-alpha-route", "Δ = -h^{q-1} with Δ̃ = (θ^{q²}-θ)α_2 - g̃α_1^q from Z/𝔼", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 2);
        int U = cfg.u_order, P = digits + 3 * q * q + 6;
        ZSeries E = exp_lattice_from_eisenstein(B, U, P);
        USeries a1 = E.coeff(q);
        USeries a2 = E.coeff(q * q);
        USeries gt = scaled_useries(a1, laurent_window_of_poly(B.d[1], P + 8));
        FqPoly th_q2 = FqPoly::monomial(F, q * q, 1) - FqPoly::theta(F);
        USeries dt = scaled_useries(a2, laurent_window_of_poly(th_q2, P + 8)) - gt * frobenius(a1);
        USeries delta_alpha = scaled_useries(dt, pi_power(F, 1 - (long long)q * q, P + 8));
        USeries delta_ref = useries_of_qseries(delta_uexp(B, U), digits + q);
        if (first_mismatch(truncated(delta_alpha, U), truncated(delta_ref, U)))
            return std::pair{false, std::string("digit mismatch")};
        int got = 1 << 20;
        for (int k = 0; k < U; ++k) {
            if (!ring_has_known_digit(delta_ref.coeff(k))) continue;
            got = std::min(got,
                           std::min(delta_alpha.coeff(k).trunc, delta_ref.coeff(k).trunc) - delta_ref.coeff(k).valuation());
        }
        return std::pair{got >= digits, digit_note(got) + " mod u^" + std::to_string(U)};
    });
}

CheckResult ze_consistency(const RunConfig& cfg) {
    return run_guarded("uexp/ze-cross-check", "Z/𝔼(z,Z) = 1 - Σ_{(q-1)|k} E_k(z) Z^k", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 2);
        int U = std::min(cfg.u_order, 20);
        auto rep = ze_cross_check(B, U, cfg.precision / 2 + 6);
        if (!rep.pass)
            return std::pair{false, "first discrepancy at k=" + std::to_string(rep.first_bad_k) + ", u-degree " +
                                        std::to_string(rep.first_bad_udeg)};
        return std::pair{true, "zero discrepancies for k <= q²-1, u-order " + std::to_string(U)};
    });
}

CheckResult eisenstein_basics(const RunConfig& cfg) {
    return run_guarded("uexp/eisenstein-basics", "E_w = -ζ_A(w) - π̃^w Σ_{a∈A^+} G_w(u_a)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 2);
        if (q > 2) {
            USeries bad = eisenstein_uexp(B, q, 12, 15);  // q ≢ 0 mod (q-1) for q > 2
            if (ring_has_known_digit(bad)) return std::pair{false, std::string("nonzero at non-multiple weight")};
        }
        for (int w : {q - 1, 2 * (q - 1)}) {
            if (w < 1) continue;
            USeries E = eisenstein_uexp(B, w, 12, cfg.precision / 2 + 5);
            LSeries z = zeta_carlitz(B, w, cfg.precision / 2 + 3);
            if (first_mismatch(truncated(E.coeff(0), cfg.precision / 2 + 3), -z))
                return std::pair{false, "constant term at w=" + std::to_string(w)};
        }
        return std::pair{true, std::string("vanishing and constant terms verified")};
    });
}

CheckResult alpha1_is_eisenstein(const RunConfig& cfg) {
    return run_guarded("uexp/alpha1-eisenstein", "α_1 = E_{q-1} = g̃/(θ^q-θ)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 2);
        int U = std::min(cfg.u_order, 20);
        auto alpha = alpha_uexp(B, 1, U, cfg.precision / 2 + 4);
        USeries E = eisenstein_uexp(B, F.q - 1, U, cfg.precision / 2 + 4);
        if (first_mismatch(truncated(alpha[1], U), truncated(E, U)))
            return std::pair{false, std::string("digit mismatch")};
        return std::pair{true, "agree mod u^" + std::to_string(U)};
    });
}

CheckResult type_gaps(const RunConfig& cfg) {
    return run_guarded("uexp/type-gaps", "M_w embeds in C_∞[[u^{q-1}]] (type grading)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        if (q == 2) return std::pair{true, std::string("trivial at q = 2")};
        BracketCache B = BracketCache::build(F, 2);
        int U = 14;
        QSeries h = h_lopez(B, U);
        QSeries D = delta_uexp(B, U);
        USeries g = g_uexp(B, U, 16);
        USeries E = eisenstein_uexp(B, q - 1, U, 16);
        for (int k = 0; k < U; ++k) {
            if (k % (q - 1) != 0) {
                if (ring_has_known_digit(g.coeff(k)) || ring_has_known_digit(E.coeff(k)))
                    return std::pair{false, "type-0 form has u^" + std::to_string(k)};
                if (!D.coeff(k).is_null() && !D.coeff(k).is_zero())
                    return std::pair{false, "Δ has u^" + std::to_string(k)};
            }
            if ((k - 1) % (q - 1) != 0 && !h.coeff(k).is_null() && !h.coeff(k).is_zero())
                return std::pair{false, "h has u^" + std::to_string(k)};
        }
        return std::pair{true, std::string("g, E_w type 0; h type 1; Δ type 0")};
    });
}

CheckResult integrality(const RunConfig& cfg) {
    return run_guarded("uexp/integrality", "h, Δ ∈ A[[u]]", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 2);
        bool ok = qseries_is_integral(h_lopez(B, cfg.u_order)) && qseries_is_integral(delta_uexp(B, cfg.u_order));
        return std::pair{ok, "mod u^" + std::to_string(cfg.u_order)};
    });
}

CheckResult eisenstein_normalized_flag(const RunConfig& cfg) {
    return run_guarded("uexp/eisenstein-normalized", "integrality of E_w/(-ζ_A(w)) (flagged, not asserted)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 2);
        std::string flags;
        for (int w : {q - 1, 2 * (q - 1)}) {
            if (w < 1) continue;
            USeries E = eisenstein_uexp(B, w, 10, 24);
            LSeries z = zeta_carlitz(B, w, 26);
            USeries norm = scaled_useries(E, -inverse(z, 20));
            bool looks_integral = true;
            for (int k = 1; k < 10; ++k) {
                LSeries c = norm.coeff(k);
                if (!ring_has_known_digit(c)) continue;
                // an element of A has no digits at positive 1/θ exponents
                for (int m = std::max(1, c.val); m < c.val + int(c.c.size()); ++m)
                    if (!c.coeff(m).is_zero()) looks_integral = false;
            }
            flags += "w=" + std::to_string(w) + (looks_integral ? ": integral-to-precision; " : ": NOT integral; ");
        }
        return std::pair{true, flags};
    });
}

CheckResult growth_bound(const RunConfig& cfg, int imax, int mmax) {
    return run_guarded("uexp/growth-bound", "|c_{i,m}| ≤ q^{-iq^i} |π̃|^{q^i-1} C^m", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, imax);
        int U = mmax + 1;
        auto alpha = alpha_uexp(B, imax, U, cfg.precision);
        double worst = 0;
        for (int i = 1; i <= imax; ++i) {
            double base = -double(i) * double(B.qpow(i)) + double(B.qpow(i) - 1) * F.q / double(F.q - 1);
            for (int m = 1; m <= mmax; ++m) {
                LSeries c = alpha[size_t(i)].coeff(m);
                if (!ring_has_known_digit(c)) continue;
                worst = std::max(worst, (-double(c.valuation()) - base) / double(m));
            }
        }
        bool finite = worst < 64.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "C = q^%.3f", worst);
        return std::pair{finite, std::string(buf) + ", i <= " + std::to_string(imax) + ", m <= " + std::to_string(mmax)};
    });
}

CheckResult chi_homomorphism(const RunConfig& cfg) {
    return run_guarded("perkins/chi-homomorphism", "χ_t(ab) = χ_t(a)χ_t(b)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        Rng rng(cfg.seed);
        for (int it = 0; it < 40; ++it) {
            FqPoly a = random_poly(rng, F, 4);
            FqPoly b = random_poly(rng, F, 4);
            if (!(chi_t(a * b) == chi_t(a) * chi_t(b))) return std::pair{false, std::string("product")};
            if (!(chi_t(a + b) == chi_t(a) + chi_t(b))) return std::pair{false, std::string("sum")};
        }
        return std::pair{true, std::string("40 random pairs")};
    });
}

CheckResult chi_vanishing(const RunConfig& cfg) {
    return run_guarded("perkins/eisenstein-chi-vanishing", "𝓔(j;χ_t) = 0 unless j ≡ 1 (mod q-1)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        if (F.q == 2) return std::pair{true, std::string("trivial at q = 2")};
        BracketCache B = BracketCache::build(F, 2);
        for (int j = 2; j <= F.q; ++j)
            if ((j - 1) % (F.q - 1) != 0 && ring_has_known_digit(eisenstein_chi(B, j, cfg.t_order, 14)))
                return std::pair{false, "nonzero at j=" + std::to_string(j)};
        return std::pair{true, std::string("vanishing weights confirmed")};
    });
}

CheckResult chi_at_theta(const RunConfig& cfg) {
    return run_guarded("perkins/eisenstein-chi-zeta", "𝓔(j;χ_θ) = -ζ_A(j-1)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 2);
        int j = q, t_order = 12;
        int bound = (j - 1) * t_order;
        TSeries E = eisenstein_chi(B, j, t_order, bound + 8);
        LSeries acc = LSeries::zero(Var::inv_theta, bound);
        for (int k = 0; k < t_order; ++k) acc = acc + shifted(E.coeff(k), -k);
        acc = truncated(acc, bound);
        if (first_mismatch(acc, truncated(-zeta_carlitz(B, j - 1, bound + 2), bound)))
            return std::pair{false, std::string("digit mismatch")};
        return std::pair{true, "j=" + std::to_string(j) + ", " + digit_note(bound)};
    });
}

CheckResult psi_slots(const RunConfig& cfg) {
    return run_guarded("perkins/psi-slots", "ψ = -Σ_{j≡1 (q-1)} Z^{j-1} 𝓔(j;χ_t)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 2);
        ZTSeries psi = perkins_psi(B, cfg.z_order, cfg.t_order, 14);
        for (int k = 0; k < cfg.z_order; ++k)
            if (k % (F.q - 1) != 0 && ring_has_known_digit(psi.coeff(k)))
                return std::pair{false, "unexpected Z^" + std::to_string(k)};
        if (first_mismatch(psi.coeff(0), -eisenstein_chi(B, 1, cfg.t_order, 14)))
            return std::pair{false, std::string("Z^0 slot")};
        return std::pair{true, std::string("slot structure matches")};
    });
}

CheckResult psi_translation(const RunConfig& cfg) {
    return run_guarded("perkins/psi-translation", "ψ(Z-b) = ψ(Z) - b(t)/exp_A(Z)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 2);
        auto rep = psi_translation_check(B, std::max(cfg.z_order, 6), cfg.precision / 2 + 6);
        if (!rep.pass) return std::pair{false, "first discrepancy at Z^" + std::to_string(rep.first_bad_z)};
        return std::pair{true, std::string("logarithmic-derivative identity verified")};
    });
}

CheckResult omega_exp_identity(const RunConfig& cfg) {
    return run_guarded("perkins/omega-exp", "ω(t) = π̃ Σ_i d_i^{-1} π̃^{q^i-1} (θ^{q^i}-t)^{-1}", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        int q = F.q;
        BracketCache B = BracketCache::build(F, 4);
        int t_order = cfg.t_order, P = std::min(cfg.precision / 2, 14);
        RamifiedContext ctx(F, (q - 1) * (P + 8) + 2 * q * q);
        TSeries omega = omega_series(ctx, t_order);
        int imax = 0;
        while (B.qpow(imax) <= ctx.prec / (q - 1) + 2) ++imax;
        B.extend(imax);
        int Pbig = P + 2 * int(B.qpow(imax)) + 8;
        LSeries pi_t = pi_ramified(ctx, Pbig);
        LSeries piqm1_r = ctx.embed(pi_pow_q_minus_1(F, Pbig));
        TSeries acc = TSeries::zero(Var::t, t_order);
        acc.frob_cov = false;
        for (int i = 0; i <= imax; ++i) {
            long long qi = B.qpow(i);
            LSeries coeff = ctx.embed(laurent_inv_abs(B.d[size_t(i)], Pbig)) * powi(piqm1_r, (qi - 1) / (q - 1));
            TSeries den = TSeries::monomial(Var::t, 0, ctx.mul_theta_pow(ctx.one(), qi), t_order);
            den.frob_cov = false;
            if (1 < t_order) den = den - TSeries::monomial(Var::t, 1, ctx.one(), t_order);
            acc = acc + scaled(inverse(den, t_order), coeff);
        }
        TSeries rhs = scaled(acc, pi_t);
        for (int m = 0; m < t_order; ++m)
            if (first_mismatch(truncated(omega.coeff(m), (q - 1) * P), truncated(rhs.coeff(m), (q - 1) * P)))
                return std::pair{false, "t^" + std::to_string(m)};
        return std::pair{true, "digit box " + std::to_string(t_order) + "×" + std::to_string((q - 1) * P)};
    });
}

CheckResult perkins_identity(const RunConfig& cfg) {
    return run_guarded("perkins/identity", "exp_A(Z)ω(t)Σ a(t)/(Z-a) = π̃·exp_A(Z/(θ-t))", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        BracketCache B = BracketCache::build(F, 3);
        auto rep = perkins_identity_check(B, cfg.z_order, cfg.t_order, cfg.precision);
        if (!rep.pass)
            return std::pair{false, "first discrepancy at Z^" + std::to_string(rep.first_bad_z) + " t^" +
                                        std::to_string(rep.first_bad_t) + " digit " + std::to_string(rep.first_bad_inner)};
        return std::pair{true, "digit box " + std::to_string(rep.z_box) + "×" + std::to_string(rep.t_box) + "×" +
                                   std::to_string(rep.inner_box) + " (Z×t×s-digits)"};
    });
}

namespace {

LSeries random_geom_point(Rng& rng, const GeomContext& ctx) {
    const Fq& big = *ctx.big;
    int window = ctx.prec;
    int val = -3 * ctx.e + rng.below(6 * ctx.e + 1);
    std::vector<FqElem> c(size_t(window), FqElem(big, 0));
    for (int i = 0; i < window; ++i)
        if (rng.below(3)) c[size_t(i)] = FqElem(big, rng.below(big.q));
    int spot = rng.below(std::min(window, 2 * ctx.e));
    if ((val + spot) % ctx.e == 0) {
        int v = 1 + rng.below(big.q - 1);
        while (ctx.coeff_in_base(FqElem(big, v))) v = 1 + rng.below(big.q - 1);
        c[size_t(spot)] = FqElem(big, v);
    }
    if (c[0].is_zero()) c[0] = FqElem(big, 1);
    return LSeries::make(Var::geom, val, std::move(c), val + window, ctx.e);
}

Matrix2 random_gl2(Rng& rng, const Fq& F, int steps) {
    Matrix2 g = Matrix2::identity(F);
    for (int i = 0; i < steps; ++i) {
        switch (rng.below(3)) {
            case 0:
                g = g * Matrix2{FqPoly::one(F), random_poly(rng, F, 2), FqPoly::zero(F), FqPoly::one(F)};
                break;
            case 1:
                g = g * Matrix2{FqPoly::one(F), FqPoly::zero(F), random_poly(rng, F, 2), FqPoly::one(F)};
                break;
            default:
                g = g * Matrix2{FqPoly::monomial(F, 0, 1 + rng.below(F.q - 1)), FqPoly::zero(F), FqPoly::zero(F),
                                FqPoly::one(F)};
        }
    }
    return g;
}

}  // namespace

CheckResult geom_invariance(const RunConfig& cfg) {
    return run_guarded("geometry/invariance", "|γ(z)|_Im = |z|_Im |det γ| / |cz+d|²", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        GeomContext ctx(F, cfg.geom_ext, std::max(2, F.q - 1), 80);
        Rng rng(cfg.seed);
        int done = 0, attempts = 0;
        while (done < cfg.cases && attempts < cfg.cases * 4) {
            ++attempts;
            LSeries z = random_geom_point(rng, ctx);
            Matrix2 g = random_gl2(rng, F, 1 + rng.below(4));
            try {
                Rational lhs = imaginary_norm(ctx, homography(ctx, g, z)).logq_im;
                LSeries den = ctx.embed_poly(g.c) * z + ctx.embed_poly(g.d);
                Rational rhs =
                    imaginary_norm(ctx, z).logq_im + Rational(g.det().deg()) - Rational(2) * ctx.logq_abs(den);
                if (lhs != rhs) return std::pair{false, "failed at case " + std::to_string(done)};
                ++done;
            } catch (const IndistinguishableFromKInfinity&) {
            } catch (const PoleHit&) {
            } catch (const PrecisionExhausted&) {
            }
        }
        return std::pair{done >= cfg.cases,
                         std::to_string(done) + " exact cases (certified-precision skips only)"};
    });
}

CheckResult geom_reduction(const RunConfig& cfg) {
    return run_guarded("geometry/reduction", "every z reaches 𝔉 = {|z| = |z|_Im ≥ 1} under GL_2(A)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        GeomContext ctx(F, cfg.geom_ext, std::max(2, F.q - 1), 96);
        Rng rng(cfg.seed + 1);
        int done = 0, attempts = 0;
        while (done < cfg.cases && attempts < cfg.cases * 4) {
            ++attempts;
            LSeries z = random_geom_point(rng, ctx);
            try {
                auto [g, z2] = reduce_to_fundamental(ctx, z);
                if (!in_fundamental(ctx, z2)) return std::pair{false, std::string("landed outside")};
                if (!g.in_gl2()) return std::pair{false, std::string("matrix left GL_2(A)")};
                LSeries den = ctx.embed_poly(g.c) * z + ctx.embed_poly(g.d);
                Rational lhs = imaginary_norm(ctx, z2).logq_im;
                Rational rhs = imaginary_norm(ctx, z).logq_im - Rational(2) * ctx.logq_abs(den);
                if (lhs != rhs) return std::pair{false, std::string("transformation law broke along the path")};
                ++done;
            } catch (const IndistinguishableFromKInfinity&) {
            } catch (const PrecisionExhausted&) {
            }
        }
        return std::pair{done >= cfg.cases, std::to_string(done) + " reductions with audited paths"};
    });
}

CheckResult geom_invariant_identities(const RunConfig& cfg) {
    return run_guarded("geometry/j0-invariants", "J(γ(z)) = J(z) for γ ∈ GL_2(F_q); j_0(λz) = j_0(z)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        RatFunc j0 = j0_symbol(F);
        for (int lam = 1; lam < F.q; ++lam)
            if (!(ratfunc_sub_scale(j0, FqElem(F, lam)) == j0)) return std::pair{false, std::string("j0 scaling")};
        RatFunc J = gl2_invariant(F);
        if (!(ratfunc_sub_inv(J) == J)) return std::pair{false, std::string("J inversion")};
        for (int lam = 1; lam < F.q; ++lam)
            if (!(ratfunc_sub_scale(J, FqElem(F, lam)) == J)) return std::pair{false, std::string("J scaling")};
        for (int mu = 0; mu < F.q; ++mu)
            if (!(ratfunc_sub_shift(J, FqElem(F, mu)) == J)) return std::pair{false, std::string("J translation")};
        return std::pair{true, std::string("exact identities in F_q(z)")};
    });
}

CheckResult geom_borel(const RunConfig& cfg) {
    return run_guarded("geometry/borel", "γ(Ω_M)∩Ω_M ≠ ∅, M > 1 ⟹ γ in the Borel subgroup", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        GeomContext ctx(F, cfg.geom_ext, std::max(2, F.q - 1), 60);
        int zeta = 1;
        while (ctx.coeff_in_base(FqElem(*ctx.big, zeta))) ++zeta;
        LSeries z = LSeries::monomial(Var::geom, -2 * ctx.e, FqElem(*ctx.big, zeta), 40, ctx.e);
        Rng rng(cfg.seed + 2);
        for (int it = 0; it < 30; ++it) {
            Matrix2 g = random_gl2(rng, F, 3);
            if (g.c.is_zero()) continue;
            if (imaginary_norm(ctx, homography(ctx, g, z)).logq_im > Rational(-2))
                return std::pair{false, std::string("non-Borel element kept the horocycle")};
        }
        return std::pair{true, std::string("non-Borel elements leave Ω_M")};
    });
}

CheckResult geom_cocycle(const RunConfig& cfg) {
    return run_guarded("geometry/cocycle", "J_{γδ}(z) = J_γ(δ(z)) J_δ(z)", [&] {
        const Fq& F = Fq::get(cfg.p, cfg.e);
        GeomContext ctx(F, cfg.geom_ext, std::max(2, F.q - 1), 60);
        Rng rng(cfg.seed + 3);
        int done = 0;
        for (int it = 0; it < 60 && done < 20; ++it) {
            LSeries z = random_geom_point(rng, ctx);
            Matrix2 g = random_gl2(rng, F, 2);
            Matrix2 d = random_gl2(rng, F, 2);
            try {
                Matrix2 gd = g * d;
                LSeries lhs = ctx.embed_poly(gd.c) * z + ctx.embed_poly(gd.d);
                LSeries dz = homography(ctx, d, z);
                LSeries rhs = (ctx.embed_poly(g.c) * dz + ctx.embed_poly(g.d)) *
                              (ctx.embed_poly(d.c) * z + ctx.embed_poly(d.d));
                if (first_mismatch(lhs, rhs)) return std::pair{false, std::string("cocycle broke")};
                ++done;
            } catch (const PoleHit&) {
            } catch (const InvertZeroToTruncation&) {
            }
        }
        return std::pair{done >= 20, std::to_string(done) + " cases"};
    });
}

}  // namespace checks

SuiteReport verify_carlitz(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "carlitz";
    int kmax = cfg.q() == 2 ? 6 : 3;
    rep.checks = {
        checks::exp_log_inverse(cfg),
        checks::carlitz_conjugation(cfg),
        checks::carlitz_poly_product(cfg, kmax),
        checks::carlitz_poly_frobenius(cfg, kmax),
        checks::exp_a_factorization(cfg, 25),
        checks::pi_mu_consistency(cfg, 20),
        checks::newton_slopes(cfg),
        checks::mzv_depth1(cfg, 20),
        checks::mzv_depth2(cfg, 20),
        checks::exp_c_limit(cfg),
        checks::omega_two_routes(cfg),
        checks::omega_functional_equation(cfg),
        checks::omega_residue(cfg, 15),
    };
    rep.sort_by_id();
    return rep;
}

SuiteReport verify_uexp(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "uexp";
    rep.checks = {
        checks::h_two_routes(cfg),
        checks::delta_alpha_route(cfg, 20),
        checks::ze_consistency(cfg),
        checks::eisenstein_basics(cfg),
        checks::alpha1_is_eisenstein(cfg),
        checks::type_gaps(cfg),
        checks::integrality(cfg),
        checks::eisenstein_normalized_flag(cfg),
        checks::growth_bound(cfg, 4, 20),
    };
    rep.sort_by_id();
    return rep;
}

SuiteReport verify_perkins(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "perkins";
    rep.checks = {
        checks::chi_homomorphism(cfg), checks::chi_vanishing(cfg),  checks::chi_at_theta(cfg),
        checks::psi_slots(cfg),        checks::psi_translation(cfg), checks::omega_exp_identity(cfg),
        checks::perkins_identity(cfg),
    };
    rep.sort_by_id();
    return rep;
}

SuiteReport verify_geometry(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "geometry";
    rep.checks = {
        checks::geom_invariance(cfg), checks::geom_reduction(cfg), checks::geom_invariant_identities(cfg),
        checks::geom_borel(cfg),      checks::geom_cocycle(cfg),
    };
    rep.sort_by_id();
    return rep;
}

std::vector<SuiteReport> verify_all(const RunConfig& cfg) {
    return {verify_carlitz(cfg), verify_uexp(cfg), verify_perkins(cfg), verify_geometry(cfg)};
}

}  // namespace carlitz
