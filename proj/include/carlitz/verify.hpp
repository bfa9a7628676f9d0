#ifndef CARLITZ_VERIFY_HPP
#define CARLITZ_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace carlitz {

// Runtime configuration shared by the CLI and the verification suites.
// Truncations default to the engine-wide values and can be overridden per
// run (flags) or process-wide (environment variables, see from_env).
struct RunConfig {
    int p = 2, e = 1;
    int tau_order = 8;   // N: O(τ^N)
    int u_order = 30;    // U: O(u^U)
    int precision = 40;  // P: 1/θ digits
    int t_order = 6;
    int z_order = 5;
    int geom_ext = 2;  // field extension degree m for half-plane points
    uint64_t seed = 1;
    int cases = 100;

    int q() const;
    // apply CARLITZ_* environment overrides on top of the built-in defaults
    static RunConfig from_env();
};

struct CheckResult {
    std::string id;
    std::string anchor;  // the identity being verified, self-documenting
    bool pass = false;
    std::string detail;  // digit box, first failure, reported constants
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool ok() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void sort_by_id();
    nlohmann::json to_json() const;
};

SuiteReport verify_carlitz(const RunConfig& cfg);
SuiteReport verify_uexp(const RunConfig& cfg);
SuiteReport verify_perkins(const RunConfig& cfg);
SuiteReport verify_geometry(const RunConfig& cfg);
std::vector<SuiteReport> verify_all(const RunConfig& cfg);

// individual checks used by the acceptance gate at pinned sizes
namespace checks {

CheckResult exp_log_inverse(const RunConfig&);
CheckResult carlitz_conjugation(const RunConfig&);
CheckResult carlitz_poly_product(const RunConfig&, int kmax);
CheckResult carlitz_poly_frobenius(const RunConfig&, int kmax);
CheckResult exp_a_factorization(const RunConfig&, int digits);
CheckResult pi_mu_consistency(const RunConfig&, int digits);
CheckResult newton_slopes(const RunConfig&);
CheckResult mzv_depth1(const RunConfig&, int digits);
CheckResult mzv_depth2(const RunConfig&, int digits);
CheckResult exp_c_limit(const RunConfig&);
CheckResult omega_two_routes(const RunConfig&);
CheckResult omega_functional_equation(const RunConfig&);
CheckResult omega_residue(const RunConfig&, int digits);
CheckResult h_two_routes(const RunConfig&);
CheckResult delta_alpha_route(const RunConfig&, int digits);
CheckResult ze_consistency(const RunConfig&);
CheckResult eisenstein_basics(const RunConfig&);
CheckResult alpha1_is_eisenstein(const RunConfig&);
CheckResult type_gaps(const RunConfig&);
CheckResult integrality(const RunConfig&);
CheckResult eisenstein_normalized_flag(const RunConfig&);
CheckResult growth_bound(const RunConfig&, int imax, int mmax);
CheckResult chi_homomorphism(const RunConfig&);
CheckResult chi_vanishing(const RunConfig&);
CheckResult chi_at_theta(const RunConfig&);
CheckResult psi_slots(const RunConfig&);
CheckResult psi_translation(const RunConfig&);
CheckResult omega_exp_identity(const RunConfig&);
CheckResult perkins_identity(const RunConfig&);
CheckResult geom_invariance(const RunConfig&);
CheckResult geom_reduction(const RunConfig&);
CheckResult geom_invariant_identities(const RunConfig&);
CheckResult geom_borel(const RunConfig&);
CheckResult geom_cocycle(const RunConfig&);

}  // namespace checks

}  // namespace carlitz

#endif
