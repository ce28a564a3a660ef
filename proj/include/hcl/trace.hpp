#pragma once

#include "hcl/capacity.hpp"
#include "hcl/domain.hpp"
#include "hcl/hessian.hpp"
#include "hcl/measure.hpp"

namespace hcl {

/// A value that may be certified divergent; family-restricted estimates are
/// lower bounds of the true quantity and are flagged as such.
struct Divergeable {
    double value = 0.0;
    bool divergent = false;
    std::string trend;   // what witnessed the divergence verdict
};

struct NuSample {
    double s = 0.0;        // mass threshold
    double nu = 0.0;       // family-restricted capacity minimum (upper bound of nu_k)
    double param = 0.0;    // family parameter attaining it
    std::string set_id;
};

/// nu_k(s) = inf{ Cap_k(K) : mu(K) >= s } restricted to a monotone family
/// (balls / lower sets / inner discs) with bisection on the parameter.
/// Pluripolar-charging measures get the exact value 0.
std::vector<NuSample> capacity_minimizing(const BorelMeasure& mu, const Domain& dom,
                                          int k, const std::vector<double>& s_grid);

struct TraceReport {
    std::vector<NuSample> nu_samples;
    Divergeable I_kp;
    Divergeable I_n_beta;
    int k = 1;
    double p = 2.0, q = 1.0, beta = 0.0;
    double compactness_indicator = 0.0;   // fitted limit of s / nu^(p/(k+1))
    bool compactness_to_zero = false;
    std::string orientation = "family-restricted-lower-bound";
};

/// I_{k,p} and I_n(beta) from the capacity minimizing samples; improper
/// integrals/sups are evaluated on log-spaced grids with a tail check, and a
/// divergence verdict requires a monotone growth trend over >= 3 decades.
TraceReport trace_constants(const BorelMeasure& mu, const Domain& dom, int k, double p,
                            double beta = 0.0, double q = 1.0, int s_per_decade = 20,
                            int decades = 9);

struct FunctionalValues {
    double lp_norm = 0.0;          // ||u||_{L^p(mu)}
    double sobolev_ratio = 0.0;    // ||u||_{L^p(mu)} / ||u||
    Divergeable mt_value;          // int exp(beta ((-u)/||u||)^q) dmu
    Divergeable bm_value;          // int exp(lambda ((-u)/M[u]^{1/n})^{nq/(n+1)}) dmu
    double norm = 0.0;
    double ma_mass = 0.0;          // M[u], k = n only
};

/// Sobolev / Moser-Trudinger / Brezis-Merle functionals of one candidate by
/// level-set (layer cake) quadrature.
FunctionalValues functional_values(const PshFunction& u, const BorelMeasure& mu,
                                   const Domain& dom, int k, double p, double beta,
                                   double q);

struct WeakStrongReport {
    double weak_max_ratio = 0.0;   // max_t t^{k+1} Cap(K_t) / ||u||^{k+1}
    double weak_argmax = 0.0;
    double strong_lhs = 0.0;       // int t^k Cap(K_t) dt
    double strong_bound = 0.0;     // (A/(A-1))^{k+1} log A * ||u||^{k+1}
    double strong_ratio = 0.0;     // lhs / ||u||^{k+1}
    double norm_pow = 0.0;         // ||u||^{k+1}
    bool pass_weak = false;
    bool pass_strong = false;
};

/// Capacitary weak (max form) and strong (integral form) inequalities for
/// the level sets of u.
WeakStrongReport weak_strong_check(const PshFunction& u, const Domain& dom, int k,
                                   double A, int n_t = 50);

/// Dyadic sum S_{k,p}(mu, u) over levels 2^j, plus the comparison bound
/// (k+1)/(k+1-p) * I_{k,p} when the latter is finite.
struct DyadicReport {
    double S = 0.0;
    double bound = 0.0;   // (k+1)/(k+1-p) * I_kp (0 if divergent)
    bool bound_applicable = false;
    bool pass = false;
    int terms = 0;
};
DyadicReport dyadic_sum(const PshFunction& u, const BorelMeasure& mu, const Domain& dom,
                        int k, double p, const Divergeable& I_kp);

struct WitnessLevel {
    int j = 0;
    double mass = 0.0;     // mu(K_j)
    double cap = 0.0;      // Cap_k(K_j)
    double gamma = 0.0;
    double ratio = 0.0;    // single-level certified Sobolev ratio
};

struct WitnessReport {
    std::vector<WitnessLevel> levels;
    double sup_ratio = 0.0;          // ratio of the cumulative sup u_{i,m}
    double min_growth = kInf;        // min ratio growth per added level
    bool divergence_witnessed = false;
};

/// Necessity-direction witness family u_{i,m} = sup_j gamma_j u_j. For
/// pluripolar-charging measures the per-level extremals use a shrinking
/// radius schedule (nu = 0 makes the textbook gamma degenerate) and each
/// level certifies a growing lower bound for the Sobolev sup.
WitnessReport witness_family(const BorelMeasure& mu, const Domain& dom, int k, double p,
                             int j_lo, int j_hi);

enum class IsocapForm { Power, Exponential };

struct IsocapScan {
    std::vector<double> radii;
    std::vector<double> mass;      // mu(K_r)
    std::vector<double> cap;       // Cap_k(K_r)
    std::vector<double> value;     // mu/Cap^e or mu * exp(lambda / Cap^{1/n})
    double sup_value = 0.0;
    double argsup_r = 0.0;
    double fitted_exponent = 0.0;  // slope of log(value) vs log(r)
    double limit_r_to_1 = 0.0;     // extrapolated value at r = 1
    bool divergent_trend = false;  // monotone growth as r -> 0
};

/// Ball-family isocapacitary scan. Power form: value = mu(K)/Cap^exponent.
/// Exponential form: value = mu(K) exp(lambda / Cap_n^{1/n}).
IsocapScan isocapacitary_scan(const std::vector<double>& radii, const BorelMeasure& mu,
                              const Domain& dom, int k, IsocapForm form,
                              double lambda_or_exponent);

}  // namespace hcl
