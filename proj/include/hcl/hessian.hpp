#pragma once

#include "hcl/domain.hpp"

namespace hcl {

/// The measure (dd^c u)^k ^ omega^(n-k) under the normalization that makes
/// (dd^c log|z|)^n the unit Dirac mass at the origin.
///
/// Radial backend: for u = chi(log|z|) the distribution function of the
/// measure is H(t) = mass{|z| <= e^t} = chi'(t)^k * exp(2(n-k) t), carried
/// here as left/right node values (jumps are point masses on spheres) plus a
/// core term for mass at or below t_min. Grid backend (n = k = 1): nodal
/// weights h^2/(2 pi) * (five-point Laplacian). Toric backend (k = n): node
/// masses n! * (subgradient cell volume) of the convex log profile.
struct HessianMeasure {
    DomainKind kind = DomainKind::RadialBall;
    int n = 1;
    int k = 1;

    // radial representation
    std::vector<double> t;
    std::vector<double> H_left;    // H(t_i-) cumulative, includes core
    std::vector<double> H_right;   // H(t_i+) cumulative
    std::vector<double> d_plus;    // slope model entering cell i
    std::vector<double> d_minus;   // slope model leaving cell i-1
    double core = 0.0;             // mass at/below t_min

    // grid / toric representation
    std::vector<double> weights;

    double total_mass = 0.0;
    double worst_negative_weight = 0.0;  // diagnostics: most negative raw weight

    /// Distribution function H(tt) evaluated from the left/right.
    double H(double tt, bool from_right) const;
};

/// Evaluate the k-Hessian measure of a validated candidate.
/// Radial: all 1 <= k <= n. Toric: k = n (n <= 2). Planar: n = k = 1.
HessianMeasure hessian_measure(const PshFunction& u, const Domain& dom, int k);

/// Mass of the measure on a compact subset (closed: endpoint atoms included).
double mass_on(const HessianMeasure& m, const CompactSubset& K, const Domain& dom);

/// integral of (-u) against the measure, restricted to K (or everything).
double energy_on(const HessianMeasure& m, const PshFunction& u, const Domain& dom,
                 const CompactSubset* K = nullptr);

struct EnergyNorm {
    double energy = 0.0;
    double norm = 0.0;
};

/// E_k(u) = int (-u) (dd^c u)^k ^ omega^(n-k) and ||u|| = E_k(u)^(1/(k+1)).
EnergyNorm energy_and_norm(const PshFunction& u, const Domain& dom, int k);

/// Total Monge-Ampere mass M[u] = int (dd^c u)^n.
double total_mass_ma(const PshFunction& u, const Domain& dom);

/// int dd^c u ^ omega^(n-1), the (normalized) Laplacian mass.
double laplacian_mass(const PshFunction& u, const Domain& dom);

struct ComparisonReport {
    double mass_u = 0.0, mass_v = 0.0;
    double energy_u = 0.0, energy_v = 0.0;
    bool pass = false;
    double margin = 0.0;   // min of the two inequality slacks
};

/// Lemma-style comparison: if u <= v (checked) with matching zero boundary
/// values then mass(u) >= mass(v) and energy(u) >= energy(v).
ComparisonReport comparison_check(const PshFunction& u, const PshFunction& v,
                                  const Domain& dom, int k, double tol = 1e-10);

}  // namespace hcl
