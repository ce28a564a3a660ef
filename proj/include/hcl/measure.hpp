#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hcl/domain.hpp"

namespace hcl {

enum class MeasureKind { Lebesgue, RadialDensity, Toric, GridWeights, CurveWeights, Atoms };

std::string to_string(MeasureKind k);

/// One polyline segment with a linear density (mass per unit length).
struct CurveSegment {
    double x0, y0, x1, y1;
    double density;
    double length() const;
};

struct Atom {
    double x = 0.0, y = 0.0;   // n = 1 location (radial atoms use radius |x|)
    double mass = 1.0;
};

/// Per-axis radial factor of a product (toric) measure: distribution
/// M(t) = mu({|z_j| <= e^t}) of one axis.
struct AxisDistribution {
    std::function<double(double)> M;       // nondecreasing, M(-inf) -> 0
    std::function<double(double)> dM;      // density in t
};

/// A nonnegative finite Borel measure in a computable representation.
///  - Lebesgue: analytic (any radial/toric/grid domain);
///  - RadialDensity: distribution M(t) on the log-radius axis, optional atom
///    at the origin;
///  - Toric: product of per-axis distributions (n <= 2);
///  - GridWeights: nodal weights on a planar mesh;
///  - CurveWeights: polyline with per-segment density (planar, n = 1);
///  - Atoms: finite point masses.
struct BorelMeasure {
    MeasureKind kind = MeasureKind::Lebesgue;
    int n = 1;
    bool charges_pluripolar = false;

    std::function<double(double)> M;       // RadialDensity: distribution in t
    std::function<double(double)> dM;      // RadialDensity: density in t
    double origin_atom = 0.0;              // RadialDensity: mass at z = 0

    std::vector<AxisDistribution> axes;    // Toric

    std::vector<double> weights;           // GridWeights (size nx*nx)
    std::vector<CurveSegment> segments;    // CurveWeights

    std::vector<Atom> atoms;               // Atoms

    double total_mass = 0.0;
    std::string label;
};

/// Lebesgue measure of the unit ball/disc in the domain's representation.
BorelMeasure lebesgue_measure(const Domain& dom);

/// Radial measure from an analytic distribution function M(t).
BorelMeasure radial_measure(const std::function<double(double)>& M,
                            const std::function<double(double)>& dM,
                            double total, const std::string& label = "radial");

/// A single unit-mass style atom (pluripolar-charging).
BorelMeasure atom_measure(double x, double y, double mass);

/// Poincare-type singular measure on the unit polydisc:
/// per singular axis the distribution is (2*pi/alpha) * (1 - t)^(-alpha);
/// the remaining axes carry Lebesgue factors. n = d = 1 gives a RadialDensity.
BorelMeasure poincare_measure(double alpha, int d, int n);

/// Polyline curve measure (n = 1 planar); circle helper subdivides
/// the circle |z - c| = r into nseg chords.
BorelMeasure curve_measure(const std::vector<CurveSegment>& segs);
BorelMeasure circle_measure(double cx, double cy, double r, double density, int nseg);

/// Nodal weights on a planar mesh.
BorelMeasure grid_measure(const Domain& dom, const std::vector<double>& weights);

/// Lebesgue weights: h^2 per interior node (cell mass).
BorelMeasure grid_lebesgue(const Domain& dom);

/// Deposit a measure onto grid weights (atoms -> nearest node; curve ->
/// per-segment length deposits with bilinear splatting).
BorelMeasure splat_to_grid(const BorelMeasure& mu, const Domain& dom);

/// mu(E) for a representable pair.
double measure_of(const BorelMeasure& mu, const CompactSubset& E, const Domain& dom);

struct MollifyResult {
    BorelMeasure raw;           // paper-style plateau bump, not mass-normalized
    BorelMeasure renormalized;  // unit-mass bump; used by convergence tests
    double mass_kept;           // renormalized mass / original mass
};

/// Smooth mu at scale eps and restrict to the interior region
/// Omega_eps = {dist(., boundary) > eps}. The bump equals 1 on [-eps, eps]
/// and falls to 0 at |s| = 2*eps.
MollifyResult mollify(const BorelMeasure& mu, double eps, const Domain& dom);

/// Total-variation distance between two measures of the same representation.
double tv_distance(const BorelMeasure& a, const BorelMeasure& b, const Domain& dom);

}  // namespace hcl
