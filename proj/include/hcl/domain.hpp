#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hcl/common.hpp"

namespace hcl {

enum class DomainKind { RadialBall, ToricPolydisc, PlanarGrid };

std::string to_string(DomainKind k);

/// Planar masked grid on a square box, n = 1 only. Nodes are (nx x nx),
/// node (i, j) sits at (x0 + i*h, x0 + j*h). interior[idx] marks unknowns;
/// everything else is pinned to zero boundary data.
struct PlanarMesh {
    double x0 = -1.0;     // lower-left corner (both axes)
    double h = 1.0 / 64;  // mesh width
    int nx = 129;         // nodes per axis
    std::vector<uint8_t> interior;

    int idx(int i, int j) const { return j * nx + i; }
    double x(int i) const { return x0 + h * i; }
    double y(int j) const { return x0 + h * j; }
    bool is_interior(int i, int j) const {
        return i >= 0 && j >= 0 && i < nx && j < nx && interior[idx(i, j)] != 0;
    }
};

/// A bounded domain in C^n in one of the three computable representations.
///  - RadialBall: the unit ball, log-radius grid on [t_min, 0].
///  - ToricPolydisc: the unit polydisc, log grid on [t_min, 0]^n (n <= 2).
///  - PlanarGrid: masked square grid, n = 1.
struct Domain {
    DomainKind kind = DomainKind::RadialBall;
    int n = 1;
    double t_min = -10.0;
    int npts = 10000;             // radial/toric nodes per axis
    PlanarMesh mesh;              // PlanarGrid only

    std::vector<double> t_grid() const;  // radial/toric axis grid
    double dt() const { return -t_min / (npts - 1); }
};

struct DomainSpec {
    DomainKind kind = DomainKind::RadialBall;
    int n = 1;
    double t_min = -10.0;
    int npts = 10000;
    // PlanarGrid parameters
    double box_half = 1.0;
    double h = 1.0 / 64;
    double mask_radius = 1.0;     // disc mask by default
};

Domain build_domain(const DomainSpec& spec);

/// Compact subset in the representation matching its domain.
/// Radial: union of closed intervals in t. Toric: lower set described by its
/// maximal corners (t <= q componentwise for some corner q). Planar: node mask.
struct CompactSubset {
    DomainKind kind = DomainKind::RadialBall;
    bool empty = false;
    std::vector<Interval> radial;                 // RadialBall
    std::vector<std::array<double, 2>> corners;   // ToricPolydisc, n = 2
    double corner1d = 0.0;                        // ToricPolydisc, n = 1
    std::vector<uint8_t> mask;                    // PlanarGrid

    static CompactSubset empty_set(DomainKind k);
};

CompactSubset radial_ball(double t_outer);
CompactSubset radial_annulus(double t_inner, double t_outer);
CompactSubset radial_union(const std::vector<Interval>& ivs);
CompactSubset toric_lower_set(const std::vector<std::array<double, 2>>& corners);
CompactSubset toric_polydisc_set(double t_corner, int n);
CompactSubset planar_disc(const Domain& dom, double cx, double cy, double radius);
CompactSubset planar_rect(const Domain& dom, double x0, double y0, double x1, double y1);

/// Fill the inner holes of a radial compactum: capacity only sees the outer
/// radius, so the hull is the ball of the outermost right endpoint.
CompactSubset polynomial_hull_radial(const CompactSubset& K);

/// Distance (in grid cells) from K to the domain boundary; compacta must keep
/// a margin of >= 2 cells.
double boundary_margin_cells(const CompactSubset& K, const Domain& dom);
void require_margin(const CompactSubset& K, const Domain& dom);

/// Radial candidate profile chi(t) with chi(0) = 0, sampled on its own sorted
/// grid (node set may refine the domain grid: constructors insert exact
/// breakpoints). d_minus/d_plus are one-sided derivatives at the nodes; the
/// Hessian backend trusts them, which keeps kinked closed forms exact.
struct RadialProfile {
    std::vector<double> t;
    std::vector<double> v;
    std::vector<double> d_minus;
    std::vector<double> d_plus;

    double eval(double tt) const;          // piecewise-linear in the values
    double deriv(double tt) const;         // derivative model (lerp of d's)
    std::size_t size() const { return t.size(); }
};

/// Toric candidate profile on the n-dim log grid (n <= 2), stored flat
/// row-major over the axis grid of the domain.
struct ToricProfile {
    int n = 2;
    std::vector<double> axis;   // shared axis grid
    std::vector<double> v;      // size = axis.size()^n
    double at(int i, int j) const { return v[std::size_t(j) * axis.size() + i]; }
    double& at(int i, int j) { return v[std::size_t(j) * axis.size() + i]; }
};

/// A k-plurisubharmonic candidate with zero boundary values, in the
/// representation of its domain.
struct PshFunction {
    DomainKind kind = DomainKind::RadialBall;
    int n = 1;
    RadialProfile radial;        // RadialBall
    ToricProfile toric;          // ToricPolydisc
    std::vector<double> nodes;   // PlanarGrid nodal values (size nx*nx)

    double sup_abs() const;     // sup |u|
};

/// Build a radial PshFunction from an analytic profile; breakpoints are
/// inserted into the grid exactly and carry one-sided derivatives.
PshFunction radial_from_profile(const Domain& dom,
                                const std::function<double(double)>& chi,
                                const std::function<double(double)>& dchi,
                                const std::vector<double>& breakpoints = {});

/// Piecewise-linear radial function through the given nodes (kinks exact).
PshFunction radial_piecewise_linear(const Domain& dom,
                                    const std::vector<double>& knots_t,
                                    const std::vector<double>& knots_v);

/// max(t/log(1/r), -1): the k=n relatively extremal profile of the ball
/// {|z| <= r}. t_outer = log r.
PshFunction radial_cone(const Domain& dom, double t_outer);

/// Scale u by c > 0.
PshFunction scale(const PshFunction& u, double c);

/// Pointwise max of radial functions (used by the witness family); one-sided
/// derivatives are taken from the active branch, crossings get exact nodes.
PshFunction radial_sup(const Domain& dom, const std::vector<PshFunction>& us);

/// Sample any radial profile onto the planar grid of dom (n = 1).
PshFunction planar_from_radial(const Domain& dom, const PshFunction& u_radial);
PshFunction planar_from_function(const Domain& dom,
                                 const std::function<double(double, double)>& f);

struct PshDiagnostics {
    bool pass = false;
    double worst_negativity = 0.0;    // max over nodes of u > 0 overshoot
    double worst_monotone = 0.0;      // radial/toric monotonicity defect
    double worst_convexity = 0.0;     // convexity / Hessian-positivity defect
    double boundary_value = 0.0;      // |u| at the outer boundary
    double tolerance = 0.0;
    std::string message;
};

/// Validity check for membership in PSH_{k,0} at desk scale: u <= 0, zero
/// boundary value, monotone profile, and nonnegativity of the j-Hessian
/// distribution for all j <= k (radial); convex monotone profile (toric);
/// discrete subharmonicity (planar, k = 1).
PshDiagnostics validate_psh(const PshFunction& u, const Domain& dom, int k,
                            std::optional<double> tol = std::nullopt);

/// K_t = {u <= -t}, t > 0, in the domain's representation.
CompactSubset level_set(const PshFunction& u, const Domain& dom, double t);

}  // namespace hcl
