#pragma once

#include "hcl/domain.hpp"
#include "hcl/hessian.hpp"

namespace hcl {

/// Relatively extremal function of a lower-set compactum on the polydisc,
/// in log coordinates. The upper envelope of toric k-psh candidates equals
/// the pointwise sup of monotone affine functions l(x) = a . x with a >= 0
/// and a . q <= -1 at every maximal corner q of K, clipped below at -1;
/// the sup is attained on the vertex set of the feasible polyhedron.
PshFunction toric_extremal(const CompactSubset& K, const Domain& dom);

/// Vertices of A = { a >= 0 : a . q <= -1 for all corners q }.
std::vector<std::array<double, 2>> toric_dual_vertices(
    const std::vector<std::array<double, 2>>& corners);

/// Real Monge-Ampere masses of the convex profile: per-node subgradient cell
/// volume times n!. Exact for piecewise-linear profiles whose kinks follow
/// the grid lines and the SW-NE diagonals.
HessianMeasure toric_hessian(const PshFunction& u, const Domain& dom);

double toric_mass_on(const HessianMeasure& m, const CompactSubset& K, const Domain& dom);
double toric_energy_on(const HessianMeasure& m, const PshFunction& u, const Domain& dom,
                       const CompactSubset* K);

}  // namespace hcl
