#include "hcl/gridsolve.hpp"

#include <cmath>
#include <numbers>

namespace hcl {

namespace {

constexpr double kPi = std::numbers::pi;

// CG over the unknown set for A u = b, A = 4 u_c - sum(u_nb) with u = given
// values at pinned nodes (moved into b by the caller).
struct StencilSystem {
    const PlanarMesh* mesh;
    std::vector<int> unknown_of_node;   // -1 if pinned
    std::vector<int> node_of_unknown;

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const auto& m = *mesh;
        std::size_t nu = node_of_unknown.size();
        for (std::size_t u = 0; u < nu; ++u) {
            int id = node_of_unknown[u];
            int i = id % m.nx, j = id / m.nx;
            double acc = 4.0 * x[u];
            const int nb[4] = {m.idx(i + 1, j), m.idx(i - 1, j), m.idx(i, j + 1),
                               m.idx(i, j - 1)};
            for (int b = 0; b < 4; ++b) {
                int uu = unknown_of_node[nb[b]];
                if (uu >= 0) acc -= x[uu];
            }
            y[u] = acc;
        }
    }
};

std::vector<double> run_cg(const StencilSystem& sys, const std::vector<double>& b,
                           GridSolveStats* stats) {
    std::size_t nu = b.size();
    std::vector<double> x(nu, 0.0), r = b, p = b, Ap(nu, 0.0);
    double rr = 0.0, bnorm = 0.0;
    for (double v : b) bnorm += v * v;
    bnorm = std::sqrt(std::max(bnorm, 1e-300));
    for (double v : r) rr += v * v;
    const double target = 1e-13 * bnorm;
    const int cap = int(60.0 * std::sqrt(double(nu)) + 2000);
    int it = 0;
    while (std::sqrt(rr) > target && it < cap) {
        sys.apply(p, Ap);
        double pAp = 0.0;
        for (std::size_t i = 0; i < nu; ++i) pAp += p[i] * Ap[i];
        if (pAp <= 0) break;
        double alpha = rr / pAp;
        double rr_new = 0.0;
        for (std::size_t i = 0; i < nu; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
            rr_new += r[i] * r[i];
        }
        double beta = rr_new / rr;
        for (std::size_t i = 0; i < nu; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_new;
        ++it;
    }
    double res = std::sqrt(rr) / bnorm;
    if (stats) {
        stats->iterations = it;
        stats->residual = res;
    }
    if (res > 1e-9)
        throw convergence_error("grid solver did not reach the residual target", res);
    return x;
}

}  // namespace

PshFunction grid_poisson_solve(const Domain& dom, const std::vector<double>& node_mass,
                               GridSolveStats* stats) {
    require(dom.kind == DomainKind::PlanarGrid, "grid solve needs a planar domain");
    const auto& m = dom.mesh;
    require(node_mass.size() == m.interior.size(), "mass vector size mismatch");

    StencilSystem sys;
    sys.mesh = &m;
    sys.unknown_of_node.assign(m.interior.size(), -1);
    for (std::size_t id = 0; id < m.interior.size(); ++id)
        if (m.interior[id]) {
            sys.unknown_of_node[id] = int(sys.node_of_unknown.size());
            sys.node_of_unknown.push_back(int(id));
        }

    // (h^2 / 2 pi) (sum_nb u - 4 u_c) / h^2 = w  =>  A u = -2 pi w
    std::vector<double> b(sys.node_of_unknown.size());
    for (std::size_t u = 0; u < b.size(); ++u) {
        int id = sys.node_of_unknown[u];
        require(node_mass[id] >= -1e-12, "measure weight must be nonnegative");
        b[u] = -2.0 * kPi * node_mass[id];
    }
    auto x = run_cg(sys, b, stats);

    PshFunction uf;
    uf.kind = DomainKind::PlanarGrid;
    uf.n = 1;
    uf.nodes.assign(m.interior.size(), 0.0);
    for (std::size_t u = 0; u < x.size(); ++u) uf.nodes[sys.node_of_unknown[u]] = x[u];
    return uf;
}

PshFunction grid_extremal_solve(const Domain& dom, const CompactSubset& K,
                                GridSolveStats* stats) {
    require(dom.kind == DomainKind::PlanarGrid, "grid solve needs a planar domain");
    require(K.kind == DomainKind::PlanarGrid, "set backend mismatch");
    const auto& m = dom.mesh;

    PshFunction uf;
    uf.kind = DomainKind::PlanarGrid;
    uf.n = 1;
    uf.nodes.assign(m.interior.size(), 0.0);
    if (K.empty) {
        if (stats) *stats = {};
        return uf;
    }

    StencilSystem sys;
    sys.mesh = &m;
    sys.unknown_of_node.assign(m.interior.size(), -1);
    for (std::size_t id = 0; id < m.interior.size(); ++id)
        if (m.interior[id] && !K.mask[id]) {
            sys.unknown_of_node[id] = int(sys.node_of_unknown.size());
            sys.node_of_unknown.push_back(int(id));
        }

    // pinned values: -1 on K, 0 on the exterior; move into the RHS
    std::vector<double> b(sys.node_of_unknown.size(), 0.0);
    for (std::size_t u = 0; u < b.size(); ++u) {
        int id = sys.node_of_unknown[u];
        int i = id % m.nx, j = id / m.nx;
        const int nb[4] = {m.idx(i + 1, j), m.idx(i - 1, j), m.idx(i, j + 1),
                           m.idx(i, j - 1)};
        for (int q = 0; q < 4; ++q)
            if (sys.unknown_of_node[nb[q]] < 0 && m.interior[nb[q]] && K.mask[nb[q]])
                b[u] += -1.0;
    }
    auto x = run_cg(sys, b, stats);

    for (std::size_t id = 0; id < m.interior.size(); ++id)
        if (m.interior[id] && K.mask[id]) uf.nodes[id] = -1.0;
    for (std::size_t u = 0; u < x.size(); ++u) uf.nodes[sys.node_of_unknown[u]] = x[u];
    return uf;
}

}  // namespace hcl
