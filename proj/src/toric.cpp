#include "hcl/toric.hpp"

#include <cmath>

namespace hcl {

namespace {

// convex hull (monotone chain); returns area via the shoelace formula
double hull_area(std::vector<std::array<double, 2>> pts) {
    if (pts.size() < 3) return 0.0;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) {
                              return std::fabs(a[0] - b[0]) < 1e-15 &&
                                     std::fabs(a[1] - b[1]) < 1e-15;
                          }),
              pts.end());
    if (pts.size() < 3) return 0.0;
    auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                    const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    std::size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& p = h[i];
        const auto& q = h[(i + 1) % h.size()];
        area += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::fabs(area);
}

bool in_lower_set(const CompactSubset& K, double x1, double x2, double tol) {
    for (const auto& c : K.corners)
        if (x1 <= c[0] + tol && x2 <= c[1] + tol) return true;
    return false;
}

}  // namespace

std::vector<std::array<double, 2>> toric_dual_vertices(
    const std::vector<std::array<double, 2>>& corners) {
    require(!corners.empty(), "dual of an empty corner set");
    // constraints: |q1| a1 + |q2| a2 >= 1, a >= 0
    struct Line { double c1, c2; };
    std::vector<Line> lines;
    for (const auto& q : corners) lines.push_back({-q[0], -q[1]});

    auto feasible = [&](double a1, double a2) {
        if (a1 < -1e-12 || a2 < -1e-12) return false;
        for (const auto& l : lines)
            if (l.c1 * a1 + l.c2 * a2 < 1.0 - 1e-10) return false;
        return true;
    };

    std::vector<std::array<double, 2>> verts;
    // axis vertices
    double min_c1 = kInf, min_c2 = kInf;
    for (const auto& l : lines) {
        min_c1 = std::min(min_c1, l.c1);
        min_c2 = std::min(min_c2, l.c2);
    }
    if (feasible(1.0 / min_c1, 0.0)) verts.push_back({1.0 / min_c1, 0.0});
    if (feasible(0.0, 1.0 / min_c2)) verts.push_back({0.0, 1.0 / min_c2});
    // pairwise intersections
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            double det = lines[i].c1 * lines[j].c2 - lines[j].c1 * lines[i].c2;
            if (std::fabs(det) < 1e-14) continue;
            double a1 = (lines[j].c2 - lines[i].c2) / det;
            double a2 = (lines[i].c1 - lines[j].c1) / det;
            if (feasible(a1, a2)) verts.push_back({std::max(a1, 0.0), std::max(a2, 0.0)});
        }
    require(!verts.empty(), "degenerate dual polyhedron");
    return verts;
}

PshFunction toric_extremal(const CompactSubset& K, const Domain& dom) {
    require(dom.kind == DomainKind::ToricPolydisc, "toric extremal needs a toric domain");
    require(K.kind == DomainKind::ToricPolydisc, "set backend mismatch");
    PshFunction u;
    u.kind = DomainKind::ToricPolydisc;
    u.n = dom.n;
    u.toric.n = dom.n;
    u.toric.axis = dom.t_grid();
    std::size_t N = u.toric.axis.size();

    if (dom.n == 1) {
        u.toric.v.assign(N, 0.0);
        if (!K.empty) {
            double L = -K.corner1d;
            for (std::size_t i = 0; i < N; ++i)
                u.toric.v[i] = std::max(-1.0, u.toric.axis[i] / L);
        }
        return u;
    }

    u.toric.v.assign(N * N, 0.0);
    if (K.empty) return u;
    auto verts = toric_dual_vertices(K.corners);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i) {
            double x1 = u.toric.axis[i], x2 = u.toric.axis[j];
            double best = -1.0;
            for (const auto& a : verts)
                best = std::max(best, a[0] * x1 + a[1] * x2);
            u.toric.at(int(i), int(j)) = std::min(best, 0.0);
        }
    return u;
}

HessianMeasure toric_hessian(const PshFunction& u, const Domain& dom) {
    const auto& p = u.toric;
    HessianMeasure m;
    m.kind = DomainKind::ToricPolydisc;
    m.n = dom.n;
    m.k = dom.n;
    std::size_t N = p.axis.size();

    if (dom.n == 1) {
        m.weights.assign(N, 0.0);
        double total = 0.0;
        for (std::size_t i = 1; i + 1 < N; ++i) {
            double s0 = (p.v[i] - p.v[i - 1]) / (p.axis[i] - p.axis[i - 1]);
            double s1 = (p.v[i + 1] - p.v[i]) / (p.axis[i + 1] - p.axis[i]);
            double w = std::max(0.0, s1 - s0);
            m.worst_negative_weight = std::min(m.worst_negative_weight, s1 - s0);
            m.weights[i] = w;
            total += w;
        }
        m.total_mass = total;
        return m;
    }

    // gradients of the two triangles per cell, SW-NE diagonal
    // cell (i,j) spans [axis_i, axis_{i+1}] x [axis_j, axis_{j+1}]
    std::size_t nc = N - 1;
    std::vector<std::array<double, 2>> glo(nc * nc), ghi(nc * nc);
    for (std::size_t j = 0; j < nc; ++j)
        for (std::size_t i = 0; i < nc; ++i) {
            double h1 = p.axis[i + 1] - p.axis[i];
            double h2 = p.axis[j + 1] - p.axis[j];
            double vsw = p.at(int(i), int(j)), vse = p.at(int(i + 1), int(j));
            double vne = p.at(int(i + 1), int(j + 1)), vnw = p.at(int(i), int(j + 1));
            // lower triangle (SW, SE, NE), upper triangle (SW, NE, NW)
            glo[j * nc + i] = {(vse - vsw) / h1, (vne - vse) / h2};
            ghi[j * nc + i] = {(vne - vnw) / h1, (vnw - vsw) / h2};
        }

    m.weights.assign(N * N, 0.0);
    double total = 0.0;
    for (std::size_t j = 1; j + 1 < N; ++j)
        for (std::size_t i = 1; i + 1 < N; ++i) {
            // six incident triangles around an interior node
            std::vector<std::array<double, 2>> g;
            g.push_back(glo[(j - 1) * nc + (i - 1)]);
            g.push_back(ghi[(j - 1) * nc + (i - 1)]);
            g.push_back(glo[(j - 1) * nc + i]);
            g.push_back(ghi[j * nc + (i - 1)]);
            g.push_back(glo[j * nc + i]);
            g.push_back(ghi[j * nc + i]);
            double w = 2.0 * hull_area(g);  // n! = 2
            m.weights[j * N + i] = w;
            total += w;
        }
    m.total_mass = total;
    return m;
}

double toric_mass_on(const HessianMeasure& m, const CompactSubset& K, const Domain& dom) {
    require(K.kind == DomainKind::ToricPolydisc, "set backend mismatch");
    if (K.empty) return 0.0;
    auto axis = dom.t_grid();
    std::size_t N = axis.size();
    double tol = 1e-9 * dom.dt();
    if (dom.n == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            if (axis[i] <= K.corner1d + tol) s += m.weights[i];
        return s;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i)
            if (in_lower_set(K, axis[i], axis[j], tol)) s += m.weights[j * N + i];
    return s;
}

double toric_energy_on(const HessianMeasure& m, const PshFunction& u, const Domain& dom,
                       const CompactSubset* K) {
    const auto& p = u.toric;
    auto axis = dom.t_grid();
    std::size_t N = axis.size();
    double tol = 1e-9 * dom.dt();
    double s = 0.0;
    if (dom.n == 1) {
        for (std::size_t i = 0; i < N; ++i) {
            if (K && !(axis[i] <= K->corner1d + tol)) continue;
            s += (-p.v[i]) * m.weights[i];
        }
        return s;
    }
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i) {
            if (K && !in_lower_set(*K, axis[i], axis[j], tol)) continue;
            s += (-p.at(int(i), int(j))) * m.weights[j * N + i];
        }
    return s;
}

}  // namespace hcl
