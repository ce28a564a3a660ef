#include "hcl/trace.hpp"

#include <cmath>
#include <map>

#include "hcl/gridsolve.hpp"

namespace hcl {

namespace {

// mass of the shrunken-to-a-point family member: detects nu = 0 exactly
double pluripolar_core_mass(const BorelMeasure& mu) {
    double s = mu.origin_atom;
    for (const auto& a : mu.atoms)
        if (std::hypot(a.x, a.y) < 1e-12) s += a.mass;
    return s;
}

struct RadialFamily {
    const BorelMeasure* mu;
    const Domain* dom;
    int k;
    double t_lo, t_hi;

    double mass(double t) const { return measure_of(*mu, radial_ball(t), *dom); }
    double cap(double t) const { return cap_ball_analytic(dom->n, k, -t); }
};

struct GridFamily {
    const BorelMeasure* mu;
    const Domain* dom;
    double cx = 0.0, cy = 0.0;
    mutable std::map<double, double> cap_cache;

    double mass(double r) const {
        return measure_of(*mu, planar_disc(*dom, cx, cy, r), *dom);
    }
    double cap(double r) const {
        auto it = cap_cache.find(r);
        if (it != cap_cache.end()) return it->second;
        auto K = planar_disc(*dom, cx, cy, r);
        double c = 0.0;
        if (!K.empty) {
            auto u = grid_extremal_solve(*dom, K);
            auto m = hessian_measure(u, *dom, 1);
            c = mass_on(m, K, *dom);
        }
        cap_cache[r] = c;
        return c;
    }
};

}  // namespace

std::vector<NuSample> capacity_minimizing(const BorelMeasure& mu, const Domain& dom,
                                          int k, const std::vector<double>& s_grid) {
    require(!s_grid.empty(), "empty s grid");
    for (double s : s_grid)
        require(s > 0 && s < mu.total_mass,
                "each s must lie in (0, mu(Omega)); got " + std::to_string(s));
    std::vector<NuSample> out;
    out.reserve(s_grid.size());

    switch (dom.kind) {
        case DomainKind::RadialBall: {
            RadialFamily fam{&mu, &dom, k, dom.t_min * 0.5, -1e-9};
            double core = pluripolar_core_mass(mu);
            for (double s : s_grid) {
                NuSample ns;
                ns.s = s;
                if (core >= s) {
                    // shrinking balls around the atom: exact zero
                    ns.nu = 0.0;
                    ns.param = -kInf;
                    ns.set_id = "ball(shrinking)";
                    out.push_back(ns);
                    continue;
                }
                double lo = fam.t_lo, hi = fam.t_hi;
                require(fam.mass(hi) >= s, "family cannot reach the mass threshold");
                if (fam.mass(lo) >= s) {
                    ns.nu = fam.cap(lo);
                    ns.param = lo;
                } else {
                    for (int it = 0; it < 200; ++it) {
                        double mid = 0.5 * (lo + hi);
                        (fam.mass(mid) >= s ? hi : lo) = mid;
                    }
                    ns.nu = fam.cap(hi);
                    ns.param = hi;
                }
                ns.set_id = "ball";
                out.push_back(ns);
            }
            return out;
        }
        case DomainKind::ToricPolydisc: {
            require(k == dom.n, "toric backend supports k = n only");
            double lo = dom.t_min * 0.5, hi = -1e-9;
            for (double s : s_grid) {
                NuSample ns;
                ns.s = s;
                auto mass = [&](double c) {
                    return measure_of(mu, toric_polydisc_set(c, dom.n), dom);
                };
                require(mass(hi) >= s, "family cannot reach the mass threshold");
                double a = lo, b = hi;
                if (mass(a) >= s) {
                    b = a;
                } else {
                    for (int it = 0; it < 200; ++it) {
                        double mid = 0.5 * (a + b);
                        (mass(mid) >= s ? b : a) = mid;
                    }
                }
                ns.nu = std::pow(-b, -double(dom.n));
                ns.param = b;
                ns.set_id = "polydisc";
                out.push_back(ns);
            }
            return out;
        }
        case DomainKind::PlanarGrid: {
            GridFamily fam{&mu, &dom};
            // centroid of the splatted measure
            auto gw = splat_to_grid(mu, dom);
            double sx = 0, sy = 0, sm = 0;
            const auto& msh = dom.mesh;
            for (int j = 0; j < msh.nx; ++j)
                for (int i = 0; i < msh.nx; ++i) {
                    double w = gw.weights[msh.idx(i, j)];
                    sx += w * msh.x(i);
                    sy += w * msh.y(j);
                    sm += w;
                }
            if (sm > 0) {
                fam.cx = sx / sm;
                fam.cy = sy / sm;
            }
            double core = pluripolar_core_mass(mu);
            double rmax = 2.0;
            std::vector<double> rgrid = linspace(2.0 * msh.h, rmax, 48);
            for (double s : s_grid) {
                NuSample ns;
                ns.s = s;
                if (mu.charges_pluripolar && core >= s) {
                    ns.nu = 0.0;
                    ns.param = 0.0;
                    ns.set_id = "disc(shrinking)";
                    out.push_back(ns);
                    continue;
                }
                bool found = false;
                for (double r : rgrid)
                    if (fam.mass(r) >= s) {
                        ns.nu = fam.cap(r);
                        ns.param = r;
                        ns.set_id = "disc";
                        found = true;
                        break;
                    }
                require(found, "family cannot reach the mass threshold");
                out.push_back(ns);
            }
            return out;
        }
    }
    throw precondition_error("unknown backend");
}

TraceReport trace_constants(const BorelMeasure& mu, const Domain& dom, int k, double p,
                            double beta, double q, int s_per_decade, int decades) {
    require(p > 0, "p must be positive");
    if (beta > 0)
        require(q >= 1.0 && q <= double(dom.n + 1) / double(dom.n),
                "q outside [1, (n+1)/n]");
    TraceReport rep;
    rep.k = k;
    rep.p = p;
    rep.q = q;
    rep.beta = beta;

    double mass = mu.total_mass;
    require(mass > 0, "measure has no mass");
    auto s_grid = logspace(mass * std::pow(10.0, -decades), mass * (1.0 - 1e-9),
                           s_per_decade * decades);
    rep.nu_samples = capacity_minimizing(mu, dom, k, s_grid);

    bool any_zero = false;
    for (const auto& ns : rep.nu_samples)
        if (ns.nu <= 0) any_zero = true;

    if (any_zero) {
        rep.I_kp = {kInf, true, "nu = 0 on a positive-mass range (pluripolar charge)"};
        rep.I_n_beta = {kInf, true, "nu = 0 on a positive-mass range (pluripolar charge)"};
        rep.compactness_indicator = kInf;
        rep.compactness_to_zero = false;
        return rep;
    }

    const auto& S = rep.nu_samples;
    std::size_t N = S.size();

    // decade-wise trend of a sampled function of s: growth toward s -> 0
    auto decade_growth = [&](const std::vector<double>& vals, int ndec) {
        std::vector<double> dmax(ndec, 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            int d = int(i / std::size_t(s_per_decade));
            if (d < ndec) dmax[d] = std::max(dmax[d], vals[i]);
        }
        bool growing = true;
        for (int d = 0; d + 1 < ndec; ++d)
            if (!(dmax[d] > dmax[d + 1] * (1.0 + 1e-9))) growing = false;
        return growing;
    };

    if (p < double(k + 1)) {
        double e = p / (double(k + 1) - p);
        std::vector<double> f(N);
        for (std::size_t i = 0; i < N; ++i) f[i] = std::pow(S[i].s / S[i].nu, e);
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < N; ++i)
            integral += 0.5 * (f[i] + f[i + 1]) * (S[i + 1].s - S[i].s);
        // tail below the smallest decade, assuming a local power law
        double kappa = std::log(f[s_per_decade - 1] / std::max(f[0], 1e-300)) /
                       std::log(S[s_per_decade - 1].s / S[0].s);
        bool tail_ok = kappa > -1.0 + 1e-9;
        if (tail_ok) integral += f[0] * S[0].s / (kappa + 1.0);
        if (!tail_ok && decade_growth(f, std::min(3, decades))) {
            rep.I_kp = {kInf, true, "integrand grows monotonically over 3 decades"};
        } else {
            rep.I_kp = {integral, false, ""};
        }
    } else {
        std::vector<double> g(N);
        double sup = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            g[i] = S[i].s / std::pow(S[i].nu, p / double(k + 1));
            sup = std::max(sup, g[i]);
        }
        if (decade_growth(g, std::min(3, decades))) {
            rep.I_kp = {kInf, true, "sup quantity grows monotonically over 3 decades"};
        } else {
            rep.I_kp = {sup, false, ""};
        }
    }

    if (beta > 0) {
        require(k == dom.n, "Moser-Trudinger constants need k = n");
        std::vector<double> v(N, 0.0);
        double sup = 0.0;
        bool overflow = false;
        for (std::size_t i = 0; i < N; ++i) {
            double ex = beta / std::pow(S[i].nu, q / double(dom.n + 1));
            if (ex > 700.0) {
                overflow = true;
                v[i] = kInf;
                continue;
            }
            v[i] = S[i].s * std::exp(ex);
            sup = std::max(sup, v[i]);
        }
        if (overflow || decade_growth(v, std::min(3, decades))) {
            rep.I_n_beta = {kInf, true,
                            overflow ? "exponent overflow toward s -> 0"
                                     : "sup quantity grows monotonically over 3 decades"};
        } else {
            rep.I_n_beta = {sup, false, ""};
        }
    }

    // compactness indicator on the smallest decade
    std::vector<double> lc, ls;
    for (int i = 0; i < s_per_decade; ++i) {
        double c = S[i].s / std::pow(S[i].nu, p / double(k + 1));
        lc.push_back(std::log(std::max(c, 1e-300)));
        ls.push_back(std::log(S[i].s));
    }
    auto fit = fit_line(ls, lc);
    rep.compactness_indicator = std::exp(lc.front());
    rep.compactness_to_zero = fit.slope > 0.05;
    return rep;
}

namespace {

// breakpoints of t -> mu(K_t): distinct |values| of u plus measure atoms
std::vector<double> level_breakpoints(const PshFunction& u, const BorelMeasure& mu,
                                      double T) {
    std::vector<double> bps;
    if (u.kind == DomainKind::RadialBall) {
        for (double v : u.radial.v)
            if (-v > 0 && -v <= T) bps.push_back(-v);
        for (const auto& a : mu.atoms) {
            double rho = std::hypot(a.x, a.y);
            double tv = rho > 0 ? -u.radial.eval(std::log(rho)) : -u.radial.v.front();
            if (tv > 0 && tv <= T) bps.push_back(tv);
        }
    }
    bps.push_back(T);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
              bps.end());
    return bps;
}

// int_0^T w'(t) mu(K_t) dt by per-segment Gauss quadrature (layer cake)
double layer_cake(const PshFunction& u, const BorelMeasure& mu, const Domain& dom,
                  double T, const std::function<double(double)>& dweight) {
    auto bps = level_breakpoints(u, mu, T);
    auto muKt = [&](double t) {
        return measure_of(mu, level_set(u, dom, t), dom);
    };
    double s = 0.0, prev = 1e-12 * T;
    for (double b : bps) {
        if (b <= prev) continue;
        s += gauss_panel([&](double t) { return dweight(t) * muKt(t); }, prev, b);
        prev = b;
    }
    // [0, prev0] sliver: mu(K_t) is bounded by total mass
    s += gauss_panel([&](double t) { return dweight(t) * muKt(std::max(t, 1e-13)); },
                     0.0, 1e-12 * T);
    return s;
}

}  // namespace

FunctionalValues functional_values(const PshFunction& u, const BorelMeasure& mu,
                                   const Domain& dom, int k, double p, double beta,
                                   double q) {
    FunctionalValues fv;
    auto en = energy_and_norm(u, dom, k);
    require(en.norm > 0, "zero-norm candidate");
    fv.norm = en.norm;
    double T = u.sup_abs();

    if (dom.kind == DomainKind::PlanarGrid) {
        // direct nodal sums are exact on the grid backend
        BorelMeasure gw = splat_to_grid(mu, dom);
        double lp = 0.0;
        for (std::size_t i = 0; i < gw.weights.size(); ++i)
            lp += std::pow(-std::min(u.nodes[i], 0.0), p) * gw.weights[i];
        fv.lp_norm = std::pow(lp, 1.0 / p);
        if (beta > 0) {
            double mt = 0.0;
            bool over = false;
            for (std::size_t i = 0; i < gw.weights.size(); ++i) {
                double ex = beta * std::pow(-std::min(u.nodes[i], 0.0) / en.norm, q);
                if (ex > 700) { over = true; break; }
                mt += std::exp(ex) * gw.weights[i];
            }
            fv.mt_value = over ? Divergeable{kInf, true, "exponent overflow"}
                               : Divergeable{mt, false, ""};
        }
    } else {
        fv.lp_norm = std::pow(
            layer_cake(u, mu, dom, T,
                       [&](double t) { return p * std::pow(t, p - 1.0); }),
            1.0 / p);
        if (beta > 0) {
            require(q >= 1.0 && q <= double(dom.n + 1) / double(dom.n),
                    "q outside [1, (n+1)/n]");
            double exT = beta * std::pow(T / en.norm, q);
            if (exT > 700) {
                fv.mt_value = {kInf, true, "exponent overflow at the deepest level"};
            } else {
                double val = mu.total_mass +
                             layer_cake(u, mu, dom, T, [&](double t) {
                                 double z = std::pow(t / en.norm, q);
                                 return beta * q / t * z * std::exp(beta * z);
                             });
                fv.mt_value = {val, false, ""};
            }
        }
    }
    fv.sobolev_ratio = fv.lp_norm / en.norm;

    if (k == dom.n && beta > 0) {
        fv.ma_mass = total_mass_ma(u, dom);
        double nq = double(dom.n) * q / double(dom.n + 1);
        double Mn = std::pow(fv.ma_mass, 1.0 / double(dom.n));
        double exT = beta * std::pow(T / Mn, nq);
        if (exT > 700) {
            fv.bm_value = {kInf, true, "exponent overflow at the deepest level"};
        } else if (dom.kind == DomainKind::PlanarGrid) {
            BorelMeasure gw = splat_to_grid(mu, dom);
            double bm = 0.0;
            for (std::size_t i = 0; i < gw.weights.size(); ++i)
                bm += std::exp(beta * std::pow(-std::min(u.nodes[i], 0.0) / Mn, nq)) *
                      gw.weights[i];
            fv.bm_value = {bm, false, ""};
        } else {
            double val = mu.total_mass +
                         layer_cake(u, mu, dom, T, [&](double t) {
                             double z = std::pow(t / Mn, nq);
                             return beta * nq / t * z * std::exp(beta * z);
                         });
            fv.bm_value = {val, false, ""};
        }
    }
    return fv;
}

namespace {

// Cap_k of the level set K_t for a radial candidate, analytic in the hull radius
double radial_levelset_cap(const PshFunction& u, const Domain& dom, int k, double t) {
    auto K = level_set(u, dom, t);
    if (K.empty) return 0.0;
    double tau = intervals_sup(K.radial);
    if (tau >= 0) return 0.0;
    return cap_ball_analytic(dom.n, k, -tau);
}

}  // namespace

WeakStrongReport weak_strong_check(const PshFunction& u, const Domain& dom, int k,
                                   double A, int n_t) {
    require(A > 1.0, "strong inequality needs A > 1");
    WeakStrongReport rep;
    auto en = energy_and_norm(u, dom, k);
    rep.norm_pow = en.energy;  // ||u||^{k+1}
    double T = u.sup_abs();
    rep.strong_bound = std::pow(A / (A - 1.0), double(k + 1)) * std::log(A) * en.energy;
    if (T <= 0 || en.energy <= 0) {
        rep.pass_weak = rep.pass_strong = true;  // vacuous for u == 0
        return rep;
    }

    if (dom.kind == DomainKind::RadialBall) {
        // segment endpoints: distinct levels of the profile
        std::vector<double> bps;
        for (double v : u.radial.v)
            if (-v > 0 && -v <= T) bps.push_back(-v);
        bps.push_back(T);
        bps.push_back(1e-9 * T);
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end(),
                              [](double a, double b) { return std::fabs(a - b) < 1e-15; }),
                  bps.end());
        double prev = 0.0;
        const auto& g = GaussRule::get();
        for (double b : bps) {
            if (b <= prev) continue;
            // weak: sample the ratio at panel nodes and endpoints
            for (int i = 0; i < GaussRule::npts + 2; ++i) {
                double t = (i < GaussRule::npts)
                               ? 0.5 * (prev + b) + 0.5 * (b - prev) * g.x[i]
                               : (i == GaussRule::npts ? std::max(prev, 1e-12 * T) : b);
                double cap = radial_levelset_cap(u, dom, k, t);
                double ratio = std::pow(t, double(k + 1)) * cap / en.energy;
                if (ratio > rep.weak_max_ratio) {
                    rep.weak_max_ratio = ratio;
                    rep.weak_argmax = t;
                }
            }
            rep.strong_lhs += gauss_panel(
                [&](double t) {
                    return std::pow(t, double(k)) * radial_levelset_cap(u, dom, k, t);
                },
                prev, b);
            prev = b;
        }
    } else if (dom.kind == DomainKind::PlanarGrid) {
        auto t_grid = logspace(1e-3 * T, T, n_t);
        std::vector<double> caps(t_grid.size(), 0.0);
        parallel_for(t_grid.size(), [&](std::size_t i) {
            auto K = level_set(u, dom, t_grid[i]);
            if (K.empty) return;
            auto us = grid_extremal_solve(dom, K);
            auto ms = hessian_measure(us, dom, 1);
            caps[i] = mass_on(ms, K, dom);
        });
        double prev = 0.0, prev_cap;
        {
            auto K0 = level_set(u, dom, 1e-6 * T);
            if (K0.empty) {
                prev_cap = 0.0;
            } else {
                auto us = grid_extremal_solve(dom, K0);
                auto ms = hessian_measure(us, dom, 1);
                prev_cap = mass_on(ms, K0, dom);
            }
        }
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            double t = t_grid[i];
            double ratio = std::pow(t, double(k + 1)) * caps[i] / en.energy;
            if (ratio > rep.weak_max_ratio) {
                rep.weak_max_ratio = ratio;
                rep.weak_argmax = t;
            }
            // upper Riemann sum: Cap is nonincreasing in t
            rep.strong_lhs += prev_cap *
                              (std::pow(t, double(k + 1)) - std::pow(prev, double(k + 1))) /
                              double(k + 1);
            prev = t;
            prev_cap = caps[i];
        }
    } else {
        throw precondition_error("weak/strong check: unsupported backend");
    }

    rep.strong_ratio = rep.strong_lhs / en.energy;
    rep.pass_weak = rep.weak_max_ratio <= 1.0 + 1e-8;
    rep.pass_strong = rep.strong_lhs <= rep.strong_bound * (1.0 + 1e-8);
    return rep;
}

DyadicReport dyadic_sum(const PshFunction& u, const BorelMeasure& mu, const Domain& dom,
                        int k, double p, const Divergeable& I_kp) {
    require(p > 0 && p < double(k + 1), "dyadic sum needs 0 < p < k+1");
    DyadicReport rep;
    double T = u.sup_abs();
    if (T <= 0) {
        rep.pass = true;
        return rep;
    }
    double e1 = double(k + 1) / (double(k + 1) - p);
    double e2 = p / (double(k + 1) - p);
    int j_max = int(std::floor(std::log2(T * (1.0 - 1e-12))));
    auto muK = [&](double t) { return measure_of(mu, level_set(u, dom, t), dom); };
    auto capK = [&](double t) {
        if (dom.kind == DomainKind::RadialBall) return radial_levelset_cap(u, dom, k, t);
        auto K = level_set(u, dom, t);
        if (K.empty) return 0.0;
        auto us = grid_extremal_solve(dom, K);
        auto ms = hessian_measure(us, dom, 1);
        return mass_on(ms, K, dom);
    };
    for (int j = j_max; j >= j_max - 80; --j) {
        double tj = std::pow(2.0, j);
        double diff = muK(tj) - muK(2.0 * tj);
        if (diff <= 0) continue;
        double cap = capK(tj);
        if (cap <= 0) continue;
        double term = std::pow(diff, e1) / std::pow(cap, e2);
        rep.S += term;
        ++rep.terms;
        if (term < 1e-16 * rep.S && j < 0) break;
    }
    if (!I_kp.divergent) {
        rep.bound = e1 * I_kp.value;
        rep.bound_applicable = true;
        rep.pass = rep.S <= rep.bound * (1.0 + 1e-9);
    } else {
        rep.pass = true;  // no finite bound to check against
    }
    return rep;
}

WitnessReport witness_family(const BorelMeasure& mu, const Domain& dom, int k, double p,
                             int j_lo, int j_hi) {
    require(p > 0 && p < double(k + 1), "witness family needs 0 < p < k+1");
    require(j_lo <= j_hi, "empty dyadic range");
    require(dom.kind == DomainKind::RadialBall, "witness family is radial");
    WitnessReport rep;

    std::vector<PshFunction> members;
    double core = pluripolar_core_mass(mu);
    for (int j = j_hi; j >= j_lo; --j) {
        double s = std::pow(2.0, j);
        if (s >= mu.total_mass) continue;
        WitnessLevel lvl;
        lvl.j = j;
        double tj;
        if (core >= s) {
            // nu = 0: shrinking-ball schedule; capacities decay geometrically
            double L = std::pow(5.0, double(j_hi - j)) * 1.0;
            require(2.0 * L <= -dom.t_min,
                    "witness schedule needs a deeper radial domain (raise |t_min|)");
            tj = -L;
        } else {
            auto nus = capacity_minimizing(mu, dom, k, {s});
            tj = nus[0].param;
        }
        lvl.mass = measure_of(mu, radial_ball(tj), dom);
        lvl.cap = cap_ball_analytic(dom.n, k, -tj);
        lvl.gamma = std::pow(s / lvl.cap, 1.0 / (double(k + 1) - p));
        auto uj = (k == dom.n) ? radial_cone(dom, tj)
                               : extremal_function(radial_ball(tj), dom, k);
        auto fv = functional_values(uj, mu, dom, k, p, 0.0, 1.0);
        lvl.ratio = fv.sobolev_ratio;
        rep.levels.push_back(lvl);
        members.push_back(scale(uj, lvl.gamma));
    }
    require(!rep.levels.empty(), "witness family is empty for this measure");

    auto usup = radial_sup(dom, members);
    auto fv = functional_values(usup, mu, dom, k, p, 0.0, 1.0);
    rep.sup_ratio = fv.sobolev_ratio;

    for (std::size_t i = 0; i + 1 < rep.levels.size(); ++i) {
        // levels are ordered j descending; deeper levels should grow
        double growth = rep.levels[i + 1].ratio / std::max(rep.levels[i].ratio, 1e-300);
        rep.min_growth = std::min(rep.min_growth, growth);
    }
    if (rep.levels.size() < 2) rep.min_growth = 1.0;
    rep.divergence_witnessed = rep.levels.size() >= 4 && rep.min_growth >= 2.0;
    return rep;
}

IsocapScan isocapacitary_scan(const std::vector<double>& radii, const BorelMeasure& mu,
                              const Domain& dom, int k, IsocapForm form,
                              double lambda_or_exponent) {
    require(!radii.empty(), "empty scan family");
    require(dom.kind == DomainKind::RadialBall, "scan family is radial");
    IsocapScan sc;
    sc.radii = radii;
    std::vector<double> lr, lv;
    for (double r : radii) {
        require(r > 0 && r < 1, "scan radius must lie in (0,1)");
        double L = std::log(1.0 / r);
        double m = measure_of(mu, radial_ball(-L), dom);
        double c = cap_ball_analytic(dom.n, k, L);
        double v;
        if (form == IsocapForm::Power) {
            v = m / std::pow(c, lambda_or_exponent);
        } else {
            require(k == dom.n, "exponential scan needs k = n");
            double ex = lambda_or_exponent / std::pow(c, 1.0 / double(dom.n));
            v = (ex > 700) ? kInf : m * std::exp(ex);
        }
        sc.mass.push_back(m);
        sc.cap.push_back(c);
        sc.value.push_back(v);
        if (v > sc.sup_value) {
            sc.sup_value = v;
            sc.argsup_r = r;
        }
        if (v > 0 && std::isfinite(v)) {
            lr.push_back(std::log(r));
            lv.push_back(std::log(v));
        }
    }
    if (lr.size() >= 2) {
        auto fit = fit_line(lr, lv);
        sc.fitted_exponent = fit.slope;
        sc.limit_r_to_1 = std::exp(fit.intercept);
    }
    // divergence trend: values increase monotonically toward the smallest radius
    std::vector<std::size_t> order(radii.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });
    std::size_t half = order.size() / 2;
    sc.divergent_trend = order.size() >= 4;
    for (std::size_t i = half; i + 1 < order.size(); ++i)
        if (!(sc.value[order[i + 1]] > sc.value[order[i]] * (1.0 + 1e-12)))
            sc.divergent_trend = false;
    return sc;
}

}  // namespace hcl
