#pragma once

// Symmetric classical random walk on the cycle, evolved exactly (no sampling):
//     dist'[n] = (dist[n-1] + dist[n+1]) / 2
// Used as the contrast case: for odd N its finite-T temporal deviation decays to zero.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "hwalk/errors.hpp"
#include "hwalk/statistics.hpp"
#include "hwalk/walk.hpp"

namespace hwalk {

struct ClassicalChain {
    std::size_t sites = 0;
    std::vector<double> dist;
    std::uint64_t time = 0;

    static ClassicalChain point_mass(std::size_t sites, std::size_t site = 0) {
        detail::require_sites(sites, 3, "ClassicalChain");
        detail::require_site(site, sites, "ClassicalChain");
        ClassicalChain c;
        c.sites = sites;
        c.dist.assign(sites, 0.0);
        c.dist[site] = 1.0;
        return c;
    }

    double total() const noexcept {
        double s = 0.0;
        for (double p : dist) s += p;
        return s;
    }
};

inline ClassicalChain classical_step(const ClassicalChain& chain) {
    const std::size_t n_sites = chain.sites;
    ClassicalChain next;
    next.sites = n_sites;
    next.time = chain.time + 1;
    next.dist.resize(n_sites);
    for (std::size_t n = 0; n < n_sites; ++n) {
        const std::size_t up = (n + 1 == n_sites) ? 0 : n + 1;
        const std::size_t down = (n == 0) ? n_sites - 1 : n - 1;
        next.dist[n] = 0.5 * (chain.dist[down] + chain.dist[up]);
    }
    return next;
}

/// Finite-T deviation profile from a point mass at site 0. Odd N measures against the
/// exact limit 1/N; even N (a period-2 chain) against the run's own mean.
inline SigmaProfile classical_sigma_profile(std::size_t sites, std::uint64_t steps) {
    if (steps < 1) throw DomainError("classical_empirical_sigma: T must be >= 1");
    ClassicalChain chain = ClassicalChain::point_mass(sites);
    const double uniform = 1.0 / static_cast<double>(sites);
    const bool odd = sites % 2 == 1;

    std::vector<double> mean(sites, 0.0), m2(sites, 0.0), dev2(sites, 0.0);
    for (std::uint64_t t = 0; t < steps; ++t) {
        const double count = static_cast<double>(t + 1);
        for (std::size_t n = 0; n < sites; ++n) {
            const double p = chain.dist[n];
            const double delta = p - mean[n];
            mean[n] += delta / count;
            m2[n] += delta * (p - mean[n]);
            dev2[n] += (p - uniform) * (p - uniform);
        }
        chain = classical_step(chain);
    }

    SigmaProfile prof;
    prof.sites = sites;
    prof.method = SigmaMethod::empirical;
    prof.steps = steps;
    for (std::size_t n = 0; n < sites; ++n) {
        const double var = (odd ? dev2[n] : m2[n]) / static_cast<double>(steps);
        prof.values.push_back(std::sqrt(var));
    }
    return prof;
}

inline double classical_empirical_sigma(std::size_t sites, std::uint64_t steps, std::size_t n) {
    detail::require_site(n, sites, "classical_empirical_sigma");
    return classical_sigma_profile(sites, steps).values[n];
}

/// Measured envelope constants for |P(n,t) - 1/N| <= C a^t (odd N).
struct GeometricDecay {
    double slope = 0.0;  // d/dt log of the tail-sup deviation
    double rate = 0.0;   // a = exp(slope)
    double prefactor = 0.0;  // C = exp(intercept)
};

/// Least-squares fit of log(sup_{t' >= t} max_n |P(n,t') - 1/N|) over t in [t_begin, t_end].
/// Samples that have hit exact zero (below double resolution) are left out of the fit.
inline GeometricDecay fit_geometric_decay(std::size_t sites, std::uint64_t t_begin, std::uint64_t t_end) {
    detail::require_odd(sites, "fit_geometric_decay");
    if (t_end <= t_begin) throw DomainError("fit_geometric_decay: empty window");
    const double uniform = 1.0 / static_cast<double>(sites);
    ClassicalChain chain = ClassicalChain::point_mass(sites);

    std::vector<double> dev(t_end + 1, 0.0);
    for (std::uint64_t t = 0; t <= t_end; ++t) {
        double worst = 0.0;
        for (double p : chain.dist) worst = std::max(worst, std::abs(p - uniform));
        dev[t] = worst;
        chain = classical_step(chain);
    }
    for (std::uint64_t t = t_end; t-- > 0;) dev[t] = std::max(dev[t], dev[t + 1]);

    double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
    for (std::uint64_t t = t_begin; t <= t_end; ++t) {
        if (dev[t] <= std::numeric_limits<double>::min()) continue;
        const double x = static_cast<double>(t), y = std::log(dev[t]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; count += 1;
    }
    if (count < 2) throw DomainError("fit_geometric_decay: fewer than two non-zero samples");
    GeometricDecay fit;
    fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.rate = std::exp(fit.slope);
    fit.prefactor = std::exp((sy - fit.slope * sx) / count);
    return fit;
}

}  // namespace hwalk
