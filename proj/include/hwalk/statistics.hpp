#pragma once

// Time-averaged site probabilities and temporal standard deviations.
//
//   Pbar(n)    = lim (1/T) sum_{t<T} P(n, t)
//   sigma(n)^2 = lim (1/T) sum_{t<T} (P(n, t) - Pbar(n))^2
//
// Several independent routes are provided:
//   * finite-T simulation (any N, any start),
//   * the single-sum closed form for odd N and the canonical start,
//   * the specialised n = 0 form and its large-N expansion,
//   * explicit alpha-dependent values for N = 3,
//   * brute-force enumeration of resonant eigenphase quadruples (odd N, small N).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hwalk/errors.hpp"
#include "hwalk/spectral.hpp"
#include "hwalk/walk.hpp"

namespace hwalk {

inline constexpr std::uint64_t default_steps = 10000;
inline constexpr double default_angle_tolerance = 1e-9;
/// Variances in [-radicand_slack, 0) are rounding noise and clamp to 0.
inline constexpr double radicand_slack = 1e-12;
/// Largest N accepted by the O((2N)^4) resonance enumeration.
inline constexpr std::size_t resonance_max_sites = 15;

enum class SigmaMethod { exact, empirical, resonance_oracle, asymptotic, sigma3_alpha };

constexpr std::string_view to_string(SigmaMethod m) noexcept {
    switch (m) {
        case SigmaMethod::exact: return "exact";
        case SigmaMethod::empirical: return "empirical";
        case SigmaMethod::resonance_oracle: return "resonance";
        case SigmaMethod::asymptotic: return "asymptotic";
        case SigmaMethod::sigma3_alpha: return "sigma3-alpha";
    }
    return "unknown";
}

/// Which mean the finite-T deviation is measured from.
enum class MeanMode {
    run_mean,       // the same run's finite-T average (valid for any N and start)
    exact_uniform,  // 1/N, the exact limit for odd N
};

struct SigmaProfile {
    std::size_t sites = 0;
    SigmaMethod method = SigmaMethod::exact;
    double alpha = 1.0;
    std::optional<std::uint64_t> steps;  // empirical only
    std::vector<double> values;
};

namespace detail {

inline double sigma_from_variance(double variance, const char* op) {
    if (variance < -radicand_slack) {
        throw ConsistencyError(std::string(op) + ": negative variance " + std::to_string(variance));
    }
    return variance <= 0.0 ? 0.0 : std::sqrt(variance);
}

/// cos(2 pi p / N) with p reduced mod N.
inline double cos_turns(std::ptrdiff_t p, std::size_t sites) {
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(wrap(p, sites)) /
                    static_cast<double>(sites));
}

struct RunMoments {
    std::vector<double> mean;
    std::vector<double> run_variance;      // about the run mean
    std::vector<double> uniform_variance;  // about 1/N
};

/// One trajectory of T samples (t = 0..T-1) serves every site.
inline RunMoments run_moments(const WalkConfig& config, std::uint64_t steps) {
    if (steps < 1) throw DomainError("finite-T statistics need T >= 1");
    Walker w(build_initial_state(config));
    const std::size_t sites = w.sites();
    const double uniform = 1.0 / static_cast<double>(sites);

    RunMoments m;
    m.mean.assign(sites, 0.0);
    std::vector<double> m2(sites, 0.0);
    std::vector<double> dev2(sites, 0.0);
    for (std::uint64_t t = 0; t < steps; ++t) {
        const double count = static_cast<double>(t + 1);
        for (std::size_t n = 0; n < sites; ++n) {
            const double p = w.probability(n);
            const double delta = p - m.mean[n];
            m.mean[n] += delta / count;
            m2[n] += delta * (p - m.mean[n]);
            dev2[n] += (p - uniform) * (p - uniform);
        }
        w.advance();
    }
    const double total = static_cast<double>(steps);
    m.run_variance.resize(sites);
    m.uniform_variance.resize(sites);
    for (std::size_t n = 0; n < sites; ++n) {
        m.run_variance[n] = m2[n] / total;
        m.uniform_variance[n] = dev2[n] / total;
    }
    return m;
}

}  // namespace detail

inline SiteDistribution time_averaged_distribution(const WalkConfig& config, std::uint64_t steps) {
    return SiteDistribution{detail::run_moments(config, steps).mean};
}

inline SigmaProfile empirical_sigma_profile(const WalkConfig& config, std::uint64_t steps,
                                            MeanMode mode = MeanMode::run_mean) {
    config.validate();
    if (mode == MeanMode::exact_uniform) detail::require_odd(config.sites, "empirical_sigma");
    const auto m = detail::run_moments(config, steps);
    const auto& var = mode == MeanMode::run_mean ? m.run_variance : m.uniform_variance;

    SigmaProfile p;
    p.sites = config.sites;
    p.method = SigmaMethod::empirical;
    p.alpha = config.alpha;
    p.steps = steps;
    p.values.reserve(var.size());
    for (double v : var) p.values.push_back(std::sqrt(v));
    return p;
}

inline double empirical_sigma(const WalkConfig& config, std::uint64_t steps, std::size_t n,
                              MeanMode mode = MeanMode::run_mean) {
    detail::require_site(n, config.sites, "empirical_sigma");
    return empirical_sigma_profile(config, steps, mode).values[n];
}

/// The five trigonometric sums over theta_j = 4 pi j / N. s2 starts at j = 1, the others at 0.
struct TrigSums {
    double s0 = 0.0;
    double s1 = 0.0;
    double s_plus = 0.0;
    double s_minus = 0.0;
    double s2 = 0.0;
    std::vector<double> theta;
};

inline TrigSums trig_sums(std::size_t sites, std::size_t n) {
    detail::require_sites(sites, 3, "trig_sums");
    detail::require_odd(sites, "trig_sums");
    detail::require_site(n, sites, "trig_sums");

    const auto nn = static_cast<std::ptrdiff_t>(n);
    TrigSums s;
    s.theta.reserve(sites);
    for (std::size_t j = 0; j < sites; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        // Every angle is a multiple of 2 pi / N; reduce the integer multiple first.
        const double c = detail::cos_turns(2 * jj, sites);
        const double c2 = detail::cos_turns(4 * jj, sites);
        const double c_prev = detail::cos_turns(2 * jj * (nn - 1), sites);
        const double c_here = detail::cos_turns(2 * jj * nn, sites);
        const double c_half = detail::cos_turns(jj * (2 * nn - 1), sites);
        const double d = 3.0 + c;

        s.theta.push_back(2.0 * std::numbers::pi * static_cast<double>(wrap(2 * jj, sites)) /
                          static_cast<double>(sites));
        s.s0 += 1.0 / d;
        s.s1 += c / d;
        s.s_plus += (c_prev + c_here) / d;
        s.s_minus += (c_prev - c_here) / d;
        if (j >= 1) s.s2 += (7.0 + c2 + 8.0 * c * c_half * c_half) / (d * d);
    }
    return s;
}

inline double closed_form_variance(std::size_t sites, std::size_t n) {
    const TrigSums s = trig_sums(sites, n);
    const double nd = static_cast<double>(sites);
    const double bracket = 2.0 * (s.s_plus * s.s_plus + s.s_minus * s.s_minus) +
                           11.0 * s.s0 * s.s0 + 10.0 * s.s0 * s.s1 + 3.0 * s.s1 * s.s1 - s.s2;
    return bracket / (nd * nd * nd * nd) - 2.0 / (nd * nd * nd);
}

/// Exact sigma_N(n) for odd N from the canonical start.
inline double closed_form_sigma(std::size_t sites, std::size_t n) {
    return detail::sigma_from_variance(closed_form_variance(sites, n), "closed_form_sigma");
}

inline SigmaProfile closed_form_profile(std::size_t sites) {
    SigmaProfile p;
    p.sites = sites;
    p.method = SigmaMethod::exact;
    p.alpha = 1.0;
    for (std::size_t n = 0; n < sites; ++n) p.values.push_back(closed_form_sigma(sites, n));
    return p;
}

/// sigma_N(0) through the specialised n = 0 single-sum form.
inline double sigma_origin(std::size_t sites) {
    detail::require_sites(sites, 3, "sigma_origin");
    detail::require_odd(sites, "sigma_origin");
    double lin = 0.0, inv = 0.0, mix = 0.0, tail = 0.0;
    for (std::size_t j = 0; j < sites; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        const double c = detail::cos_turns(2 * jj, sites);
        const double c2 = detail::cos_turns(4 * jj, sites);
        const double d = 3.0 + c;
        lin += 7.0 * c / d;
        inv += 1.0 / d;
        mix += (15.0 - 11.0 * c) / d;
        if (j >= 1) tail += (9.0 + 4.0 * c + 3.0 * c2) / (d * d);
    }
    const double nd = static_cast<double>(sites);
    const double variance = (lin - 2.0) / (nd * nd * nd) + (inv * mix - tail) / (nd * nd * nd * nd);
    return detail::sigma_from_variance(variance, "sigma_origin");
}

/// Large-N expansion: sigma_N(0)^2 ~ (13 - 8 sqrt2)/N^2 + (7 sqrt2 - 16)/(2 N^3).
inline double asymptotic_sigma_origin(std::size_t sites) {
    detail::require_sites(sites, 3, "asymptotic_sigma_origin");
    detail::require_odd(sites, "asymptotic_sigma_origin");
    const double nd = static_cast<double>(sites);
    const double r2 = std::numbers::sqrt2;
    const double radicand = (13.0 - 8.0 * r2) / (nd * nd) + (7.0 * r2 - 16.0) / (2.0 * nd * nd * nd);
    if (radicand < 0.0) throw DomainError("asymptotic_sigma_origin: negative radicand");
    return std::sqrt(radicand);
}

/// Explicit sigma_3(n, alpha) for the start L_0 = alpha, R_0 = i sqrt(1 - alpha^2).
inline double sigma3_alpha(std::size_t n, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("sigma3_alpha: alpha must lie in [0, 1] (got " + std::to_string(alpha) + ")");
    }
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2;
    switch (n) {
        case 0: return 2.0 * std::sqrt(46.0) / 45.0;
        case 1: return 2.0 / 45.0 * std::sqrt(96.0 * a4 - 75.0 * a2 + 25.0);
        case 2: return 2.0 / 45.0 * std::sqrt(96.0 * a4 - 117.0 * a2 + 46.0);
        default:
            throw DomainError("sigma3_alpha: site must be 0, 1 or 2 (got " + std::to_string(n) + ")");
    }
}

inline SigmaProfile sigma3_alpha_profile(double alpha) {
    SigmaProfile p;
    p.sites = 3;
    p.method = SigmaMethod::sigma3_alpha;
    p.alpha = alpha;
    for (std::size_t n = 0; n < 3; ++n) p.values.push_back(sigma3_alpha(n, alpha));
    return p;
}

/// (1/N) sum_j f(theta_j) for the five integrands whose N -> infinity limits feed the
/// asymptotic expansion.
struct TrigAverages {
    double inv = 0.0;           // 1/(3+cos)
    double cos_over = 0.0;      // cos/(3+cos)
    double inv_sq = 0.0;        // 1/(3+cos)^2
    double cos_over_sq = 0.0;   // cos/(3+cos)^2
    double cos2_over_sq = 0.0;  // cos(2 theta)/(3+cos)^2
};

inline TrigAverages trig_averages(std::size_t sites) {
    detail::require_sites(sites, 1, "trig_averages");
    TrigAverages a;
    for (std::size_t j = 0; j < sites; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        const double c = detail::cos_turns(2 * jj, sites);
        const double c2 = detail::cos_turns(4 * jj, sites);
        const double d = 3.0 + c;
        a.inv += 1.0 / d;
        a.cos_over += c / d;
        a.inv_sq += 1.0 / (d * d);
        a.cos_over_sq += c / (d * d);
        a.cos2_over_sq += c2 / (d * d);
    }
    const double nd = static_cast<double>(sites);
    a.inv /= nd;
    a.cos_over /= nd;
    a.inv_sq /= nd;
    a.cos_over_sq /= nd;
    a.cos2_over_sq /= nd;
    return a;
}

inline TrigAverages trig_average_limits() {
    const double r2 = std::numbers::sqrt2;
    return {1.0 / (2.0 * r2), 1.0 - 3.0 / (2.0 * r2), 3.0 / (16.0 * r2), -1.0 / (16.0 * r2),
            2.0 - 45.0 / (16.0 * r2)};
}

// ---------------------------------------------------------------------------------------
// Resonance enumeration
//
// P(n,t) - 1/N = sum_{a != b} w_ab exp(i (theta_a - theta_b) t), w_ab = alpha_a alpha_b* + beta_a beta_b*
// so the time average of its square keeps exactly the quadruples (a, b, c, d) with
// a != b, c != d and theta_a - theta_b + theta_c - theta_d = 0 (mod 2 pi).

/// Flat mode indices (a, b, c, d), see Mode::flat().
using ModeQuad = std::array<std::size_t, 4>;

struct ResonanceTerm {
    std::array<Mode, 4> modes;
    double delta_theta = 0.0;  // reduced into (-pi, pi]
    cplx weight;               // w_ab * w_cd
    int exclusion = 1;         // delta_{ab} * delta_{cd}; 0 never survives
};

namespace detail {

/// Reduce an angle into (-pi, pi].
inline double reduce_angle(double x) {
    double r = std::remainder(x, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
    return r;
}

inline void require_resonance_domain(std::size_t sites, const char* op) {
    detail::require_sites(sites, 3, op);
    detail::require_odd(sites, op);
    if (sites > resonance_max_sites) {
        throw DomainError(std::string(op) + ": enumeration is limited to N <= " +
                          std::to_string(resonance_max_sites) + " (got " + std::to_string(sites) + ")");
    }
}

template <class Visit>
void for_each_resonance(std::size_t sites, double tol, Visit&& visit) {
    const Spectrum spec = compute_spectrum(sites, false);
    const std::size_t m = spec.size();
    const auto& th = spec.arguments;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t d = 0; d < m; ++d) {
                    if (c == d) continue;
                    const double dt = reduce_angle(th[a] - th[b] + th[c] - th[d]);
                    if (std::abs(dt) < tol) visit(ModeQuad{a, b, c, d}, dt);
                }
        }
}

}  // namespace detail

/// Every resonant quadruple, found numerically. Depends on N only, not on the site.
inline std::set<ModeQuad> resonant_index_set(std::size_t sites, double tol = default_angle_tolerance) {
    detail::require_resonance_domain(sites, "resonant_index_set");
    std::set<ModeQuad> out;
    detail::for_each_resonance(sites, tol, [&](const ModeQuad& q, double) { out.insert(q); });
    return out;
}

/// Quadruples generated from each (a, b), a != b, by the eigenvalue reflection rules:
///   (a) c = conj-partner of a, d = conj-partner of b
///   (b) c = mirror of a,       d = mirror of b
///   (c) c = antipode of b,     d = antipode of a
///   (d) c = b,                 d = a
/// where conj-partner(j,k) = (N-j, k), mirror(j,k) = (j, 1-k), antipode(j,k) = (N-j, 1-k).
/// With include_antipodal_pairs, also every (a, antipode(a), c, antipode(c)): two
/// origin-symmetric pairs always resonate, and rules (a)-(d) alone miss those.
inline std::set<ModeQuad> rule_generated_index_set(std::size_t sites, bool include_antipodal_pairs = true) {
    detail::require_sites(sites, 3, "rule_generated_index_set");
    const auto flat = [](std::size_t j, int k) { return Mode{j, k}.flat(); };
    const auto neg = [sites](std::size_t j) { return wrap(-static_cast<std::ptrdiff_t>(j), sites); };

    std::set<ModeQuad> out;
    const std::size_t m = 2 * sites;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            const Mode A = Mode::from_flat(a), B = Mode::from_flat(b);
            out.insert({a, b, flat(neg(A.j), A.k), flat(neg(B.j), B.k)});
            out.insert({a, b, flat(A.j, 1 - A.k), flat(B.j, 1 - B.k)});
            out.insert({a, b, flat(neg(B.j), 1 - B.k), flat(neg(A.j), 1 - A.k)});
            out.insert({a, b, b, a});
        }
    if (include_antipodal_pairs) {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t c = 0; c < m; ++c) {
                const Mode A = Mode::from_flat(a), C = Mode::from_flat(c);
                out.insert({a, flat(neg(A.j), 1 - A.k), c, flat(neg(C.j), 1 - C.k)});
            }
    }
    return out;
}

inline std::vector<ResonanceTerm> resonant_terms(std::size_t sites, std::size_t n,
                                                 double tol = default_angle_tolerance) {
    detail::require_resonance_domain(sites, "resonant_terms");
    detail::require_site(n, sites, "resonant_terms");
    const auto coeffs = fourier_table(sites, n);
    const std::size_t m = coeffs.size();
    std::vector<cplx> w(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            w[a * m + b] = coeffs[a].alpha * std::conj(coeffs[b].alpha) +
                           coeffs[a].beta * std::conj(coeffs[b].beta);

    std::vector<ResonanceTerm> terms;
    detail::for_each_resonance(sites, tol, [&](const ModeQuad& q, double dt) {
        ResonanceTerm t;
        for (std::size_t i = 0; i < 4; ++i) t.modes[i] = Mode::from_flat(q[i]);
        t.delta_theta = dt;
        t.weight = w[q[0] * m + q[1]] * w[q[2] * m + q[3]];
        terms.push_back(t);
    });
    return terms;
}

/// sigma_N(n) as the sum of all resonant quadruple weights. Independent of the closed form.
inline double resonance_sigma(std::size_t sites, std::size_t n, double tol = default_angle_tolerance) {
    double variance = 0.0;
    for (const auto& t : resonant_terms(sites, n, tol)) variance += t.weight.real();
    return detail::sigma_from_variance(variance, "resonance_sigma");
}

inline SigmaProfile resonance_profile(std::size_t sites, double tol = default_angle_tolerance) {
    SigmaProfile p;
    p.sites = sites;
    p.method = SigmaMethod::resonance_oracle;
    p.alpha = 1.0;
    for (std::size_t n = 0; n < sites; ++n) p.values.push_back(resonance_sigma(sites, n, tol));
    return p;
}

}  // namespace hwalk
