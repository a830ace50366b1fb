#pragma once

// Command implementations behind the `hwalk` executable. Each command validates its
// RunSpec up front and returns a Table; argument parsing and file output live in tools/.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwalk/classical.hpp"
#include "hwalk/cli/table.hpp"
#include "hwalk/errors.hpp"
#include "hwalk/spectral.hpp"
#include "hwalk/statistics.hpp"
#include "hwalk/walk.hpp"

namespace hwalk::cli {

/// Relative error above which an asymptote row is reported as out of regime.
inline constexpr double asymptote_regime_threshold = 0.05;

struct RunSpec {
    std::string command;
    std::vector<std::size_t> sites;
    std::optional<std::size_t> site;
    double alpha = 1.0;
    std::uint64_t steps = default_steps;
    std::string method = "exact";
    std::size_t points = 11;
    std::string out;
    Format format = Format::csv;
};

/// Raised for flag combinations rejected before any computation.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline std::size_t single_size(const RunSpec& s, std::size_t minimum) {
    if (s.sites.size() != 1) {
        throw UsageError(s.command + ": --sites takes exactly one value");
    }
    const std::size_t n = s.sites.front();
    if (n < minimum) {
        throw UsageError(s.command + ": --sites must be >= " + std::to_string(minimum) + " (got " +
                         std::to_string(n) + ")");
    }
    return n;
}

inline void check_common(const RunSpec& s) {
    if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) {
        throw UsageError(s.command + ": --alpha must lie in [0, 1] (got " + format_double(s.alpha) + ")");
    }
    if (s.steps < 1) throw UsageError(s.command + ": --steps must be >= 1");
}

inline void check_site(const RunSpec& s, std::size_t sites) {
    if (s.site && *s.site >= sites) {
        throw UsageError(s.command + ": --site " + std::to_string(*s.site) + " out of range for N = " +
                         std::to_string(sites));
    }
}

inline std::vector<std::size_t> selected_sites(const RunSpec& s, std::size_t sites) {
    if (s.site) return {*s.site};
    std::vector<std::size_t> all(sites);
    for (std::size_t n = 0; n < sites; ++n) all[n] = n;
    return all;
}

inline std::int64_t i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

inline std::vector<std::uint64_t> decade_schedule(std::uint64_t steps) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = 100; t < steps; t *= 10) out.push_back(t);
    out.push_back(steps);
    return out;
}

}  // namespace detail

/// Per-step site distribution, t = 0..T-1.
inline Table cmd_simulate(const RunSpec& s) {
    const std::size_t sites = detail::single_size(s, 2);
    detail::check_common(s);
    detail::check_site(s, sites);

    Table t;
    t.columns = {"t", "n", "prob"};
    const auto chosen = detail::selected_sites(s, sites);
    Walker w(build_initial_state(WalkConfig{sites, s.alpha, std::nullopt}));
    for (std::uint64_t step = 0; step < s.steps; ++step) {
        for (std::size_t n : chosen) t.add({detail::i64(step), detail::i64(n), w.probability(n)});
        w.advance();
    }
    return t;
}

inline Table cmd_sigma(const RunSpec& s) {
    const std::size_t sites = detail::single_size(s, 3);
    detail::check_common(s);
    detail::check_site(s, sites);

    SigmaProfile prof;
    if (s.method == "exact") {
        if (sites % 2 == 0) {
            throw UsageError("sigma: --method exact requires odd N (got N = " + std::to_string(sites) +
                             "); even N has degenerate eigenvalues, use --method empirical");
        }
        if (sites == 3) {
            prof = sigma3_alpha_profile(s.alpha);
            prof.method = SigmaMethod::exact;
        } else if (s.alpha != 1.0) {
            throw UsageError("sigma: --method exact for N > 3 requires --alpha 1");
        } else {
            prof = closed_form_profile(sites);
        }
    } else if (s.method == "resonance") {
        if (sites % 2 == 0) {
            throw UsageError("sigma: --method resonance requires odd N (got N = " +
                             std::to_string(sites) + ")");
        }
        if (sites > resonance_max_sites) {
            throw UsageError("sigma: --method resonance is limited to N <= " +
                             std::to_string(resonance_max_sites));
        }
        if (s.alpha != 1.0) throw UsageError("sigma: --method resonance requires --alpha 1");
        prof = resonance_profile(sites);
    } else if (s.method == "empirical") {
        prof = empirical_sigma_profile(WalkConfig{sites, s.alpha, std::nullopt}, s.steps);
    } else {
        throw UsageError("sigma: unknown --method '" + s.method + "' (exact|empirical|resonance)");
    }

    Table t;
    t.columns = {"N", "n", "method", "alpha", "T", "sigma"};
    for (std::size_t n : detail::selected_sites(s, sites)) {
        Cell steps_cell = prof.steps ? Cell{detail::i64(*prof.steps)} : Cell{};
        t.add({detail::i64(sites), detail::i64(n), s.method, s.alpha, steps_cell, prof.values[n]});
    }
    return t;
}

/// sigma over an alpha grid of --points values spanning [0, 1]. N = 3 uses the explicit
/// formulas, other N a finite-T run per grid point.
inline Table cmd_sweep_alpha(const RunSpec& s) {
    const std::size_t sites = detail::single_size(s, 3);
    detail::check_common(s);
    detail::check_site(s, sites);
    if (s.points < 2) throw UsageError("sweep-alpha: --points must be >= 2");

    Table t;
    t.columns = {"N", "n", "alpha", "sigma"};
    const auto chosen = detail::selected_sites(s, sites);
    for (std::size_t i = 0; i < s.points; ++i) {
        const double alpha = static_cast<double>(i) / static_cast<double>(s.points - 1);
        const SigmaProfile prof = sites == 3
                                      ? sigma3_alpha_profile(alpha)
                                      : empirical_sigma_profile(WalkConfig{sites, alpha, std::nullopt}, s.steps);
        for (std::size_t n : chosen) t.add({detail::i64(sites), detail::i64(n), alpha, prof.values[n]});
    }
    return t;
}

inline Table cmd_spectrum(const RunSpec& s) {
    const std::size_t sites = detail::single_size(s, 3);
    const Spectrum spec = compute_spectrum(sites, false);

    Table t;
    t.columns = {"j", "k", "re", "im", "theta"};
    for (std::size_t m = 0; m < spec.size(); ++m) {
        const Mode mode = Mode::from_flat(m);
        t.add({detail::i64(mode.j), std::int64_t{mode.k}, spec.eigenvalues[m].real(),
               spec.eigenvalues[m].imag(), spec.arguments[m]});
    }
    t.notes.push_back("max_residual=" + format_double(max_eigenpair_residual(sites)));
    t.notes.push_back("degenerate_pairs=" + std::to_string(degenerate_pairs(spec).size()));
    return t;
}

inline Table cmd_asymptote(const RunSpec& s) {
    std::vector<std::size_t> list = s.sites;
    if (list.empty()) {
        for (std::size_t n = 3; n <= 21; n += 2) list.push_back(n);
    }
    for (std::size_t n : list) {
        if (n < 3 || n % 2 == 0) {
            throw UsageError("asymptote: every --sites value must be odd and >= 3 (got " +
                             std::to_string(n) + "); the exact sigma exists only for odd N");
        }
    }
    std::sort(list.begin(), list.end());

    Table t;
    t.columns = {"N", "sigma_exact", "sigma_asymptotic", "rel_error"};
    for (std::size_t n : list) {
        const double exact = closed_form_sigma(n, 0);
        const double approx = asymptotic_sigma_origin(n);
        const double rel = std::abs(exact - approx) / exact;
        t.add({detail::i64(n), exact, approx, rel});
        if (rel > asymptote_regime_threshold) {
            t.notes.push_back("out-of-regime: N=" + std::to_string(n) + " rel_error=" + format_double(rel));
        }
    }
    return t;
}

/// Classical vs quantum finite-T deviation over the decade schedule 100, 1000, ... up to --steps.
inline Table cmd_classical(const RunSpec& s) {
    const std::size_t sites = detail::single_size(s, 3);
    detail::check_common(s);
    detail::check_site(s, sites);

    Table t;
    t.columns = {"N", "n", "T", "sigma_classical", "sigma_quantum"};
    const auto chosen = detail::selected_sites(s, sites);
    for (std::uint64_t steps : detail::decade_schedule(s.steps)) {
        const auto cl = classical_sigma_profile(sites, steps);
        const auto qu = empirical_sigma_profile(WalkConfig{sites, s.alpha, std::nullopt}, steps);
        for (std::size_t n : chosen) {
            t.add({detail::i64(sites), detail::i64(n), detail::i64(steps), cl.values[n], qu.values[n]});
        }
    }
    return t;
}

inline Table run(const RunSpec& s) {
    if (s.command == "simulate") return cmd_simulate(s);
    if (s.command == "sigma") return cmd_sigma(s);
    if (s.command == "sweep-alpha") return cmd_sweep_alpha(s);
    if (s.command == "spectrum") return cmd_spectrum(s);
    if (s.command == "asymptote") return cmd_asymptote(s);
    if (s.command == "classical") return cmd_classical(s);
    throw UsageError("unknown command '" + s.command + "'");
}

}  // namespace hwalk::cli
