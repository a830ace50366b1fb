#pragma once

// Hadamard walk on an N-site cycle.
//
// The state is stored in the interleaved layout (L_0, R_0, L_1, R_1, ..., L_{N-1}, R_{N-1}),
// so amplitude index 2n is the left chirality at site n and 2n+1 the right chirality.
// One step maps
//     L'_n = (L_{n+1} + R_{n+1}) / sqrt(2)
//     R'_n = (L_{n-1} - R_{n-1}) / sqrt(2)
// with site indices taken mod N.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hwalk/errors.hpp"

namespace hwalk {

using cplx = std::complex<double>;

inline constexpr double inv_sqrt2 = 0.70710678118654752440;

/// Mathematical modulo: always lands in [0, n).
constexpr std::size_t wrap(std::ptrdiff_t i, std::size_t n) noexcept {
    const auto m = static_cast<std::ptrdiff_t>(n);
    const std::ptrdiff_t r = i % m;
    return static_cast<std::size_t>(r < 0 ? r + m : r);
}

class WaveState {
public:
    /// Norm tolerance applied to user-supplied amplitudes.
    static constexpr double norm_tolerance = 1e-12;

    /// Builds a state from 2N interleaved amplitudes. Requires N >= 2 and unit norm.
    static WaveState from_amplitudes(std::vector<cplx> amplitudes, std::uint64_t time = 0) {
        if (amplitudes.size() % 2 != 0) {
            throw DomainError("WaveState: amplitude count must be even (2N), got " +
                              std::to_string(amplitudes.size()));
        }
        detail::require_sites(amplitudes.size() / 2, 2, "WaveState");
        WaveState s(std::move(amplitudes), time);
        if (std::abs(s.norm_squared() - 1.0) > norm_tolerance) {
            throw DomainError("WaveState: amplitudes are not normalized (|psi|^2 = " +
                              std::to_string(s.norm_squared()) + ")");
        }
        return s;
    }

    std::size_t sites() const noexcept { return amps_.size() / 2; }
    std::uint64_t time() const noexcept { return time_; }
    std::span<const cplx> amplitudes() const noexcept { return amps_; }

    cplx left(std::size_t n) const { return amps_.at(2 * n); }
    cplx right(std::size_t n) const { return amps_.at(2 * n + 1); }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    friend bool operator==(const WaveState&, const WaveState&) = default;

private:
    WaveState(std::vector<cplx> amps, std::uint64_t time) : amps_(std::move(amps)), time_(time) {}

    friend WaveState step(const WaveState& state);
    friend class Walker;

    std::vector<cplx> amps_;
    std::uint64_t time_ = 0;
};

/// Initial condition for a run: either the alpha family
///     L_0 = alpha, R_0 = i sqrt(1 - alpha^2)
/// or an explicit state. alpha = 1 is the canonical start (1, 0, ..., 0).
struct WalkConfig {
    std::size_t sites = 3;
    double alpha = 1.0;
    std::optional<WaveState> initial;

    void validate() const {
        if (initial) {
            if (initial->sites() != sites) {
                throw DomainError("WalkConfig: explicit initial state has N = " +
                                  std::to_string(initial->sites()) + " but sites = " +
                                  std::to_string(sites));
            }
            return;
        }
        detail::require_sites(sites, 2, "WalkConfig");
        if (!(alpha >= 0.0 && alpha <= 1.0)) {
            throw DomainError("WalkConfig: alpha must lie in [0, 1] (got " + std::to_string(alpha) +
                              ")");
        }
    }

    bool canonical() const noexcept { return !initial && alpha == 1.0; }
};

struct SiteDistribution {
    std::vector<double> probs;

    std::size_t sites() const noexcept { return probs.size(); }
    double operator[](std::size_t n) const { return probs.at(n); }

    double total() const noexcept {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }
};

inline WaveState build_initial_state(const WalkConfig& config) {
    config.validate();
    if (config.initial) return *config.initial;
    std::vector<cplx> amps(2 * config.sites, cplx{0.0, 0.0});
    amps[0] = cplx{config.alpha, 0.0};
    amps[1] = cplx{0.0, std::sqrt(1.0 - config.alpha * config.alpha)};
    return WaveState::from_amplitudes(std::move(amps));
}

namespace detail {

inline void step_into(std::span<const cplx> in, std::span<cplx> out) noexcept {
    const std::size_t n_sites = in.size() / 2;
    for (std::size_t n = 0; n < n_sites; ++n) {
        const std::size_t up = (n + 1 == n_sites) ? 0 : n + 1;
        const std::size_t down = (n == 0) ? n_sites - 1 : n - 1;
        out[2 * n] = (in[2 * up] + in[2 * up + 1]) * inv_sqrt2;
        out[2 * n + 1] = (in[2 * down] - in[2 * down + 1]) * inv_sqrt2;
    }
}

inline double site_probability_unchecked(std::span<const cplx> amps, std::size_t n) noexcept {
    return std::norm(amps[2 * n]) + std::norm(amps[2 * n + 1]);
}

}  // namespace detail

inline WaveState step(const WaveState& state) {
    std::vector<cplx> next(state.amps_.size());
    detail::step_into(state.amps_, next);
    return WaveState(std::move(next), state.time_ + 1);
}

/// Double-buffered in-place evolution for long runs; same arithmetic as step().
class Walker {
public:
    explicit Walker(const WaveState& start)
        : cur_(start.amps_), next_(start.amps_.size()), time_(start.time_) {}

    void advance() noexcept {
        detail::step_into(cur_, next_);
        cur_.swap(next_);
        ++time_;
    }

    std::size_t sites() const noexcept { return cur_.size() / 2; }
    std::uint64_t time() const noexcept { return time_; }
    std::span<const cplx> amplitudes() const noexcept { return cur_; }

    double probability(std::size_t n) const noexcept {
        return detail::site_probability_unchecked(cur_, n);
    }

    WaveState state() const { return WaveState(cur_, time_); }

private:
    std::vector<cplx> cur_;
    std::vector<cplx> next_;
    std::uint64_t time_;
};

inline WaveState evolve(const WaveState& state, std::uint64_t steps) {
    if (steps == 0) return state;
    Walker w(state);
    for (std::uint64_t t = 0; t < steps; ++t) w.advance();
    return w.state();
}

inline double site_probability(const WaveState& state, std::size_t n) {
    detail::require_site(n, state.sites(), "site_probability");
    return detail::site_probability_unchecked(state.amplitudes(), n);
}

inline SiteDistribution distribution(const WaveState& state) {
    SiteDistribution d;
    d.probs.resize(state.sites());
    for (std::size_t n = 0; n < state.sites(); ++n) {
        d.probs[n] = detail::site_probability_unchecked(state.amplitudes(), n);
    }
    return d;
}

/// Dense row-major complex matrix. Only used to cross-check the stepping rule and the
/// closed-form eigenpairs; evolution never goes through it.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<cplx> apply(std::span<const cplx> v) const {
        if (v.size() != cols_) throw DomainError("ComplexMatrix::apply: dimension mismatch");
        std::vector<cplx> out(rows_, cplx{0.0, 0.0});
        for (std::size_t r = 0; r < rows_; ++r) {
            cplx acc{0.0, 0.0};
            for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
            out[r] = acc;
        }
        return out;
    }

    /// max_{ij} |(A^H A - I)_{ij}|
    double unitarity_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < cols_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                cplx acc{0.0, 0.0};
                for (std::size_t r = 0; r < rows_; ++r) acc += std::conj((*this)(r, i)) * (*this)(r, j);
                if (i == j) acc -= 1.0;
                worst = std::max(worst, std::abs(acc));
            }
        }
        return worst;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

/// The 2N x 2N evolution matrix: block row n holds P = [[1,1],[0,0]]/sqrt2 at block
/// column n+1 and Q = [[0,0],[1,-1]]/sqrt2 at block column n-1 (cyclically).
/// N = 2 is rejected because P and Q would land in the same block.
inline ComplexMatrix build_unitary(std::size_t sites) {
    detail::require_sites(sites, 3, "build_unitary");
    ComplexMatrix m(2 * sites, 2 * sites);
    for (std::size_t n = 0; n < sites; ++n) {
        const std::size_t up = wrap(static_cast<std::ptrdiff_t>(n) + 1, sites);
        const std::size_t down = wrap(static_cast<std::ptrdiff_t>(n) - 1, sites);
        m(2 * n, 2 * up) = inv_sqrt2;
        m(2 * n, 2 * up + 1) = inv_sqrt2;
        m(2 * n + 1, 2 * down) = inv_sqrt2;
        m(2 * n + 1, 2 * down + 1) = -inv_sqrt2;
    }
    return m;
}

}  // namespace hwalk
