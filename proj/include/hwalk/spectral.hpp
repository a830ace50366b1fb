#pragma once

// Closed-form eigen-decomposition of the cycle evolution matrix.
//
// For j = 0..N-1 and k = 0..1, with xi_j = 2 pi j / N and s_k = (-1)^k:
//     c_jk = ( s_k sqrt(1 + cos^2 xi_j) + i sin xi_j ) / sqrt(2)
//     b_jk = w^j ( s_k sqrt(1 + cos^2 xi_j) + cos xi_j ),   w = exp(2 pi i / N)
//     a_jk = 1 / sqrt( N (1 + |b_jk|^2) )
// The textbook eigenvector is written with 1-based positions l = 1..2N. Translated to the
// 0-based interleaved layout used here (position 2m is L_m, 2m+1 is R_m, m = 0..N-1):
//     v[2m]     = a_jk b_jk w^{j(m+1)}
//     v[2m + 1] = a_jk       w^{j(m+1)}

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "hwalk/errors.hpp"
#include "hwalk/walk.hpp"

namespace hwalk {

namespace detail {

inline void require_mode(std::size_t sites, std::size_t j, int k, const char* op) {
    detail::require_sites(sites, 3, op);
    if (j >= sites || (k != 0 && k != 1)) {
        throw DomainError(std::string(op) + ": eigen-index (j = " + std::to_string(j) +
                          ", k = " + std::to_string(k) + ") out of range for N = " +
                          std::to_string(sites));
    }
}

inline double sign_of(int k) noexcept { return k == 0 ? 1.0 : -1.0; }

/// xi_j = 2 pi j / N
inline double xi(std::size_t sites, std::size_t j) noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(sites);
}

/// exp(2 pi i p / N) with the exponent reduced mod N first, so large p keeps full accuracy.
inline cplx root_of_unity(std::size_t sites, std::ptrdiff_t p) {
    return std::polar(1.0, xi(sites, wrap(p, sites)));
}

}  // namespace detail

struct EigenvectorParams {
    cplx omega;  // exp(2 pi i / N)
    double xi;   // 2 pi j / N
    cplx b;
    double a;
};

inline EigenvectorParams eigenvector_params(std::size_t sites, std::size_t j, int k) {
    detail::require_mode(sites, j, k, "eigenvector_params");
    EigenvectorParams p;
    p.omega = detail::root_of_unity(sites, 1);
    p.xi = detail::xi(sites, j);
    const double cx = std::cos(p.xi);
    p.b = detail::root_of_unity(sites, static_cast<std::ptrdiff_t>(j)) *
          (detail::sign_of(k) * std::sqrt(1.0 + cx * cx) + cx);
    p.a = 1.0 / std::sqrt(static_cast<double>(sites) * (1.0 + std::norm(p.b)));
    return p;
}

inline cplx eigenvalue(std::size_t sites, std::size_t j, int k) {
    detail::require_mode(sites, j, k, "eigenvalue");
    const double x = detail::xi(sites, j);
    const double cx = std::cos(x);
    return cplx{detail::sign_of(k) * std::sqrt(1.0 + cx * cx), std::sin(x)} * inv_sqrt2;
}

/// arg(c_jk) on the branch (-pi, pi].
inline double eigen_argument(std::size_t sites, std::size_t j, int k) {
    const double th = std::arg(eigenvalue(sites, j, k));
    return th <= -std::numbers::pi ? std::numbers::pi : th;
}

inline std::vector<cplx> eigenvector(std::size_t sites, std::size_t j, int k) {
    const EigenvectorParams p = eigenvector_params(sites, j, k);
    std::vector<cplx> v(2 * sites);
    for (std::size_t m = 0; m < sites; ++m) {
        const cplx phase = detail::root_of_unity(
            sites, static_cast<std::ptrdiff_t>(j) * static_cast<std::ptrdiff_t>(m + 1));
        v[2 * m] = p.a * p.b * phase;
        v[2 * m + 1] = p.a * phase;
    }
    return v;
}

/// Flat mode index used throughout: mode(j, k) = 2j + k.
struct Mode {
    std::size_t j;
    int k;

    std::size_t flat() const noexcept { return 2 * j + static_cast<std::size_t>(k); }
    static Mode from_flat(std::size_t m) noexcept { return {m / 2, static_cast<int>(m % 2)}; }

    friend auto operator<=>(const Mode&, const Mode&) = default;
};

struct Spectrum {
    std::size_t sites = 0;
    std::vector<cplx> eigenvalues;                // indexed by Mode::flat()
    std::vector<double> arguments;                // theta_jk in (-pi, pi]
    std::vector<std::vector<cplx>> eigenvectors;  // same indexing

    std::size_t size() const noexcept { return eigenvalues.size(); }
};

inline Spectrum compute_spectrum(std::size_t sites, bool with_vectors = true) {
    detail::require_sites(sites, 3, "compute_spectrum");
    Spectrum s;
    s.sites = sites;
    s.eigenvalues.reserve(2 * sites);
    s.arguments.reserve(2 * sites);
    for (std::size_t j = 0; j < sites; ++j) {
        for (int k = 0; k < 2; ++k) {
            s.eigenvalues.push_back(eigenvalue(sites, j, k));
            s.arguments.push_back(eigen_argument(sites, j, k));
            if (with_vectors) s.eigenvectors.push_back(eigenvector(sites, j, k));
        }
    }
    return s;
}

/// Smallest |c_a - c_b| over distinct modes a != b.
inline double min_eigenvalue_separation(const Spectrum& s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            best = std::min(best, std::abs(s.eigenvalues[a] - s.eigenvalues[b]));
    return best;
}

/// Pairs of distinct modes whose eigenvalues coincide within tol.
inline std::vector<std::pair<Mode, Mode>> degenerate_pairs(const Spectrum& s, double tol = 1e-9) {
    std::vector<std::pair<Mode, Mode>> out;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            if (std::abs(s.eigenvalues[a] - s.eigenvalues[b]) < tol)
                out.emplace_back(Mode::from_flat(a), Mode::from_flat(b));
    return out;
}

/// || M v_jk - c_jk v_jk ||_2 against the dense evolution matrix.
inline double verify_eigenpair(const ComplexMatrix& unitary, std::size_t j, int k) {
    const std::size_t sites = unitary.rows() / 2;
    const auto v = eigenvector(sites, j, k);
    const cplx c = eigenvalue(sites, j, k);
    const auto mv = unitary.apply(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::norm(mv[i] - c * v[i]);
    return std::sqrt(acc);
}

inline double verify_eigenpair(std::size_t sites, std::size_t j, int k) {
    return verify_eigenpair(build_unitary(sites), j, k);
}

/// Largest eigenpair residual over all 2N modes.
inline double max_eigenpair_residual(std::size_t sites) {
    const ComplexMatrix m = build_unitary(sites);
    double worst = 0.0;
    for (std::size_t j = 0; j < sites; ++j)
        for (int k = 0; k < 2; ++k) worst = std::max(worst, verify_eigenpair(m, j, k));
    return worst;
}

/// Expansion weights of |L,n,t> and |R,n,t> on c_jk^t for the canonical start (1, 0, ..., 0).
struct FourierCoeffs {
    cplx alpha;
    cplx beta;
};

inline FourierCoeffs fourier_coefficients(std::size_t sites, std::size_t n, std::size_t j, int k) {
    detail::require_sites(sites, 3, "fourier_coefficients");
    detail::require_odd(sites, "fourier_coefficients");
    detail::require_site(n, sites, "fourier_coefficients");
    detail::require_mode(sites, j, k, "fourier_coefficients");

    const double two_n = 2.0 * static_cast<double>(sites);
    const double cx = std::cos(detail::xi(sites, j));
    const double root = std::sqrt(1.0 + cx * cx);
    const double s = detail::sign_of(k);
    const auto jj = static_cast<std::ptrdiff_t>(j);
    const auto nn = static_cast<std::ptrdiff_t>(n);

    FourierCoeffs f;
    f.alpha = detail::root_of_unity(sites, nn * jj) / two_n * (1.0 + s * cx / root);
    f.beta = s * detail::root_of_unity(sites, (nn - 1) * jj) / (two_n * root);
    return f;
}

/// All 2N coefficient pairs for site n, indexed by Mode::flat().
inline std::vector<FourierCoeffs> fourier_table(std::size_t sites, std::size_t n) {
    std::vector<FourierCoeffs> out;
    out.reserve(2 * sites);
    for (std::size_t j = 0; j < sites; ++j)
        for (int k = 0; k < 2; ++k) out.push_back(fourier_coefficients(sites, n, j, k));
    return out;
}

struct SiteAmplitudes {
    cplx left;
    cplx right;
};

/// (|L,n,t>, |R,n,t>) rebuilt as sum_jk coeff_jk c_jk^t from the canonical start.
inline SiteAmplitudes wavefunction_spectral(std::size_t sites, std::size_t n, std::uint64_t t) {
    const auto coeffs = fourier_table(sites, n);
    SiteAmplitudes out{{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        const Mode mode = Mode::from_flat(m);
        const cplx ct = std::polar(1.0, static_cast<double>(t) * eigen_argument(sites, mode.j, mode.k));
        out.left += coeffs[m].alpha * ct;
        out.right += coeffs[m].beta * ct;
    }
    return out;
}

}  // namespace hwalk
