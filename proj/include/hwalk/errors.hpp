#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwalk {

/// Argument outside the mathematical domain of an operation (bad N, site, alpha, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The closed-form machinery is derived for odd N only; raised when it is asked for even N.
class ParityError : public std::domain_error {
public:
    explicit ParityError(const std::string& what) : std::domain_error(what) {}
};

/// A result that can only be produced by an implementation bug (e.g. a negative variance).
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require_odd(std::size_t sites, const char* op) {
    if (sites % 2 == 0) {
        throw ParityError(std::string(op) + ": requires odd N (got N = " + std::to_string(sites) +
                          "); the closed-form results hold only for an odd number of sites");
    }
}

inline void require_sites(std::size_t sites, std::size_t minimum, const char* op) {
    if (sites < minimum) {
        throw DomainError(std::string(op) + ": N must be >= " + std::to_string(minimum) +
                          " (got " + std::to_string(sites) + ")");
    }
}

inline void require_site(std::size_t site, std::size_t sites, const char* op) {
    if (site >= sites) {
        throw DomainError(std::string(op) + ": site index " + std::to_string(site) +
                          " out of range for N = " + std::to_string(sites));
    }
}

}  // namespace detail
}  // namespace hwalk
