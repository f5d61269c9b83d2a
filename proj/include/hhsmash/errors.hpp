#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhsmash {

// Malformed data: dimension mismatches, indices out of range, bad tables.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its contract (e.g. cup product on a module
// without internal multiplication).
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed the configured memory budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A requested result does not fit in the configured degree window.
struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

// Global allocation budget for the big coboundary matrices.  The guard does
// not track live memory; it refuses any single matrix whose footprint alone
// would exceed the budget, naming the matrix in the error.
class MemoryGuard {
public:
    static MemoryGuard& instance() {
        static MemoryGuard g;
        return g;
    }

    void set_limit_mib(std::size_t mib) { limit_bytes_ = mib * (std::size_t(1) << 20); }
    std::size_t limit_bytes() const { return limit_bytes_; }

    void charge(std::size_t bytes, const std::string& what) const {
        if (bytes > limit_bytes_)
            throw ResourceError("memory guard: " + what + " needs " +
                                std::to_string(bytes >> 20) + " MiB, limit " +
                                std::to_string(limit_bytes_ >> 20) + " MiB");
    }

private:
    std::size_t limit_bytes_ = std::size_t(2) << 30;
};

} // namespace hhsmash
