#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace drep {

// Coarse memory guard for block enumeration, wired to DREP_MAX_MB by the CLI.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::atomic<long>& memory_budget_mb_ref() {
    static std::atomic<long> budget{0}; // <= 0: unlimited
    return budget;
}

inline void set_memory_budget_mb(long mb) { memory_budget_mb_ref() = mb; }
inline long memory_budget_mb() { return memory_budget_mb_ref(); }

inline void ensure_budget(std::size_t estimated_bytes, const std::string& what) {
    long mb = memory_budget_mb();
    if (mb <= 0) return;
    if (estimated_bytes > static_cast<std::size_t>(mb) * 1024 * 1024)
        throw ResourceError(what + " exceeds the memory budget (DREP_MAX_MB=" +
                            std::to_string(mb) + ")");
}

} // namespace drep
