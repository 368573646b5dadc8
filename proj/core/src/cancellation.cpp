#include "grlat/cancellation.hpp"

#include <atomic>

#include "grlat/errors.hpp"

namespace grlat {

namespace {
std::atomic<bool> g_cancel{false};
}

void request_cancel() noexcept { g_cancel.store(true, std::memory_order_relaxed); }
void reset_cancel() noexcept { g_cancel.store(false, std::memory_order_relaxed); }
bool cancel_requested() noexcept { return g_cancel.load(std::memory_order_relaxed); }

void check_cancelled() {
    if (cancel_requested()) throw Cancelled("operation cancelled");
}

}  // namespace grlat
