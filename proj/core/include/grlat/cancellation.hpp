#pragma once

namespace grlat {

// Cooperative cancellation for long-running normal-form loops.  The flag is
// process-global; the CLI sets it from a signal handler and the row-operation
// loops poll it, throwing Cancelled when set.

void request_cancel() noexcept;
void reset_cancel() noexcept;
bool cancel_requested() noexcept;

/// Throws Cancelled if a cancellation request is pending.
void check_cancelled();

}  // namespace grlat
