#pragma once

#include <cstddef>
#include <functional>

namespace hclab {

/// Worker count used by the parameter sweeps; 0 or 1 runs inline.
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

/// Runs body(i) for i in [0, n). Each index is handled exactly once and
/// callers write results into slot i, so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace hclab
