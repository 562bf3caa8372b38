#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace delab {

/// Worker cap for data-parallel kernels. 0 restores the default, which is
/// DELAB_THREADS from the environment when set, else hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [begin, end), split into contiguous chunks across
/// workers. body must only write state owned by index i.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

/// Deterministic sum: partial(i) is evaluated in parallel, then the partials
/// are added sequentially in index order. The result does not depend on the
/// worker count.
double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& partial);

}  // namespace delab
