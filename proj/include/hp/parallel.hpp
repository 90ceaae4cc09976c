#pragma once

#include <cstddef>
#include <functional>

namespace hp {

void set_threads(unsigned n);  // 0 selects hardware concurrency
unsigned threads();

// Splits [0, n) into contiguous chunks, one per worker. body(begin, end, worker).
void parallel_chunks(std::size_t n, unsigned workers,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& body);

}  // namespace hp
