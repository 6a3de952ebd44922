#pragma once

#include <functional>

namespace fpsi {

enum class Execution { serial, parallel };

/// Thread cap for data-parallel kernels: FPSI_THREADS if set, otherwise the
/// hardware concurrency.
int thread_limit();

/// Runs `body(chunk)` for chunk in [0, chunk_count). The chunking is fixed by
/// the caller so results merged in chunk order do not depend on the number of
/// threads.
void for_each_chunk(int chunk_count, Execution exec, const std::function<void(int)>& body);

/// Fixed-size chunking of [0, n).
struct Chunking {
    static constexpr int kChunkSize = 128;
    int n = 0;

    int count() const { return (n + kChunkSize - 1) / kChunkSize; }
    int begin(int c) const { return c * kChunkSize; }
    int end(int c) const { return (c + 1) * kChunkSize < n ? (c + 1) * kChunkSize : n; }
};

}  // namespace fpsi
