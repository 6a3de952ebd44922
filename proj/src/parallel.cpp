#include "fpsi/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace fpsi {

int thread_limit() {
    static const int limit = [] {
        const int hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("FPSI_THREADS")) {
            try {
                const int requested = std::stoi(env);
                if (requested > 0) return requested;
            } catch (const std::exception&) {
            }
        }
        return hw;
    }();
    return limit;
}

void for_each_chunk(int chunk_count, Execution exec, const std::function<void(int)>& body) {
    if (exec == Execution::serial || chunk_count <= 1 || thread_limit() == 1) {
        for (int c = 0; c < chunk_count; ++c) body(c);
        return;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
    for (int c = 0; c < chunk_count; ++c) {
        try {
            body(c);
        } catch (...) {
#pragma omp critical(fpsi_chunk_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace fpsi
