#include "affinv/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace affinv {

namespace {
std::atomic<Execution> g_default{Execution::parallel};
}

Execution default_execution() { return g_default.load(std::memory_order_relaxed); }

void set_default_execution(Execution exec) { g_default.store(exec, std::memory_order_relaxed); }

ExecutionScope::ExecutionScope(Execution exec) : previous_(default_execution()) { set_default_execution(exec); }

ExecutionScope::~ExecutionScope() { set_default_execution(previous_); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec) {
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace affinv
