#pragma once

#include <cstddef>
#include <functional>

namespace affinv {

/// How component kernels run. `serial` is the reference path kept for
/// testing and benchmarking; `parallel` distributes independent iterations
/// over OpenMP threads.
enum class Execution { serial, parallel };

Execution default_execution();
void set_default_execution(Execution exec);

/// Restores the previous default on scope exit.
class ExecutionScope {
 public:
  explicit ExecutionScope(Execution exec);
  ~ExecutionScope();
  ExecutionScope(const ExecutionScope&) = delete;
  ExecutionScope& operator=(const ExecutionScope&) = delete;

 private:
  Execution previous_;
};

/// Runs body(0..n-1). Iterations must be independent. The first exception
/// thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  Execution exec = default_execution());

/// Number of worker threads the parallel path would use.
int worker_count();

}  // namespace affinv
