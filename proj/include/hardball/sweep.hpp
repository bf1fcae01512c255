#pragma once

#include <cstddef>
#include <exception>
#include <utility>

namespace hardball {

// Trial sweeps write into per-trial slots, so the merged result is a pure
// function of (seed, trial index) and the serial and parallel paths agree
// bit for bit. The serial path is the reference implementation; tests
// compare the two and the bench tool times them.
enum class ExecutionPolicy { Serial, Parallel };

template <class Body>
void run_trials(std::size_t trials, ExecutionPolicy policy, Body&& body) {
  if (policy == ExecutionPolicy::Serial || trials < 2) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    try {
      body(static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(hardball_run_trials_error)
      {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hardball
