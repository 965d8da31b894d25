#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace stclust::detail {

// Appends (stage, seconds since previous lap) to a sink.
class StageClock {
 public:
  explicit StageClock(std::vector<std::pair<std::string, double>>& sink)
      : sink_(sink), start_(std::chrono::steady_clock::now()) {}

  void lap(std::string name) {
    const auto now = std::chrono::steady_clock::now();
    sink_.emplace_back(std::move(name), std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace stclust::detail
