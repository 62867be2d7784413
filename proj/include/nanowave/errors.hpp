#pragma once

#include <stdexcept>
#include <string>

namespace nanowave {

// Series cut off before reaching the requested tail tolerance.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& what, double tail_reached, int n_used)
      : std::runtime_error(what), tail_reached_(tail_reached), n_used_(n_used) {}
  double tail_reached() const { return tail_reached_; }
  int n_used() const { return n_used_; }

 private:
  double tail_reached_;
  int n_used_;
};

// Evaluation grid too coarse for the requested feature (e.g. a linewidth).
class resolution_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sampling preconditions violated (empty data, bad window, ...).
class sampling_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed config/data file. Carries file and line context.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace nanowave
