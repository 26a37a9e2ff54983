#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aliasscope {

// Input data problems: unreadable files, malformed CSV, missing pad samples.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InsufficientPaddingError : DataError {
  explicit InsufficientPaddingError(const std::string& msg) : DataError(msg) {}
};

// Numerical degeneracies: the computation is well-formed but the data
// cannot support it (zero variance, no candidate sets, ...).
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateSeriesError : DegeneracyError {
  explicit DegenerateSeriesError(const std::string& msg) : DegeneracyError(msg) {}
};

struct DegenerateSpectrumError : DegeneracyError {
  explicit DegenerateSpectrumError(const std::string& msg) : DegeneracyError(msg) {}
};

struct NoCandidateSetsError : DegeneracyError {
  explicit NoCandidateSetsError(const std::string& msg) : DegeneracyError(msg) {}
};

struct DegenerateIntervalError : DegeneracyError {
  explicit DegenerateIntervalError(const std::string& msg) : DegeneracyError(msg) {}
};

// Thrown by the threshold scan when no threshold reaches the requested
// local-maxima count; carries the counts that were achievable.
struct NotAchievableError : DegeneracyError {
  NotAchievableError(const std::string& msg, std::vector<int> counts)
      : DegeneracyError(msg), achievable_counts(std::move(counts)) {}
  std::vector<int> achievable_counts;
};

}  // namespace aliasscope
