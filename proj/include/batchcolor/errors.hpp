#pragma once

#include <stdexcept>
#include <string>

namespace batchcolor {

// An exact oracle was asked to solve an instance beyond its configured size cap.
class SizeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An online colorer broke its contract (improper, missing or zero colors).
class ImproperColoring : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An instance or adversary emitted a batch that is not well formed, or
// violates its declared graph class.
class InconsistentInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// BatchColor_f found no available color under its cap.
class InfeasibleBatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// TwoBatches detected a broken loop invariant or bookkeeping state.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAForest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An algorithm was used outside its declared capabilities (e.g. a k-aware
// algorithm without k, or an interval algorithm in graph mode).
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace batchcolor
