#pragma once

// Deliberate corruptions used by the acceptance suite to show that its
// checks are not vacuous. All hooks are off unless a test turns them on.

#include <atomic>

namespace morita::faults {

inline std::atomic<bool> negate_fast_path{false};
inline std::atomic<bool> drop_unit_representation{false};
inline std::atomic<bool> skip_even_scaling{false};

/// Enables one hook for the lifetime of the guard.
class Scoped {
 public:
  explicit Scoped(std::atomic<bool>& hook) : hook_(hook) { hook_.store(true); }
  ~Scoped() { hook_.store(false); }
  Scoped(const Scoped&) = delete;
  Scoped& operator=(const Scoped&) = delete;

 private:
  std::atomic<bool>& hook_;
};

}  // namespace morita::faults
