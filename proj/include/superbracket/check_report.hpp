#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace superbracket {

/// One failing instance of an identity: which condition, on which basis
/// indices (0-based), and a human-readable residual.
struct Violation {
  std::string condition;
  std::vector<std::size_t> indices;
  std::string detail;
};

/// Outcome of checking an identity over all basis tuples. Violations are
/// data, not errors. At most `kMaxStored` are kept verbatim; the total count
/// is always exact.
class CheckReport {
 public:
  static constexpr std::size_t kMaxStored = 4096;

  CheckReport() = default;
  explicit CheckReport(std::string name) : name_(std::move(name)) {}

  void count_instance(std::size_t n = 1) { checked_ += n; }
  void add(Violation v) {
    ++violation_count_;
    if (violations_.size() < kMaxStored) {
      violations_.push_back(std::move(v));
    }
  }
  void merge(const CheckReport& other) {
    checked_ += other.checked_;
    violation_count_ += other.violation_count_;
    for (const auto& v : other.violations_) {
      if (violations_.size() < kMaxStored) {
        violations_.push_back(v);
      }
    }
  }

  [[nodiscard]] bool passed() const { return violation_count_ == 0; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t checked() const { return checked_; }
  [[nodiscard]] std::size_t violation_count() const { return violation_count_; }
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }
  /// Number of stored violations whose condition equals `condition`.
  [[nodiscard]] std::size_t count(const std::string& condition) const {
    std::size_t n = 0;
    for (const auto& v : violations_) {
      n += v.condition == condition ? 1 : 0;
    }
    return n;
  }

 private:
  std::string name_;
  std::size_t checked_ = 0;
  std::size_t violation_count_ = 0;
  std::vector<Violation> violations_;
};

}  // namespace superbracket
