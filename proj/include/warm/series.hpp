#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace warm {

struct SnapshotRecord {
  double t = 0.0;
  std::vector<double> x;              // X_t(e) = N_t(e) / t
  std::vector<std::int64_t> weights;  // N_t(e); empty when only x is known

  friend bool operator==(const SnapshotRecord&, const SnapshotRecord&) = default;
};

/// Time-indexed normalized weights. Times are strictly increasing and every
/// record covers the same edge set.
class SnapshotSeries {
 public:
  void append(double t, std::span<const std::int64_t> weights);
  void append_x(double t, std::vector<double> x);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t edge_count() const { return records_.empty() ? 0 : records_.front().x.size(); }
  const SnapshotRecord& operator[](std::size_t j) const { return records_[j]; }
  const SnapshotRecord& back() const { return records_.back(); }
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  friend bool operator==(const SnapshotSeries&, const SnapshotSeries&) = default;

 private:
  void check_next(double t, std::size_t edges) const;

  std::vector<SnapshotRecord> records_;
};

}  // namespace warm
