#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "gnch/errors.hpp"
#include "gnch/matrix.hpp"

namespace gnch {

/// Values B_k for k in the closed range [kmin, kmax]. Out-of-range access
/// throws IndexError rather than reading zero.
template <class T>
class ElementSeq {
 public:
  ElementSeq() = default;
  ElementSeq(int kmin, std::vector<T> values) : kmin_(kmin), values_(std::move(values)) {}

  template <class Fn>
  static ElementSeq generate(int kmin, int kmax, Fn&& element) {
    std::vector<T> values;
    values.reserve(static_cast<std::size_t>(kmax - kmin + 1));
    for (int k = kmin; k <= kmax; ++k) values.push_back(element(k));
    return ElementSeq(kmin, std::move(values));
  }

  int kmin() const { return kmin_; }
  int kmax() const { return kmin_ + static_cast<int>(values_.size()) - 1; }
  bool contains(int k) const { return k >= kmin() && k <= kmax(); }

  const T& operator()(int k) const {
    if (!contains(k)) {
      throw IndexError("element B_" + std::to_string(k) + " outside available range [" +
                       std::to_string(kmin()) + ", " + std::to_string(kmax()) + "]");
    }
    return values_[static_cast<std::size_t>(k - kmin_)];
  }

  /// Mutable access, used by the identity battery to inject faults.
  T& at(int k) {
    if (!contains(k)) throw IndexError("element B_" + std::to_string(k) + " out of range");
    return values_[static_cast<std::size_t>(k - kmin_)];
  }

  const std::vector<T>& values() const { return values_; }

 private:
  int kmin_ = 0;
  std::vector<T> values_;
};

/// k x k Hankel determinant with top-left entry B_l:
/// delta(k, l) = det(B_{i+j+l}), i, j = 0..k-1. delta(0, l) = 1, delta(k<0, l) = 0.
template <class T>
T hankel_det(const ElementSeq<T>& b, int k, int l) {
  if (k < 0) return T(0);
  if (k == 0) return T(1);
  const auto n = static_cast<std::size_t>(k);
  return det(Matrix<T>::generate(n, [&](std::size_t i, std::size_t j) {
    return b(l + static_cast<int>(i + j));
  }));
}

/// Column index offset of the skip-one determinant: the first column starts
/// at B_l, the remaining columns start at B_{l+2}, B_{l+3}, ..., B_{l+k}.
inline int skip_column_offset(std::size_t column) {
  return column == 0 ? 0 : static_cast<int>(column) + 1;
}

/// k x k determinant with entries B_{l + i + skip_column_offset(j)};
/// zero for k <= 0.
template <class T>
T skip_det(const ElementSeq<T>& b, int k, int l) {
  if (k <= 0) return T(0);
  const auto n = static_cast<std::size_t>(k);
  return det(Matrix<T>::generate(n, [&](std::size_t i, std::size_t j) {
    return b(l + static_cast<int>(i) + skip_column_offset(j));
  }));
}

/// Memoized evaluator of delta(k, l) and gee(k, l) over one element
/// snapshot. The cache is internally synchronized, so a table may be shared
/// across threads once built.
template <class T>
class HankelTable {
 public:
  explicit HankelTable(ElementSeq<T> source) : source_(std::move(source)) {}

  HankelTable(const HankelTable& o) : source_(o.source_) {
    std::lock_guard lock(o.mutex_);
    delta_cache_ = o.delta_cache_;
    gee_cache_ = o.gee_cache_;
  }
  HankelTable& operator=(const HankelTable&) = delete;

  const ElementSeq<T>& source() const { return source_; }

  T delta(int k, int l) const {
    if (k < 0) return T(0);
    if (k == 0) return T(1);
    return lookup(delta_cache_, k, l, [&] { return hankel_det(source_, k, l); });
  }

  T gee(int k, int l) const {
    if (k <= 0) return T(0);
    return lookup(gee_cache_, k, l, [&] { return skip_det(source_, k, l); });
  }

 private:
  using Cache = std::map<std::pair<int, int>, T>;

  template <class Fn>
  T lookup(Cache& cache, int k, int l, Fn&& compute) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache.find({k, l}); it != cache.end()) return it->second;
    }
    T value = compute();
    std::lock_guard lock(mutex_);
    cache.emplace(std::make_pair(k, l), value);
    return value;
  }

  ElementSeq<T> source_;
  mutable std::mutex mutex_;
  mutable Cache delta_cache_;
  mutable Cache gee_cache_;
};

}  // namespace gnch
