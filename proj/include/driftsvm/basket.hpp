#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>

#include "driftsvm/types.hpp"

namespace driftsvm {

/// One stored training example. current_label starts equal to sample.label
/// and may diverge when relabeling is active; the solver always trains on
/// current_label. alpha mirrors the entry's dual weight from the last fit.
/// qii caches <x,x> + 1, which depends only on the features.
struct BasketEntry {
  Sample sample;
  double alpha = 0.0;
  int current_label = 1;
  double qii = 1.0;
};

/// Bounded working set of training examples, ordered by arrival. Entries are
/// admitted at the back and evicted anywhere; a deque keeps front eviction
/// (the common sliding-window case) cheap. Class counts are maintained
/// incrementally because balancing consults them on every step.
class Basket {
 public:
  Basket() = default;
  explicit Basket(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("basket capacity must be positive");
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool at_capacity() const { return entries_.size() >= capacity_; }
  bool empty() const { return entries_.empty(); }

  const BasketEntry& operator[](std::size_t i) const { return entries_[i]; }
  BasketEntry& operator[](std::size_t i) { return entries_[i]; }

  std::size_t positive_count() const { return positives_; }
  std::size_t negative_count() const { return entries_.size() - positives_; }
  std::size_t count_for(int label) const {
    return label > 0 ? positive_count() : negative_count();
  }

  /// Appends an entry. Arrival indices must be strictly increasing and the
  /// basket must not already be full.
  void push_back(BasketEntry entry) {
    if (entries_.size() >= capacity_) {
      throw std::logic_error("basket insert past capacity");
    }
    if (!entries_.empty() &&
        entry.sample.arrival_index <= entries_.back().sample.arrival_index) {
      throw std::invalid_argument("basket entries must arrive in increasing order");
    }
    if (entry.current_label > 0) ++positives_;
    entries_.push_back(std::move(entry));
  }

  void erase(std::size_t index) {
    if (index >= entries_.size()) throw std::invalid_argument("basket erase out of range");
    if (entries_[index].current_label > 0) --positives_;
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(index));
  }

  /// Flips an entry's working label, keeping the class counts consistent.
  void set_current_label(std::size_t index, int label) {
    BasketEntry& e = entries_[index];
    if (e.current_label > 0 && label < 0) --positives_;
    if (e.current_label < 0 && label > 0) ++positives_;
    e.current_label = label;
  }

 private:
  std::deque<BasketEntry> entries_;
  std::size_t capacity_ = 0;
  std::size_t positives_ = 0;
};

/// Builds an entry from a sample, caching the augmented self-inner-product.
inline BasketEntry make_entry(const Sample& s) {
  BasketEntry e;
  e.sample = s;
  e.current_label = s.label;
  e.qii = dot(s.features, s.features) + 1.0;
  return e;
}

}  // namespace driftsvm
