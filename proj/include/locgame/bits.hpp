#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "locgame/errors.hpp"

namespace locgame {

// Fixed-capacity set of vertex ids in [0, n), one bit per vertex.
// Unused tail bits of the last word are kept zero, so whole-word
// comparison and popcount are always valid.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(check_capacity(n)), words_((n + 63) / 64, 0) {}

  static VertexSet full(int n) {
    VertexSet s(n);
    for (auto& w : s.words_) w = ~uint64_t{0};
    s.trim();
    return s;
  }

  static VertexSet singleton(int n, int v) {
    VertexSet s(n);
    s.set(v);
    return s;
  }

  int capacity() const { return n_; }

  bool test(int v) const {
    check_index(v);
    return (words_[v >> 6] >> (v & 63)) & 1;
  }
  void set(int v) {
    check_index(v);
    words_[v >> 6] |= uint64_t{1} << (v & 63);
  }
  void reset(int v) {
    check_index(v);
    words_[v >> 6] &= ~(uint64_t{1} << (v & 63));
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (uint64_t w : words_) {
      if (w) return false;
    }
    return true;
  }

  // Smallest member, or -1 when empty.
  int min_element() const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    }
    return -1;
  }

  VertexSet& operator|=(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference: removes every member of o.
  VertexSet& remove(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  bool intersects(const VertexSet& o) const {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  static int intersection_count(const VertexSet& a, const VertexSet& b) {
    a.check_same(b);
    int c = 0;
    for (size_t i = 0; i < a.words_.size(); ++i)
      c += std::popcount(a.words_[i] & b.words_[i]);
    return c;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  // Visits members in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        f(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  const std::vector<uint64_t>& words() const { return words_; }

 private:
  static int check_capacity(int n) {
    if (n < 0) throw ParameterError("VertexSet: capacity must be non-negative");
    return n;
  }
  void check_index(int v) const {
    if (v < 0 || v >= n_) throw ParameterError("VertexSet: vertex id out of range");
  }
  void check_same(const VertexSet& o) const {
    if (n_ != o.n_) throw ParameterError("VertexSet: capacity mismatch");
  }
  void trim() {
    if (n_ % 64 != 0 && !words_.empty())
      words_.back() &= (~uint64_t{0}) >> (64 - n_ % 64);
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace locgame
