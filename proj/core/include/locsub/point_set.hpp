#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace locsub {

using PointId = std::size_t;

/// Hard limit on the number of points of a space (one machine word per set).
inline constexpr std::size_t kMaxPoints = 64;

/// A subset of the points of a space, indexed by declaration order.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr PointSet full(std::size_t n) {
    return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr PointSet single(PointId p) { return PointSet(std::uint64_t{1} << p); }
  static PointSet of(std::initializer_list<PointId> ids) {
    PointSet s;
    for (PointId p : ids) s.insert(p);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(PointId p) const { return (bits_ >> p) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(PointSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr PointId first() const { return static_cast<PointId>(std::countr_zero(bits_)); }

  constexpr void insert(PointId p) { bits_ |= std::uint64_t{1} << p; }
  constexpr void erase(PointId p) { bits_ &= ~(std::uint64_t{1} << p); }

  constexpr PointSet operator|(PointSet o) const { return PointSet(bits_ | o.bits_); }
  constexpr PointSet operator&(PointSet o) const { return PointSet(bits_ & o.bits_); }
  constexpr PointSet operator-(PointSet o) const { return PointSet(bits_ & ~o.bits_); }
  constexpr PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }
  constexpr PointSet& operator&=(PointSet o) { bits_ &= o.bits_; return *this; }

  constexpr bool operator==(const PointSet&) const = default;

  std::vector<PointId> ids() const {
    std::vector<PointId> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<PointId>(std::countr_zero(b)));
    }
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      f(static_cast<PointId>(std::countr_zero(b)));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Size first, then lexicographic on the ascending id sequence.
inline bool size_lex_less(PointSet a, PointSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.ids() < b.ids();
}

/// Orders the blocks of a partition by their smallest member.
inline bool first_member_less(PointSet a, PointSet b) {
  if (a.empty() || b.empty()) return a.empty() && !b.empty();
  return a.first() < b.first();
}

using Partition = std::vector<PointSet>;

}  // namespace locsub
