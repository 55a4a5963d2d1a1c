#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ghforge/metric_space.hpp"

namespace ghforge {

/// A relation R between the points of X and Y (by index) that is surjective
/// both ways: every left index and every right index occurs in some pair.
/// Pairs are kept sorted and duplicate-free.
class Correspondence {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  /// Sorts and deduplicates `pairs`. Throws Error{IndexError} for an index out
  /// of range and Error{InvalidCorrespondence} if some point is uncovered.
  Correspondence(std::vector<Pair> pairs, std::size_t left_size, std::size_t right_size);

  static Correspondence identity(std::size_t n);
  static Correspondence full(std::size_t left_size, std::size_t right_size);

  /// Bit (i * right_size + j) of `mask` selects the pair (i, j).
  static Correspondence from_mask(std::uint64_t mask, std::size_t left_size, std::size_t right_size);

  /// graph(f) united with the transpose of graph(g), for f: X -> Y, g: Y -> X.
  static Correspondence from_maps(std::span<const std::size_t> f, std::span<const std::size_t> g);

  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t left_size() const noexcept { return left_size_; }
  std::size_t right_size() const noexcept { return right_size_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool contains(std::size_t i, std::size_t j) const;

  /// True if every pair of *this is also in `other`.
  bool is_subset_of(const Correspondence& other) const;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
  friend auto operator<=>(const Correspondence&, const Correspondence&) = default;

 private:
  std::vector<Pair> pairs_;
  std::size_t left_size_ = 0;
  std::size_t right_size_ = 0;
};

/// R[A] = { j : (i, j) in R for some i in A }, sorted.
std::vector<std::size_t> image(const Correspondence& r, std::span<const std::size_t> a);

/// R^{-1} = { (j, i) : (i, j) in R }.
Correspondence inverse(const Correspondence& r);

/// dis(R) = max |d_X(x, x') - d_Y(y, y')| over (x, y), (x', y') in R.
/// Throws Error{SizeMismatch} if R was not built for spaces of these sizes.
Scalar distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

inline constexpr std::size_t kDefaultEnumerationCap = 12;
inline constexpr std::size_t kMaxEnumerationCap = 30;

/// Streams every correspondence between an l-point and an r-point set, in
/// increasing bitmask order (see Correspondence::from_mask). Requires
/// l * r <= cap; throws Error{CapExceeded} otherwise.
class CorrespondenceEnumerator {
 public:
  CorrespondenceEnumerator(std::size_t left_size, std::size_t right_size,
                           std::size_t cap = kDefaultEnumerationCap);

  std::optional<std::uint64_t> next_mask();
  std::optional<Correspondence> next();

 private:
  bool covers(std::uint64_t mask) const;

  std::size_t left_size_;
  std::size_t right_size_;
  std::uint64_t mask_ = 0;
  std::uint64_t end_ = 0;
  std::vector<std::uint64_t> row_masks_;
  std::vector<std::uint64_t> column_masks_;
};

/// Streams graph(f) ∪ graph(g)^{-1} for every pair of maps f: X -> Y and
/// g: Y -> X, in lexicographic order of (f(0), ..., f(l-1), g(0), ..., g(r-1)).
/// The same relation may be produced by several (f, g).
class FunctionPairEnumerator {
 public:
  FunctionPairEnumerator(std::size_t left_size, std::size_t right_size);

  /// Advances to the next (f, g); false when exhausted.
  bool advance();
  std::span<const std::size_t> f() const { return f_; }
  std::span<const std::size_t> g() const { return g_; }

  std::optional<Correspondence> next();

 private:
  std::vector<std::size_t> f_;
  std::vector<std::size_t> g_;
  std::size_t left_size_;
  std::size_t right_size_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace ghforge
