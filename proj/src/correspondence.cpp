#include "ghforge/correspondence.hpp"

#include <algorithm>

#include "ghforge/error.hpp"

namespace ghforge {

Correspondence::Correspondence(std::vector<Pair> pairs, std::size_t left_size, std::size_t right_size)
    : pairs_(std::move(pairs)), left_size_(left_size), right_size_(right_size) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());

  std::vector<bool> left_hit(left_size, false), right_hit(right_size, false);
  for (const auto& [i, j] : pairs_) {
    if (i >= left_size || j >= right_size)
      throw Error(ErrorKind::IndexError, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") outside a " + std::to_string(left_size) + "x" +
                                             std::to_string(right_size) + " grid");
    left_hit[i] = right_hit[j] = true;
  }
  for (std::size_t i = 0; i < left_size; ++i)
    if (!left_hit[i])
      throw Error(ErrorKind::InvalidCorrespondence, "left point " + std::to_string(i) + " is not related");
  for (std::size_t j = 0; j < right_size; ++j)
    if (!right_hit[j])
      throw Error(ErrorKind::InvalidCorrespondence, "right point " + std::to_string(j) + " is not related");
}

Correspondence Correspondence::identity(std::size_t n) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, i);
  return Correspondence(std::move(pairs), n, n);
}

Correspondence Correspondence::full(std::size_t left_size, std::size_t right_size) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < left_size; ++i)
    for (std::size_t j = 0; j < right_size; ++j) pairs.emplace_back(i, j);
  return Correspondence(std::move(pairs), left_size, right_size);
}

Correspondence Correspondence::from_mask(std::uint64_t mask, std::size_t left_size, std::size_t right_size) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < left_size; ++i)
    for (std::size_t j = 0; j < right_size; ++j)
      if (mask >> (i * right_size + j) & 1u) pairs.emplace_back(i, j);
  return Correspondence(std::move(pairs), left_size, right_size);
}

Correspondence Correspondence::from_maps(std::span<const std::size_t> f, std::span<const std::size_t> g) {
  std::vector<Pair> pairs;
  pairs.reserve(f.size() + g.size());
  for (std::size_t i = 0; i < f.size(); ++i) pairs.emplace_back(i, f[i]);
  for (std::size_t j = 0; j < g.size(); ++j) pairs.emplace_back(g[j], j);
  return Correspondence(std::move(pairs), f.size(), g.size());
}

bool Correspondence::contains(std::size_t i, std::size_t j) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{i, j});
}

bool Correspondence::is_subset_of(const Correspondence& other) const {
  return left_size_ == other.left_size_ && right_size_ == other.right_size_ &&
         std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

std::vector<std::size_t> image(const Correspondence& r, std::span<const std::size_t> a) {
  std::vector<bool> in_a(r.left_size(), false);
  for (auto i : a) {
    if (i >= r.left_size())
      throw Error(ErrorKind::IndexError, "index " + std::to_string(i) + " outside the left set");
    in_a[i] = true;
  }
  std::vector<std::size_t> out;
  for (const auto& [i, j] : r.pairs())
    if (in_a[i]) out.push_back(j);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Correspondence inverse(const Correspondence& r) {
  std::vector<Correspondence::Pair> pairs;
  pairs.reserve(r.size());
  for (const auto& [i, j] : r.pairs()) pairs.emplace_back(j, i);
  return Correspondence(std::move(pairs), r.right_size(), r.left_size());
}

Scalar distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (r.left_size() != x.size() || r.right_size() != y.size())
    throw Error(ErrorKind::SizeMismatch, "correspondence is " + std::to_string(r.left_size()) + "x" +
                                             std::to_string(r.right_size()) + " but spaces have " +
                                             std::to_string(x.size()) + " and " + std::to_string(y.size()) +
                                             " points");
  Scalar worst(0);
  const auto& pairs = r.pairs();
  // |a - b| is symmetric in the two pairs, so unordered pairs suffice.
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      const auto& dx = x(pairs[p].first, pairs[q].first);
      const auto& dy = y(pairs[p].second, pairs[q].second);
      if (dx > dy) {
        if (dx - dy > worst) worst = dx - dy;
      } else if (dy - dx > worst) {
        worst = dy - dx;
      }
    }
  return worst;
}

CorrespondenceEnumerator::CorrespondenceEnumerator(std::size_t left_size, std::size_t right_size,
                                                   std::size_t cap)
    : left_size_(left_size), right_size_(right_size) {
  const std::size_t cells = left_size * right_size;
  if (cap > kMaxEnumerationCap) cap = kMaxEnumerationCap;
  if (cells == 0 || cells > cap)
    throw Error(ErrorKind::CapExceeded, "grid of " + std::to_string(cells) +
                                            " cells exceeds the enumeration cap of " + std::to_string(cap));
  end_ = std::uint64_t{1} << cells;
  row_masks_.assign(left_size, 0);
  column_masks_.assign(right_size, 0);
  for (std::size_t i = 0; i < left_size; ++i)
    for (std::size_t j = 0; j < right_size; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << (i * right_size + j);
      row_masks_[i] |= bit;
      column_masks_[j] |= bit;
    }
}

bool CorrespondenceEnumerator::covers(std::uint64_t mask) const {
  for (auto m : row_masks_)
    if (!(mask & m)) return false;
  for (auto m : column_masks_)
    if (!(mask & m)) return false;
  return true;
}

std::optional<std::uint64_t> CorrespondenceEnumerator::next_mask() {
  while (++mask_ < end_)
    if (covers(mask_)) return mask_;
  mask_ = end_ - 1;
  return std::nullopt;
}

std::optional<Correspondence> CorrespondenceEnumerator::next() {
  auto mask = next_mask();
  if (!mask) return std::nullopt;
  return Correspondence::from_mask(*mask, left_size_, right_size_);
}

FunctionPairEnumerator::FunctionPairEnumerator(std::size_t left_size, std::size_t right_size)
    : f_(left_size, 0), g_(right_size, 0), left_size_(left_size), right_size_(right_size) {
  if (left_size == 0 || right_size == 0)
    throw Error(ErrorKind::SizeMismatch, "function pairs need nonempty sets");
}

bool FunctionPairEnumerator::advance() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  // Odometer over (f, g) with g's last entry fastest.
  for (std::size_t k = g_.size(); k-- > 0;) {
    if (++g_[k] < left_size_) return true;
    g_[k] = 0;
  }
  for (std::size_t k = f_.size(); k-- > 0;) {
    if (++f_[k] < right_size_) return true;
    f_[k] = 0;
  }
  done_ = true;
  return false;
}

std::optional<Correspondence> FunctionPairEnumerator::next() {
  if (!advance()) return std::nullopt;
  return Correspondence::from_maps(f_, g_);
}

}  // namespace ghforge
