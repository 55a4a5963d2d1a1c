#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghforge/rational.hpp"

namespace ghforge {

using DistanceMatrix = std::vector<std::vector<Scalar>>;

/// A finite metric space with exact rational distances. Points are addressed
/// by index; labels are metadata for I/O and block bookkeeping.
///
/// Instances can only be obtained through validate_metric() (or operations
/// built on it), so every FiniteMetricSpace satisfies the metric axioms, has
/// at least one point, and has pairwise distinct labels.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const DistanceMatrix& matrix() const noexcept { return dist_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return dist_[i][j]; }

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  FiniteMetricSpace(std::vector<std::string> labels, DistanceMatrix dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {}

  friend FiniteMetricSpace validate_metric(std::vector<std::string> labels, DistanceMatrix matrix);

  std::vector<std::string> labels_;
  DistanceMatrix dist_;
};

/// Checks shape, labels and all metric axioms exhaustively (O(n^3)).
/// Throws Error{LabelError} or AxiomViolation; the first violation found in
/// row-major order is reported.
FiniteMetricSpace validate_metric(std::vector<std::string> labels, DistanceMatrix matrix);

/// Convenience for tests and generators: labels "0", "1", ...
FiniteMetricSpace make_space(DistanceMatrix matrix);

/// A single point labelled "pt".
FiniteMetricSpace one_point_space();

/// Two points "a", "b" at the given distance.
FiniteMetricSpace two_point_space(const Scalar& distance);

Scalar diameter(const FiniteMetricSpace& space);

/// Largest distance from point i.
Scalar eccentricity(const FiniteMetricSpace& space, std::size_t i);

/// Induced metric on the chosen points, in the given order.
FiniteMetricSpace subspace(const FiniteMetricSpace& space, std::span<const std::size_t> indices);

FiniteMetricSpace scale(const FiniteMetricSpace& space, const Scalar& factor);

/// Reorders the points: point k of the result is point perm[k] of `space`.
FiniteMetricSpace permute(const FiniteMetricSpace& space, std::span<const std::size_t> perm);

/// Returns `phi` with d_X(i, j) == d_Y(phi[i], phi[j]) for all i, j, or
/// nullopt if X and Y are not isometric. Candidate images are filtered by the
/// sorted multiset of distances from each point before backtracking.
std::optional<std::vector<std::size_t>> find_isometry(const FiniteMetricSpace& x,
                                                      const FiniteMetricSpace& y);

}  // namespace ghforge
