#pragma once

#include <cstddef>
#include <vector>

#include "ghforge/correspondence.hpp"
#include "ghforge/metric_space.hpp"

namespace ghforge {

/// Radius cap r and tuple length n of the gluing map.
struct EmbeddingParams {
  Scalar r;
  std::size_t n = 1;

  friend bool operator==(const EmbeddingParams&, const EmbeddingParams&) = default;
};

/// Throws Error{NonpositiveR} for r <= 0 and Error{ParamMismatch} for n == 0.
void check_params(const EmbeddingParams& params);

/// A point of the n-fold product: n spaces, each of diameter <= r.
struct ProductPoint {
  std::vector<FiniteMetricSpace> blocks;
};

/// Glued space plus its block structure. Block 0 is the anchor pair
/// {"p+", "p-"} at indices 0 and 1; block k >= 1 holds a copy of X_k with
/// labels prefixed "k:". Blocks occupy contiguous index ranges in order.
struct EmbeddedSpace {
  FiniteMetricSpace space;
  std::vector<std::size_t> block_of;
  EmbeddingParams params;

  /// Point indices of block k, ascending.
  std::vector<std::size_t> block_points(std::size_t k) const;
};

/// Two points "p+", "p-" at distance 3r.
FiniteMetricSpace anchor_space(const Scalar& r);

/// Glues the blocks of X behind the anchor pair: distances inside a block are
/// kept, points of blocks k != l are 5r|k - l| apart. The result is
/// re-validated and has diameter exactly 5rn.
/// Errors: ParamMismatch (|blocks| != n), DiameterExceeded (some diam > r).
EmbeddedSpace embed(const ProductPoint& x, const EmbeddingParams& params);

/// Verifies every block of X has diameter <= r and there are n of them.
void check_product_point(const ProductPoint& x, const EmbeddingParams& params);

/// R_0 ∪ R_1 ∪ ... ∪ R_n between two gluings, where R_0 matches p+ with p+
/// and p- with p-, and R_k (k >= 1) is given in block-local indices.
/// dis of the result equals max_k dis(R_k).
Correspondence glue_correspondence(const std::vector<Correspondence>& blocks, const EmbeddedSpace& x,
                                   const EmbeddedSpace& y);

}  // namespace ghforge
