#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ghforge/embedding.hpp"
#include "ghforge/gh_distance.hpp"

namespace ghforge {

/// Both sides of d_GH(S(X), S(Y)) = max_k d_GH(X_k, Y_k) for one instance.
struct TheoremReport {
  Scalar lhs;                   // d_GH of the two gluings
  Scalar rhs;                   // max of per_block
  std::vector<Scalar> per_block;
  bool equal = false;           // lhs == rhs and the search was exact
  bool inconclusive = false;    // some search hit its node budget
  Correspondence witness;       // minimal correspondence between the gluings
  Correspondence glued;         // R_0 ∪ R_1 ∪ ... ∪ R_n from per-block witnesses
  Scalar glued_value;           // dis(glued) / 2
  EmbeddingParams params;
  std::uint64_t nodes = 0;        // search on the gluings
  std::uint64_t block_nodes = 0;  // searches on the blocks
};

/// max_k d_GH(X_k, Y_k). Error{LengthMismatch} on tuples of different length.
Scalar linf_product_distance(const ProductPoint& x, const ProductPoint& y, const GhOptions& options = {});

TheoremReport verify_theorem_instance(const ProductPoint& x, const ProductPoint& y,
                                      const EmbeddingParams& params, const GhOptions& options = {});

/// Image of each anchor under R, as anchor indices (0 = "p+", 1 = "p-").
struct AnchorMap {
  std::size_t plus_to = 0;
  std::size_t minus_to = 1;

  bool is_identity() const { return plus_to == 0 && minus_to == 1; }
  friend bool operator==(const AnchorMap&, const AnchorMap&) = default;
};

/// For dis(R) < 2r, R sends each anchor to exactly one anchor and the two
/// images differ. Errors: DistortionTooLarge if dis(R) >= 2r;
/// StructureViolation if the anchor images are not a bijection of {p+, p-}.
AnchorMap recover_anchor_map(const Correspondence& r, const EmbeddedSpace& x, const EmbeddedSpace& y);

/// For dis(R) < 2r, every R[X_k] lies in a single block Y_sigma(k) with
/// sigma a permutation of {1..n}, and R^{-1}[Y_k] lies in X_sigma^{-1}(k).
/// Returns sigma with sigma[k - 1] = sigma(k).
/// Errors: DistortionTooLarge, StructureViolation.
std::vector<std::size_t> recover_block_permutation(const Correspondence& r, const EmbeddedSpace& x,
                                                   const EmbeddedSpace& y);

/// R ∩ (X_k x Y_k) in block-local indices. Error{StructureViolation} if it
/// does not cover both blocks.
Correspondence block_restriction(const Correspondence& r, const EmbeddedSpace& x, const EmbeddedSpace& y,
                                 std::size_t k);

inline const Scalar kDefaultRealOffset{1};

/// t -> two-point space at distance offset + 2t, so that
/// d_GH(P_s, P_t) = |s - t|. Values must be >= 0 (Error{RangeExceeded}).
std::vector<FiniteMetricSpace> embed_real_points(const std::vector<Scalar>& values,
                                                 const Scalar& offset = kDefaultRealOffset);

struct LinfEmbedding {
  EmbeddingParams params;
  std::vector<Scalar> shift;  // subtracted from each coordinate
  std::vector<EmbeddedSpace> spaces;
};

/// Embeds points of (R^n, sup-norm) as gluings of two-point spaces. Each
/// coordinate is shifted to start at 0; r is `r` if given (RangeExceeded if
/// r < offset + 2 * range) and otherwise ceil(offset + 2 * range).
/// Error{DimensionMismatch} on ragged or empty input.
LinfEmbedding embed_linf_points(const std::vector<std::vector<Scalar>>& points,
                                const Scalar& offset = kDefaultRealOffset,
                                const std::optional<Scalar>& r = std::nullopt);

/// max_k |a_k - b_k|.
Scalar linf_distance(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

/// Deterministic tuple of n spaces with 1..max_block_size points each.
/// Off-diagonal distances are k * r / 12 for k uniform in [6, 12], so every
/// block is a metric (max <= 2 * min) with diameter <= r.
ProductPoint random_product_point(std::uint64_t seed, std::size_t n, const Scalar& r,
                                  std::size_t max_block_size);

struct SuiteConfig {
  std::uint64_t seed = 7;
  std::size_t instances = 50;
  EmbeddingParams params{Scalar(1), 2};
  std::size_t max_block_size = 2;
  GhOptions search;
};

/// The (X, Y) pair for instance i of a suite; X and Y come from independent
/// streams derived from (seed, i).
std::pair<ProductPoint, ProductPoint> suite_instance(const SuiteConfig& config, std::size_t i);

std::vector<TheoremReport> run_theorem_suite(const SuiteConfig& config);

}  // namespace ghforge
