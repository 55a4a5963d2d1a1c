#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "ghforge/correspondence.hpp"
#include "ghforge/metric_space.hpp"

namespace ghforge {

enum class GhMethod { Bruteforce, FunctionPairs, BranchAndBound };

std::string_view to_string(GhMethod method);

/// d_GH(X, Y) together with a correspondence realizing it:
/// distortion(witness) == 2 * value, exactly.
struct GhResult {
  Scalar value;
  Correspondence witness;
  std::uint64_t nodes_explored = 0;
  GhMethod method = GhMethod::BranchAndBound;
  /// False when a node budget ran out; `value` is then only an upper bound.
  bool exact = true;
};

/// Minimum of dis(R)/2 over every correspondence, by enumeration of all
/// subsets of X x Y. The witness is the first minimizer in bitmask order.
/// Requires |X| * |Y| <= cap (Error{CapExceeded}).
GhResult gh_bruteforce(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                       std::size_t cap = kDefaultEnumerationCap);

/// Minimum of dis(R)/2 over the graph(f) ∪ graph(g)^{-1} family, by plain
/// enumeration of every (f, g). Cost is |Y|^|X| * |X|^|Y| candidates.
GhResult gh_function_pairs(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct GhOptions {
  /// Node limit; the search is split into |Y| subtrees and each gets an equal
  /// share, so the outcome does not depend on the worker count.
  std::optional<std::uint64_t> budget;
  /// Worker threads; 0 reads GHFORGE_WORKERS (default 1).
  std::size_t workers = 0;
  /// Any known correspondence; its distortion seeds the pruning bound.
  std::optional<Correspondence> hint;
};

/// Exact d_GH by depth-first branch and bound over the function-pair family.
/// f is assigned on X, then g on Y, each side in decreasing-eccentricity
/// order; a node is cut once its partial distortion reaches the best leaf
/// found so far. The witness is the first minimizer in that search order and
/// does not depend on the number of workers, nor does nodes_explored.
GhResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options = {});

/// |diam(X) - diam(Y)| / 2.
Scalar gh_lower_bound_diam(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// dis(X x Y) / 2.
Scalar gh_upper_bound_full_relation(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Number of nodes gh_exact would visit with no pruning at all.
std::uint64_t unpruned_node_count(std::size_t left_size, std::size_t right_size);

/// GHFORGE_WORKERS as a positive integer; 1 when unset or malformed.
std::size_t workers_from_env();

}  // namespace ghforge
