#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ghforge/correspondence.hpp"
#include "ghforge/metric_space.hpp"

namespace ghforge::oracle {

inline Scalar q(long p, long d = 1) { return Scalar(p, d); }

/// Every metric space on 1..max_points points whose off-diagonal distances
/// come from `values` (labelled matrices, so isometric copies repeat).
inline std::vector<FiniteMetricSpace> small_corpus(const std::vector<Scalar>& values, std::size_t max_points = 3) {
  std::vector<FiniteMetricSpace> out;
  out.push_back(one_point_space());
  for (std::size_t n = 2; n <= max_points; ++n) {
    const std::size_t edges = n * (n - 1) / 2;
    std::vector<std::size_t> digit(edges, 0);
    while (true) {
      DistanceMatrix m(n, std::vector<Scalar>(n, Scalar(0)));
      std::size_t e = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++e) m[i][j] = m[j][i] = values[digit[e]];
      try {
        out.push_back(make_space(std::move(m)));
      } catch (const std::exception&) {
      }
      std::size_t k = 0;
      while (k < edges && ++digit[k] == values.size()) digit[k++] = 0;
      if (k == edges) break;
    }
  }
  return out;
}

/// Random space with distances k/den for k uniform in [den/2, den]; such
/// matrices always satisfy the triangle inequality.
inline FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n, long den = 8) {
  DistanceMatrix m(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m[i][j] = m[j][i] = Scalar(den / 2 + static_cast<long>(rng() % static_cast<std::uint64_t>(den / 2 + 1)), den);
  return make_space(std::move(m));
}

/// dis(R) straight from the definition: every ordered pair of pairs.
inline Scalar naive_distortion(const std::vector<Correspondence::Pair>& pairs, const FiniteMetricSpace& x,
                               const FiniteMetricSpace& y) {
  Scalar worst(0);
  for (const auto& [a, b] : pairs)
    for (const auto& [c, d] : pairs) worst = std::max(worst, abs(x(a, c) - y(b, d)));
  return worst;
}

/// min dis(R) / 2 over every subset of X x Y that covers both sides,
/// enumerated as vector<bool> grids.
inline Scalar naive_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const std::size_t l = x.size(), r = y.size(), cells = l * r;
  std::optional<Scalar> best;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << cells); ++s) {
    std::vector<bool> row(l, false), col(r, false);
    std::vector<Correspondence::Pair> pairs;
    for (std::size_t c = 0; c < cells; ++c)
      if (s >> c & 1u) {
        row[c / r] = col[c % r] = true;
        pairs.emplace_back(c / r, c % r);
      }
    if (std::find(row.begin(), row.end(), false) != row.end()) continue;
    if (std::find(col.begin(), col.end(), false) != col.end()) continue;
    Scalar d = naive_distortion(pairs, x, y);
    if (!best || d < *best) best = d;
  }
  return *best / Scalar(2);
}

}  // namespace ghforge::oracle
