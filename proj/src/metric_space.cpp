#include "ghforge/metric_space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ghforge/error.hpp"

namespace ghforge {

namespace {

std::string describe(Axiom axiom, const std::vector<std::string>& labels,
                     const std::vector<std::size_t>& witness) {
  std::ostringstream os;
  os << "metric axiom violated (" << to_string(axiom) << ") at (";
  for (std::size_t k = 0; k < witness.size(); ++k) os << (k ? "," : "") << labels[witness[k]];
  os << ")";
  return os.str();
}

[[noreturn]] void violation(Axiom axiom, std::vector<std::size_t> witness,
                            const std::vector<std::string>& labels) {
  auto message = describe(axiom, labels, witness);
  throw AxiomViolation(axiom, std::move(witness), message);
}

}  // namespace

FiniteMetricSpace validate_metric(std::vector<std::string> labels, DistanceMatrix matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorKind::LabelError, "a metric space needs at least one point");
  if (labels.size() != n)
    throw Error(ErrorKind::LabelError, "label count " + std::to_string(labels.size()) +
                                           " does not match matrix dimension " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (matrix[i].size() != n)
      throw Error(ErrorKind::LabelError, "matrix row " + std::to_string(i) + " has length " +
                                             std::to_string(matrix[i].size()) + ", expected " +
                                             std::to_string(n));
  {
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw Error(ErrorKind::LabelError, "duplicate label \"" + l + "\"");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i].sign() != 0) violation(Axiom::NonzeroDiagonal, {i}, labels);
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j].sign() < 0) violation(Axiom::Negative, {i, j}, labels);
      if (matrix[i][j] != matrix[j][i]) violation(Axiom::Asymmetry, {i, j}, labels);
      if (i != j && matrix[i][j].sign() == 0) violation(Axiom::ZeroOffDiagonal, {i, j}, labels);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (matrix[i][k] > matrix[i][j] + matrix[j][k]) violation(Axiom::Triangle, {i, j, k}, labels);

  return FiniteMetricSpace(std::move(labels), std::move(matrix));
}

FiniteMetricSpace make_space(DistanceMatrix matrix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < matrix.size(); ++i) labels.push_back(std::to_string(i));
  return validate_metric(std::move(labels), std::move(matrix));
}

FiniteMetricSpace one_point_space() { return validate_metric({"pt"}, {{Scalar(0)}}); }

FiniteMetricSpace two_point_space(const Scalar& distance) {
  return validate_metric({"a", "b"}, {{Scalar(0), distance}, {distance, Scalar(0)}});
}

Scalar diameter(const FiniteMetricSpace& space) {
  Scalar best(0);
  for (const auto& row : space.matrix())
    for (const auto& d : row) best = std::max(best, d);
  return best;
}

Scalar eccentricity(const FiniteMetricSpace& space, std::size_t i) {
  const auto& row = space.matrix().at(i);
  return *std::max_element(row.begin(), row.end());
}

FiniteMetricSpace subspace(const FiniteMetricSpace& space, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorKind::IndexError, "subspace needs at least one index");
  std::set<std::size_t> seen;
  for (auto i : indices) {
    if (i >= space.size())
      throw Error(ErrorKind::IndexError, "index " + std::to_string(i) + " out of range for a " +
                                             std::to_string(space.size()) + "-point space");
    if (!seen.insert(i).second) throw Error(ErrorKind::IndexError, "repeated index " + std::to_string(i));
  }
  std::vector<std::string> labels;
  DistanceMatrix m(indices.size(), std::vector<Scalar>(indices.size()));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    labels.push_back(space.label(indices[a]));
    for (std::size_t b = 0; b < indices.size(); ++b) m[a][b] = space(indices[a], indices[b]);
  }
  return validate_metric(std::move(labels), std::move(m));
}

FiniteMetricSpace scale(const FiniteMetricSpace& space, const Scalar& factor) {
  if (factor.sign() <= 0) throw Error(ErrorKind::NonpositiveFactor, "scale factor must be positive, got " + factor.str());
  DistanceMatrix m = space.matrix();
  for (auto& row : m)
    for (auto& d : row) d *= factor;
  return validate_metric(space.labels(), std::move(m));
}

FiniteMetricSpace permute(const FiniteMetricSpace& space, std::span<const std::size_t> perm) {
  if (perm.size() != space.size()) throw Error(ErrorKind::IndexError, "permutation has the wrong length");
  return subspace(space, perm);
}

namespace {

struct IsometrySearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  std::vector<std::vector<bool>> compatible;  // compatible[i][j]: same distance profile
  std::vector<std::size_t> order;             // X points in assignment order
  std::vector<std::size_t> phi;
  std::vector<bool> used;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t i = order[depth];
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (used[j] || !compatible[i][j]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t k = order[d];
        ok = x(i, k) == y(j, phi[k]);
      }
      if (!ok) continue;
      phi[i] = j;
      used[j] = true;
      if (extend(depth + 1)) return true;
      used[j] = false;
    }
    return false;
  }
};

std::vector<Scalar> profile(const FiniteMetricSpace& s, std::size_t i) {
  auto row = s.matrix()[i];
  std::sort(row.begin(), row.end());
  return row;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isometry(const FiniteMetricSpace& x,
                                                      const FiniteMetricSpace& y) {
  const std::size_t n = x.size();
  if (n != y.size()) return std::nullopt;
  if (x.matrix() == y.matrix()) {
    std::vector<std::size_t> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = i;
    return identity;
  }

  std::vector<std::vector<Scalar>> px, py;
  for (std::size_t i = 0; i < n; ++i) {
    px.push_back(profile(x, i));
    py.push_back(profile(y, i));
  }
  {
    auto sx = px, sy = py;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return std::nullopt;
  }

  IsometrySearch search{x, y, {}, {}, std::vector<std::size_t>(n), std::vector<bool>(n, false)};
  search.compatible.assign(n, std::vector<bool>(n));
  std::vector<std::size_t> candidates(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      search.compatible[i][j] = px[i] == py[j];
      candidates[i] += search.compatible[i][j] ? 1 : 0;
    }
  // Most constrained points first.
  search.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) search.order[i] = i;
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](std::size_t a, std::size_t b) { return candidates[a] < candidates[b]; });

  if (!search.extend(0)) return std::nullopt;
  return search.phi;
}

}  // namespace ghforge
