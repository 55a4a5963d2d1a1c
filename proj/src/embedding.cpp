#include "ghforge/embedding.hpp"

#include <stdexcept>
#include <string>

#include "ghforge/error.hpp"

namespace ghforge {

void check_params(const EmbeddingParams& params) {
  if (params.r.sign() <= 0) throw Error(ErrorKind::NonpositiveR, "r must be positive, got " + params.r.str());
  if (params.n == 0) throw Error(ErrorKind::ParamMismatch, "n must be at least 1");
}

std::vector<std::size_t> EmbeddedSpace::block_points(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < block_of.size(); ++i)
    if (block_of[i] == k) out.push_back(i);
  return out;
}

FiniteMetricSpace anchor_space(const Scalar& r) {
  if (r.sign() <= 0) throw Error(ErrorKind::NonpositiveR, "r must be positive, got " + r.str());
  const Scalar d = Scalar(3) * r;
  return validate_metric({"p+", "p-"}, {{Scalar(0), d}, {d, Scalar(0)}});
}

void check_product_point(const ProductPoint& x, const EmbeddingParams& params) {
  check_params(params);
  if (x.blocks.size() != params.n)
    throw Error(ErrorKind::ParamMismatch, "expected " + std::to_string(params.n) + " blocks, got " +
                                              std::to_string(x.blocks.size()));
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    const Scalar d = diameter(x.blocks[k]);
    if (d > params.r)
      throw Error(ErrorKind::DiameterExceeded, "block " + std::to_string(k + 1) + " has diameter " + d.str() +
                                                   " > r = " + params.r.str());
  }
}

EmbeddedSpace embed(const ProductPoint& x, const EmbeddingParams& params) {
  check_product_point(x, params);

  std::vector<std::string> labels{"p+", "p-"};
  std::vector<std::size_t> block_of{0, 0};
  std::vector<std::size_t> local{0, 1};  // index inside the source block
  for (std::size_t k = 1; k <= params.n; ++k) {
    const auto& block = x.blocks[k - 1];
    for (std::size_t i = 0; i < block.size(); ++i) {
      labels.push_back(std::to_string(k) + ":" + block.label(i));
      block_of.push_back(k);
      local.push_back(i);
    }
  }

  const FiniteMetricSpace anchor = anchor_space(params.r);
  const Scalar step = Scalar(5) * params.r;
  const std::size_t total = labels.size();
  DistanceMatrix m(total, std::vector<Scalar>(total));
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      const std::size_t k = block_of[a], l = block_of[b];
      if (k == l) {
        m[a][b] = k == 0 ? anchor(local[a], local[b]) : x.blocks[k - 1](local[a], local[b]);
      } else {
        m[a][b] = step * Scalar(static_cast<long>(k > l ? k - l : l - k));
      }
    }

  EmbeddedSpace out{validate_metric(std::move(labels), std::move(m)), std::move(block_of), params};
  if (diameter(out.space) != step * Scalar(static_cast<long>(params.n)))
    throw std::logic_error("glued space does not have diameter 5rn");
  return out;
}

Correspondence glue_correspondence(const std::vector<Correspondence>& blocks, const EmbeddedSpace& x,
                                   const EmbeddedSpace& y) {
  if (!(x.params == y.params)) throw Error(ErrorKind::ParamMismatch, "gluings use different (r, n)");
  const std::size_t n = x.params.n;
  if (blocks.size() != n)
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(n) + " block correspondences, got " +
                                             std::to_string(blocks.size()));

  std::vector<Correspondence::Pair> pairs{{0, 0}, {1, 1}};
  for (std::size_t k = 1; k <= n; ++k) {
    const auto xs = x.block_points(k);
    const auto ys = y.block_points(k);
    const auto& r = blocks[k - 1];
    if (r.left_size() != xs.size() || r.right_size() != ys.size())
      throw Error(ErrorKind::SizeMismatch, "correspondence for block " + std::to_string(k) + " is " +
                                               std::to_string(r.left_size()) + "x" +
                                               std::to_string(r.right_size()) + ", blocks are " +
                                               std::to_string(xs.size()) + "x" + std::to_string(ys.size()));
    for (const auto& [i, j] : r.pairs()) pairs.emplace_back(xs[i], ys[j]);
  }
  return Correspondence(std::move(pairs), x.space.size(), y.space.size());
}

}  // namespace ghforge
