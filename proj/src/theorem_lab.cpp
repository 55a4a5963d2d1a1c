#include "ghforge/theorem_lab.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ghforge/error.hpp"

namespace ghforge {

Scalar linf_product_distance(const ProductPoint& x, const ProductPoint& y, const GhOptions& options) {
  if (x.blocks.size() != y.blocks.size())
    throw Error(ErrorKind::LengthMismatch, "tuples of length " + std::to_string(x.blocks.size()) + " and " +
                                               std::to_string(y.blocks.size()));
  Scalar best(0);
  for (std::size_t k = 0; k < x.blocks.size(); ++k)
    best = std::max(best, gh_exact(x.blocks[k], y.blocks[k], options).value);
  return best;
}

TheoremReport verify_theorem_instance(const ProductPoint& x, const ProductPoint& y,
                                      const EmbeddingParams& params, const GhOptions& options) {
  if (x.blocks.size() != y.blocks.size())
    throw Error(ErrorKind::LengthMismatch, "tuples of length " + std::to_string(x.blocks.size()) + " and " +
                                               std::to_string(y.blocks.size()));
  const EmbeddedSpace ex = embed(x, params);
  const EmbeddedSpace ey = embed(y, params);

  GhOptions block_options = options;
  block_options.hint.reset();

  bool inconclusive = false;
  std::uint64_t block_nodes = 0;
  std::vector<Scalar> per_block;
  std::vector<Correspondence> block_witnesses;
  Scalar rhs(0);
  for (std::size_t k = 0; k < params.n; ++k) {
    GhResult r = gh_exact(x.blocks[k], y.blocks[k], block_options);
    inconclusive = inconclusive || !r.exact;
    block_nodes += r.nodes_explored;
    rhs = std::max(rhs, r.value);
    per_block.push_back(r.value);
    block_witnesses.push_back(std::move(r.witness));
  }

  Correspondence glued = glue_correspondence(block_witnesses, ex, ey);
  Scalar glued_value = distortion(glued, ex.space, ey.space) / Scalar(2);

  GhOptions glued_options = options;
  glued_options.hint.reset();
  GhResult lhs = gh_exact(ex.space, ey.space, glued_options);
  inconclusive = inconclusive || !lhs.exact;

  const bool equal = !inconclusive && lhs.value == rhs;
  return TheoremReport{std::move(lhs.value), std::move(rhs), std::move(per_block), equal, inconclusive,
                       std::move(lhs.witness), std::move(glued), std::move(glued_value), params,
                       lhs.nodes_explored, block_nodes};
}

namespace {

void require_low_distortion(const Correspondence& r, const EmbeddedSpace& x, const EmbeddedSpace& y) {
  if (!(x.params == y.params)) throw Error(ErrorKind::ParamMismatch, "gluings use different (r, n)");
  const Scalar dis = distortion(r, x.space, y.space);
  const Scalar limit = Scalar(2) * x.params.r;
  if (!(dis < limit))
    throw Error(ErrorKind::DistortionTooLarge, "dis(R) = " + dis.str() + " is not below 2r = " + limit.str());
}

// Single anchor index that R sends `from` to, or StructureViolation.
std::size_t anchor_image(const Correspondence& r, const EmbeddedSpace& y, std::size_t from) {
  const std::size_t a[] = {from};
  const auto img = image(r, a);
  if (img.size() != 1 || y.block_of[img.front()] != 0)
    throw Error(ErrorKind::StructureViolation,
                "anchor " + std::to_string(from) + " is not sent to exactly one anchor point");
  return img.front();
}

// sigma[k - 1] = the single block containing R[X_k].
std::vector<std::size_t> block_map(const Correspondence& r, const EmbeddedSpace& x, const EmbeddedSpace& y) {
  const std::size_t n = x.params.n;
  std::vector<std::size_t> sigma(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto img = image(r, x.block_points(k));
    std::size_t target = y.block_of[img.front()];
    for (auto j : img)
      if (y.block_of[j] != target)
        throw Error(ErrorKind::StructureViolation, "image of block " + std::to_string(k) + " straddles blocks " +
                                                       std::to_string(target) + " and " +
                                                       std::to_string(y.block_of[j]));
    if (target == 0)
      throw Error(ErrorKind::StructureViolation, "block " + std::to_string(k) + " is sent into the anchor pair");
    sigma[k - 1] = target;
  }
  auto sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < n; ++k)
    if (sorted[k] != k + 1) throw Error(ErrorKind::StructureViolation, "block map is not a permutation");
  return sigma;
}

}  // namespace

AnchorMap recover_anchor_map(const Correspondence& r, const EmbeddedSpace& x, const EmbeddedSpace& y) {
  require_low_distortion(r, x, y);
  AnchorMap map{anchor_image(r, y, 0), anchor_image(r, y, 1)};
  if (map.plus_to == map.minus_to)
    throw Error(ErrorKind::StructureViolation, "both anchors are sent to the same point");
  return map;
}

std::vector<std::size_t> recover_block_permutation(const Correspondence& r, const EmbeddedSpace& x,
                                                   const EmbeddedSpace& y) {
  require_low_distortion(r, x, y);
  auto sigma = block_map(r, x, y);
  const auto tau = block_map(inverse(r), y, x);
  for (std::size_t k = 0; k < sigma.size(); ++k)
    if (tau[sigma[k] - 1] != k + 1)
      throw Error(ErrorKind::StructureViolation, "block maps of R and R^-1 are not mutually inverse");
  return sigma;
}

Correspondence block_restriction(const Correspondence& r, const EmbeddedSpace& x, const EmbeddedSpace& y,
                                 std::size_t k) {
  const auto xs = x.block_points(k);
  const auto ys = y.block_points(k);
  std::vector<Correspondence::Pair> local;
  for (const auto& [i, j] : r.pairs()) {
    if (x.block_of[i] != k || y.block_of[j] != k) continue;
    const auto li = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), i) - xs.begin());
    const auto lj = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), j) - ys.begin());
    local.emplace_back(li, lj);
  }
  try {
    return Correspondence(std::move(local), xs.size(), ys.size());
  } catch (const Error& e) {
    throw Error(ErrorKind::StructureViolation,
                "restriction to block " + std::to_string(k) + " is not a correspondence: " + e.what());
  }
}

std::vector<FiniteMetricSpace> embed_real_points(const std::vector<Scalar>& values, const Scalar& offset) {
  if (offset.sign() <= 0) throw Error(ErrorKind::NonpositiveOffset, "offset must be positive, got " + offset.str());
  std::vector<FiniteMetricSpace> out;
  for (const auto& t : values) {
    if (t.sign() < 0) throw Error(ErrorKind::RangeExceeded, "value " + t.str() + " is negative; shift inputs first");
    out.push_back(two_point_space(offset + Scalar(2) * t));
  }
  return out;
}

LinfEmbedding embed_linf_points(const std::vector<std::vector<Scalar>>& points, const Scalar& offset,
                                const std::optional<Scalar>& r) {
  if (points.empty()) throw Error(ErrorKind::DimensionMismatch, "no points given");
  const std::size_t n = points.front().size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "points must have at least one coordinate");
  for (const auto& p : points)
    if (p.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "point of dimension " + std::to_string(p.size()) +
                                                    " among points of dimension " + std::to_string(n));
  if (offset.sign() <= 0) throw Error(ErrorKind::NonpositiveOffset, "offset must be positive, got " + offset.str());

  std::vector<Scalar> shift(n), range(n);
  for (std::size_t k = 0; k < n; ++k) {
    Scalar lo = points.front()[k], hi = points.front()[k];
    for (const auto& p : points) {
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    shift[k] = lo;
    range[k] = hi - lo;
  }
  const Scalar required = offset + Scalar(2) * *std::max_element(range.begin(), range.end());
  EmbeddingParams params{r ? *r : ceil(required), n};
  if (params.r < required)
    throw Error(ErrorKind::RangeExceeded,
                "r = " + params.r.str() + " is below offset + 2 * range = " + required.str());

  LinfEmbedding out{params, shift, {}};
  for (const auto& p : points) {
    std::vector<Scalar> shifted(n);
    for (std::size_t k = 0; k < n; ++k) shifted[k] = p[k] - shift[k];
    out.spaces.push_back(embed(ProductPoint{embed_real_points(shifted, offset)}, params));
  }
  return out;
}

Scalar linf_distance(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vectors of different dimension");
  Scalar best(0);
  for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, abs(a[k] - b[k]));
  return best;
}

namespace {

// Uniform in [0, bound) without relying on implementation-defined
// distributions, so streams are identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ProductPoint random_product_point(std::uint64_t seed, std::size_t n, const Scalar& r,
                                  std::size_t max_block_size) {
  if (n == 0 || max_block_size == 0 || r.sign() <= 0)
    throw Error(ErrorKind::ParamMismatch, "random_product_point needs positive n, r and block size");
  std::mt19937_64 rng(seed);
  const Scalar unit = r / Scalar(12);
  ProductPoint out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t size = 1 + draw(rng, max_block_size);
    DistanceMatrix m(size, std::vector<Scalar>(size, Scalar(0)));
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j)
        m[i][j] = m[j][i] = unit * Scalar(static_cast<long>(6 + draw(rng, 7)));
    out.blocks.push_back(make_space(std::move(m)));
  }
  return out;
}

std::pair<ProductPoint, ProductPoint> suite_instance(const SuiteConfig& config, std::size_t i) {
  const std::uint64_t base = splitmix(config.seed);
  const auto& p = config.params;
  return {random_product_point(splitmix(base + 2 * i), p.n, p.r, config.max_block_size),
          random_product_point(splitmix(base + 2 * i + 1), p.n, p.r, config.max_block_size)};
}

std::vector<TheoremReport> run_theorem_suite(const SuiteConfig& config) {
  check_params(config.params);
  std::vector<TheoremReport> reports;
  for (std::size_t i = 0; i < config.instances; ++i) {
    auto [x, y] = suite_instance(config, i);
    reports.push_back(verify_theorem_instance(x, y, config.params, config.search));
  }
  return reports;
}

}  // namespace ghforge
