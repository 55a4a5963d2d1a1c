#include "ghforge/gh_distance.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "ghforge/error.hpp"

namespace ghforge {

std::string_view to_string(GhMethod method) {
  switch (method) {
    case GhMethod::Bruteforce: return "bruteforce";
    case GhMethod::FunctionPairs: return "function_pairs";
    case GhMethod::BranchAndBound: return "branch_and_bound";
  }
  return "unknown";
}

std::size_t workers_from_env() {
  const char* raw = std::getenv("GHFORGE_WORKERS");
  if (!raw || !*raw) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return 1;
  return static_cast<std::size_t>(std::min<unsigned long long>(v, 256));
}

Scalar gh_lower_bound_diam(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return abs(diameter(x) - diameter(y)) / Scalar(2);
}

Scalar gh_upper_bound_full_relation(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return distortion(Correspondence::full(x.size(), y.size()), x, y) / Scalar(2);
}

std::uint64_t unpruned_node_count(std::size_t left_size, std::size_t right_size) {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::size_t d = 0; d < left_size; ++d) {
    level *= right_size;
    total += level;
  }
  const std::uint64_t leaves_of_f = level;
  level = 1;
  std::uint64_t g_part = 0;
  for (std::size_t d = 0; d < right_size; ++d) {
    level *= left_size;
    g_part += level;
  }
  return total + leaves_of_f * g_part;
}

namespace {

// Ranks of |d_X(i1, i2) - d_Y(j1, j2)| over all pairs of grid cells
// (cell = i * |Y| + j). Ranks preserve order, so maxima and comparisons can be
// done on small integers while staying exact.
class DiffRanks {
 public:
  DiffRanks(const FiniteMetricSpace& x, const FiniteMetricSpace& y)
      : right_(y.size()), cells_(x.size() * y.size()), rank_(cells_ * cells_) {
    std::vector<Scalar> values(cells_ * cells_);
    for (std::size_t c1 = 0; c1 < cells_; ++c1)
      for (std::size_t c2 = 0; c2 < cells_; ++c2)
        values[c1 * cells_ + c2] = abs(x(c1 / right_, c2 / right_) - y(c1 % right_, c2 % right_));
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t k = 0; k < values.size(); ++k)
      rank_[k] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), values[k]) -
                                            sorted.begin());
  }

  std::size_t cell(std::size_t i, std::size_t j) const { return i * right_ + j; }

  // Max rank over pairs of `cells`, or nullopt once it reaches `cutoff`.
  std::optional<std::uint32_t> max_below(const std::vector<std::size_t>& cells, std::uint32_t cutoff) const {
    std::uint32_t worst = 0;
    for (std::size_t p = 0; p < cells.size(); ++p)
      for (std::size_t q = p + 1; q < cells.size(); ++q) {
        const auto w = rank_[cells[p] * cells_ + cells[q]];
        if (w > worst) {
          worst = w;
          if (worst >= cutoff) return std::nullopt;
        }
      }
    if (worst >= cutoff) return std::nullopt;
    return worst;
  }

 private:
  std::size_t right_;
  std::size_t cells_;
  std::vector<std::uint32_t> rank_;
};

GhResult finish(Correspondence witness, const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                std::uint64_t nodes, GhMethod method, bool exact) {
  Scalar value = distortion(witness, x, y) / Scalar(2);
  return GhResult{std::move(value), std::move(witness), nodes, method, exact};
}

}  // namespace

GhResult gh_bruteforce(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t cap) {
  CorrespondenceEnumerator stream(x.size(), y.size(), cap);
  const DiffRanks ranks(x, y);
  const std::size_t cells = x.size() * y.size();

  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  std::uint64_t best_mask = 0;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> members;
  while (auto mask = stream.next_mask()) {
    ++nodes;
    members.clear();
    for (std::size_t c = 0; c < cells; ++c)
      if (*mask >> c & 1u) members.push_back(c);
    if (auto worst = ranks.max_below(members, best)) {
      best = *worst;
      best_mask = *mask;
    }
  }
  return finish(Correspondence::from_mask(best_mask, x.size(), y.size()), x, y, nodes, GhMethod::Bruteforce,
                true);
}

GhResult gh_function_pairs(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  FunctionPairEnumerator stream(x.size(), y.size());
  const DiffRanks ranks(x, y);

  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::size_t> best_f, best_g;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> members;
  while (stream.advance()) {
    ++nodes;
    members.clear();
    const auto f = stream.f();
    const auto g = stream.g();
    for (std::size_t i = 0; i < f.size(); ++i) members.push_back(ranks.cell(i, f[i]));
    for (std::size_t j = 0; j < g.size(); ++j) members.push_back(ranks.cell(g[j], j));
    if (auto worst = ranks.max_below(members, best)) {
      best = *worst;
      best_f.assign(f.begin(), f.end());
      best_g.assign(g.begin(), g.end());
    }
  }
  return finish(Correspondence::from_maps(best_f, best_g), x, y, nodes, GhMethod::FunctionPairs, true);
}

namespace {

template <typename T>
T absdiff(const T& a, const T& b) {
  return a > b ? a - b : b - a;
}

template <typename T>
struct SubtreeOutcome {
  bool found = false;
  T best{};
  std::vector<std::size_t> f, g;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

// Depth-first search over (f, g) with f fixed first. T is either int64_t
// (distances rescaled to a common denominator) or Rational.
template <typename T>
class BranchAndBound {
 public:
  BranchAndBound(std::vector<T> dx, std::vector<T> dy, std::size_t n, std::size_t m,
                 std::vector<std::size_t> x_order, std::vector<std::size_t> y_order, T seed_limit, bool strict,
                 T floor, std::uint64_t budget)
      : dx_(std::move(dx)),
        dy_(std::move(dy)),
        n_(n),
        m_(m),
        x_order_(std::move(x_order)),
        y_order_(std::move(y_order)),
        seed_limit_(std::move(seed_limit)),
        strict_(strict),
        floor_(std::move(floor)),
        budget_(budget) {}

  // Explores the subtree where the first X point (in branch order) maps to
  // `first_image`. Independent of every other subtree.
  SubtreeOutcome<T> run(std::size_t first_image) const {
    Walk walk{*this, {}, {}, {}, {}};
    walk.f.assign(n_, 0);
    walk.g.assign(m_, 0);
    walk.pairs.reserve(n_ + m_);
    walk.attempt(0, x_order_[0], first_image, T{});
    return std::move(walk.out);
  }

 private:
  struct Walk {
    const BranchAndBound& bb;
    SubtreeOutcome<T> out;
    std::vector<std::size_t> f, g;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool stop = false;

    bool cut(const T& d) const {
      if (out.found) return !(d < out.best);
      return bb.strict_ ? !(d < bb.seed_limit_) : d > bb.seed_limit_;
    }

    // Tries pair (xi, yj) at `depth`; returns after exploring below it.
    void attempt(std::size_t depth, std::size_t xi, std::size_t yj, T d) {
      if (++out.nodes > bb.budget_) {
        out.exhausted = stop = true;
        return;
      }
      for (const auto& [a, b] : pairs) {
        T t = absdiff(bb.dx_[xi * bb.n_ + a], bb.dy_[yj * bb.m_ + b]);
        if (t > d) {
          d = std::move(t);
          if (cut(d)) return;
        }
      }
      if (cut(d)) return;
      if (depth < bb.n_)
        f[xi] = yj;
      else
        g[yj] = xi;
      pairs.emplace_back(xi, yj);
      descend(depth + 1, d);
      pairs.pop_back();
    }

    void descend(std::size_t depth, const T& d) {
      if (depth == bb.n_ + bb.m_) {
        out.found = true;
        out.best = d;
        out.f = f;
        out.g = g;
        if (!(out.best > bb.floor_)) stop = true;
        return;
      }
      if (depth < bb.n_) {
        const std::size_t xi = bb.x_order_[depth];
        for (std::size_t yj = 0; yj < bb.m_ && !stop; ++yj) attempt(depth, xi, yj, d);
      } else {
        const std::size_t yj = bb.y_order_[depth - bb.n_];
        for (std::size_t xi = 0; xi < bb.n_ && !stop; ++xi) attempt(depth, xi, yj, d);
      }
    }
  };

  std::vector<T> dx_, dy_;
  std::size_t n_, m_;
  std::vector<std::size_t> x_order_, y_order_;
  T seed_limit_;
  bool strict_;
  T floor_;
  std::uint64_t budget_;
};

std::vector<std::size_t> eccentricity_order(const FiniteMetricSpace& s) {
  std::vector<std::size_t> order(s.size());
  std::vector<Scalar> ecc(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    order[i] = i;
    ecc[i] = eccentricity(s, i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ecc[a] > ecc[b]; });
  return order;
}

struct SearchPlan {
  std::vector<std::size_t> x_order, y_order;
  std::uint64_t subtree_budget;
  std::uint64_t probe_budget;
  std::size_t workers;
};

template <typename T>
std::vector<SubtreeOutcome<T>> run_subtrees(const BranchAndBound<T>& bb, std::size_t subtrees,
                                            std::size_t workers) {
  std::vector<SubtreeOutcome<T>> outcomes(subtrees);
  workers = std::max<std::size_t>(1, std::min(workers, subtrees));
  if (workers == 1) {
    for (std::size_t s = 0; s < subtrees; ++s) outcomes[s] = bb.run(s);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < subtrees; s = next++) outcomes[s] = bb.run(s);
    });
  for (auto& t : pool) t.join();
  return outcomes;
}

struct Chosen {
  bool any = false;
  std::vector<std::size_t> f, g;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

// Smallest best value wins; ties go to the lowest subtree index, which is
// the earliest leaf in sequential search order.
template <typename T>
const SubtreeOutcome<T>* winner(const std::vector<SubtreeOutcome<T>>& outcomes) {
  const SubtreeOutcome<T>* w = nullptr;
  for (const auto& o : outcomes)
    if (o.found && (!w || o.best < w->best)) w = &o;
  return w;
}

template <typename T>
void tally(const std::vector<SubtreeOutcome<T>>& outcomes, Chosen& c) {
  for (const auto& o : outcomes) {
    c.nodes += o.nodes;
    c.exhausted = c.exhausted || o.exhausted;
  }
}

// Common denominator of every entry of both matrices, if all scaled entries
// fit comfortably in int64.
std::optional<mpz_class> common_scale(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  mpz_class l = 1;
  for (const auto* s : {&x, &y})
    for (const auto& row : s->matrix())
      for (const auto& d : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.raw().get_den_mpz_t());
  const mpz_class limit = mpz_class(1) << 61;
  for (const auto* s : {&x, &y})
    for (const auto& row : s->matrix())
      for (const auto& d : row) {
        mpz_class scaled = d.raw().get_num() * (l / d.raw().get_den());
        if (scaled >= limit) return std::nullopt;
      }
  return l;
}

std::int64_t scaled_int(const Scalar& v, const mpz_class& l) {
  mpq_class q = v.raw() * mpq_class(l);
  q.canonicalize();
  if (q.get_den() != 1) throw std::logic_error("rescaled distance is not integral");
  return q.get_num().get_si();
}

// Two phases, both independent of the worker count. A probe runs every
// subtree on a small budget; its best leaf becomes an incumbent that the
// full search must strictly beat. If nothing beats it, it is optimal.
template <typename T, typename Convert>
Chosen search_with(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const SearchPlan& plan,
                   const Scalar& seed, const Scalar& floor, Convert convert) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<T> dx(n * n), dy(m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dx[i * n + j] = convert(x(i, j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) dy[i * m + j] = convert(y(i, j));
  const T lo = convert(floor);

  const std::uint64_t probe_budget = std::min(plan.subtree_budget, plan.probe_budget);
  const BranchAndBound<T> probe(dx, dy, n, m, plan.x_order, plan.y_order, convert(seed), false, lo, probe_budget);
  const auto probed = run_subtrees(probe, m, plan.workers);
  Chosen c;
  tally(probed, c);
  const auto* incumbent = winner(probed);
  if (incumbent) {
    c.any = true;
    c.f = incumbent->f;
    c.g = incumbent->g;
  }
  // Complete probe, proven optimum, or no budget left for a second phase.
  if (!c.exhausted || (incumbent && !(incumbent->best > lo)) || plan.subtree_budget <= probe_budget) return c;

  c.exhausted = false;
  const BranchAndBound<T> full(std::move(dx), std::move(dy), n, m, plan.x_order, plan.y_order,
                               incumbent ? incumbent->best : convert(seed), true, lo,
                               plan.subtree_budget - probe_budget);
  const auto outcomes = run_subtrees(full, m, plan.workers);
  tally(outcomes, c);
  if (const auto* w = winner(outcomes)) {
    c.any = true;
    c.f = w->f;
    c.g = w->g;
  }
  return c;
}

}  // namespace

GhResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options) {
  Correspondence seed = Correspondence::full(x.size(), y.size());
  Scalar seed_distortion = distortion(seed, x, y);
  if (options.hint) {
    Scalar hinted = distortion(*options.hint, x, y);  // throws SizeMismatch
    if (hinted < seed_distortion) {
      seed = *options.hint;
      seed_distortion = std::move(hinted);
    }
  }
  // 2 * |diam X - diam Y| / 2: no correspondence has smaller distortion.
  const Scalar floor = abs(diameter(x) - diameter(y));

  const std::uint64_t depth = x.size() + y.size();
  SearchPlan plan{eccentricity_order(x), eccentricity_order(y), std::numeric_limits<std::uint64_t>::max(),
                  16 * depth * depth, options.workers ? options.workers : workers_from_env()};
  if (options.budget) {
    const std::uint64_t m = y.size();
    plan.subtree_budget = std::max<std::uint64_t>(1, (*options.budget + m - 1) / m);
  }

  Chosen chosen;
  if (auto l = common_scale(x, y)) {
    chosen = search_with<std::int64_t>(x, y, plan, seed_distortion, floor,
                                       [&](const Scalar& v) { return scaled_int(v, *l); });
  } else {
    chosen = search_with<Scalar>(x, y, plan, seed_distortion, floor, [](const Scalar& v) { return v; });
  }

  if (!chosen.any) {
    // No leaf improved on the seed relation.
    return finish(std::move(seed), x, y, chosen.nodes, GhMethod::BranchAndBound, !chosen.exhausted);
  }
  return finish(Correspondence::from_maps(chosen.f, chosen.g), x, y, chosen.nodes, GhMethod::BranchAndBound,
                !chosen.exhausted);
}

}  // namespace ghforge
