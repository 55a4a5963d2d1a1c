// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ghforge/cli.hpp"
#include "ghforge/correspondence.hpp"
#include "ghforge/error.hpp"
#include "ghforge/gh_distance.hpp"
#include "ghforge/theorem_lab.hpp"

using namespace ghforge;

namespace {

Scalar q(long p, long d = 1) { return Scalar(p, d); }

struct Outcome {
  bool ok;
  std::string detail;
};

std::vector<FiniteMetricSpace> corpus(const std::vector<Scalar>& values) {
  std::vector<FiniteMetricSpace> out{one_point_space()};
  for (const auto& a : values) out.push_back(two_point_space(a));
  for (const auto& a : values)
    for (const auto& b : values)
      for (const auto& c : values) try {
          out.push_back(make_space({{q(0), a, b}, {a, q(0), c}, {b, c, q(0)}}));
        } catch (const AxiomViolation&) {
        }
  return out;
}

FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n, long den) {
  DistanceMatrix m(n, std::vector<Scalar>(n, q(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m[i][j] = m[j][i] = q(den / 2 + static_cast<long>(rng() % static_cast<std::uint64_t>(den / 2 + 1)), den);
  return make_space(std::move(m));
}

std::string run(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

SuiteConfig acceptance_suite() {
  SuiteConfig config;
  config.seed = 7;
  config.instances = 50;
  config.params = EmbeddingParams{q(1), 2};
  config.max_block_size = 2;
  config.search.budget = kDefaultTheoremBudget;
  return config;
}

const std::vector<std::string> kVerifyArgs{"verify-theorem", "--seed", "7",  "--instances", "50",
                                           "--n",            "2",      "--r", "1"};

Outcome theorem_identity() {
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  const std::string out = run(kVerifyArgs, code);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool all = out.find("equal: 50/50\n") != std::string::npos &&
                   out.find("inconclusive: 0\n") != std::string::npos && code == 0;
  std::ostringstream d;
  d << (all ? "50/50 equal, 0 inconclusive" : "summary mismatch") << ", " << secs << " s";
  return {all && secs <= 300.0, d.str()};
}

Outcome diameter_claim() {
  const std::vector<Scalar> radii{q(1), q(3, 2), q(2)};
  std::mt19937_64 rng(2024);
  int good = 0;
  for (int i = 0; i < 100; ++i) {
    const EmbeddingParams params{radii[rng() % 3], 1 + rng() % 3};
    const auto x = random_product_point(rng(), params.n, params.r, 3);
    good += diameter(embed(x, params).space) == q(5) * params.r * Scalar(static_cast<long>(params.n));
  }
  return {good == 100, std::to_string(good) + "/100"};
}

Outcome constructive_bound(const std::vector<TheoremReport>& reports) {
  std::size_t good = 0;
  for (const auto& r : reports) {
    Scalar rhs(0);
    for (const auto& v : r.per_block) rhs = std::max(rhs, v);
    good += r.glued_value == rhs && r.rhs == rhs;
  }
  return {good == reports.size(), std::to_string(good) + "/" + std::to_string(reports.size())};
}

Outcome oracle_chain() {
  const auto spaces = corpus({q(1), q(3, 2), q(2)});
  std::size_t pairs = 0, agree = 0;
  for (const auto& x : spaces)
    for (const auto& y : spaces) {
      const Scalar a = gh_bruteforce(x, y).value;
      agree += a == gh_function_pairs(x, y).value && a == gh_exact(x, y).value;
      ++pairs;
    }
  std::mt19937_64 rng(44);
  for (int i = 0; i < 24; ++i) {
    const auto x = random_space(rng, 4, 4), y = random_space(rng, 4, 6);
    const Scalar a = gh_bruteforce(x, y, 16).value;
    agree += a == gh_function_pairs(x, y).value && a == gh_exact(x, y).value;
    ++pairs;
  }
  return {agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) + " pairs (24 random 4x4)"};
}

Outcome correspondence_count() {
  CorrespondenceEnumerator e(2, 2);
  std::size_t listed = 0;
  while (e.next()) ++listed;
  std::size_t filtered = 0;
  for (unsigned s = 0; s < 16; ++s) {
    const bool rows = (s & 0b0011) && (s & 0b1100);
    const bool cols = (s & 0b0101) && (s & 0b1010);
    filtered += rows && cols;
  }
  return {listed == 7 && filtered == 7,
          "enumerated " + std::to_string(listed) + ", filter " + std::to_string(filtered)};
}

Outcome two_point_formula() {
  const std::vector<Scalar> values{q(1, 3), q(1, 2), q(1), q(7, 4), q(5, 2)};
  int good = 0;
  for (const auto& a : values)
    for (const auto& b : values) {
      const auto x = two_point_space(a), y = two_point_space(b);
      const Scalar v = gh_exact(x, y).value;
      good += v == abs(a - b) / q(2) && v == gh_bruteforce(x, y).value;
    }
  return {good == 25, std::to_string(good) + "/25"};
}

Outcome lipschitz_diameter() {
  const auto spaces = corpus({q(1), q(3, 2), q(2)});
  std::size_t good = 0, total = 0;
  for (const auto& x : spaces)
    for (const auto& y : spaces) {
      const Scalar v = gh_exact(x, y).value;
      const Scalar dx = diameter(x), dy = diameter(y);
      good += abs(dx - dy) <= q(2) * v && v <= std::max(dx, dy);
      ++total;
    }
  return {good == total, std::to_string(good) + "/" + std::to_string(total)};
}

Outcome proof_structure(const SuiteConfig& config, const std::vector<TheoremReport>& reports) {
  std::size_t checked = 0, good = 0;
  std::string failure;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto [x, y] = suite_instance(config, i);
    const auto ex = embed(x, config.params), ey = embed(y, config.params);
    const auto& w = reports[i].witness;
    if (!(distortion(w, ex.space, ey.space) < q(2) * config.params.r)) continue;
    ++checked;
    try {
      // Both anchors are equidistant from every block, so swapping them is free.
      const AnchorMap a = recover_anchor_map(w, ex, ey), b = recover_anchor_map(inverse(w), ey, ex);
      const bool anchors = a.plus_to != a.minus_to && b.plus_to == a.plus_to && b.minus_to == a.minus_to;
      const auto sigma = recover_block_permutation(w, ex, ey);
      const auto tau = recover_block_permutation(inverse(w), ey, ex);
      bool identity = true;
      for (std::size_t k = 0; k < sigma.size(); ++k) identity = identity && sigma[k] == k + 1 && tau[k] == k + 1;
      good += anchors && identity;
    } catch (const Error& e) {
      failure = std::string(" (") + e.what() + ")";
    }
  }
  return {checked == reports.size() && good == checked,
          std::to_string(good) + "/" + std::to_string(checked) + " witnesses" + failure};
}

Outcome linf_pipeline() {
  std::mt19937_64 rng(99);
  int good = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<Scalar>> pts(3);
    for (auto& p : pts)
      for (int c = 0; c < 2; ++c) {
        const long den = 1 + static_cast<long>(rng() % 8);
        p.push_back(q(static_cast<long>(rng() % static_cast<std::uint64_t>(den + 1)), den));
      }
    const auto emb = embed_linf_points(pts);
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        ok = ok && gh_exact(emb.spaces[i].space, emb.spaces[j].space).value == linf_distance(pts[i], pts[j]);
    good += ok;
  }
  return {good == 10, std::to_string(good) + "/10"};
}

Outcome determinism() {
  int c1 = 0, c4 = 0;
  ::setenv("GHFORGE_WORKERS", "1", 1);
  const std::string one = run(kVerifyArgs, c1);
  ::setenv("GHFORGE_WORKERS", "4", 1);
  const std::string four = run(kVerifyArgs, c4);
  ::unsetenv("GHFORGE_WORKERS");
  const bool same = one == four && c1 == c4 && !one.empty();
  return {same, same ? "byte-identical (" + std::to_string(one.size()) + " bytes)" : "outputs differ"};
}

}  // namespace

int main() {
  const SuiteConfig config = acceptance_suite();
  const auto reports = run_theorem_suite(config);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"theorem identity", theorem_identity},
      {"diameter 5rn", diameter_claim},
      {"constructive upper bound", [&] { return constructive_bound(reports); }},
      {"oracle chain", oracle_chain},
      {"correspondence count", correspondence_count},
      {"two-point formula", two_point_formula},
      {"lipschitz diameter", lipschitz_diameter},
      {"proof-structure diagnostics", [&] { return proof_structure(config, reports); }},
      {"linf pipeline", linf_pipeline},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << " (" << criteria[k].first
              << "): " << o.detail << "\n";
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (criteria.size() - failed) << "/" << criteria.size() << "\n";
  return failed ? 1 : 0;
}
