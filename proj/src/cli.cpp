#include "ghforge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "ghforge/error.hpp"
#include "ghforge/gh_distance.hpp"
#include "ghforge/space_io.hpp"
#include "ghforge/theorem_lab.hpp"

namespace ghforge {

namespace {

std::string scalar_list(const std::vector<Scalar>& values) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < values.size(); ++k) os << (k ? ", " : "") << values[k];
  os << "]";
  return os.str();
}

void write_error(std::ostream& err, const Error& e) {
  nlohmann::json obj{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* av = dynamic_cast<const AxiomViolation*>(&e)) {
    obj["axiom"] = std::string(to_string(av->axiom()));
    obj["witness"] = av->witness();
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->line() > 0) {
    obj["line"] = pe->line();
    obj["column"] = pe->column();
  }
  err << obj.dump() << "\n";
}

Scalar parse_scalar_option(const std::string& text, const std::string& name) {
  auto r = Rational::parse(text);
  if (!r) throw ParseError("--" + name + ": \"" + text + "\" is not an exact rational");
  return *r;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  try {
    const auto space = parse_space(read_file(path));
    out << "valid: " << space.size() << " points\n";
    return 0;
  } catch (const AxiomViolation& e) {
    out << "invalid: " << to_string(e.axiom()) << " at (";
    for (std::size_t k = 0; k < e.witness().size(); ++k) out << (k ? "," : "") << e.witness()[k];
    out << ")\n";
    return 1;
  }
}

int cmd_gh(const std::string& a, const std::string& b, const std::string& method,
           const std::optional<std::uint64_t>& budget, bool witness, std::ostream& out) {
  const auto x = parse_space(read_file(a));
  const auto y = parse_space(read_file(b));
  GhResult r = method == "bruteforce" ? gh_bruteforce(x, y) : gh_exact(x, y, GhOptions{budget, 0, std::nullopt});
  out << r.value << "\n";
  out << "method: " << to_string(r.method) << "\n";
  out << "nodes: " << r.nodes_explored << "\n";
  out << "exact: " << (r.exact ? "true" : "false (budget exhausted; value is an upper bound)") << "\n";
  if (witness) out << "witness: " << serialize_witness(r.witness, x, y) << "\n";
  return r.exact ? 0 : 1;
}

int cmd_embed(const std::vector<std::string>& files, const std::string& r_text, const std::string& output,
              std::ostream& out) {
  ProductPoint point;
  for (const auto& f : files) point.blocks.push_back(parse_space(read_file(f)));
  const EmbeddingParams params{parse_scalar_option(r_text, "r"), files.size()};
  const std::string doc = serialize_embedded(embed(point, params));
  if (output.empty()) {
    out << doc;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) throw Error(ErrorKind::ParseError, "cannot write " + output);
    file << doc;
  }
  return 0;
}

std::string anchor_summary(const TheoremReport& rep, const EmbeddedSpace& ex, const EmbeddedSpace& ey) {
  try {
    const AnchorMap m = recover_anchor_map(rep.witness, ex, ey);
    const auto sigma = recover_block_permutation(rep.witness, ex, ey);
    std::ostringstream os;
    os << "anchors=" << (m.is_identity() ? "identity" : "swap") << " sigma=[";
    for (std::size_t k = 0; k < sigma.size(); ++k) os << (k ? "," : "") << sigma[k];
    os << "]";
    return os.str();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DistortionTooLarge) return "anchors=n/a sigma=n/a";
    return std::string("structure=") + std::string(to_string(e.kind()));
  }
}

int cmd_verify(const SuiteConfig& config, std::ostream& out) {
  std::size_t equal = 0, inconclusive = 0, unequal = 0;
  for (std::size_t i = 0; i < config.instances; ++i) {
    auto [x, y] = suite_instance(config, i);
    const auto rep = verify_theorem_instance(x, y, config.params, config.search);
    const bool constructive_ok = rep.glued_value == rep.rhs;
    out << "instance " << i << ": lhs=" << rep.lhs << " rhs=" << rep.rhs << " per_block=" << scalar_list(rep.per_block)
        << " glued=" << rep.glued_value << " nodes=" << rep.nodes << " ";
    if (rep.inconclusive) {
      ++inconclusive;
      out << "inconclusive\n";
      continue;
    }
    out << anchor_summary(rep, embed(x, config.params), embed(y, config.params)) << " equal=" << (rep.equal ? "true" : "false")
        << (constructive_ok ? "" : " constructive_bound_mismatch") << "\n";
    if (rep.equal && constructive_ok)
      ++equal;
    else
      ++unequal;
  }
  const std::size_t conclusive = config.instances - inconclusive;
  out << "equal: " << equal << "/" << conclusive << "\n";
  out << "inconclusive: " << inconclusive << "\n";
  out << "unequal: " << unequal << "\n";
  return unequal == 0 ? 0 : 1;
}

int cmd_embed_linf(const std::string& path, const std::string& offset_text, const std::string& r_text,
                   const std::string& out_dir, std::ostream& out) {
  const auto points = parse_points(read_file(path));
  const Scalar offset = parse_scalar_option(offset_text, "offset");
  std::optional<Scalar> r;
  if (!r_text.empty()) r = parse_scalar_option(r_text, "r");
  const LinfEmbedding emb = embed_linf_points(points, offset, r);

  out << "params: r=" << emb.params.r << " n=" << emb.params.n << "\n";
  out << "shift: " << scalar_list(emb.shift) << "\n";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < emb.spaces.size(); ++i) {
      const auto file = std::filesystem::path(out_dir) / ("point_" + std::to_string(i) + ".json");
      std::ofstream f(file, std::ios::binary);
      if (!f) throw Error(ErrorKind::ParseError, "cannot write " + file.string());
      f << serialize_embedded(emb.spaces[i]);
      out << "wrote: " << file.string() << "\n";
    }
  }
  std::size_t pairs = 0, matched = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Scalar gh = gh_exact(emb.spaces[i].space, emb.spaces[j].space).value;
      const Scalar linf = linf_distance(points[i], points[j]);
      ++pairs;
      matched += gh == linf ? 1 : 0;
      out << "pair (" << i << "," << j << "): gh=" << gh << " linf=" << linf << (gh == linf ? " ok" : " MISMATCH")
          << "\n";
    }
  out << "match: " << matched << "/" << pairs << "\n";
  return matched == pairs ? 0 : 1;
}

int cmd_bench(std::uint64_t seed, std::size_t pairs, std::ostream& out) {
  std::mt19937_64 rng(seed);
  struct Row {
    std::string name;
    std::uint64_t nodes = 0;
    double ms = 0;
  };
  Row rows[3] = {{"bruteforce"}, {"function_pairs"}, {"branch_and_bound"}};
  std::size_t agree = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto x = random_product_point(rng(), 1, Scalar(1), 3).blocks.front();
    const auto y = random_product_point(rng(), 1, Scalar(1), 3).blocks.front();
    Scalar values[3];
    for (int m = 0; m < 3; ++m) {
      const auto start = std::chrono::steady_clock::now();
      GhResult r = m == 0 ? gh_bruteforce(x, y) : (m == 1 ? gh_function_pairs(x, y) : gh_exact(x, y));
      rows[m].ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      rows[m].nodes += r.nodes_explored;
      values[m] = r.value;
    }
    agree += (values[0] == values[1] && values[1] == values[2]) ? 1 : 0;
  }
  out << std::left << std::setw(18) << "method" << std::setw(8) << "pairs" << std::setw(14) << "nodes"
      << "ms\n";
  for (const auto& row : rows)
    out << std::left << std::setw(18) << row.name << std::setw(8) << pairs << std::setw(14) << row.nodes
        << std::fixed << std::setprecision(3) << row.ms << "\n";
  out << "agree: " << agree << "/" << pairs << "\n";
  return agree == pairs ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Gromov-Hausdorff distances and l-infinity gluing embeddings of finite metric spaces",
               "ghforge"};
  app.require_subcommand(1);

  std::string file_a, file_b, method = "exact", r_text, output, offset_text = "1", out_dir;
  std::vector<std::string> files;
  std::optional<std::uint64_t> budget;
  bool witness = false;
  SuiteConfig suite;
  std::string suite_r = "1";
  std::uint64_t bench_seed = 1;
  std::size_t bench_pairs = 30;

  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a space file");
  validate->add_option("file", file_a)->required();
  auto* diam = app.add_subcommand("diam", "Print the diameter of a space");
  diam->add_option("file", file_a)->required();

  auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff distance between two spaces");
  gh->add_option("file1", file_a)->required();
  gh->add_option("file2", file_b)->required();
  gh->add_option("--method", method)->check(CLI::IsMember({"bruteforce", "exact"}));
  gh->add_option("--budget", budget, "Node limit for the exact search");
  gh->add_flag("--witness", witness, "Print a minimal correspondence");

  auto* emb = app.add_subcommand("embed", "Glue spaces X_1..X_n into one space");
  emb->add_option("files", files)->required();
  emb->add_option("--r", r_text, "Diameter cap r")->required();
  emb->add_option("-o,--output", output);

  std::uint64_t verify_budget = kDefaultTheoremBudget;
  auto* verify = app.add_subcommand("verify-theorem", "Check the gluing isometry on random instances");
  verify->add_option("--seed", suite.seed)->required();
  verify->add_option("--instances", suite.instances)->required()->check(CLI::PositiveNumber);
  verify->add_option("--n", suite.params.n)->required()->check(CLI::PositiveNumber);
  verify->add_option("--r", suite_r)->required();
  verify->add_option("--max-block-size", suite.max_block_size)->check(CLI::PositiveNumber);
  verify->add_option("--budget", verify_budget);

  auto* linf = app.add_subcommand("embed-linf", "Embed sup-norm points and compare distances");
  linf->add_option("file", file_a)->required();
  linf->add_option("--offset", offset_text);
  linf->add_option("--r", r_text);
  linf->add_option("--out-dir", out_dir);

  auto* bench = app.add_subcommand("bench", "Compare the three solvers on generated spaces");
  bench->add_option("--seed", bench_seed);
  bench->add_option("--pairs", bench_pairs);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(file_a, out);
    if (diam->parsed()) {
      out << diameter(parse_space(read_file(file_a))) << "\n";
      return 0;
    }
    if (gh->parsed()) return cmd_gh(file_a, file_b, method, budget, witness, out);
    if (emb->parsed()) return cmd_embed(files, r_text, output, out);
    if (verify->parsed()) {
      suite.params.r = parse_scalar_option(suite_r, "r");
      check_params(suite.params);
      suite.search.budget = verify_budget;
      return cmd_verify(suite, out);
    }
    if (linf->parsed()) return cmd_embed_linf(file_a, offset_text, r_text, out_dir, out);
    if (bench->parsed()) return cmd_bench(bench_seed, bench_pairs, out);
  } catch (const Error& e) {
    write_error(err, e);
    return 1;
  }
  return 2;
}

}  // namespace ghforge
