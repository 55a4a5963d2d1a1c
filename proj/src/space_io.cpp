#include "ghforge/space_io.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ghforge/error.hpp"

namespace ghforge {

using json = nlohmann::json;

namespace {

// DOM builder that keeps non-integer number literals as their source text,
// so they can be read as exact decimals instead of doubles.
class ExactNumberSax {
 public:
  ExactNumberSax(json& root, std::string_view text) : dom_(root, true), text_(text) {}

  bool null() { return dom_.null(); }
  bool boolean(bool v) { return dom_.boolean(v); }
  bool number_integer(json::number_integer_t v) { return dom_.number_integer(v); }
  bool number_unsigned(json::number_unsigned_t v) { return dom_.number_unsigned(v); }
  bool number_float(json::number_float_t, const json::string_t& raw) {
    json::string_t copy = raw;
    return dom_.string(copy);
  }
  bool string(json::string_t& v) { return dom_.string(v); }
  bool binary(json::binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(json::string_t& v) { return dom_.key(v); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }

  template <typename Exception>
  bool parse_error(std::size_t position, const std::string&, const Exception& ex) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < position && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("malformed JSON at line ") + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + ex.what(),
                     line, column);
  }

 private:
  nlohmann::detail::json_sax_dom_parser<json> dom_;
  std::string_view text_;
};

json parse_json(std::string_view text) {
  json root;
  ExactNumberSax sax(root, text);
  json::sax_parse(text.begin(), text.end(), &sax);
  return root;
}

Scalar entry(const json& v, std::size_t i, std::size_t j) {
  const std::string where = "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational::from_string(std::to_string(v.get<std::uint64_t>()));
    return Rational::from_string(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    auto r = Rational::parse(v.get<std::string>());
    if (!r) throw ParseError(where + ": \"" + v.get<std::string>() + "\" is not an exact rational");
    return *r;
  }
  throw ParseError(where + ": expected a number or rational string");
}

std::size_t index_value(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ParseError(where + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

SpaceDocument parse_space_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (!doc.contains("labels") || !doc["labels"].is_array()) throw ParseError("missing \"labels\" array");
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) throw ParseError("missing \"matrix\" array");

  std::vector<std::string> labels;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) throw ParseError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  DistanceMatrix m;
  const auto& rows = doc["matrix"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError("matrix row " + std::to_string(i) + " is not an array");
    std::vector<Scalar> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) row.push_back(entry(rows[i][j], i, j));
    m.push_back(std::move(row));
  }

  SpaceDocument out{validate_metric(std::move(labels), std::move(m)), std::nullopt, std::nullopt};
  if (doc.contains("metadata")) {
    const auto& meta = doc["metadata"];
    if (!meta.is_object()) throw ParseError("\"metadata\" must be an object");
    if (meta.contains("block_of")) {
      if (!meta["block_of"].is_array()) throw ParseError("\"block_of\" must be an array");
      std::vector<std::size_t> block_of;
      for (const auto& b : meta["block_of"]) block_of.push_back(index_value(b, "block_of"));
      out.block_of = std::move(block_of);
    }
    if (meta.contains("params")) {
      const auto& p = meta["params"];
      if (!p.is_object() || !p.contains("r") || !p.contains("n"))
        throw ParseError("\"params\" must be an object with \"r\" and \"n\"");
      Scalar r = p["r"].is_string() ? Rational::from_string(p["r"].get<std::string>()) : entry(p["r"], 0, 0);
      out.params = EmbeddingParams{std::move(r), index_value(p["n"], "params.n")};
    }
  }
  return out;
}

FiniteMetricSpace parse_space(std::string_view text) { return parse_space_document(text).space; }

EmbeddedSpace parse_embedded_space(std::string_view text) {
  SpaceDocument doc = parse_space_document(text);
  if (!doc.block_of || !doc.params) throw ParseError("space has no block metadata");
  const auto& p = *doc.params;
  check_params(p);
  const auto& s = doc.space;
  const auto& block_of = *doc.block_of;
  if (block_of.size() != s.size()) throw ParseError("\"block_of\" length does not match the point count");
  if (s.size() < 2 || block_of[0] != 0 || block_of[1] != 0 || s.label(0) != "p+" || s.label(1) != "p-")
    throw ParseError("points 0 and 1 must be the anchors \"p+\", \"p-\" in block 0");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (block_of[i] > p.n) throw ParseError("block index " + std::to_string(block_of[i]) + " exceeds n");
    if (i > 0 && block_of[i] < block_of[i - 1]) throw ParseError("blocks must be contiguous and ordered");
    if (i >= 2 && block_of[i] == 0) throw ParseError("block 0 must hold exactly the two anchors");
  }
  for (std::size_t k = 1; k <= p.n; ++k)
    if (std::find(block_of.begin(), block_of.end(), k) == block_of.end())
      throw ParseError("block " + std::to_string(k) + " is empty");
  const Scalar step = Scalar(5) * p.r;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      const std::size_t k = block_of[i], l = block_of[j];
      bool ok = true;
      if (k != l)
        ok = s(i, j) == step * Scalar(static_cast<long>(k > l ? k - l : l - k));
      else if (k == 0 && i != j)
        ok = s(i, j) == Scalar(3) * p.r;
      else if (k != 0)
        ok = s(i, j) <= p.r;
      if (!ok) throw ParseError("distance between points " + std::to_string(i) + " and " + std::to_string(j) +
                                " is inconsistent with the block metadata");
    }
  return EmbeddedSpace{std::move(doc.space), *doc.block_of, p};
}

namespace {

void write_body(std::ostream& os, const FiniteMetricSpace& space) {
  os << "{\n  \"labels\": [";
  for (std::size_t i = 0; i < space.size(); ++i) os << (i ? ", " : "") << quoted(space.label(i));
  os << "],\n  \"matrix\": [\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    os << "    [";
    for (std::size_t j = 0; j < space.size(); ++j) os << (j ? ", " : "") << '"' << space(i, j).str() << '"';
    os << "]" << (i + 1 < space.size() ? "," : "") << "\n";
  }
  os << "  ]";
}

}  // namespace

std::string serialize_space(const FiniteMetricSpace& space) {
  std::ostringstream os;
  write_body(os, space);
  os << "\n}\n";
  return os.str();
}

std::string serialize_embedded(const EmbeddedSpace& space) {
  std::ostringstream os;
  write_body(os, space.space);
  os << ",\n  \"metadata\": {\n    \"block_of\": [";
  for (std::size_t i = 0; i < space.block_of.size(); ++i) os << (i ? ", " : "") << space.block_of[i];
  os << "],\n    \"params\": {\"r\": \"" << space.params.r.str() << "\", \"n\": " << space.params.n
     << "}\n  }\n}\n";
  return os.str();
}

std::vector<std::vector<Scalar>> parse_points(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw ParseError("expected an object with a \"points\" array");
  std::vector<std::vector<Scalar>> out;
  const auto& pts = doc["points"];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].is_array()) throw ParseError("point " + std::to_string(i) + " is not an array");
    std::vector<Scalar> p;
    for (std::size_t k = 0; k < pts[i].size(); ++k) p.push_back(entry(pts[i][k], i, k));
    out.push_back(std::move(p));
  }
  return out;
}

std::string serialize_witness(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& [i, j] : r.pairs()) named.emplace_back(x.label(i), y.label(j));
  std::sort(named.begin(), named.end());
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < named.size(); ++k)
    os << (k ? ", " : "") << "[" << quoted(named[k].first) << ", " << quoted(named[k].second) << "]";
  os << "]";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ghforge
