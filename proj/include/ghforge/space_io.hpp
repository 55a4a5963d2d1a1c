#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghforge/correspondence.hpp"
#include "ghforge/embedding.hpp"
#include "ghforge/metric_space.hpp"

namespace ghforge {

// Space documents are JSON objects
//
//   {"labels": ["a", "b"], "matrix": [["0", "3/2"], ["3/2", "0"]],
//    "metadata": {"block_of": [...], "params": {"r": "1", "n": 2}}}
//
// Matrix entries may be integers or strings holding "p", "p/q" or a decimal
// literal; JSON number literals with a fraction or exponent are read from
// their source text, so "0.1" means exactly 1/10. "metadata" is optional.

struct SpaceDocument {
  FiniteMetricSpace space;
  std::optional<std::vector<std::size_t>> block_of;
  std::optional<EmbeddingParams> params;
};

/// Throws ParseError (with 1-based line/column for syntax errors) or passes
/// through the AxiomViolation / LabelError of validate_metric.
SpaceDocument parse_space_document(std::string_view text);
FiniteMetricSpace parse_space(std::string_view text);

/// Requires block metadata consistent with the distances (Error{ParseError}
/// otherwise).
EmbeddedSpace parse_embedded_space(std::string_view text);

/// Canonical form: every entry as a "p/q" or integer string, one matrix row
/// per line, trailing newline.
std::string serialize_space(const FiniteMetricSpace& space);
std::string serialize_embedded(const EmbeddedSpace& space);

/// {"points": [["0", "1/2"], ...]} -> coordinate vectors.
std::vector<std::vector<Scalar>> parse_points(std::string_view text);

/// [["x-label", "y-label"], ...] sorted by label pair.
std::string serialize_witness(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

std::string read_file(const std::string& path);

}  // namespace ghforge
