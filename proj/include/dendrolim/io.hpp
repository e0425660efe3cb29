#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dendrolim/dendron.hpp"
#include "dendrolim/discretize.hpp"
#include "dendrolim/finite_tree.hpp"
#include "dendrolim/real_tree.hpp"
#include "dendrolim/reconstruct.hpp"
#include "dendrolim/sampling_measure.hpp"

namespace dendrolim::io {

using nlohmann::json;

// Malformed documents throw Error(BadInput); missing files throw
// std::runtime_error.

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);

/// {"n": int, "edges": [[u, v], ...]}
json to_json(const FiniteTree& t);
FiniteTree finite_tree_from_json(const json& j);

/// {"n": int, "edges": [[u, v, length], ...], "atoms": [[v, mass], ...],
///  "atoms_interior": [[edge, offset, mass], ...]}  (last key optional)
json to_json(const MeasuredRealTree& m);
MeasuredRealTree measured_tree_from_json(const json& j);

/// Points are {"vertex": v} or {"edge": [e, offset]}.
json to_json(const TreePoint& p);
TreePoint point_from_json(const json& j);

/// {"skeleton": {"n", "edges": [[u, v, length]]},
///  "components": [{"weight": w, "base": {"point": pt} | {"segment": [pt, pt]},
///                  "height": {"fixed": a} | {"uniform": [lo, hi]}}]}
json to_json(const FiniteDendron& d);
FiniteDendron dendron_from_json(const json& j);

/// [{"point": pt, "height": a}, ...]
json to_json(const NSample& x);

/// {"leaf_classes": {"v": [ids]}, "scaffold_diameter": int}
json report_json(const Realization& r);

enum class InputKind { FiniteTree, MeasuredTree, Dendron };
InputKind detect_kind(const json& j);

/// Header "weight,d_1_2,d_1_3,...", one atom per row, %.17g.
std::string measure_to_csv(const SamplingMeasure& m);
/// Reads a measure CSV; kind is Exact, weights as written.
SamplingMeasure measure_from_csv(const std::string& text);

/// r rows of r comma-separated values, symmetric with zero diagonal.
DistanceMatrix matrix_from_csv(const std::string& text);

}  // namespace dendrolim::io
