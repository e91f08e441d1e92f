#pragma once

#include <string>
#include <vector>

#include "polyembed/embedding.hpp"
#include "polyembed/multi_instance.hpp"
#include "polyembed/polytope.hpp"
#include "polyembed/trainer.hpp"

namespace polyembed {

// All loaders skip leading lines starting with '#' so files produced with a
// provenance header comment round-trip.

// {"kind": "cube"|"permutahedron"|"cross"|"generic", "dim": int,
//  "vertices": [[real,...],...]}
// Named kinds are rebuilt through their constructors so the closed-form
// query paths stay active; a non-empty vertex list must then match the
// construction exactly (1e-9 per coordinate) or loading fails. Generic
// kinds take the vertex list as-is, subject to extremality validation.
Polytope load_polytope_json(const std::string& text);
std::string polytope_json(const Polytope& poly);

// {"labels": [string,...], "p": [real,...]}
Distribution load_distribution_json(const std::string& text);
std::string distribution_json(const Distribution& p);

// One JSON object per line: {"instance": j, "a": id, "b": id, "rel": "<"}.
std::string reports_jsonl(const std::vector<ComparisonReport>& reports);
std::vector<ComparisonReport> parse_reports_jsonl(const std::string& text);

// Header "step,loss,grad_norm"; row t holds the loss at iterate t and the
// norm of the gradient that left it (the last row's gradient is evaluated
// at the final point).
std::string trace_csv(const TrainTrace& trace);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace polyembed
