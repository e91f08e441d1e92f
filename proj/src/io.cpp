#include "polyembed/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace polyembed {

namespace {

using nlohmann::json;

std::string strip_comment_lines(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header && !line.empty() && line[0] == '#') continue;
    header = false;
    out << line << '\n';
  }
  return out.str();
}

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(strip_comment_lines(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

std::vector<Point> vertices_field(const json& j) {
  std::vector<Point> pts;
  for (const auto& row : j.at("vertices"))
    pts.push_back(row.get<Point>());
  return pts;
}

const char* kind_name(PolytopeKind kind) {
  switch (kind) {
    case PolytopeKind::Cube:
      return "cube";
    case PolytopeKind::Permutahedron:
      return "permutahedron";
    case PolytopeKind::CrossPolytope:
      return "cross";
    case PolytopeKind::Generic:
      return "generic";
  }
  return "generic";
}

}  // namespace

Polytope load_polytope_json(const std::string& text) {
  const json j = parse(text, "polytope json");
  std::string kind;
  std::size_t dim = 0;
  std::vector<Point> pts;
  try {
    kind = j.at("kind").get<std::string>();
    dim = j.at("dim").get<std::size_t>();
    pts = vertices_field(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("polytope json: ") + e.what());
  }

  Polytope poly;
  if (kind == "cube") {
    poly = build_cube(dim);
  } else if (kind == "permutahedron") {
    poly = build_permutahedron(dim);
  } else if (kind == "cross") {
    poly = build_cross_polytope(dim);
  } else if (kind == "generic") {
    return from_vertices(make_vertex_set(dim, pts));
  } else {
    throw std::invalid_argument("polytope json: unknown kind '" + kind + "'");
  }

  // A vertex list alongside a named kind must reproduce the construction,
  // otherwise the file's outcome ordering would silently disagree with the
  // closed-form query paths.
  if (!pts.empty()) {
    if (pts.size() != poly.size())
      throw std::invalid_argument("polytope json: vertex count mismatch");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].size() != poly.dim)
        throw std::invalid_argument("polytope json: vertex dim mismatch");
      for (std::size_t k = 0; k < poly.dim; ++k)
        if (std::fabs(pts[i][k] - poly.vertex(i)[k]) > 1e-9)
          throw std::invalid_argument(
              "polytope json: vertices disagree with named construction");
    }
  }
  return poly;
}

std::string polytope_json(const Polytope& poly) {
  json j;
  j["kind"] = kind_name(poly.kind);
  j["dim"] = poly.dim;
  j["vertices"] = poly.verts.vertices;
  return j.dump(2) + "\n";
}

Distribution load_distribution_json(const std::string& text) {
  const json j = parse(text, "distribution json");
  try {
    return make_distribution(j.at("labels").get<std::vector<std::string>>(),
                             j.at("p").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("distribution json: ") +
                                e.what());
  }
}

std::string distribution_json(const Distribution& p) {
  json j;
  j["labels"] = p.labels;
  j["p"] = p.p;
  return j.dump(2) + "\n";
}

std::string reports_jsonl(const std::vector<ComparisonReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    json j;
    j["instance"] = r.source_instance;
    j["a"] = r.a;
    j["b"] = r.b;
    j["rel"] = to_string(r.relation);
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<ComparisonReport> parse_reports_jsonl(const std::string& text) {
  std::vector<ComparisonReport> reports;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const json j = parse(line, "report line");
    ComparisonReport r;
    std::string rel;
    try {
      r.source_instance = j.at("instance").get<std::size_t>();
      r.a = j.at("a").get<std::size_t>();
      r.b = j.at("b").get<std::size_t>();
      rel = j.at("rel").get<std::string>();
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("report line: ") + e.what());
    }
    if (rel == "<")
      r.relation = Relation::Less;
    else if (rel == ">")
      r.relation = Relation::Greater;
    else if (rel == "=")
      r.relation = Relation::Equal;
    else
      throw std::invalid_argument("report line: bad rel '" + rel + "'");
    reports.push_back(r);
  }
  return reports;
}

std::string trace_csv(const TrainTrace& trace) {
  std::ostringstream out;
  out.precision(12);
  out << "step,loss,grad_norm\n";
  for (std::size_t t = 0; t < trace.loss_curve.size(); ++t) {
    out << t << ',' << trace.loss_curve[t] << ',';
    if (t < trace.grad_norm_curve.size()) out << trace.grad_norm_curve[t];
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

}  // namespace polyembed
