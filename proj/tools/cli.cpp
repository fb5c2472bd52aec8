#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hilbert/hilbert.hpp"

namespace hilbert::cli {

namespace {

using io::json;

struct Options {
  std::string polytope;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  double margin = 1e-3;
  std::string stress_margins;
  std::string p, q, v, x, y;
  std::string inner, c1, c2;
  int dim = 2;
  int resolution = 50;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse " + what + " component '" + item + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "empty " + what);
  return values;
}

Vector parse_point(const std::string& text, const std::string& what) {
  const auto values = parse_list(text, what);
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

double geometric_eps() {
  const char* env = std::getenv("HILBERT_EPS");
  if (!env || !*env) return kEpsGeom;
  const auto values = parse_list(env, "HILBERT_EPS");
  if (values.size() != 1 || !(values[0] > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "HILBERT_EPS must be one positive number");
  }
  return values[0];
}

SampleConfig sample_config(const Options& o) {
  SampleConfig cfg;
  cfg.seed = o.seed;
  cfg.count = o.samples;
  cfg.interior_margin = o.margin;
  if (!o.stress_margins.empty()) cfg.stress_margins = parse_list(o.stress_margins, "stress margins");
  cfg.validate();
  return cfg;
}

struct Result {
  json body;
  std::optional<io::CsvWriter> csv;
};

Polytope require_polytope(const Options& o) {
  if (o.polytope.empty()) throw Error(ErrorCode::InvalidArgument, "--polytope is required");
  return io::load_polytope(o.polytope, geometric_eps());
}

Result run_distance(const Options& o) {
  const HilbertStructure h(require_polytope(o));
  const double d = h.distance(parse_point(o.p, "--p"), parse_point(o.q, "--q"));
  Result r{json{{"distance", d}}, io::CsvWriter({"distance"})};
  r.csv->row({d});
  return r;
}

Result run_finsler(const Options& o) {
  const HilbertStructure h(require_polytope(o));
  const double f = h.finsler_norm(parse_point(o.p, "--p"), parse_point(o.v, "--v"));
  Result r{json{{"finsler_norm", f}}, io::CsvWriter({"finsler_norm"})};
  r.csv->row({f});
  return r;
}

Result run_subdivide(const Options& o) {
  const FlatteningAtlas atlas(require_polytope(o));
  const int n = atlas.dimension();
  std::vector<std::string> header{"cell", "vertex"};
  for (int k = 0; k < n; ++k) header.push_back("x" + std::to_string(k));
  Result r{json::object(), io::CsvWriter(header)};
  json cells = json::array();
  for (const auto& cell : atlas.cells()) {
    json verts = json::array();
    for (std::size_t k = 0; k < cell.vertices.size(); ++k) {
      verts.push_back(io::to_json(cell.vertices[k]));
      std::vector<std::string> row{std::to_string(cell.id), std::to_string(k)};
      for (int c = 0; c < n; ++c) row.push_back(io::format_double(cell.vertices[k](c)));
      r.csv->row_strings(row);
    }
    cells.push_back({{"id", cell.id}, {"flag", cell.flag.chain}, {"vertices", verts}});
  }
  r.body = {{"dimension", n},
            {"cell_count", atlas.cells().size()},
            {"barycenter", io::to_json(atlas.cone_apex())},
            {"cells", cells}};
  return r;
}

Result run_flatten(const Options& o) {
  const FlatteningAtlas atlas(require_polytope(o));
  const Vector x = parse_point(o.x, "--x");
  const std::size_t cell = atlas.locate(x);
  const Vector image = atlas.flatten(x);
  Result r{json{{"cell", cell}, {"point", io::to_json(x)}, {"image", io::to_json(image)}}, std::nullopt};
  std::vector<std::string> header{"cell"};
  std::vector<std::string> row{std::to_string(cell)};
  for (Eigen::Index k = 0; k < image.size(); ++k) {
    header.push_back("F" + std::to_string(k));
    row.push_back(io::format_double(image(k)));
  }
  r.csv.emplace(header);
  r.csv->row_strings(row);
  return r;
}

Result run_unflatten(const Options& o) {
  const FlatteningAtlas atlas(require_polytope(o));
  const Vector y = parse_point(o.y, "--y");
  const std::size_t cell = atlas.locate_cone(y);
  const Vector x = atlas.unflatten(y);
  Result r{json{{"cell", cell}, {"image", io::to_json(y)}, {"point", io::to_json(x)}}, std::nullopt};
  std::vector<std::string> header{"cell"};
  std::vector<std::string> row{std::to_string(cell)};
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    header.push_back("x" + std::to_string(k));
    row.push_back(io::format_double(x(k)));
  }
  r.csv.emplace(header);
  r.csv->row_strings(row);
  return r;
}

Result run_estimate_lipschitz(const Options& o) {
  const FlatteningAtlas atlas(require_polytope(o));
  const SampleConfig cfg = sample_config(o);
  const RatioReport report = estimate_bilipschitz(atlas, cfg);
  Result r{json{{"seed", cfg.seed}, {"report", io::report_to_json(report)}, {"lipschitz_estimate", report.constant()}},
           io::CsvWriter(io::report_csv_header())};
  io::report_csv_row(*r.csv, "global", report);
  return r;
}

Result run_estimate_cells(const Options& o) {
  const FlatteningAtlas atlas(require_polytope(o));
  const SampleConfig cfg = sample_config(o);
  const CellConstants constants = estimate_cell_constants(atlas, cfg);
  Result r{json::object(), io::CsvWriter(io::report_csv_header())};
  json cells = json::array();
  for (std::size_t i = 0; i < constants.cells.size(); ++i) {
    cells.push_back(io::report_to_json(constants.cells[i]));
    io::report_csv_row(*r.csv, "cell" + std::to_string(i), constants.cells[i]);
  }
  r.body = {{"seed", cfg.seed}, {"cells", cells}, {"sup_constant", constants.sup_constant()},
            {"half_sup_constant", constants.half_sup_constant()}};
  return r;
}

Result run_nested_ratio(const Options& o) {
  if (o.inner.empty() || o.c1.empty() || o.c2.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--inner, --c1 and --c2 are required");
  }
  const double eps = geometric_eps();
  const Polytope s = io::load_polytope(o.inner, eps);
  const Polytope c1 = io::load_polytope(o.c1, eps);
  const Polytope c2 = io::load_polytope(o.c2, eps);
  const SampleConfig cfg = sample_config(o);
  const RatioReport report = nested_ratio_experiment(s, c1, c2, cfg);
  Result r{json{{"seed", cfg.seed}, {"report", io::report_to_json(report)}, {"max_q", report.max_ratio}},
           io::CsvWriter(io::report_csv_header())};
  io::report_csv_row(*r.csv, "Q", report);
  return r;
}

Result run_check_isometry(const Options& o) {
  SampleConfig cfg;
  cfg.seed = o.seed;
  cfg.count = o.samples;
  const double deviation = isometry_check(o.dim, cfg);
  Result r{json{{"dim", o.dim}, {"samples", cfg.count}, {"seed", cfg.seed}, {"max_deviation", deviation}},
           io::CsvWriter({"dim", "samples", "max_deviation"})};
  r.csv->row_strings({std::to_string(o.dim), std::to_string(cfg.count), io::format_double(deviation)});
  return r;
}

Result run_emit_grid(const Options& o) {
  const FlatteningAtlas atlas(require_polytope(o));
  const auto rows = emit_grid(atlas, o.resolution);
  Result r{json::object(), io::CsvWriter({"x0", "x1", "F0", "F1"})};
  json jrows = json::array();
  for (const auto& row : rows) {
    jrows.push_back(row);
    r.csv->row({row[0], row[1], row[2], row[3]});
  }
  r.body = {{"header", {"x0", "x1", "F0", "F1"}}, {"resolution", o.resolution}, {"rows", jrows}};
  return r;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert geometry of convex polytopes and its flattening map"};
  app.require_subcommand(1);
  Options o;

  auto add_polytope = [&](CLI::App* sub) {
    sub->add_option("--polytope", o.polytope, "Polytope JSON file")->required();
    sub->add_option("--out", o.out, "Write CSV here instead of printing JSON");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--samples", o.samples, "Number of samples");
    sub->add_option("--margin", o.margin, "Minimum facet slack of sampled points");
    sub->add_option("--stress-margins", o.stress_margins,
                    "Comma-separated facet slacks for the boundary-stress quota");
  };

  std::vector<std::pair<CLI::App*, std::function<Result(const Options&)>>> commands;

  auto* distance = app.add_subcommand("distance", "Hilbert distance between two interior points");
  add_polytope(distance);
  distance->add_option("--p", o.p, "First point, comma separated")->required();
  distance->add_option("--q", o.q, "Second point, comma separated")->required();
  commands.emplace_back(distance, run_distance);

  auto* finsler = app.add_subcommand("finsler", "Finsler norm of a tangent vector");
  add_polytope(finsler);
  finsler->add_option("--p", o.p, "Base point")->required();
  finsler->add_option("--v", o.v, "Tangent vector")->required();
  commands.emplace_back(finsler, run_finsler);

  auto* subdivide = app.add_subcommand("subdivide", "List the cells of the barycentric subdivision");
  add_polytope(subdivide);
  commands.emplace_back(subdivide, run_subdivide);

  auto* flatten = app.add_subcommand("flatten", "Image F(x) of an interior point");
  add_polytope(flatten);
  flatten->add_option("--x", o.x, "Interior point")->required();
  commands.emplace_back(flatten, run_flatten);

  auto* unflatten = app.add_subcommand("unflatten", "Preimage of a point of R^n under F");
  add_polytope(unflatten);
  unflatten->add_option("--y", o.y, "Image point")->required();
  commands.emplace_back(unflatten, run_unflatten);

  auto* lipschitz = app.add_subcommand("estimate-lipschitz", "Empirical bi-Lipschitz constant of F");
  add_polytope(lipschitz);
  add_sampling(lipschitz);
  commands.emplace_back(lipschitz, run_estimate_lipschitz);

  auto* cells = app.add_subcommand("estimate-cells", "Per-cell Finsler comparison constants");
  add_polytope(cells);
  add_sampling(cells);
  commands.emplace_back(cells, run_estimate_cells);

  auto* nested = app.add_subcommand("nested-ratio", "Finsler ratio for nested simplices S in C1 in C2");
  nested->add_option("--inner", o.inner, "Simplex S (polytope JSON)")->required();
  nested->add_option("--c1", o.c1, "Simplex C1 (polytope JSON)")->required();
  nested->add_option("--c2", o.c2, "Simplex C2 (polytope JSON)")->required();
  nested->add_option("--out", o.out, "Write CSV here instead of printing JSON");
  add_sampling(nested);
  commands.emplace_back(nested, run_nested_ratio);

  auto* isometry = app.add_subcommand("check-isometry", "Compare simplex distance with the log-chart norm");
  isometry->add_option("--dim", o.dim, "Simplex dimension (1-4)")->required();
  isometry->add_option("--samples", o.samples, "Number of pairs");
  isometry->add_option("--seed", o.seed, "Random seed");
  isometry->add_option("--out", o.out, "Write CSV here instead of printing JSON");
  commands.emplace_back(isometry, run_check_isometry);

  auto* grid = app.add_subcommand("emit-grid", "Grid of interior points and their images (2-D)");
  add_polytope(grid);
  grid->add_option("--resolution", o.resolution, "Grid points per axis");
  commands.emplace_back(grid, run_emit_grid);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    for (const auto& [sub, run] : commands) {
      if (!sub->parsed()) continue;
      Result result = run(o);
      if (!o.out.empty() && result.csv) {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out);
        file << result.csv->str();
      } else {
        out << result.body.dump(2) << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace hilbert::cli
