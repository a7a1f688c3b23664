#include "sptk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sptk/category.hpp"
#include "sptk/errors.hpp"
#include "sptk/geometry.hpp"
#include "sptk/io.hpp"
#include "sptk/metric.hpp"
#include "sptk/triple.hpp"

namespace sptk::cli {

namespace {

using io::Json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse(buf.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw IoFailure("cannot write " + path);
}

struct Common {
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0 means the per-check default
  std::string out;
  unsigned threads = 1;

  double tol_or(double fallback) const { return tol > 0.0 ? tol : fallback; }
  SolverOptions solver() const {
    SolverOptions o;
    o.seed = seed;
    o.max_threads = std::max(1u, threads);
    return o;
  }
};

void add_common(CLI::App* sc, Common& c) {
  sc->add_option("--seed", c.seed, "Seed for sampled checks")->capture_default_str();
  sc->add_option("--tol", c.tol, "Tolerance override (default: per check)");
  sc->add_option("--out", c.out, "Write the JSON report here instead of stdout");
  sc->add_option("--threads", c.threads, "Workers for distance matrices")->capture_default_str();
}

int emit(Json report, const Common& c, std::ostream& out) {
  const bool pass = report.value("pass", false);
  const std::string text = io::dump(report);
  if (c.out.empty()) {
    out << text;
  } else {
    write_text(c.out, text);
  }
  return pass ? kPass : kFail;
}

Json fresh_report() {
  Json j;
  j["pass"] = false;
  return j;
}

// ---- validate --------------------------------------------------------------

struct ValidateArgs {
  std::string triple;
  std::string chain;
  bool strict = false;
};

int cmd_validate(const ValidateArgs& a, const Common& c, std::ostream& out) {
  const auto t = io::triple_from_json(load_json(a.triple));
  const double tol = c.tol_or(kAlgebraTol);
  Json j = fresh_report();
  const Report base = validate_triple(t, tol);
  bool pass = base.pass();
  j["triple"] = io::to_json(base);
  j["first_order_gates"] = a.strict;
  if (t.real_structure()) {
    try {
      const auto rs = check_real_structure(t, tol);
      const auto ko = ko_dimension(rs.signs);
      const bool ok = (a.strict ? rs.pass() : rs.structure_ok()) && !ko.empty();
      j["real_structure"] = io::to_json(rs);
      j["ko_dimension"] = ko;
      pass = pass && ok;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_real_structure) throw;
      j["real_structure"] = Json{{"pass", false}, {"error", e.what()}};
      j["ko_dimension"] = Json::array();
      pass = false;
    }
  } else {
    j["real_structure"] = nullptr;
    j["ko_dimension"] = Json::array();
  }
  if (!a.chain.empty()) {
    const auto chain = io::chain_from_json(load_json(a.chain));
    const auto o = check_orientability(t, chain, chain.degree);
    j["orientability"] = io::to_json(o);
    pass = pass && o.pass();
  }
  j["pass"] = pass;
  return emit(std::move(j), c, out);
}

// ---- distance --------------------------------------------------------------

struct DistanceArgs {
  std::string triple;
  std::vector<int> states;
  bool certificates = false;
  bool complex_search = false;
  int grid = 0;
  double box = 4.0;
};

BruteForceOptions complex_grid(int k, const DistanceArgs& a) {
  BruteForceOptions o;
  o.complex_search = true;
  o.box = a.box;
  if (a.grid > 0) {
    o.grid = a.grid;
  } else {
    // About 4e6 points over the 2(k-1) real coordinates.
    const double dims = 2.0 * std::max(1, k - 1);
    o.grid = std::clamp(static_cast<int>(std::floor(std::pow(4e6, 1.0 / dims))), 3, 201);
    if (o.grid % 2 == 0) --o.grid;
  }
  return o;
}

int cmd_distance(const DistanceArgs& a, const Common& c, std::ostream& out) {
  const auto t = io::triple_from_json(load_json(a.triple));
  const int k = t.num_characters();
  const DistanceSolver solver(t, c.solver());
  Json j = fresh_report();
  bool pass = true;

  std::vector<std::pair<int, int>> pairs;
  if (!a.states.empty()) {
    if (a.states.size() != 2) throw UsageFailure("--states takes two character indices");
    for (int s : a.states) {
      if (s < 1 || s > k) throw UsageFailure("--states index out of range 1.." + std::to_string(k));
    }
    const int i = a.states[0] - 1, jj = a.states[1] - 1;
    const auto d = solver.distance(i, jj);
    j["states"] = a.states;
    j["distance"] = io::to_json(d);
    pairs.emplace_back(i, jj);
  } else {
    const auto m = distance_matrix(t, c.solver());
    const Json mj = io::to_json(m, a.certificates);
    for (const auto& [key, value] : mj.items()) j[key] = value;
    for (int i = 0; i < k; ++i) {
      for (int jj = i + 1; jj < k; ++jj) pairs.emplace_back(i, jj);
    }
  }

  if (a.complex_search) {
    const auto opts = complex_grid(k, a);
    Json checks = Json::array();
    for (const auto& [i, jj] : pairs) {
      const auto si = State::pure(k, i), sj = State::pure(k, jj);
      const auto d = solver.distance(si, sj);
      const double oracle = brute_force_distance(t, si, sj, opts);
      // The complex grid may not beat the real optimum.
      const bool ok = d.infinite || oracle <= d.value * (1.0 + 1e-9) + 1e-9;
      pass = pass && ok;
      checks.push_back(Json{{"states", {i + 1, jj + 1}},
                            {"real_solver", d.infinite ? Json("inf") : Json(d.value)},
                            {"complex_oracle", oracle},
                            {"pass", ok}});
    }
    j["complex_search"] = Json{{"box", opts.box}, {"grid", opts.grid}, {"checks", std::move(checks)}};
  }
  j["pass"] = pass;
  return emit(std::move(j), c, out);
}

// ---- morphism --------------------------------------------------------------

struct MorphismArgs {
  std::string t1, t2, morphism;
  int samples = 32;
};

int cmd_morphism(const MorphismArgs& a, const Common& c, std::ostream& out) {
  const auto t1 = io::triple_from_json(load_json(a.t1));
  const auto t2 = io::triple_from_json(load_json(a.t2));
  const auto m = io::morphism_from_json(load_json(a.morphism), t1.num_characters());
  Json j = fresh_report();
  j["kind"] = to_string(m.kind);
  const Report r = m.kind == MorphismKind::metric
                       ? check_metric_morphism(t1, t2, m.phi, c.tol_or(1e-6), c.solver())
                       : check_sf_morphism(t1, t2, m, c.tol_or(kEquivalenceTol));
  j["report"] = io::to_json(r);
  bool pass = r.pass();
  if (m.kind == MorphismKind::sf && m.flags.isometric && pass) {
    const auto cr = check_pullback_contraction(t1, t2, m, a.samples, c.seed, c.solver());
    j["contraction"] = io::to_json(cr);
    pass = cr.pass();
  } else {
    j["contraction"] = nullptr;
  }
  j["pass"] = pass;
  return emit(std::move(j), c, out);
}

// ---- decompose -------------------------------------------------------------

struct DecomposeArgs {
  std::string triple;
  std::string dir;
};

int cmd_decompose(const DecomposeArgs& a, const Common& c, std::ostream& out) {
  const auto t = io::triple_from_json(load_json(a.triple));
  const auto dec = decompose(t);
  const auto sum = direct_sum(dec.components);
  const Report eq = check_unitary_equivalence(t, sum, dec.reassembly_hom(), dec.reassembly_unitary(),
                                              c.tol_or(kEquivalenceTol));
  Json j = fresh_report();
  j["num_components"] = dec.components.size();
  Json chars = Json::array();
  for (const auto& cs : dec.characters) {
    Json row = Json::array();
    for (int ch : cs) row.push_back(ch + 1);
    chars.push_back(std::move(row));
  }
  j["characters"] = std::move(chars);
  j["reassembly"] = io::to_json(eq);
  if (!a.dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.dir, ec);
    if (ec) throw IoFailure("cannot create " + a.dir);
    Json files = Json::array();
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
      const auto path = (std::filesystem::path(a.dir) / ("component_" + std::to_string(i + 1) + ".json")).string();
      write_text(path, io::dump(io::to_json(dec.components[i])));
      files.push_back(path);
    }
    j["files"] = std::move(files);
  } else {
    Json comps = Json::array();
    for (const auto& comp : dec.components) comps.push_back(io::to_json(comp));
    j["components"] = std::move(comps);
  }
  j["pass"] = eq.pass();
  return emit(std::move(j), c, out);
}

// ---- example ---------------------------------------------------------------

struct ExampleArgs {
  std::string name;
  double length = 1.0;
  double radius = 1.0;
};

int suffix_number(const std::string& name, const std::string& prefix) {
  const auto tail = name.substr(prefix.size());
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw UsageFailure("example " + name + " needs a numeric suffix");
  }
  return std::stoi(tail);
}

int cmd_example(const ExampleArgs& a, const Common& c, std::ostream& out) {
  std::optional<DiscreteGeometry> g;
  SpectralTriple t;
  const auto& n = a.name;
  if (n == "two_point") {
    auto gt = two_point_geometry(a.length);
    g = gt.geometry, t = gt.triple;
  } else if (n.starts_with("circle_")) {
    auto gt = lattice_circle(suffix_number(n, "circle_"), a.radius);
    g = gt.geometry, t = gt.triple;
  } else if (n.starts_with("interval_")) {
    auto gt = lattice_interval(suffix_number(n, "interval_"), a.length);
    g = gt.geometry, t = gt.triple;
  } else if (n == "disjoint_circles" || n.starts_with("disjoint_circles_")) {
    const int points = n == "disjoint_circles" ? 4 : suffix_number(n, "disjoint_circles_");
    const auto one = lattice_circle(points, a.radius).geometry;
    g = disjoint_union(one, one);
    t = graph_triple(*g);
  } else if (n.starts_with("ko_")) {
    t = ko_example(suffix_number(n, "ko_"), c.seed);
  } else {
    throw UsageFailure("unknown example " + n + " (two_point, circle_N, interval_N, disjoint_circles[_N], ko_N)");
  }
  Json j;
  j["pass"] = true;
  j["name"] = n;
  j["triple"] = io::to_json(t);
  j["geometry"] = g ? io::to_json(*g) : Json(nullptr);
  return emit(std::move(j), c, out);
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string geometry;
  std::string triple;
};

int cmd_compare(const CompareArgs& a, const Common& c, std::ostream& out) {
  const auto g = io::geometry_from_json(load_json(a.geometry));
  const auto t = a.triple.empty() ? graph_triple(g) : io::triple_from_json(load_json(a.triple));
  const auto rep = compare_metrics(g, t, c.solver(), c.tol_or(1e-6));
  return emit(io::to_json(rep), c, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite commutative spectral triples: axioms, Connes distances, morphisms", "sptk"};
  app.require_subcommand(1);
  Common common;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check the triple axioms, real structure and KO-dimension");
  validate->add_option("triple", va.triple, "Triple JSON")->required();
  validate->add_option("--chain", va.chain, "Hochschild chain JSON for the orientability check");
  validate->add_flag("--strict", va.strict, "Let the first-order condition decide the verdict");
  add_common(validate, common);

  DistanceArgs da;
  auto* distance = app.add_subcommand("distance", "Connes distances between pure states");
  distance->add_option("triple", da.triple, "Triple JSON")->required();
  distance->add_option("--states", da.states, "Two 1-based character indices")->expected(2);
  distance->add_flag("--certificates", da.certificates, "Include optimal elements in the matrix output");
  distance->add_flag("--complex-search", da.complex_search, "Cross-check against a complex-grid oracle (k <= 4)");
  distance->add_option("--grid", da.grid, "Grid points per coordinate for --complex-search");
  distance->add_option("--box", da.box, "Grid half-width for --complex-search")->capture_default_str();
  add_common(distance, common);

  MorphismArgs ma;
  auto* morphism = app.add_subcommand("morphism", "Check a morphism between two triples");
  morphism->add_option("source", ma.t1, "Source triple JSON")->required();
  morphism->add_option("target", ma.t2, "Target triple JSON")->required();
  morphism->add_option("morphism", ma.morphism, "Morphism JSON")->required();
  morphism->add_option("--samples", ma.samples, "Mixed state pairs in the contraction check")->capture_default_str();
  add_common(morphism, common);

  DecomposeArgs dea;
  auto* decomp = app.add_subcommand("decompose", "Split a triple into irreducible components");
  decomp->add_option("triple", dea.triple, "Triple JSON")->required();
  decomp->add_option("--dir", dea.dir, "Write component_<i>.json files here");
  add_common(decomp, common);

  ExampleArgs ea;
  auto* example = app.add_subcommand("example", "Emit a built-in triple");
  example->add_option("name", ea.name, "two_point, circle_N, interval_N, disjoint_circles[_N], ko_N")->required();
  example->add_option("--length", ea.length, "Edge length (two_point) or total length (interval_N)")
      ->capture_default_str();
  example->add_option("--radius", ea.radius, "Circle radius")->capture_default_str();
  add_common(example, common);

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "Spectral versus geodesic distance on a graph");
  compare->add_option("geometry", ca.geometry, "Geometry JSON")->required();
  compare->add_option("triple", ca.triple, "Triple JSON (default: the half-edge triple of the graph)");
  add_common(compare, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*validate) return cmd_validate(va, common, out);
    if (*distance) return cmd_distance(da, common, out);
    if (*morphism) return cmd_morphism(ma, common, out);
    if (*decomp) return cmd_decompose(dea, common, out);
    if (*example) return cmd_example(ea, common, out);
    if (*compare) return cmd_compare(ca, common, out);
  } catch (const IoFailure& e) {
    err << "sptk: " << e.what() << "\n";
    return kIo;
  } catch (const UsageFailure& e) {
    err << "sptk: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "sptk: " << e.what() << "\n";
    return e.code() == ErrorCode::parse_error ? kUsage : kFail;
  }
  return kUsage;
}

}  // namespace sptk::cli
