// dirdist: command-line front end for sampling, density evaluation, parameter
// conversion, projections and the verification suites.
//
// Exit codes: 0 success (all checks passed), 1 check failure, 2 usage or
// parameter error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dirdist/checks.hpp"
#include "dirdist/distributions.hpp"
#include "dirdist/geom.hpp"
#include "dirdist/projection.hpp"
#include "dirdist/quadrature.hpp"
#include "dirdist/sampling.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// key=value pairs from repeated --params tokens.
class ParamMap {
 public:
  explicit ParamMap(const std::vector<std::string>& tokens) {
    for (const std::string& t : tokens) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("--params expects key=value, got '" + t + "'");
      }
      kv_[t.substr(0, eq)] = t.substr(eq + 1);
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  const std::string& text(const std::string& key) const { return require(key); }

  double number(const std::string& key) const {
    return std::stod(require(key));
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const { return std::stoi(require(key)); }

  int integer_or(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  Eigen::VectorXd vector(const std::string& key) const {
    const std::string raw = require(key);
    std::vector<double> vals;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) vals.push_back(std::stod(item));
    }
    if (vals.empty()) {
      throw std::invalid_argument("--params " + key + " is empty");
    }
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  }

 private:
  const std::string& require(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) {
      throw std::invalid_argument("missing required parameter '" + key + "'");
    }
    return it->second;
  }

  std::map<std::string, std::string> kv_;
};

// Row-major flattened q x q matrix.
dirdist::SpdMatrix parse_spd(const Eigen::VectorXd& flat, int q) {
  if (flat.size() != static_cast<Eigen::Index>(q) * q) {
    throw std::invalid_argument("matrix parameter needs q*q entries");
  }
  Eigen::MatrixXd m(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) m(i, j) = flat[i * q + j];
  }
  return dirdist::SpdMatrix(m);
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path);
  if (!f) {
    throw std::runtime_error("cannot open output file '" + out_path + "'");
  }
  f << content;
  if (!f.good()) {
    throw std::runtime_error("failed writing output file '" + out_path + "'");
  }
}

std::string csv_header(const std::string& prefix, int n) {
  std::string h;
  for (int i = 0; i < n; ++i) {
    if (i) h += ',';
    h += prefix + std::to_string(i + 1);
  }
  return h;
}

struct GridSpec {
  int primary = 0;
  int secondary = 0;  // 0 when one-dimensional
};

GridSpec parse_grid(const std::string& text, int default_1d, int default_a, int default_b,
                    bool want_2d) {
  GridSpec g;
  if (text.empty()) {
    if (want_2d) {
      g.primary = default_a;
      g.secondary = default_b;
    } else {
      g.primary = default_1d;
    }
    return g;
  }
  const auto x = text.find('x');
  if (x == std::string::npos) {
    g.primary = std::stoi(text);
  } else {
    g.primary = std::stoi(text.substr(0, x));
    g.secondary = std::stoi(text.substr(x + 1));
  }
  if (g.primary < 1 || (want_2d && g.secondary < 1)) {
    throw std::invalid_argument("invalid --grid '" + text + "'");
  }
  return g;
}

// ---------------------------------------------------------------------------
// sample

int run_sample(const std::string& dist, const ParamMap& params, long long n,
               std::uint64_t seed, const std::string& format, const std::string& out) {
  using namespace dirdist;
  if (n < 1) throw std::invalid_argument("--n must be at least 1");
  Rng rng(seed);
  std::string csv;
  nlohmann::json rows = nlohmann::json::array();
  std::string header;

  auto push_vector = [&](const Eigen::VectorXd& v) {
    std::string line;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) line += ',';
      line += fmt17(v[i]);
    }
    csv += line + "\n";
    if (format == "json") {
      nlohmann::json r = nlohmann::json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) r.push_back(v[i]);
      rows.push_back(r);
    }
  };

  if (dist == "wc") {
    const WcParams p(params.number("lambda"), Angled(params.number_or("mu", 0.0)));
    WcSampleMethod method = WcSampleMethod::kDoubling;
    if (params.has("method")) {
      const std::string name = params.text("method");
      if (name == "doubling") {
        method = WcSampleMethod::kDoubling;
      } else if (name == "stereographic") {
        method = WcSampleMethod::kStereographic;
      } else if (name == "wrapping") {
        method = WcSampleMethod::kWrapping;
      } else {
        throw std::invalid_argument("method must be doubling, stereographic or wrapping");
      }
    }
    header = "theta";
    for (long long i = 0; i < n; ++i) {
      const double t = sample_wc(p, method, rng).value();
      csv += fmt17(t) + "\n";
      if (format == "json") rows.push_back(t);
    }
  } else if (dist == "acg") {
    const int q = params.integer_or("q", 2);
    const AcgParams p = params.has("b") ? AcgParams::circle(params.number("b"))
                                        : AcgParams(parse_spd(params.vector("omega"), q));
    header = csv_header("x", p.dim());
    for (long long i = 0; i < n; ++i) push_vector(sample_acg(p, rng).coords());
  } else if (dist == "sc") {
    const int q = params.integer_or("q", 3);
    const UnitVectord mu0 = params.has("mu0")
                                ? UnitVectord::normalized(params.vector("mu0"))
                                : UnitVectord::axis(q);
    const ScParams p(params.number("lambda"), mu0);
    header = csv_header("x", static_cast<int>(mu0.dim()));
    for (long long i = 0; i < n; ++i) push_vector(sample_sc(p, rng).coords());
  } else if (dist == "mvt") {
    const Eigen::VectorXd m = params.vector("m");
    const MvtParams p(m, parse_spd(params.vector("scatter"), static_cast<int>(m.size())),
                      params.number_or("kappa", 1.0));
    header = csv_header("v", static_cast<int>(m.size()));
    for (long long i = 0; i < n; ++i) push_vector(sample_mvt(p, rng));
  } else if (dist == "uniform") {
    const int q = params.integer_or("q", 3);
    header = csv_header("x", q);
    for (long long i = 0; i < n; ++i) push_vector(sample_uniform(q, rng).coords());
  } else {
    throw std::invalid_argument("unknown distribution '" + dist + "'");
  }

  if (format == "json") {
    nlohmann::json j{{"dist", dist}, {"n", n}, {"seed", seed}, {"samples", rows}};
    write_output(j.dump() + "\n", out);
  } else {
    write_output(header + "\n" + csv, out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// density

int run_density(const std::string& dist, const ParamMap& params, const std::string& grid_text,
                const std::string& format, const std::string& out) {
  using namespace dirdist;

  struct Row {
    Eigen::VectorXd point;
    double weight;
    double density;
  };
  std::vector<Row> table;
  int point_cols = 0;
  std::string point_prefix = "x";

  auto circle_rows = [&](auto&& pdf_of_angle, int nodes) {
    const Quadrature1d rule = circle_trapezoid(nodes);
    point_cols = 1;
    point_prefix = "theta";
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
      Eigen::VectorXd pt(1);
      pt[0] = rule.nodes[k];
      table.push_back({pt, rule.weights[k], pdf_of_angle(rule.nodes[k])});
    }
  };

  auto sphere_rows = [&](auto&& pdf_of_point, const GridSpec& g) {
    const SphereQuadrature rule = sphere_product_rule(g.primary, g.secondary);
    point_cols = 3;
    point_prefix = "x";
    for (Eigen::Index k = 0; k < rule.nodes.rows(); ++k) {
      const Eigen::Vector3d y = rule.nodes.row(k).transpose();
      table.push_back({y, rule.weights[k], pdf_of_point(y)});
    }
  };

  if (dist == "wc") {
    const WcParams p(params.number("lambda"), Angled(params.number_or("mu", 0.0)));
    const GridSpec g = parse_grid(grid_text, 1024, 0, 0, false);
    circle_rows([&](double t) { return wc_pdf(Angled(t), p); }, g.primary);
  } else if (dist == "uniform") {
    const int q = params.integer_or("q", 2);
    if (q == 2) {
      const GridSpec g = parse_grid(grid_text, 1024, 0, 0, false);
      circle_rows([&](double) { return 1.0 / (2.0 * kPi); }, g.primary);
    } else if (q == 3) {
      const GridSpec g = parse_grid(grid_text, 0, 64, 128, true);
      sphere_rows([&](const Eigen::Vector3d&) { return 1.0 / (4.0 * kPi); }, g);
    } else {
      throw std::invalid_argument("density grids support q = 2 or 3");
    }
  } else if (dist == "acg") {
    const int q = params.integer_or("q", 2);
    if (params.has("b") || q == 2) {
      const AcgParams p = params.has("b") ? AcgParams::circle(params.number("b"))
                                          : AcgParams(parse_spd(params.vector("omega"), 2));
      const GridSpec g = parse_grid(grid_text, 1024, 0, 0, false);
      circle_rows([&](double t) { return acg_pdf(vec(Angled(t)), p); }, g.primary);
    } else if (q == 3) {
      const AcgParams p{parse_spd(params.vector("omega"), 3)};
      const GridSpec g = parse_grid(grid_text, 0, 64, 128, true);
      sphere_rows([&](const Eigen::Vector3d& y) { return acg_pdf(UnitVectord(y), p); }, g);
    } else {
      throw std::invalid_argument("density grids support q = 2 or 3");
    }
  } else if (dist == "sc") {
    const int q = params.integer_or("q", params.has("mu0") ? -1 : 2);
    const UnitVectord mu0 = params.has("mu0")
                                ? UnitVectord::normalized(params.vector("mu0"))
                                : UnitVectord::axis(q);
    const ScParams p(params.number("lambda"), mu0);
    if (mu0.dim() == 2) {
      const GridSpec g = parse_grid(grid_text, 1024, 0, 0, false);
      circle_rows([&](double t) { return sc_pdf(vec(Angled(t)), p); }, g.primary);
    } else if (mu0.dim() == 3) {
      const GridSpec g = parse_grid(grid_text, 0, 64, 128, true);
      sphere_rows([&](const Eigen::Vector3d& y) { return sc_pdf(UnitVectord(y), p); }, g);
    } else {
      throw std::invalid_argument("density grids support q = 2 or 3");
    }
  } else if (dist == "mvt") {
    const Eigen::VectorXd m = params.vector("m");
    const int p_dim = static_cast<int>(m.size());
    const MvtParams p(m, parse_spd(params.vector("scatter"), p_dim),
                      params.number_or("kappa", 1.0));
    point_prefix = "v";
    if (p_dim == 1) {
      // Radial tangent substitution v = m + sqrt(B) tan(s).
      const GridSpec g = parse_grid(grid_text, 256, 0, 0, false);
      const Quadrature1d rule = gauss_legendre(g.primary, -kPi / 2.0, kPi / 2.0);
      const double scale = std::sqrt(p.scatter.matrix()(0, 0));
      point_cols = 1;
      for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
        const double t = std::tan(rule.nodes[k]);
        Eigen::VectorXd v(1);
        v[0] = m[0] + scale * t;
        table.push_back({v, rule.weights[k] * scale * (1.0 + t * t), mvt_pdf(v, p)});
      }
    } else if (p_dim == 2) {
      const GridSpec g = parse_grid(grid_text, 0, 128, 64, true);
      const Quadrature1d radial = gauss_legendre(g.primary, 0.0, kPi / 2.0);
      const Eigen::MatrixXd l = p.scatter.llt().matrixL();
      const double det_l = l(0, 0) * l(1, 1);
      point_cols = 2;
      for (Eigen::Index i = 0; i < radial.nodes.size(); ++i) {
        const double rho = std::tan(radial.nodes[i]);
        const double jac = rho * (1.0 + rho * rho);
        for (int j = 0; j < g.secondary; ++j) {
          const double psi = 2.0 * kPi * j / g.secondary;
          const Eigen::VectorXd v =
              m + l * Eigen::Vector2d(rho * std::cos(psi), rho * std::sin(psi));
          table.push_back(
              {v, radial.weights[i] * (2.0 * kPi / g.secondary) * det_l * jac, mvt_pdf(v, p)});
        }
      }
    } else {
      throw std::invalid_argument("mvt density grids support p = 1 or 2");
    }
  } else {
    throw std::invalid_argument("unknown distribution '" + dist + "'");
  }

  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    double mass = 0.0;
    for (const Row& r : table) {
      nlohmann::json pt = nlohmann::json::array();
      for (Eigen::Index i = 0; i < r.point.size(); ++i) pt.push_back(r.point[i]);
      rows.push_back({{"point", pt}, {"weight", r.weight}, {"density", r.density}});
      mass += r.weight * r.density;
    }
    const nlohmann::json j{{"dist", dist}, {"rows", rows}, {"weighted_mass", mass}};
    write_output(j.dump() + "\n", out);
  } else {
    std::string text = csv_header(point_prefix, point_cols) + ",weight,density\n";
    for (const Row& r : table) {
      for (Eigen::Index i = 0; i < r.point.size(); ++i) text += fmt17(r.point[i]) + ",";
      text += fmt17(r.weight) + "," + fmt17(r.density) + "\n";
    }
    write_output(text, out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// convert / project / spectral / check

int run_convert(const std::string& from, double value, const std::string& format,
                const std::string& out) {
  using namespace dirdist;
  WcParameterization kind;
  if (from == "lambda") {
    kind = WcParameterization::kLambda;
  } else if (from == "b") {
    kind = WcParameterization::kB;
  } else if (from == "mu") {
    kind = WcParameterization::kMu;
  } else if (from == "alpha") {
    kind = WcParameterization::kAlpha;
  } else {
    throw std::invalid_argument("--from must be one of lambda, b, mu, alpha");
  }
  const WcParameterSet s = param_convert(kind, value);
  if (format == "json") {
    const nlohmann::json j{{"lambda", s.lambda}, {"b", s.b},         {"mu", s.mu},
                           {"alpha", s.alpha},   {"A", s.abc.a},     {"B", s.abc.b},
                           {"C", s.abc.c}};
    write_output(j.dump() + "\n", out);
  } else {
    std::string text = "lambda,b,mu,alpha,A,B,C\n";
    text += fmt17(s.lambda) + "," + fmt17(s.b) + "," + fmt17(s.mu) + "," + fmt17(s.alpha) +
            "," + fmt17(s.abc.a) + "," + fmt17(s.abc.b) + "," + fmt17(s.abc.c) + "\n";
    write_output(text, out);
  }
  return 0;
}

int run_project(const std::string& op, const Eigen::VectorXd& point, const std::string& format,
                const std::string& out) {
  using namespace dirdist;
  Eigen::VectorXd result;
  std::string prefix;
  if (op == "gnomonic") {
    result = gnomonic(UnitVectord::normalized(point)).coords();
    prefix = "v";
  } else if (op == "gnomonic-inverse") {
    result = gnomonic_inverse(TangentPointd(point)).coords();
    prefix = "x";
  } else if (op == "stereographic") {
    result = stereographic(UnitVectord::normalized(point)).coords();
    prefix = "w";
  } else if (op == "stereographic-inverse") {
    result = stereographic_inverse(TangentPointd(point)).coords();
    prefix = "x";
  } else {
    throw std::invalid_argument("--op must be one of gnomonic, gnomonic-inverse, "
                                "stereographic, stereographic-inverse");
  }
  if (format == "json") {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index i = 0; i < result.size(); ++i) r.push_back(result[i]);
    write_output(nlohmann::json{{"op", op}, {"result", r}}.dump() + "\n", out);
  } else {
    std::string text = csv_header(prefix, static_cast<int>(result.size())) + "\n";
    for (Eigen::Index i = 0; i < result.size(); ++i) {
      if (i) text += ',';
      text += fmt17(result[i]);
    }
    text += "\n";
    write_output(text, out);
  }
  return 0;
}

int run_spectral(double lambda, int grid, const std::string& format, const std::string& out) {
  using namespace dirdist;
  const Quadrature1d rule = circle_trapezoid(grid);
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
      rows.push_back({{"theta", rule.nodes[k]},
                      {"density", ar1_spectral_pdf(Angled(rule.nodes[k]), lambda)}});
    }
    const nlohmann::json j{
        {"lambda", lambda}, {"alpha", car1_alpha(lambda)}, {"rows", rows}};
    write_output(j.dump() + "\n", out);
  } else {
    std::string text = "theta,density\n";
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
      text += fmt17(rule.nodes[k]) + "," +
              fmt17(ar1_spectral_pdf(Angled(rule.nodes[k]), lambda)) + "\n";
    }
    write_output(text, out);
  }
  return 0;
}

int run_check(const std::string& suite, long long trials, std::uint64_t seed, double tol,
              const std::string& format, const std::string& out) {
  using namespace dirdist;
  const std::optional<long long> trials_opt =
      trials < 0 ? std::nullopt : std::optional<long long>(trials);
  const std::optional<double> tol_opt = tol < 0.0 ? std::nullopt : std::optional<double>(tol);
  const std::vector<CheckReport> reports = run_identity_suite(suite, trials_opt, seed, tol_opt);

  std::string text;
  if (format == "json") {
    if (reports.size() == 1) {
      text = to_json_string(reports[0]) + "\n";
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const CheckReport& r : reports) arr.push_back(nlohmann::json::parse(to_json_string(r)));
      text = arr.dump() + "\n";
    }
  } else {
    text = check_report_csv_header() + "\n";
    for (const CheckReport& r : reports) text += to_csv_line(r) + "\n";
  }
  write_output(text, out);

  for (const CheckReport& r : reports) {
    if (!r.passed) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circle/sphere transformations and the wrapped Cauchy distribution family"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 0;

  // sample
  auto* sample = app.add_subcommand("sample", "draw from a distribution");
  std::string sample_dist;
  std::vector<std::string> sample_params;
  long long sample_n = 10;
  sample->add_option("--dist", sample_dist, "wc|acg|sc|mvt|uniform")->required();
  sample->add_option("--params", sample_params, "key=value pairs");
  sample->add_option("--n", sample_n, "number of draws");

  // density
  auto* density = app.add_subcommand("density", "evaluate a density on a weighted grid");
  std::string density_dist;
  std::vector<std::string> density_params;
  std::string density_grid;
  density->add_option("--dist", density_dist, "wc|acg|sc|mvt|uniform")->required();
  density->add_option("--params", density_params, "key=value pairs");
  density->add_option("--grid", density_grid, "N (circle/line) or NxM (sphere/plane)");

  // convert
  auto* convert = app.add_subcommand("convert", "wrapped Cauchy parameterizations");
  std::string convert_from;
  double convert_value = 0.0;
  convert->add_option("--from", convert_from, "lambda|b|mu|alpha")->required();
  convert->add_option("--value", convert_value, "parameter value")->required();

  // project
  auto* project = app.add_subcommand("project", "tangent-space projections");
  std::string project_op;
  std::string project_point;
  project->add_option("--op", project_op,
                      "gnomonic|gnomonic-inverse|stereographic|stereographic-inverse")
      ->required();
  project->add_option("--point", project_point, "comma-separated coordinates")->required();

  // spectral
  auto* spectral = app.add_subcommand("spectral", "AR(1) spectral density grid");
  double spectral_lambda = 0.0;
  int spectral_grid = 256;
  spectral->add_option("--lambda", spectral_lambda, "AR(1) coefficient, |lambda| < 1")
      ->required();
  spectral->add_option("--grid", spectral_grid, "number of grid points");

  // check
  auto* check = app.add_subcommand("check", "run a verification suite");
  std::string check_suite;
  long long check_trials = -1;
  double check_tol = -1.0;
  check
      ->add_option("--suite", check_suite,
                   "mobius|mobius-general|doubling|pushforward-gnomonic|pushforward-stereo|"
                   "normalization|fourier|table1|spectral|samplers|all")
      ->required()
      ->check(CLI::IsMember({"mobius", "mobius-general", "doubling", "pushforward-gnomonic",
                             "pushforward-stereo", "normalization", "fourier", "table1",
                             "spectral", "samplers", "all"}));
  check->add_option("--trials", check_trials, "trial count (suite default when omitted)");
  check->add_option("--tol", check_tol, "tolerance override (suite default when omitted)");

  for (CLI::App* sub : {sample, density, convert, project, spectral, check}) {
    sub->add_option("--seed", seed, "generator seed");
    sub->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "write output to a file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sample->parsed()) {
      return run_sample(sample_dist, ParamMap(sample_params), sample_n, seed, format, out_path);
    }
    if (density->parsed()) {
      return run_density(density_dist, ParamMap(density_params), density_grid, format,
                         out_path);
    }
    if (convert->parsed()) {
      return run_convert(convert_from, convert_value, format, out_path);
    }
    if (project->parsed()) {
      ParamMap point_map({"point=" + project_point});
      return run_project(project_op, point_map.vector("point"), format, out_path);
    }
    if (spectral->parsed()) {
      return run_spectral(spectral_lambda, spectral_grid, format, out_path);
    }
    if (check->parsed()) {
      return run_check(check_suite, check_trials, seed, check_tol, format, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
