#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cli/io.hpp"
#include "pdq/pdq.hpp"

namespace pdq::cli {

namespace {

using nlohmann::ordered_json;

struct InputOptions {
  std::string family;
  std::vector<double> shape;
  std::string lattice;
  std::string sample;
  std::string freq;
  bool wool = false;
  bool trim_outliers = false;
  bool discrete = false;
  std::string rule;
  std::size_t grid = 0;
};

void add_input_options(CLI::App* app, InputOptions& o, bool data_only = false) {
  if (!data_only) {
    app->add_option("--family", o.family, "catalog family, e.g. normal or tukey(-1)");
    app->add_option("--shape", o.shape, "shape parameter(s) of --family");
    app->add_option("--lattice", o.lattice, "poisson(l), geometric(p), negbin(r,p), binomial(n,p)");
  }
  app->add_option("--sample", o.sample, "file with one observation per line");
  app->add_option("--freq", o.freq, "CSV file of value,count rows");
  app->add_flag("--wool", o.wool, "use the bundled wool fibre diameters");
  app->add_flag("--trim-outliers", o.trim_outliers, "drop the three largest wool diameters");
  app->add_option("--rule", o.rule, "bandwidth reference for samples: cauchy or lognormal");
  if (!data_only) {
    app->add_flag("--discrete", o.discrete, "step pdQ of the sample instead of the kernel estimate");
  }
}

Source resolve(const InputOptions& o) {
  int given = !o.family.empty() + !o.lattice.empty() + !o.sample.empty() + !o.freq.empty() + o.wool;
  if (given != 1) {
    throw UsageError("give exactly one of --family, --lattice, --sample, --freq, --wool");
  }
  if (o.trim_outliers && !o.wool) throw UsageError("--trim-outliers applies to --wool only");
  if (!o.family.empty()) {
    auto [name, p] = parse_call(o.family);
    p.insert(p.end(), o.shape.begin(), o.shape.end());
    return make_model(name, std::span<const double>(p));
  }
  if (!o.lattice.empty()) return parse_source(o.lattice);
  if (!o.sample.empty()) return parse_source("sample:" + o.sample);
  if (!o.freq.empty()) return parse_source("freq:" + o.freq);
  return parse_source(o.trim_outliers ? "wool-trimmed" : "wool");
}

BandwidthRule rule_for(const EmpiricalSample& s, const std::string& rule) {
  if (rule.empty()) return default_rule(s);
  if (rule == "cauchy") return {ReferenceFamily::Cauchy, s.size()};
  if (rule == "lognormal") return {ReferenceFamily::Lognormal, s.size()};
  throw UsageError("unknown bandwidth rule '" + rule + "'");
}

bool is_smooth_sample(const Source& src, bool discrete) {
  return std::holds_alternative<EmpiricalSample>(src) && !discrete;
}

GridDensity to_grid(const Source& src, std::size_t m, bool discrete, const std::string& rule) {
  if (const auto* model = std::get_if<ContinuousModel>(&src)) return pdq::pdq(*model, m);
  if (const auto* lattice = std::get_if<LatticeDistribution>(&src)) return lattice_pdq(*lattice, m);
  const auto& s = std::get<EmpiricalSample>(src);
  if (discrete) return empirical_pdq_discrete(s, m);
  return empirical_pdq_smooth(s, rule_for(s, rule), m);
}

std::size_t default_grid(const Source& src, bool discrete) {
  return is_smooth_sample(src, discrete) ? kEmpiricalGridSize : kDefaultGridSize;
}

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_significant(x);
}

std::string dump(const ordered_json& j) { return j.dump(2); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream(std::ostream& fallback) { return file_.is_open() ? file_ : fallback; }

 private:
  std::ofstream file_;
};

void write_curve(std::ostream& os, const GridDensity& g) {
  os << "u,pdq\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    os << format_number(g.midpoint(j)) << ',' << format_number(g[j]) << '\n';
  }
}

ordered_json fit_json(const FitResult& r) {
  ordered_json j;
  j["family"] = r.family;
  j["method"] = std::string(to_string(r.method));
  j["shape"] = number(r.shape);
  j["location"] = number(r.location);
  j["scale"] = number(r.scale);
  j["distance_h"] = number(r.distance_h);
  j["objective"] = number(r.objective);
  return j;
}

ShapeGrid parse_grid(const std::string& text, const std::string& family) {
  if (text.empty()) return default_shape_grid(family);
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad --shape-grid value '" + item + "'");
    }
  }
  if (v.size() != 4) throw UsageError("--shape-grid needs lo,hi,step,fine_step");
  return {v[0], v[1], v[2], v[3]};
}

EmpiricalSample require_sample(const Source& src) {
  if (const auto* s = std::get_if<EmpiricalSample>(&src)) return *s;
  throw UsageError("this command needs data: --sample, --freq or --wool");
}

ordered_json tail_json(const TailReport& r) {
  ordered_json j;
  j["side"] = r.side == Side::Left ? "left" : "right";
  j["label"] = std::string(to_string(r.label));
  if (r.n_star) {
    j["n_star"] = *r.n_star;
    j["n_star_is_lower_bound"] = r.n_star_is_lower_bound;
  } else {
    j["n_star"] = nullptr;
  }
  ordered_json limits = ordered_json::array();
  for (std::size_t n = 0; n < r.derivative_limits.size(); ++n) {
    const auto& l = r.derivative_limits[n];
    limits.push_back({{"order", n}, {"kind", std::string(to_string(l.kind))}, {"value", number(l.value)}});
  }
  j["derivative_limits"] = limits;
  return j;
}

SampleSource source_from_json(const ordered_json& j) {
  auto model_of = [](const ordered_json& spec) {
    if (spec.is_string()) {
      auto src = parse_source(spec.get<std::string>());
      if (const auto* m = std::get_if<ContinuousModel>(&src)) return *m;
      throw UsageError("simulation sources must be continuous families");
    }
    const auto name = spec.at("family").get<std::string>();
    const auto shape = spec.value("shape", std::vector<double>{});
    return make_model(name, std::span<const double>(shape))
        .located(spec.value("location", 0.0), spec.value("scale", 1.0));
  };
  if (j.is_object() && j.contains("contamination")) {
    const auto& c = j.at("contamination");
    return SampleSource::contaminated(model_of(j), c.at("weight").get<double>(), model_of(c));
  }
  return SampleSource::model(model_of(j));
}

int cmd_pdq(const InputOptions& in, const std::string& out_path, std::ostream& out) {
  const Source src = resolve(in);
  const std::size_t m = in.grid ? in.grid : default_grid(src, in.discrete);
  const GridDensity g = to_grid(src, m, in.discrete, in.rule);
  Output file(out_path);
  write_curve(file.stream(out), g);
  return kExitOk;
}

int cmd_fit(const InputOptions& in, const std::string& family, const std::string& method,
            const std::string& grid_text, std::ostream& out) {
  const EmpiricalSample s = require_sample(resolve(in));
  const ShapeGrid grid = parse_grid(grid_text, family);
  FitOptions options;
  if (!in.rule.empty()) options.rule = rule_for(s, in.rule);
  options.keep_trace = false;
  if (method != "all") {
    out << dump(fit_json(fit(s, family, parse_fit_method(method), grid, options))) << '\n';
    return kExitOk;
  }
  ordered_json rows = ordered_json::array();
  for (FitMethod m : {FitMethod::Hpdq, FitMethod::Ppcc, FitMethod::Mle}) {
    if (m == FitMethod::Mle && family != "gamma" && family != "weibull") continue;
    rows.push_back(fit_json(fit(s, family, m, grid, options)));
  }
  ordered_json j;
  j["family"] = family;
  j["n"] = s.size();
  j["fits"] = rows;
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_symmetry(const InputOptions& in, const std::string& criterion, const std::string& csv_path,
                 std::ostream& out) {
  const Source src = resolve(in);
  const std::size_t m = in.grid ? in.grid : default_grid(src, in.discrete);
  const GridDensity g = to_grid(src, m, in.discrete, in.rule);
  const SymmetricProjection p = closest_symmetric(g, parse_symmetry_criterion(criterion));
  if (!csv_path.empty()) {
    Output file(csv_path);
    auto& os = file.stream(out);
    os << "u,pdq,symmetric\n";
    for (std::size_t j = 0; j < g.size(); ++j) {
      os << format_number(g.midpoint(j)) << ',' << format_number(g[j]) << ','
         << format_number(p.density[j]) << '\n';
    }
  }
  ordered_json j;
  j["criterion"] = std::string(to_string(p.criterion));
  j["value"] = number(p.value);
  if (p.c_opt) j["c_opt"] = number(*p.c_opt);
  j["grid"] = g.size();
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_tails(const InputOptions& in, const std::string& side, std::ostream& out) {
  const Source src = resolve(in);
  const auto* model = std::get_if<ContinuousModel>(&src);
  if (!model) throw UsageError("tails needs a continuous --family");
  std::vector<Side> sides;
  if (side == "left" || side == "both") sides.push_back(Side::Left);
  if (side == "right" || side == "both") sides.push_back(Side::Right);
  if (sides.empty()) throw UsageError("--side must be left, right or both");
  ordered_json j;
  j["family"] = describe(*model);
  if (sides.size() == 1) {
    j.update(tail_json(classify_tail(*model, sides[0])));
  } else {
    ordered_json all = ordered_json::array();
    for (Side s : sides) all.push_back(tail_json(classify_tail(*model, s)));
    j["tails"] = all;
  }
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_simulate(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  ordered_json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!cfg.is_object() || cfg.empty()) throw UsageError(path + ": empty simulation config");
  if (!cfg.contains("source") || !cfg.contains("family")) {
    throw UsageError(path + ": config needs 'source' and 'family'");
  }
  const std::string family = cfg.at("family").get<std::string>();
  std::vector<FitMethod> methods;
  for (const auto& m : cfg.value("methods", std::vector<std::string>{"hpdq", "ppcc"})) {
    methods.push_back(parse_fit_method(m));
  }
  ShapeGrid grid = default_shape_grid(family);
  if (cfg.contains("grid")) {
    const auto& g = cfg.at("grid");
    grid = {g.at("lo").get<double>(), g.at("hi").get<double>(), g.at("step").get<double>(),
            g.value("fine_step", 0.0)};
  }
  std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  if (const char* env = std::getenv("PDQ_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("PDQ_SEED must be a non-negative integer");
    }
  }
  const auto& src = cfg.at("source");
  double true_shape = 0.0;
  if (cfg.contains("true_shape")) {
    true_shape = cfg.at("true_shape").get<double>();
  } else if (src.is_object() && src.contains("shape") && !src.at("shape").empty()) {
    true_shape = src.at("shape").at(0).get<double>();
  }
  SimulationConfig config{source_from_json(src),
                          family,
                          methods,
                          cfg.value("n", std::size_t{500}),
                          cfg.value("replications", std::size_t{25}),
                          seed,
                          true_shape,
                          grid,
                          cfg.value("threads", 0u)};
  const SimulationReport r = run_simulation(config);
  out << "source,family,n,replications,method,true_shape,se,mean,sd,min,max,fits,failures\n";
  for (const auto& row : r.rows) {
    out << '"' << r.source << "\"," << r.family << ',' << r.n << ',' << r.replications << ','
        << to_string(row.method) << ',' << format_number(r.true_shape) << ','
        << format_number(row.se) << ',' << format_number(row.mean) << ',' << format_number(row.sd)
        << ',' << format_number(row.min) << ',' << format_number(row.max) << ',' << row.fits << ','
        << row.failures << '\n';
  }
  return kExitOk;
}

int cmd_distance(const std::string& a, const std::string& b, const std::string& metric,
                 std::size_t grid, bool discrete, std::ostream& out) {
  const Source sa = parse_source(a);
  const Source sb = parse_source(b);
  const bool smooth = is_smooth_sample(sa, discrete) || is_smooth_sample(sb, discrete);
  const std::size_t m = grid ? grid : (smooth ? kEmpiricalGridSize : kDefaultGridSize);
  const GridDensity ga = to_grid(sa, m, discrete, "");
  const GridDensity gb = to_grid(sb, m, discrete, "");
  if (metric == "hellinger") {
    out << format_number(hellinger(ga, gb)) << '\n';
  } else if (metric == "kl") {
    out << format_number(kl(ga, gb)) << '\n';
  } else if (metric == "sym_kl") {
    out << format_number(sym_kl(ga, gb)) << '\n';
  } else if (metric == "all") {
    ordered_json j;
    j["hellinger"] = number(hellinger(ga, gb));
    j["kl_ab"] = number(kl(ga, gb));
    j["kl_ba"] = number(kl(gb, ga));
    j["sym_kl"] = number(sym_kl(ga, gb));
    out << dump(j) << '\n';
  } else {
    throw UsageError("--metric must be hellinger, kl, sym_kl or all");
  }
  return kExitOk;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownFamily:
    case ErrorCode::InvalidParameter:
      return kExitUsage;
    case ErrorCode::EmptySample:
    case ErrorCode::NonPositiveData:
      return kExitParse;
    default:
      return kExitNumerical;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probability density quantiles: construction, estimation, fitting and shape."};
  app.name("pdq");
  app.require_subcommand(1);

  InputOptions in;
  std::string out_path;
  auto* pdq_cmd = app.add_subcommand("pdq", "emit the pdQ on a grid as u,pdq CSV");
  add_input_options(pdq_cmd, in);
  pdq_cmd->add_option("--grid", in.grid, "number of grid cells");
  pdq_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  std::string fit_family;
  std::string fit_method = "hpdq";
  std::string shape_grid;
  auto* fit_cmd = app.add_subcommand("fit", "fit a shape family to data (JSON)");
  add_input_options(fit_cmd, in, true);
  fit_cmd->add_option("--model", fit_family, "family to fit, e.g. gamma, weibull, tukey")->required();
  fit_cmd->add_option("--method", fit_method, "hpdq, ppcc, mle or all");
  fit_cmd->add_option("--shape-grid", shape_grid, "lo,hi,step,fine_step");

  std::string criterion = "hellinger";
  std::string csv_path;
  auto* sym_cmd = app.add_subcommand("symmetry", "closest symmetric pdQ (JSON, optional CSV)");
  add_input_options(sym_cmd, in);
  sym_cmd->add_option("--criterion", criterion, "hellinger, kl_a, kl_b or sym_kl");
  sym_cmd->add_option("--grid", in.grid, "number of grid cells");
  sym_cmd->add_option("--csv", csv_path, "write u,pdq,symmetric here");

  std::string side = "right";
  auto* tails_cmd = app.add_subcommand("tails", "tail classification from boundary derivatives (JSON)");
  tails_cmd->add_option("--family", in.family, "catalog family, e.g. cauchy or pareto1(0.5)")->required();
  tails_cmd->add_option("--shape", in.shape, "shape parameter(s)");
  tails_cmd->add_option("--side", side, "left, right or both");

  std::string config_path;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo comparison of fitting methods (CSV)");
  sim_cmd->add_option("config", config_path, "JSON configuration file")->required();

  std::string spec_a;
  std::string spec_b;
  std::string metric = "hellinger";
  bool discrete = false;
  std::size_t distance_grid = 0;
  auto* dist_cmd = app.add_subcommand("distance", "distance or divergence between two pdQs");
  dist_cmd->add_option("a", spec_a, "first input, e.g. poisson(4), normal, sample:x.txt")->required();
  dist_cmd->add_option("b", spec_b, "second input")->required();
  dist_cmd->add_option("--metric", metric, "hellinger, kl, sym_kl or all");
  dist_cmd->add_option("--grid", distance_grid, "number of grid cells");
  dist_cmd->add_flag("--discrete", discrete, "use step pdQs for samples");

  auto* wool_cmd = app.add_subcommand("wool", "print the bundled wool data as value,count CSV");
  bool wool_trim = false;
  wool_cmd->add_flag("--trim-outliers", wool_trim, "drop the three largest diameters");

  std::vector<std::string> argv_store{"pdq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pdq_cmd->parsed()) return cmd_pdq(in, out_path, out);
    if (fit_cmd->parsed()) return cmd_fit(in, fit_family, fit_method, shape_grid, out);
    if (sym_cmd->parsed()) return cmd_symmetry(in, criterion, csv_path, out);
    if (tails_cmd->parsed()) return cmd_tails(in, side, out);
    if (sim_cmd->parsed()) return cmd_simulate(config_path, out);
    if (dist_cmd->parsed()) return cmd_distance(spec_a, spec_b, metric, distance_grid, discrete, out);
    if (wool_cmd->parsed()) {
      write_frequencies(out, wool_frequencies(wool_trim));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "pdq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "pdq: " << e.what() << '\n';
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    err << "pdq: bad configuration: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "pdq: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "pdq: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace pdq::cli
