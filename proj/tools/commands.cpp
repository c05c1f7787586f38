// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "commands.hpp"

#include <algorithm>
#include <iostream>

#include "motskit/catalog.hpp"
#include "motskit/foliation.hpp"
#include "motskit/initial_data.hpp"
#include "motskit/obata.hpp"
#include "motskit/report.hpp"
#include "motskit/stability.hpp"
#include "motskit/version.hpp"

namespace motskit::cli {

namespace {

using report::json;

constexpr int kOk = 0;
constexpr int kCheckFailure = 3;

struct CheckRow {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  std::string provenance;
  bool pass = false;
  std::string reason;
};

json row_json(const CheckRow& r) {
  json j;
  j["name"] = r.name;
  j["value"] = report::number_or_null(r.value);
  j["expected"] = report::number_or_null(r.expected);
  j["tol"] = r.tol;
  j["provenance"] = r.provenance;
  j["pass"] = r.pass;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out_path.empty()) {
    std::cout << content;
    return;
  }
  report::write_text_atomic(cfg.out_path, content);
}

double infer_eps(const CatalogEntry& entry) {
  if (entry.family == "spatial_schwarzschild") return 0.0;
  if (entry.family == "warped") return std::abs(entry.params.at("eps"));
  return 1.0;
}

double signed_umbilic_factor(const RunConfig& cfg, const CatalogEntry& entry) {
  const double eps = cfg.eps.value_or(infer_eps(entry));
  if (eps != 0.0 && eps != 1.0)
    throw InvalidParam("--eps must be 0 or 1");
  if (cfg.data_spec == "K0") return 0.0;
  if (cfg.data_spec == "KminusEpsG") return -eps;
  if (cfg.data_spec == "KplusEpsG") return eps;
  throw InvalidParam("--data must be one of K0, KminusEpsG, KplusEpsG");
}

std::vector<std::string> default_checks(const CatalogEntry& entry) {
  std::vector<std::string> checks{"expectations", "dec"};
  if (entry.foliation_base && entry.family != "cap") checks.push_back("splitting");
  if (entry.family == "warped") checks.push_back("spectrum");
  if (entry.family == "cap" ||
      (entry.family == "warped" && entry.params.at("eps") != 0.0))
    checks.push_back("obata");
  return checks;
}

void run_check_expectations(const CatalogEntry& entry, std::vector<CheckRow>& rows) {
  for (const ExpectationResult& r : entry.verify_expectations()) {
    CheckRow row;
    row.name = "expectation." + r.quantity;
    row.value = r.measured;
    row.expected = r.expected;
    row.tol = r.tol;
    row.provenance = to_string(r.provenance);
    row.pass = r.pass;
    rows.push_back(std::move(row));
  }
}

void run_check_dec(const RunConfig& cfg, const CatalogEntry& entry,
                   const InitialDataSet& ids, std::vector<CheckRow>& rows) {
  const std::vector<ChartPoint> pts = catalog_sample_points(entry, 64, cfg.seed);
  const DecReport rep = dec_check(ids, pts, 1e-9);
  CheckRow row;
  row.name = "dec.margin";
  row.value = rep.margin;
  row.expected = 0.0;
  row.tol = rep.tol;
  row.provenance = "paper";
  row.pass = rep.holds;
  if (!rep.holds) row.reason = "dominant energy condition violated at a sample";
  rows.push_back(std::move(row));
}

void run_check_splitting(const RunConfig& cfg, const CatalogEntry& entry,
                         const InitialDataSet& ids, double umbilic_factor,
                         std::vector<CheckRow>& rows, json& details) {
  if (!entry.foliation_base)
    throw InvalidParam("splitting check: family has no foliation base");
  const int base_grid = (entry.family == "warped" || entry.family == "kottler")
                            ? std::min(cfg.grid, 16)
                            : 16;
  EmbeddedSurface base = entry.foliation_base(base_grid);
  double delta_max = 1.0;
  // the cap foliates inward into its cone point; the caustic there is the
  // honest outcome
  if (entry.family == "cap") delta_max = entry.params.at("R");
  if (entry.family == "warped") delta_max = 0.5 * entry.params.at("T");

  NormalFoliation f = build_normal_foliation(entry.metric, base, delta_max, 17);
  const double rate = -umbilic_factor;
  const SplitReport rep = verify_splitting(f, ids, rate, cfg.tol);
  details["splitting"] = report::split_report_json(rep);

  auto gate = [&](const std::string& name, double value) {
    CheckRow row;
    row.name = "splitting." + name;
    row.value = value;
    row.expected = 0.0;
    row.tol = rep.gate_tol;
    row.provenance = "paper";
    row.pass = std::isnan(value) ? true : value < rep.gate_tol;
    rows.push_back(std::move(row));
  };
  gate("max_theta", rep.max_theta);
  gate("max_chi_dev", rep.max_chi_dev);
  gate("max_lapse_dev", rep.max_lapse_dev);
  gate("max_warp_dev", rep.max_warp_dev);
  gate("ricci_flat_dev", rep.ricci_flat_dev);

  CheckRow verdict;
  verdict.name = "splitting.verdict";
  verdict.value = rep.verdict ? 1.0 : 0.0;
  verdict.expected = 1.0;
  verdict.tol = 0.0;
  verdict.provenance = "paper";
  verdict.pass = rep.verdict;
  verdict.reason = rep.reason;
  rows.push_back(std::move(verdict));
}

void run_check_spectrum(const RunConfig& cfg, const CatalogEntry& entry,
                        const InitialDataSet& ids, std::vector<CheckRow>& rows,
                        json& details) {
  if (!entry.foliation_base)
    throw InvalidParam("spectrum check: family has no foliation base");
  EmbeddedSurface base = entry.foliation_base(0);
  StabilityOptions opt;
  opt.grid_points = cfg.grid;
  StabilityAssembly assembly = assemble_stability_operator(base, ids, opt);
  PrincipalEig eig = principal_eigenvalue(assembly);
  // keep the report readable: the low end of the spectrum only
  PrincipalEig trimmed = eig;
  if (trimmed.spectrum.size() > 16) trimmed.spectrum.resize(16);
  details["spectrum"] = report::spectrum_json(trimmed);

  CheckRow stable;
  stable.name = "spectrum.stable";
  stable.value = eig.lambda1;
  stable.expected = 0.0;
  stable.tol = cfg.tol;
  stable.provenance = "paper";
  stable.pass = eig.lambda1 >= -cfg.tol;
  if (!stable.pass) stable.reason = "principal eigenvalue is negative (unstable MOTS)";
  rows.push_back(std::move(stable));

  CheckRow res;
  res.name = "spectrum.residual";
  res.value = eig.residual;
  res.expected = 0.0;
  res.tol = 1e-6;
  res.provenance = "derived";
  res.pass = eig.residual < 1e-6;
  rows.push_back(std::move(res));
}

void run_check_obata(const CatalogEntry& entry, std::vector<CheckRow>& rows) {
  if (entry.family == "cap") {
    const int n = static_cast<int>(entry.params.at("n"));
    ScalarField f_cosh(n, [](auto x) {
      return cosh(x[0]);
    });
    const std::vector<ChartPoint> pts = catalog_sample_points(entry, 16, 2);
    CheckRow row;
    row.name = "obata.residual_cosh";
    row.value = hessian_residual(entry.metric, f_cosh, pts);
    row.expected = 0.0;
    row.tol = 1e-8;
    row.provenance = "paper";
    row.pass = row.value < row.tol;
    rows.push_back(std::move(row));
    return;
  }
  if (entry.family == "warped" && entry.params.at("eps") != 0.0) {
    const double eps = entry.params.at("eps");
    const int k = static_cast<int>(entry.params.at("k"));
    ReconstructReport rep;
    reconstruct_and_verify(eps, 1.0, flat_torus_metric(k, {}), &rep);

    CheckRow res;
    res.name = "obata.obata_residual";
    res.value = rep.obata_residual;
    res.expected = 0.0;
    res.tol = 1e-8;
    res.provenance = "paper";
    res.pass = rep.obata_residual < res.tol;
    rows.push_back(std::move(res));

    CheckRow shape;
    shape.name = "obata.shape_residual";
    shape.value = rep.shape_residual;
    shape.expected = 0.0;
    shape.tol = 1e-8;
    shape.provenance = "derived";
    shape.pass = rep.shape_residual < shape.tol;
    rows.push_back(std::move(shape));

    ObataSolution sol = solve_warp_ode(eps, 1.0);
    CheckRow ode;
    ode.name = "obata.xi_ode_dev";
    ode.value = xi_ode_deviation(sol);
    ode.expected = 0.0;
    ode.tol = 1e-9;
    ode.provenance = "derived";
    ode.pass = ode.value < ode.tol;
    rows.push_back(std::move(ode));

    // divergence-theorem identity on the fiber: c2 recovered from int Lap c1
    FiberGrid grid = FiberGrid::torus(k, 16);
    Eigen::VectorXd c1 = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size()), 1.0);
    LevelSetReport ls = level_set_analysis(grid, flat_torus_metric(k, {}), c1, 0.0, k + 1);
    CheckRow integral;
    integral.name = "obata.c2_from_integral";
    integral.value = ls.c2_from_integral;
    integral.expected = 0.0;
    integral.tol = 1e-10;
    integral.provenance = "paper";
    integral.pass = std::abs(ls.c2_from_integral) < integral.tol;
    rows.push_back(std::move(integral));
    return;
  }
  throw InvalidParam("obata check applies to the cap and warped (eps != 0) families");
}

json config_json(const RunConfig& cfg, const CatalogEntry* entry,
                 const std::vector<std::string>& checks, double signed_eps) {
  json j;
  j["command"] = cfg.command;
  if (entry) j["metric"] = entry->name;
  j["data"] = cfg.data_spec;
  j["umbilic_factor"] = signed_eps;
  j["checks"] = checks;
  j["grid"] = cfg.grid;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  j["format"] = cfg.format;
  j["tool_version"] = kVersion;
  return j;
}

}  // namespace

int run_catalog(const RunConfig& cfg) {
  const auto& families = catalog_families();
  std::vector<FamilyInfo> selected;
  if (cfg.catalog_name.empty()) {
    selected = families;
  } else {
    const std::string want = cfg.catalog_name.substr(0, cfg.catalog_name.find(':'));
    for (const FamilyInfo& f : families)
      if (f.name == want) selected.push_back(f);
    if (selected.empty())
      throw UnknownFamily("unknown catalog family '" + cfg.catalog_name + "'");
  }

  if (cfg.format == "json") {
    json out;
    out["tool_version"] = kVersion;
    json list = json::array();
    for (const FamilyInfo& f : selected) {
      CatalogEntry entry = parse_metric_spec(
          cfg.catalog_name.find(':') != std::string::npos ? cfg.catalog_name
                                                          : f.default_spec);
      json fam;
      fam["family"] = f.name;
      fam["description"] = f.description;
      fam["default_spec"] = f.default_spec;
      fam["boundary_locus"] = entry.boundary_locus;
      json exps = json::array();
      for (const Expectation& e : entry.expectations) {
        json ej;
        ej["quantity"] = e.quantity;
        ej["expected"] = e.expected;
        ej["tol"] = e.tol;
        ej["provenance"] = to_string(e.provenance);
        exps.push_back(std::move(ej));
      }
      fam["expectations"] = std::move(exps);
      list.push_back(std::move(fam));
    }
    out["families"] = std::move(list);
    emit(cfg, out.dump(2) + "\n");
    return kOk;
  }

  std::string text;
  for (const FamilyInfo& f : selected) {
    CatalogEntry entry = parse_metric_spec(
        cfg.catalog_name.find(':') != std::string::npos ? cfg.catalog_name
                                                        : f.default_spec);
    text += f.name + "  (" + f.default_spec + ")\n";
    text += "  " + f.description + "\n";
    text += "  boundary: " + entry.boundary_locus + "\n";
    for (const Expectation& e : entry.expectations)
      text += "  expect " + e.quantity + " = " + format_double(e.expected) +
              "  (tol " + format_double(e.tol) + ", " + to_string(e.provenance) +
              ")\n";
  }
  emit(cfg, text);
  return kOk;
}

int run_verify(const RunConfig& cfg) {
  if (cfg.format != "json")
    throw InvalidParam("verify emits JSON reports; use --format json");
  CatalogEntry entry = parse_metric_spec(cfg.metric_spec);
  const double c = signed_umbilic_factor(cfg, entry);
  InitialDataSet ids = make_umbilic_data(entry.metric, c);

  std::vector<std::string> checks = cfg.checks.empty() ? default_checks(entry) : cfg.checks;
  for (const std::string& name : checks)
    if (name != "expectations" && name != "dec" && name != "splitting" &&
        name != "spectrum" && name != "obata")
      throw InvalidParam("unknown check '" + name + "'");

  std::vector<CheckRow> rows;
  json details = json::object();
  for (const std::string& name : checks) {
    if (name == "expectations") run_check_expectations(entry, rows);
    if (name == "dec") run_check_dec(cfg, entry, ids, rows);
    if (name == "splitting") run_check_splitting(cfg, entry, ids, c, rows, details);
    if (name == "spectrum") run_check_spectrum(cfg, entry, ids, rows, details);
    if (name == "obata") run_check_obata(entry, rows);
  }

  bool all_pass = true;
  json check_list = json::array();
  for (const CheckRow& r : rows) {
    all_pass = all_pass && r.pass;
    check_list.push_back(row_json(r));
  }

  json out;
  out["config"] = config_json(cfg, &entry, checks, c);
  out["checks"] = std::move(check_list);
  if (!details.empty()) out["details"] = std::move(details);
  out["verdict"] = all_pass ? "pass" : "fail";
  emit(cfg, out.dump(2) + "\n");

  if (!all_pass) {
    for (const CheckRow& r : rows)
      if (!r.pass)
        std::cerr << "FAIL " << r.name
                  << (r.reason.empty() ? "" : ": " + r.reason) << "\n";
    return kCheckFailure;
  }
  return kOk;
}

namespace {

std::pair<double, double> profile_range(const RunConfig& cfg, const CatalogEntry& entry) {
  if (cfg.range) return *cfg.range;
  if (entry.family == "kottler" || entry.family == "ads_schwarzschild")
    return {entry.boundary_coordinate * 1.01, entry.boundary_coordinate + 2.0};
  if (entry.family == "warped")
    return {0.0, 0.9 * entry.params.at("T")};
  if (entry.family == "cap")
    return {0.1 * entry.params.at("R"), entry.params.at("R")};
  return {entry.boundary_coordinate + 0.01, entry.boundary_coordinate + 2.0};
}

std::string radial_name(const CatalogEntry& entry) {
  return (entry.family == "warped" || entry.family == "cap") ? "t" : "r";
}

}  // namespace

int run_profile(const RunConfig& cfg) {
  const std::string quantity = cfg.checks.empty() ? "theta" : cfg.checks.front();

  // xi profiles take the pseudo-spec "obata:a=...,g=..." (no catalog family).
  if (quantity == "xi") {
    double a = 1.0, g = 1.0;
    const std::string prefix = "obata:";
    if (cfg.metric_spec.rfind(prefix, 0) == 0) {
      std::string params = cfg.metric_spec.substr(prefix.size());
      std::size_t pos = 0;
      while (pos < params.size()) {
        std::size_t comma = params.find(',', pos);
        if (comma == std::string::npos) comma = params.size();
        const std::string item = params.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
          throw InvalidParam("bad obata spec item '" + item + "'");
        const std::string key = item.substr(0, eq);
        const double value = std::stod(item.substr(eq + 1));
        if (key == "a")
          a = value;
        else if (key == "g")
          g = value;
        else
          throw InvalidParam("unknown obata parameter '" + key + "'");
        pos = comma + 1;
      }
    } else if (!cfg.metric_spec.empty()) {
      CatalogEntry entry = parse_metric_spec(cfg.metric_spec);
      if (entry.family != "warped" || entry.params.at("eps") == 0.0)
        throw InvalidParam("xi profile needs obata:a=..,g=.. or warped:eps=+-1");
      a = entry.params.at("eps");
      g = 1.0;
    }
    ObataSolution sol = solve_warp_ode(a, g);
    const auto [lo, hi] = cfg.range.value_or(std::make_pair(0.0, 3.0));
    std::vector<double> ts, xi, f;
    for (int i = 0; i < cfg.grid; ++i) {
      const double t = lo + (hi - lo) * i / (cfg.grid - 1);
      ts.push_back(t);
      xi.push_back(xi_closed_form(sol, t));
      f.push_back(f_closed_form(sol, t));
    }
    emit(cfg, report::xi_profile_csv(ts, xi, f));
    return kOk;
  }

  CatalogEntry entry = parse_metric_spec(cfg.metric_spec);
  const double c = signed_umbilic_factor(cfg, entry);
  InitialDataSet ids = make_umbilic_data(entry.metric, c);

  if (quantity == "theta") {
    if (!entry.level_surface) throw InvalidParam("theta profile: no level surfaces");
    const auto [lo, hi] = profile_range(cfg, entry);
    std::vector<double> params;
    Eigen::MatrixXd theta(cfg.grid, 0);
    for (int i = 0; i < cfg.grid; ++i) {
      const double r = lo + (hi - lo) * i / (cfg.grid - 1);
      EmbeddedSurface slice = entry.level_surface(r, 8);
      const Eigen::VectorXd row = theta_on_grid(slice, ids);
      if (theta.cols() == 0) theta.resize(cfg.grid, row.size());
      theta.row(i) = row.transpose();
      params.push_back(r);
    }
    emit(cfg, report::theta_profile_csv(radial_name(entry), params, theta));
    return kOk;
  }

  if (quantity == "scalar") {
    const auto [lo, hi] = profile_range(cfg, entry);
    std::vector<double> params, scalars;
    for (int i = 0; i < cfg.grid; ++i) {
      const double r = lo + (hi - lo) * i / (cfg.grid - 1);
      Eigen::VectorXd x(entry.metric.dim());
      for (std::size_t d = 0; d < entry.sample_box.size(); ++d)
        x[static_cast<Eigen::Index>(d)] =
            0.5 * (entry.sample_box[d].first + entry.sample_box[d].second);
      x[0] = r;
      params.push_back(r);
      scalars.push_back(curvature(entry.metric, ChartPoint{x, "default"}).scalar);
    }
    emit(cfg, report::scalar_profile_csv(radial_name(entry), params, scalars));
    return kOk;
  }

  if (quantity == "spectrum" || quantity == "eigenfunction") {
    if (!entry.foliation_base) throw InvalidParam("spectrum profile: no base surface");
    EmbeddedSurface base = entry.foliation_base(0);
    StabilityOptions opt;
    opt.grid_points = cfg.grid;
    StabilityAssembly assembly = assemble_stability_operator(base, ids, opt);
    PrincipalEig eig = principal_eigenvalue(assembly);
    emit(cfg, quantity == "spectrum"
                  ? report::spectrum_csv(eig.spectrum)
                  : report::eigenfunction_csv(assembly.grid, eig.eigenfunction));
    return kOk;
  }

  throw InvalidParam("unknown profile quantity '" + quantity +
                     "' (theta, xi, spectrum, scalar, eigenfunction)");
}

}  // namespace motskit::cli
