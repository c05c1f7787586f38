// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "motskit/catalog.hpp"

namespace motskit::report {

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

json split_report_json(const SplitReport& rep) {
  json j;
  j["warp_rate"] = rep.warp_rate;
  j["max_theta"] = rep.max_theta;
  j["max_chi_dev"] = rep.max_chi_dev;
  j["max_lapse_dev"] = rep.max_lapse_dev;
  j["max_warp_dev"] = rep.max_warp_dev;
  j["ricci_flat_dev"] = number_or_null(rep.ricci_flat_dev);
  j["tol"] = rep.tol;
  j["gate_tol"] = rep.gate_tol;
  j["verdict"] = rep.verdict;
  if (!rep.reason.empty()) j["reason"] = rep.reason;
  return j;
}

json spectrum_json(const PrincipalEig& eig) {
  json j;
  j["lambda1"] = eig.lambda1;
  j["residual"] = eig.residual;
  json list = json::array();
  for (const auto& ev : eig.spectrum) {
    json item;
    item["re"] = ev.real();
    item["im"] = ev.imag();
    list.push_back(std::move(item));
  }
  j["eigenvalues"] = std::move(list);
  return j;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot rename '" + tmp + "' to '" + path + "'");
}

namespace {

void append_row(std::string& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  out += '\n';
}

}  // namespace

std::string theta_profile_csv(const std::string& param_name,
                              const std::vector<double>& param,
                              const Eigen::MatrixXd& theta) {
  std::string out = param_name +
                    " [chart length],theta_min [1/length],theta_max [1/length],"
                    "theta_mean [1/length]\n";
  for (Eigen::Index j = 0; j < theta.rows(); ++j)
    append_row(out, {param[static_cast<std::size_t>(j)], theta.row(j).minCoeff(),
                     theta.row(j).maxCoeff(), theta.row(j).mean()});
  return out;
}

std::string xi_profile_csv(const std::vector<double>& t, const std::vector<double>& xi,
                           const std::vector<double>& f) {
  std::string out = "t [chart length],xi [dimensionless],f [dimensionless]\n";
  for (std::size_t i = 0; i < t.size(); ++i) append_row(out, {t[i], xi[i], f[i]});
  return out;
}

std::string spectrum_csv(const std::vector<std::complex<double>>& spectrum) {
  std::string out = "index [1],re_lambda [1/length^2],im_lambda [1/length^2]\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    append_row(out, {static_cast<double>(i), spectrum[i].real(), spectrum[i].imag()});
  return out;
}

std::string scalar_profile_csv(const std::string& param_name,
                               const std::vector<double>& param,
                               const std::vector<double>& scalar) {
  std::string out = param_name + " [chart length],S [1/length^2]\n";
  for (std::size_t i = 0; i < param.size(); ++i) append_row(out, {param[i], scalar[i]});
  return out;
}

std::string eigenfunction_csv(const FiberGrid& grid, const Eigen::VectorXd& phi) {
  std::string out;
  for (int a = 0; a < grid.axes(); ++a) out += "u" + std::to_string(a) + " [rad],";
  out += "phi [dimensionless]\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.node(i);
    std::vector<double> row(u.data(), u.data() + u.size());
    row.push_back(phi[static_cast<Eigen::Index>(i)]);
    append_row(out, row);
  }
  return out;
}

}  // namespace motskit::report
