// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <json.hpp>
#include <string>

#include "motskit/foliation.hpp"
#include "motskit/stability.hpp"

namespace motskit::report {

using json = nlohmann::ordered_json;

/// Doubles rendered as JSON values; NaN becomes null (valid JSON).
json number_or_null(double v);

json split_report_json(const SplitReport& rep);

/// Eigenvalue list (sorted), lambda1, residual.
json spectrum_json(const PrincipalEig& eig);

/// Writes via a temp file plus rename so readers never observe a torn file.
void write_text_atomic(const std::string& path, const std::string& content);

// --- CSV builders (header row with units, '.' decimals, '\n' endings) -------

std::string theta_profile_csv(const std::string& param_name,
                              const std::vector<double>& param,
                              const Eigen::MatrixXd& theta);

std::string xi_profile_csv(const std::vector<double>& t, const std::vector<double>& xi,
                           const std::vector<double>& f);

std::string spectrum_csv(const std::vector<std::complex<double>>& spectrum);

std::string scalar_profile_csv(const std::string& param_name,
                               const std::vector<double>& param,
                               const std::vector<double>& scalar);

std::string eigenfunction_csv(const FiberGrid& grid, const Eigen::VectorXd& phi);

}  // namespace motskit::report
