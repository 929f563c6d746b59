#include "offwhite/gauss_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "offwhite/error.hpp"

namespace offwhite::gauss {

namespace {

// log cosh(x) without cancellation near 0
double log_cosh(double x) {
  const double s = std::sinh(0.5 * x);
  return std::log1p(2.0 * s * s);
}

// arccos(exp(log_c)) accurate for log_c near 0
double arccos_exp(double log_c) {
  const double one_minus = -std::expm1(log_c);
  return 2.0 * std::asin(std::sqrt(std::clamp(0.5 * one_minus, 0.0, 1.0)));
}

void check_spd_shape(const Eigen::MatrixXd& m, const char* name) {
  require(m.rows() == m.cols() && m.rows() > 0, std::string(name) + ": matrix must be square and nonempty");
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw ParameterError(std::string(name) + ": matrix is not symmetric");
  }
}

void check_frame(const Eigen::MatrixXd& f, const char* name) {
  require(f.cols() > 0 && f.rows() >= f.cols(), std::string(name) + ": frame must be nonempty and thin");
  const Eigen::MatrixXd gram = f.transpose() * f;
  const auto k = gram.rows();
  if ((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ParameterError(std::string(name) + ": frame is not orthonormal");
  }
}

}  // namespace

double affinity_factor(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "affinity: ratios must be positive");
  return std::exp(-0.5 * log_cosh(0.5 * std::log(lambda)));
}

double log_affinity(const EigenRatioSeq& r) {
  // Neumaier summation
  double sum = 0.0;
  double comp = 0.0;
  for (double lambda : r.ratios) {
    require(lambda > 0.0 && std::isfinite(lambda), "affinity: ratios must be positive");
    const double term = -0.5 * log_cosh(0.5 * std::log(lambda));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double affinity(const EigenRatioSeq& r) { return std::exp(log_affinity(r)); }

double affinity_distance(const EigenRatioSeq& r) { return arccos_exp(log_affinity(r)); }

Eigen::VectorXd generalized_eigenvalues(const QuadraticFormPair& p) {
  check_spd_shape(p.a, "fhs_defect(A)");
  check_spd_shape(p.b, "fhs_defect(B)");
  require(p.a.rows() == p.b.rows(), "fhs_defect: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> la(p.a);
  if (la.info() != Eigen::Success) throw EvaluationError("fhs_defect: A is not positive definite");
  Eigen::LLT<Eigen::MatrixXd> lb(p.b);
  if (lb.info() != Eigen::Success) throw EvaluationError("fhs_defect: B is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(p.b, p.a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EvaluationError("fhs_defect: eigensolver failed");
  return es.eigenvalues();
}

double fhs_defect(const QuadraticFormPair& p) {
  const auto mu = generalized_eigenvalues(p);
  return (1.0 - mu.array()).square().sum();
}

PrincipalAngles principal_angles(const SubspacePair& s) {
  check_frame(s.e, "principal_angles(E)");
  check_frame(s.f, "principal_angles(F)");
  require(s.e.rows() == s.f.rows(), "principal_angles: ambient dimensions differ");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.e.transpose() * s.f);
  PrincipalAngles out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    out.angles.push_back(std::acos(std::clamp(svd.singularValues()(i), 0.0, 1.0)));
  }
  std::sort(out.angles.begin(), out.angles.end());
  out.min = out.angles.front();
  return out;
}

double delta_bound(double angle, int n) {
  require(angle > 0.0 && angle <= 0.5 * std::numbers::pi + 1e-15,
          "delta_bound: angle must lie in (0, pi/2]");
  require(n >= 0, "delta_bound: n must be >= 0");
  // (t^{-1/4} + t^{1/4})/2 = cosh(ln t / 4)
  const double log_t = std::log(std::tan(0.5 * angle));
  return arccos_exp(-static_cast<double>(n) * log_cosh(0.25 * log_t));
}

OrthogonalizingNorm orthogonalizing_norm(double angle) {
  require(angle > 0.0 && angle <= 0.5 * std::numbers::pi + 1e-15,
          "orthogonalizing_norm: angle must lie in (0, pi/2]");
  const double t = std::tan(0.5 * angle);
  OrthogonalizingNorm out;
  out.ratios.ratios = {1.0 / std::sqrt(t), std::sqrt(t)};
  out.distance = affinity_distance(out.ratios);
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  out.u = {c, -s};
  out.v = {c, s};
  out.gram << t, 0.0, 0.0, 1.0 / t;
  return out;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParameterError(path.string() + ": empty matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open " + path.string());
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

Eigen::MatrixXd read_matrix_raw(const std::filesystem::path& path) {
  std::ifstream side(path.string() + ".json");
  if (!side) throw ParameterError("missing sidecar " + path.string() + ".json");
  const auto meta = nlohmann::json::parse(side);
  const auto rows = meta.at("rows").get<Eigen::Index>();
  const auto cols = meta.at("cols").get<Eigen::Index>();
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(rows, cols);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  const auto bytes = static_cast<std::streamsize>(rows * cols * static_cast<Eigen::Index>(sizeof(double)));
  in.read(reinterpret_cast<char*>(m.data()), bytes);
  if (in.gcount() != bytes) throw ParameterError(path.string() + ": truncated matrix file");
  return m;
}

void write_matrix_raw(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(rm.data()),
            static_cast<std::streamsize>(rm.size() * static_cast<Eigen::Index>(sizeof(double))));
  std::ofstream side(path.string() + ".json");
  side << nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}}.dump(2) << "\n";
}

}  // namespace offwhite::gauss
