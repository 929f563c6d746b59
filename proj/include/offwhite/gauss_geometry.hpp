#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace offwhite::gauss {

/// Simultaneous-diagonalization ratios λ_k > 0.
struct EigenRatioSeq {
  std::vector<double> ratios;
};

/// ((λ^{-1/2} + λ^{1/2})/2)^{-1/2}
double affinity_factor(double lambda);

/// ∏_k affinity_factor(λ_k), summed in log space with compensation.
double affinity(const EigenRatioSeq& r);
double log_affinity(const EigenRatioSeq& r);
double affinity_distance(const EigenRatioSeq& r);

/// Gram matrices of two norms in a shared basis.
struct QuadraticFormPair {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

/// Generalized eigenvalues μ of B v = μ A v, ascending.
Eigen::VectorXd generalized_eigenvalues(const QuadraticFormPair& p);
/// Σ (1 - μ_k)².
double fhs_defect(const QuadraticFormPair& p);

/// Orthonormal column frames E, F in the standard inner product.
struct SubspacePair {
  Eigen::MatrixXd e;
  Eigen::MatrixXd f;
};

struct PrincipalAngles {
  std::vector<double> angles;  // ascending
  double min = 0.0;
};

PrincipalAngles principal_angles(const SubspacePair& s);

/// arccos(((tan^{-1/4}(α/2) + tan^{1/4}(α/2))/2)^{-n})
double delta_bound(double angle, int n);

struct OrthogonalizingNorm {
  EigenRatioSeq ratios;  // (tan^{-1/2}(φ/2), tan^{1/2}(φ/2))
  double distance = 0.0;
  /// Gram matrix of the new norm in the standard basis of the plane holding
  /// the unit lines u = (cos φ/2, -sin φ/2) and v = (cos φ/2, sin φ/2).
  Eigen::Matrix2d gram;
  Eigen::Vector2d u;
  Eigen::Vector2d v;
};

OrthogonalizingNorm orthogonalizing_norm(double angle);

/// Matrix IO: CSV without header, or raw float64 row-major with a
/// `<path>.json` sidecar {rows, cols}.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_raw(const std::filesystem::path& path);
void write_matrix_raw(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace offwhite::gauss
