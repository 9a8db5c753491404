#include "vacprobe/qubit_pair.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vacprobe/quadrature.hpp"

namespace vacprobe {

namespace {

void check_solver(const Eigen::ComputationInfo info, const char* where) {
  if (info != Eigen::Success) {
    std::ostringstream msg;
    msg << where << ": eigensolver failed (info=" << static_cast<int>(info) << ")";
    throw NumericError(msg.str(), 0.0, 0.0);
  }
}

void validate_density(const Matrix4c& m) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: not Hermitian (defect " << herm << ")";
    throw std::invalid_argument(msg.str());
  }
  const double trace_defect = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
  if (trace_defect > kTraceTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: trace deviates from 1 by " << trace_defect;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (m + m.adjoint()),
                                             Eigen::EigenvaluesOnly);
  check_solver(es.info(), "DensityMatrix4");
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: negative eigenvalue " << es.eigenvalues().minCoeff();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4c& m) {
  validate_density(m);
  return DensityMatrix4(m);
}

Matrix4c kron_pair(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(i, j) = a(kBasisSpinA[i], kBasisSpinA[j]) * b(kBasisSpinB[i], kBasisSpinB[j]);
  return out;
}

Matrix2c reduce_to_A(const Matrix4c& rho) {
  Matrix2c out = Matrix2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < 2; ++b)
        out(a, a2) += rho(kBasisIndex[a][b], kBasisIndex[a2][b]);
  return out;
}

Matrix2c reduce_to_B(const Matrix4c& rho) {
  Matrix2c out = Matrix2c::Zero();
  for (int b = 0; b < 2; ++b)
    for (int b2 = 0; b2 < 2; ++b2)
      for (int a = 0; a < 2; ++a)
        out(b, b2) += rho(kBasisIndex[a][b], kBasisIndex[a][b2]);
  return out;
}

Matrix4c partial_transpose_raw(const Matrix4c& rho) {
  Matrix4c out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out(i, j) = rho(kBasisIndex[kBasisSpinA[i]][kBasisSpinB[j]],
                      kBasisIndex[kBasisSpinA[j]][kBasisSpinB[i]]);
    }
  }
  return out;
}

Matrix4c partial_transpose(const DensityMatrix4& rho) {
  return partial_transpose_raw(rho.matrix());
}

EntanglementReport ppt_verdict(const DensityMatrix4& rho) {
  const Matrix4c pt = partial_transpose(rho);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(pt, Eigen::EigenvaluesOnly);
  check_solver(es.info(), "ppt_verdict");
  EntanglementReport rep;
  rep.ppt_min_eigenvalue = es.eigenvalues().minCoeff();
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()[i] < 0.0) rep.negativity -= es.eigenvalues()[i];
  rep.entangled = rep.ppt_min_eigenvalue < -kEigTol;
  return rep;
}

DensityMatrix4 werner_state(const WernerParam& p) {
  if (!(p.x >= 0.0 && p.x <= 1.0))
    throw std::domain_error("werner_state: x must lie in [0, 1]");
  Eigen::Vector4cd singlet;
  singlet << 0.0, 0.0, -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Matrix4c rho = (1.0 - p.x) / 4.0 * Matrix4c::Identity() +
                       p.x * (singlet * singlet.adjoint());
  return DensityMatrix4::from_matrix(rho);
}

double von_neumann_entropy(const Matrix2c& rho_reduced) {
  const double herm = (rho_reduced - rho_reduced.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol)
    throw std::invalid_argument("von_neumann_entropy: input not Hermitian");
  if (std::abs(rho_reduced.trace() - std::complex<double>(1.0, 0.0)) > 1e-10)
    throw std::invalid_argument("von_neumann_entropy: input trace must be 1");
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(rho_reduced, Eigen::EigenvaluesOnly);
  check_solver(es.info(), "von_neumann_entropy");
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam < -kPsdTol)
      throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
    if (lam > 1e-300) s -= lam * std::log(lam);
  }
  return std::max(s, 0.0);
}

double chsh_max(const DensityMatrix4& rho) {
  const Matrix2c* sigma[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
  Eigen::Matrix3d corr;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      corr(i, j) = (rho.matrix() * kron_pair(*sigma[i], *sigma[j])).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(corr.transpose() * corr,
                                                    Eigen::EigenvaluesOnly);
  check_solver(es.info(), "chsh_max");
  const double m = std::max(0.0, es.eigenvalues()[1]) + std::max(0.0, es.eigenvalues()[2]);
  return 2.0 * std::sqrt(m);
}

CorrelationCheck correlation_check(const DensityMatrix4& rho, const Matrix2c& obs_a,
                                   const Matrix2c& obs_b) {
  CorrelationCheck out;
  out.joint = (rho.matrix() * kron_pair(obs_a, obs_b)).trace().real();
  const double ma = (rho.matrix() * kron_pair(obs_a, Matrix2c::Identity())).trace().real();
  const double mb = (rho.matrix() * kron_pair(Matrix2c::Identity(), obs_b)).trace().real();
  out.product_of_marginals = ma * mb;
  return out;
}

// Basis order (down, up): down = index 0, up = index 1; sigma_z|up> = +|up>.
const Matrix2c& pauli_x() {
  static const Matrix2c m = [] {
    Matrix2c s;
    s << 0.0, 1.0, 1.0, 0.0;
    return s;
  }();
  return m;
}

const Matrix2c& pauli_y() {
  static const Matrix2c m = [] {
    Matrix2c s;
    s << std::complex<double>(0, 0), std::complex<double>(0, -1),
        std::complex<double>(0, 1), std::complex<double>(0, 0);
    return s;
  }();
  return m;
}

const Matrix2c& pauli_z() {
  static const Matrix2c m = [] {
    Matrix2c s;
    s << -1.0, 0.0, 0.0, 1.0;
    return s;
  }();
  return m;
}

}  // namespace vacprobe
