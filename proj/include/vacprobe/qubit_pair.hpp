#pragma once

// Two-qubit machinery over the fixed product basis {dd, uu, du, ud}
// (probe A spin first): density-matrix validation, partial transpose on
// probe B, the positive-partial-transpose verdict and negativity, Werner
// states, von Neumann entropy and the correlation-matrix CHSH maximum.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>

namespace vacprobe {

using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;

// Basis bookkeeping: index -> (spin of A, spin of B), 0 = down, 1 = up.
inline constexpr int kBasisSpinA[4] = {0, 1, 0, 1};
inline constexpr int kBasisSpinB[4] = {0, 1, 1, 0};
inline constexpr int kBasisIndex[2][2] = {{0, 2}, {3, 1}};
inline const std::array<std::string, 4> kBasisLabels = {"dd", "uu", "du", "ud"};

inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEigTol = 1e-10;  // eigenvalue below -kEigTol counts as negative

// Validated two-probe density matrix: Hermitian, unit trace, positive
// semidefinite up to numerical noise.
class DensityMatrix4 {
 public:
  static DensityMatrix4 from_matrix(const Matrix4c& m);
  const Matrix4c& matrix() const { return m_; }

 private:
  explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}
  Matrix4c m_;
};

struct WernerParam {
  double x = 0.0;  // mixing weight in [0, 1]
};

struct EntanglementReport {
  double ppt_min_eigenvalue = 0.0;
  double negativity = 0.0;
  bool cond_exchange = false;    // |<0|X_AB>|^2 > |E_A|^2 |E_B|^2
  double ratio_exchange = 0.0;   // |<0|X_AB>|^2 / (|E_A|^2 |E_B|^2)
  bool cond_overlap = false;     // |<E_B|E_A>|^2 > |X_AB|^2
  double ratio_overlap = 0.0;    // |<E_B|E_A>|^2 / |X_AB|^2
  bool entangled = false;
  bool condition_ppt_mismatch = false;
};

// Tensor product in the {dd, uu, du, ud} ordering.
Matrix4c kron_pair(const Matrix2c& a, const Matrix2c& b);

// Reduced density matrices.
Matrix2c reduce_to_A(const Matrix4c& rho);
Matrix2c reduce_to_B(const Matrix4c& rho);

// Transpose of probe B's indices; an involution that preserves trace and
// Hermiticity but not positivity.
Matrix4c partial_transpose(const DensityMatrix4& rho);
Matrix4c partial_transpose_raw(const Matrix4c& rho);

EntanglementReport ppt_verdict(const DensityMatrix4& rho);

DensityMatrix4 werner_state(const WernerParam& p);

// Entropy in nats (divide by ln 2 for bits); input must be a valid 2x2
// density matrix.
double von_neumann_entropy(const Matrix2c& rho_reduced);

// Largest attainable CHSH value, 2 sqrt(m1 + m2) with m1, m2 the two largest
// eigenvalues of T^t T, T the 3x3 spin correlation matrix.
double chsh_max(const DensityMatrix4& rho);

struct CorrelationCheck {
  double joint = 0.0;
  double product_of_marginals = 0.0;
};

CorrelationCheck correlation_check(const DensityMatrix4& rho, const Matrix2c& obs_a,
                                   const Matrix2c& obs_b);

// Pauli matrices (z is diagonal in the up/down basis, up = +1).
const Matrix2c& pauli_x();
const Matrix2c& pauli_y();
const Matrix2c& pauli_z();

}  // namespace vacprobe
