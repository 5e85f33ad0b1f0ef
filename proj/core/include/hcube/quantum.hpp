#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcube/cube_function.hpp"
#include "hcube/inequality.hpp"
#include "hcube/kernel_quadrature.hpp"

namespace hcube::quantum {

/// Dense complex observable on n qubits, size 2^n x 2^n. Row/column index
/// bit i is qubit i (same convention as cube points).
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 10;

/// Q = [[0,1],[1,0]], P = [[0,i],[-i,0]], U = iQP = diag(1,-1).
enum class Letter : std::uint8_t { I, Q, P, U };

/// Tensor word, letters[i] acting on qubit i.
struct PauliWord {
  std::vector<Letter> letters;

  /// Q_A: Q on the qubits of A, identity elsewhere.
  static PauliWord q_word(int n, Mask subset);
  /// Parses a string over {I,Q,P,U}; character i is qubit i.
  static PauliWord parse(std::string_view s);
  /// The word with index w in base 4 (digit i = letter of qubit i).
  static PauliWord from_index(int n, std::uint64_t w);

  int size() const { return static_cast<int>(letters.size()); }
  std::string to_string() const;
};

Eigen::Matrix2cd letter_matrix(Letter l);

/// Builds the word as a monomial matrix (each row has one nonzero entry),
/// identical to the Kronecker product of its letters. Throws for n > 10.
Matrix pauli_build(const PauliWord& word);

/// T_f = sum_A f^(A) Q_A, i.e. T_f[x][y] = f^(x xor y). Hermitian with
/// eigenvalues {f(eps)}.
Matrix embed(const CubeFunction& f);

/// (Tr (T*T)^{p/2} / trace_dim)^{1/p}; p = inf gives the operator norm.
/// trace_dim defaults to min(rows, cols). Hermitian input is diagonalized
/// with a self-adjoint solver, anything else goes through an SVD.
double schatten_norm(const Matrix& T, double p, Eigen::Index trace_dim = -1);

/// tr = Tr / dim.
std::complex<double> normalized_trace(const Matrix& T);
/// <X, Y> = tr(X* Y).
std::complex<double> inner(const Matrix& X, const Matrix& Y);

/// Orthogonal projection onto span{Q_A} through the coefficients
/// c_A = tr(Q_A* T) = 2^{-n} sum_x T[x xor A][x].
Matrix project_Q(const Matrix& T);
/// Same projection as rho* Diag(rho T rho*) rho with rho = r^{(x) n},
/// r = [[1,1],[-1,1]]/sqrt(2), applied factor by factor.
Matrix project_Q_conjugated(const Matrix& T);
/// nu(T) = rho T rho* and its inverse.
Matrix conjugate_rho(const Matrix& T);
Matrix conjugate_rho_inverse(const Matrix& T);

struct ProjectionCheck {
  Matrix value;
  double disagreement = 0.0;  ///< max |entry| of the difference of the two routes
};
/// Runs both routes; throws std::runtime_error when they differ by more
/// than `tolerance`.
ProjectionCheck project_Q_checked(const Matrix& T, double tolerance = 1e-12);

/// R(theta) T = A_theta* T A_theta, A_theta = diag(1, e^{i theta})^{(x) n}:
/// entry (x, y) picks up e^{i theta (|y| - |x|)}. Sends Q_j to
/// cos Q_j + sin P_j and P_j to cos P_j - sin Q_j.
Matrix rotate(const Matrix& T, double theta);

/// Generator of rotate: D(T) = i (T N - N T), N = diag(|x|). On T_f it
/// equals sum_j P_j d_j T_f.
Matrix derivation(const Matrix& T);

/// P_j d_j T_f = sum_{A ∋ j} f^(A) P_j Q_{A \ j}.
Matrix p_partial(const CubeFunction& f, int j);

/// (1/c) P( int sgn(theta)/t(theta) R(-theta) G dtheta ), c = I(0) of the
/// same rule. With R(-theta) the projected integrand on P_j Q_{A \ j} is
/// cos^{|A|-1}(theta) sin(theta) Q_A.
Matrix kernel_transfer(const Matrix& G, const KernelQuadrature& quad);

struct FormulaSides {
  Matrix lhs;
  Matrix rhs;
  double discrepancy = 0.0;  ///< max |entry| of lhs - rhs
};

/// T_{D_j L^{-1/2} f} against kernel_transfer(P_j d_j T_f). n <= 6.
FormulaSides qa_sides(const CubeFunction& f, int j, const KernelQuadrature& quad);
double verify_qa_formula(const CubeFunction& f, int j, const KernelQuadrature& quad);

/// max over basis words A ∋ j and the given angles of
/// |P(R(-theta) P_j Q_{A \ j}) - cos^{|A|-1}(theta) sin(theta) Q_A|.
double verify_qa_basis_identity(int n, int j, std::span<const double> angles);

/// T_{L^{1/2} f} against kernel_transfer(D(T_f)). n <= 6.
FormulaSides elpf_sides(const CubeFunction& f, const KernelQuadrature& quad);
double verify_elpF(const CubeFunction& f, const KernelQuadrature& quad);

/// C_F: the T_{f^r} stacked vertically, (R 2^n) x 2^n.
Matrix block_column(const VectorCubeFunction& F);
/// D_F: block diagonal with blocks T_{f^r}.
Matrix block_diag(const VectorCubeFunction& F);
/// Schatten norms of C_F / D_F with the trace normalized by 2^n.
double block_column_norm(const VectorCubeFunction& F, double p);
double block_diag_norm(const VectorCubeFunction& F, double p);

/// EPI evaluated on matrices: lhs = ||T_{sum_j D_j L^{-1/2} f_j}||_{sigma_p},
/// rhs = ||C_{(D_i f_i)_i}||_{sigma_p}. Requires p >= 2 and n <= 6.
RatioReport epi_quantum_ratio(std::span<const CubeFunction> family, double p);

}  // namespace hcube::quantum
