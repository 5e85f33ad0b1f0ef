#include "hcube/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <complex>
#include <stdexcept>

namespace hcube::quantum {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void check_qubits(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw std::invalid_argument("matrix observables support at most " + std::to_string(kMaxQubits) + " qubits");
  }
}

int qubits_of(const Matrix& T) {
  if (T.rows() != T.cols()) throw std::invalid_argument("observable must be square");
  const auto dim = static_cast<std::size_t>(T.rows());
  if (dim == 0 || (dim & (dim - 1)) != 0) throw std::invalid_argument("observable size must be a power of two");
  const int n = std::countr_zero(dim);
  check_qubits(n);
  return n;
}

// Applies the 2x2 gate g to every qubit from the left: M <- g^{(x) n} M.
void apply_left(Matrix& M, const Eigen::Matrix2cd& g) {
  const Eigen::Index dim = M.rows();
  for (Eigen::Index bit = 1; bit < dim; bit <<= 1) {
    for (Eigen::Index x = 0; x < dim; ++x) {
      if (x & bit) continue;
      const Eigen::Index y = x | bit;
      for (Eigen::Index c = 0; c < M.cols(); ++c) {
        const cd a = M(x, c);
        const cd b = M(y, c);
        M(x, c) = g(0, 0) * a + g(0, 1) * b;
        M(y, c) = g(1, 0) * a + g(1, 1) * b;
      }
    }
  }
}

// M <- M g^{(x) n}.
void apply_right(Matrix& M, const Eigen::Matrix2cd& g) {
  Matrix t = M.transpose();
  apply_left(t, g.transpose());
  M = t.transpose();
}

Eigen::Matrix2cd r_gate() {
  Eigen::Matrix2cd r;
  const double s = 1.0 / std::sqrt(2.0);
  r << s, s, -s, s;
  return r;
}

bool is_hermitian(const Matrix& T) {
  if (T.rows() != T.cols()) return false;
  const double scale = std::max(1.0, T.cwiseAbs().maxCoeff());
  return (T - T.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

}  // namespace

PauliWord PauliWord::q_word(int n, Mask subset) {
  check_qubits(n);
  PauliWord w;
  w.letters.assign(static_cast<std::size_t>(n), Letter::I);
  for (int i = 0; i < n; ++i) {
    if (subset & (Mask{1} << i)) w.letters[static_cast<std::size_t>(i)] = Letter::Q;
  }
  return w;
}

PauliWord PauliWord::parse(std::string_view s) {
  PauliWord w;
  for (char c : s) {
    switch (c) {
      case 'I':
        w.letters.push_back(Letter::I);
        break;
      case 'Q':
        w.letters.push_back(Letter::Q);
        break;
      case 'P':
        w.letters.push_back(Letter::P);
        break;
      case 'U':
        w.letters.push_back(Letter::U);
        break;
      default:
        throw std::invalid_argument("Pauli word letters must be I, Q, P or U");
    }
  }
  check_qubits(w.size());
  return w;
}

PauliWord PauliWord::from_index(int n, std::uint64_t w) {
  check_qubits(n);
  PauliWord word;
  for (int i = 0; i < n; ++i) {
    word.letters.push_back(static_cast<Letter>(w & 3u));
    w >>= 2;
  }
  return word;
}

std::string PauliWord::to_string() const {
  std::string s;
  for (Letter l : letters) s += "IQPU"[static_cast<int>(l)];
  return s;
}

Eigen::Matrix2cd letter_matrix(Letter l) {
  Eigen::Matrix2cd m;
  switch (l) {
    case Letter::I:
      m << 1, 0, 0, 1;
      break;
    case Letter::Q:
      m << 0, 1, 1, 0;
      break;
    case Letter::P:
      m << 0, kI, -kI, 0;
      break;
    case Letter::U:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Matrix pauli_build(const PauliWord& word) {
  const int n = word.size();
  check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mask flip = 0;
  for (int i = 0; i < n; ++i) {
    const Letter l = word.letters[static_cast<std::size_t>(i)];
    if (l == Letter::Q || l == Letter::P) flip |= Mask{1} << i;
  }
  Matrix M = Matrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    cd phase = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool one = (x >> i) & 1;
      switch (word.letters[static_cast<std::size_t>(i)]) {
        case Letter::P:
          phase *= one ? -kI : kI;
          break;
        case Letter::U:
          if (one) phase = -phase;
          break;
        default:
          break;
      }
    }
    M(x, static_cast<Eigen::Index>(static_cast<Mask>(x) ^ flip)) = phase;
  }
  return M;
}

Matrix embed(const CubeFunction& f) {
  check_qubits(f.dim());
  const auto dim = static_cast<Eigen::Index>(f.size());
  Matrix T(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (Eigen::Index y = 0; y < dim; ++y) T(x, y) = f.coeff(static_cast<Mask>(x ^ y));
  }
  return T;
}

double schatten_norm(const Matrix& T, double p, Eigen::Index trace_dim) {
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten exponent must lie in [1, inf]");
  if (trace_dim < 0) trace_dim = std::min(T.rows(), T.cols());
  if (trace_dim == 0) return 0.0;
  Eigen::VectorXd sv;
  if (is_hermitian(T)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(T, Eigen::EigenvaluesOnly);
    sv = es.eigenvalues().cwiseAbs();
  } else {
    Eigen::BDCSVD<Matrix> svd(T);
    sv = svd.singularValues();
  }
  const double m = sv.size() ? sv.maxCoeff() : 0.0;
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  double s = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) s += std::pow(sv(k) / m, p);
  return m * std::pow(s / static_cast<double>(trace_dim), 1.0 / p);
}

std::complex<double> normalized_trace(const Matrix& T) {
  if (T.rows() == 0) return 0.0;
  return T.trace() / static_cast<double>(T.rows());
}

std::complex<double> inner(const Matrix& X, const Matrix& Y) { return normalized_trace(X.adjoint() * Y); }

Matrix project_Q(const Matrix& T) {
  const int n = qubits_of(T);
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<cd> c(static_cast<std::size_t>(dim), 0.0);
  for (Eigen::Index A = 0; A < dim; ++A) {
    cd s = 0.0;
    for (Eigen::Index x = 0; x < dim; ++x) s += T(x ^ A, x);
    c[static_cast<std::size_t>(A)] = s / static_cast<double>(dim);
  }
  Matrix out(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (Eigen::Index y = 0; y < dim; ++y) out(x, y) = c[static_cast<std::size_t>(x ^ y)];
  }
  return out;
}

Matrix conjugate_rho(const Matrix& T) {
  qubits_of(T);
  Matrix M = T;
  const Eigen::Matrix2cd r = r_gate();
  apply_left(M, r);
  apply_right(M, r.adjoint());
  return M;
}

Matrix conjugate_rho_inverse(const Matrix& T) {
  qubits_of(T);
  Matrix M = T;
  const Eigen::Matrix2cd r = r_gate();
  apply_left(M, r.adjoint());
  apply_right(M, r);
  return M;
}

Matrix project_Q_conjugated(const Matrix& T) {
  Matrix M = conjugate_rho(T);
  const Matrix diag = M.diagonal().asDiagonal();
  return conjugate_rho_inverse(diag);
}

ProjectionCheck project_Q_checked(const Matrix& T, double tolerance) {
  ProjectionCheck out;
  out.value = project_Q(T);
  const Matrix other = project_Q_conjugated(T);
  out.disagreement = (out.value - other).cwiseAbs().maxCoeff();
  if (!(out.disagreement <= tolerance)) {
    throw std::runtime_error("projection routes disagree by " + std::to_string(out.disagreement));
  }
  return out;
}

Matrix rotate(const Matrix& T, double theta) {
  qubits_of(T);
  const Eigen::Index dim = T.rows();
  std::vector<cd> phase(static_cast<std::size_t>(dim));
  for (Eigen::Index x = 0; x < dim; ++x) {
    phase[static_cast<std::size_t>(x)] = std::polar(1.0, theta * std::popcount(static_cast<std::uint64_t>(x)));
  }
  Matrix out(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (Eigen::Index y = 0; y < dim; ++y) {
      out(x, y) = std::conj(phase[static_cast<std::size_t>(x)]) * T(x, y) * phase[static_cast<std::size_t>(y)];
    }
  }
  return out;
}

Matrix derivation(const Matrix& T) {
  qubits_of(T);
  const Eigen::Index dim = T.rows();
  Matrix out(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (Eigen::Index y = 0; y < dim; ++y) {
      const double w = std::popcount(static_cast<std::uint64_t>(y)) - std::popcount(static_cast<std::uint64_t>(x));
      out(x, y) = kI * w * T(x, y);
    }
  }
  return out;
}

Matrix p_partial(const CubeFunction& f, int j) {
  check_qubits(f.dim());
  if (j < 0 || j >= f.dim()) throw std::out_of_range("coordinate outside the cube");
  const auto dim = static_cast<Eigen::Index>(f.size());
  const Mask bit = Mask{1} << j;
  Matrix G = Matrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const cd phase = (static_cast<Mask>(x) & bit) ? -kI : kI;
    for (Eigen::Index A = 0; A < dim; ++A) {
      if (static_cast<Mask>(A) & bit) G(x, x ^ A) = phase * f.coeff(static_cast<Mask>(A));
    }
  }
  return G;
}

Matrix kernel_transfer(const Matrix& G, const KernelQuadrature& quad) {
  const int n = qubits_of(G);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double c = pisier_kernel_integral(0, quad);
  // P(R(-theta) G) has Q_A coefficient 2^{-n} sum_x e^{i theta (|x xor A| - |x|)} G[x xor A][x]
  // (R(-theta) multiplies entry (u, v) by e^{i theta (|u| - |v|)}); group the sum by the
  // weight difference so each node costs O(n 2^n).
  std::vector<cd> coeff(static_cast<std::size_t>(dim), 0.0);
  std::vector<cd> by_shift(static_cast<std::size_t>(2 * n + 1));
  const auto& nodes = quad.nodes();
  const auto& weights = quad.weights();
  for (Eigen::Index A = 0; A < dim; ++A) {
    std::fill(by_shift.begin(), by_shift.end(), cd{0.0});
    for (Eigen::Index x = 0; x < dim; ++x) {
      const int shift = std::popcount(static_cast<std::uint64_t>(x ^ A)) - std::popcount(static_cast<std::uint64_t>(x));
      by_shift[static_cast<std::size_t>(shift + n)] += G(x ^ A, x);
    }
    cd total = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      cd at_node = 0.0;
      for (int sft = -n; sft <= n; ++sft) {
        const cd b = by_shift[static_cast<std::size_t>(sft + n)];
        if (b != cd{0.0}) at_node += std::polar(1.0, nodes[k] * sft) * b;
      }
      total += weights[k] * at_node;
    }
    coeff[static_cast<std::size_t>(A)] = total / (static_cast<double>(dim) * c);
  }
  Matrix out(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (Eigen::Index y = 0; y < dim; ++y) out(x, y) = coeff[static_cast<std::size_t>(x ^ y)];
  }
  return out;
}

namespace {

void check_formula_dim(const CubeFunction& f) {
  if (f.dim() < 1 || f.dim() > 6) throw std::invalid_argument("formula verification supports 1 <= n <= 6");
}

double max_abs(const Matrix& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

FormulaSides qa_sides(const CubeFunction& f, int j, const KernelQuadrature& quad) {
  check_formula_dim(f);
  FormulaSides s;
  s.lhs = embed(riesz(f, j));
  s.rhs = kernel_transfer(p_partial(f, j), quad);
  s.discrepancy = max_abs(s.lhs - s.rhs);
  return s;
}

double verify_qa_formula(const CubeFunction& f, int j, const KernelQuadrature& quad) {
  return qa_sides(f, j, quad).discrepancy;
}

double verify_qa_basis_identity(int n, int j, std::span<const double> angles) {
  check_qubits(n);
  if (j < 0 || j >= n) throw std::out_of_range("coordinate outside the cube");
  double worst = 0.0;
  const Mask bit = Mask{1} << j;
  for (Mask A = 0; A < (Mask{1} << n); ++A) {
    if (!(A & bit)) continue;
    PauliWord w = PauliWord::q_word(n, A & ~bit);
    w.letters[static_cast<std::size_t>(j)] = Letter::P;
    const Matrix word = pauli_build(w);
    const Matrix QA = pauli_build(PauliWord::q_word(n, A));
    const int k = std::popcount(A);
    for (double th : angles) {
      const Matrix got = project_Q(rotate(word, -th));
      const Matrix want = std::pow(std::cos(th), k - 1) * std::sin(th) * QA;
      worst = std::max(worst, max_abs(got - want));
    }
  }
  return worst;
}

FormulaSides elpf_sides(const CubeFunction& f, const KernelQuadrature& quad) {
  check_formula_dim(f);
  FormulaSides s;
  s.lhs = embed(frac_power(f, -0.5).function);
  s.rhs = kernel_transfer(derivation(embed(f)), quad);
  s.discrepancy = max_abs(s.lhs - s.rhs);
  return s;
}

double verify_elpF(const CubeFunction& f, const KernelQuadrature& quad) { return elpf_sides(f, quad).discrepancy; }

namespace {

void check_blocks(const VectorCubeFunction& F) {
  if (F.inner_dim() < 1 || F.inner_dim() > 8) throw std::invalid_argument("block matrices support 1 <= R <= 8");
  if (F.dim() > 8) throw std::invalid_argument("block matrices support n <= 8");
}

}  // namespace

Matrix block_column(const VectorCubeFunction& F) {
  check_blocks(F);
  const auto dim = static_cast<Eigen::Index>(F[0].size());
  const auto R = static_cast<Eigen::Index>(F.inner_dim());
  Matrix C(R * dim, dim);
  for (Eigen::Index r = 0; r < R; ++r) C.block(r * dim, 0, dim, dim) = embed(F[static_cast<std::size_t>(r)]);
  return C;
}

Matrix block_diag(const VectorCubeFunction& F) {
  check_blocks(F);
  const auto dim = static_cast<Eigen::Index>(F[0].size());
  const auto R = static_cast<Eigen::Index>(F.inner_dim());
  Matrix D = Matrix::Zero(R * dim, R * dim);
  for (Eigen::Index r = 0; r < R; ++r) D.block(r * dim, r * dim, dim, dim) = embed(F[static_cast<std::size_t>(r)]);
  return D;
}

double block_column_norm(const VectorCubeFunction& F, double p) {
  return schatten_norm(block_column(F), p, static_cast<Eigen::Index>(F[0].size()));
}

double block_diag_norm(const VectorCubeFunction& F, double p) {
  return schatten_norm(block_diag(F), p, static_cast<Eigen::Index>(F[0].size()));
}

RatioReport epi_quantum_ratio(std::span<const CubeFunction> family, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("quantum EPI ratio needs p >= 2");
  if (family.empty()) throw std::invalid_argument("quantum EPI ratio needs a family");
  const int n = family.front().dim();
  if (n < 1 || n > 6) throw std::invalid_argument("quantum EPI ratio supports 1 <= n <= 6");
  if (family.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("family size must equal n");
  CubeFunction sum(n);
  std::vector<CubeFunction> d;
  for (int i = 0; i < n; ++i) {
    const CubeFunction di = discrete_derivative(family[static_cast<std::size_t>(i)], i);
    sum += frac_power(di, 0.5).function;
    d.push_back(di);
  }
  RatioReport rep;
  rep.id = InequalityId::EPI;
  rep.n = n;
  rep.p = p;
  rep.a_or_gamma = 0.5;
  rep.mode = "exact";
  rep.digest = InequalityInput::of_family(family).digest();
  rep.lhs = schatten_norm(embed(sum), p);
  rep.rhs = block_column_norm(VectorCubeFunction(std::move(d)), p);
  rep.ratio = ratio_of(rep.lhs, rep.rhs);
  return rep;
}

}  // namespace hcube::quantum
