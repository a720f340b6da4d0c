// Copyright 2026 The mpsforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpsforge/transpiler.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mpsforge/error.hpp"

namespace mpsforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitaryTolerance = 1e-10;
constexpr double kAngleTolerance = 1e-12;
constexpr double kClassTolerance = 1e-9;
const Complex kI(0.0, 1.0);

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  return phi <= -kPi ? phi + 2.0 * kPi : phi;
}

void require_unitary(const Matrix& u, Eigen::Index dim, const char* what) {
  if (u.rows() != dim || u.cols() != dim) {
    throw ValidationError(std::string(what) + ": expected a " +
                          std::to_string(dim) + "x" + std::to_string(dim) +
                          " matrix");
  }
  const double dev = linalg::isometry_deviation(u);
  if (!(dev <= kUnitaryTolerance)) {
    throw ValidationError(std::string(what) + ": matrix is not unitary (" +
                          "deviation " + std::to_string(dev) + ")");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix pauli(char p) {
  Matrix m = Matrix::Zero(2, 2);
  switch (p) {
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = -kI; m(1, 0) = kI; break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

Matrix s_gate(bool dagger) {
  Matrix s = Matrix::Identity(2, 2);
  s(1, 1) = dagger ? -kI : kI;
  return s;
}

// exp(i t P) for a Pauli P.
Matrix pauli_exp(char p, double t) {
  return std::cos(t) * Matrix::Identity(2, 2) + kI * std::sin(t) * pauli(p);
}

const Matrix& magic_basis() {
  static const Matrix b = [] {
    Matrix m(4, 4);
    m << 1.0, 0.0, 0.0, kI,
         0.0, kI, 1.0, 0.0,
         0.0, kI, -1.0, 0.0,
         1.0, 0.0, 0.0, -kI;
    return Matrix(m / std::sqrt(2.0));
  }();
  return b;
}

// Diagonals of XX, YY, ZZ in the magic basis (each a +-1 vector).
const std::array<Eigen::Vector4d, 3>& magic_diagonals() {
  static const std::array<Eigen::Vector4d, 3> diag = [] {
    std::array<Eigen::Vector4d, 3> out;
    const Matrix& b = magic_basis();
    const char axes[3] = {'X', 'Y', 'Z'};
    for (int k = 0; k < 3; ++k) {
      const Matrix p = kron(pauli(axes[k]), pauli(axes[k]));
      const Matrix d = b.adjoint() * p * b;
      for (int j = 0; j < 4; ++j) out[k](j) = d(j, j).real();
    }
    return out;
  }();
  return diag;
}

// Splits a 4x4 tensor product into 2x2 factors with a x b == m.
std::pair<Matrix, Matrix> kron_factor(const Matrix& m) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double nrm = m.block(2 * i, 2 * j, 2, 2).norm();
      if (nrm > best) {
        best = nrm;
        bi = i;
        bj = j;
      }
    }
  }
  Matrix b = m.block(2 * bi, 2 * bj, 2, 2);
  b /= std::sqrt(b.determinant());
  Matrix a(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      a(i, j) = (b.adjoint() * m.block(2 * i, 2 * j, 2, 2)).trace() / 2.0;
    }
  }
  return {a, b};
}

// Phase p with target ~= exp(i p) approx, and the residual max-norm.
std::pair<double, double> relative_phase(const Matrix& target,
                                         const Matrix& approx) {
  const Complex overlap = (approx.adjoint() * target).trace();
  const double p = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
  const double err =
      (target - std::polar(1.0, p) * approx).cwiseAbs().maxCoeff();
  return {p, err};
}

// Sequence of local layers separated by CX gates:
//   u ~ L_m CX_m ... L_1 CX_1 L_0, each L = (high x low).
struct Skeleton {
  std::vector<std::pair<Matrix, Matrix>> locals;
  std::vector<bool> control_high;  ///< per CX
};

std::vector<NativeGate> lower(const Skeleton& sk, int q, bool simplify) {
  std::vector<NativeGate> out;
  double ignored = 0.0;
  for (std::size_t i = 0; i < sk.locals.size(); ++i) {
    for (const NativeGate& g :
         decompose_one_qubit(sk.locals[i].first, q, &ignored, simplify)) {
      out.push_back(g);
    }
    for (const NativeGate& g :
         decompose_one_qubit(sk.locals[i].second, q + 1, &ignored, simplify)) {
      out.push_back(g);
    }
    if (i < sk.control_high.size()) {
      out.push_back(sk.control_high[i] ? NativeGate::cx(q, q + 1)
                                       : NativeGate::cx(q + 1, q));
    }
  }
  return out;
}

void apply_one(std::span<Complex> amps, int n, int q, const Matrix& m) {
  const std::size_t stride = std::size_t{1} << (n - 1 - q);
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex x = amps[i];
      const Complex y = amps[i + stride];
      amps[i] = m00 * x + m01 * y;
      amps[i + stride] = m10 * x + m11 * y;
    }
  }
}

}  // namespace

Matrix rz_matrix(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2.0);
  m(1, 1) = std::polar(1.0, theta / 2.0);
  return m;
}

Matrix ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

Matrix cx_matrix(bool control_first) {
  Matrix m = Matrix::Zero(4, 4);
  if (control_first) {
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  } else {
    m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1.0;
  }
  return m;
}

ZyzAngles zyz(const Matrix& u) {
  require_unitary(u, 2, "zyz");
  const Matrix su = u / std::sqrt(u.determinant());
  const Complex alpha = su(0, 0);
  const Complex beta = su(1, 0);
  ZyzAngles z;
  z.theta1 = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
  if (std::abs(beta) <= kAngleTolerance) {
    z.theta1 = 0.0;
    z.theta0 = -2.0 * std::arg(alpha);
  } else if (std::abs(alpha) <= kAngleTolerance) {
    z.theta1 = kPi;
    z.theta0 = 2.0 * std::arg(beta);
  } else {
    z.theta0 = std::arg(beta) - std::arg(alpha);
    z.theta2 = -std::arg(alpha) - std::arg(beta);
  }
  for (double* t : {&z.theta0, &z.theta2}) {
    *t = std::remainder(*t, 2.0 * kPi);
    if (*t <= -kPi) *t += 2.0 * kPi;
    if (std::abs(*t) <= kAngleTolerance) *t = 0.0;
  }
  const Matrix r =
      rz_matrix(z.theta0) * ry_matrix(z.theta1) * rz_matrix(z.theta2);
  z.phase = wrap_phase(relative_phase(u, r).first);
  if (std::abs(z.phase) <= kAngleTolerance) z.phase = 0.0;
  return z;
}

KakDecomposition kak_decompose(const Matrix& u) {
  require_unitary(u, 4, "kak_decompose");
  const Matrix& b = magic_basis();
  const double phase0 = std::arg(u.determinant()) / 4.0;
  const Matrix u1 = u * std::polar(1.0, -phase0);
  const Matrix up = b.adjoint() * u1 * b;
  Matrix m2 = up.transpose() * up;
  m2 = (0.5 * (m2 + m2.transpose())).eval();

  // Real and imaginary parts of a symmetric unitary commute; a generic real
  // combination of them shares the eigenvectors.
  static constexpr std::array<std::array<double, 2>, 6> kMix = {{
      {1.0, 0.5137}, {0.3719, 1.0}, {1.0, -0.8311},
      {0.6173, 0.2897}, {-0.4421, 1.0}, {1.0, 1.7323}}};
  Eigen::Matrix4d p;
  Eigen::Vector4cd dvals;
  bool found = false;
  for (const auto& mix : kMix) {
    const Eigen::Matrix4d sym = mix[0] * m2.real() + mix[1] * m2.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sym);
    p = es.eigenvectors();
    const Eigen::Matrix4cd d = p.transpose().cast<Complex>() * m2 * p.cast<Complex>();
    dvals = d.diagonal();
    Eigen::Matrix4cd off = d;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() < 1e-10) {
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("kak_decompose: diagonalization failed");
  if (p.determinant() < 0.0) p.col(3) *= -1.0;

  Eigen::Vector4d d;
  for (int j = 0; j < 4; ++j) d(j) = std::arg(dvals(j)) / 2.0;
  Eigen::Matrix4cd phases = Eigen::Matrix4cd::Zero();
  for (int j = 0; j < 4; ++j) phases(j, j) = std::polar(1.0, -d(j));
  Eigen::Matrix4d x = (up * p.cast<Complex>() * phases).real();
  if (x.determinant() < 0.0) {
    d(0) += kPi;
    x.col(0) *= -1.0;
  }

  const Matrix k1 = b * x.cast<Complex>() * b.adjoint();
  const Matrix k2 = b * p.transpose().cast<Complex>() * b.adjoint();

  const auto& diag = magic_diagonals();
  KakDecomposition out;
  out.a = diag[0].dot(d) / 4.0;
  out.b = diag[1].dot(d) / 4.0;
  out.c = diag[2].dot(d) / 4.0;
  out.phase = phase0 + d.sum() / 4.0;
  std::tie(out.k1a, out.k1b) = kron_factor(k1);
  std::tie(out.k2a, out.k2b) = kron_factor(k2);

  // exp(i pi/2 PP) = i PP: shift each coefficient into (-pi/4, pi/4] and push
  // the Pauli pair into K2.
  const char axes[3] = {'X', 'Y', 'Z'};
  double* coef[3] = {&out.a, &out.b, &out.c};
  for (int k = 0; k < 3; ++k) {
    const Matrix pk = pauli(axes[k]);
    while (*coef[k] > kPi / 4.0 + kAngleTolerance) {
      *coef[k] -= kPi / 2.0;
      out.k2a = pk * out.k2a;
      out.k2b = pk * out.k2b;
      out.phase += kPi / 2.0;
    }
    while (*coef[k] <= -kPi / 4.0 + kAngleTolerance) {
      *coef[k] += kPi / 2.0;
      out.k2a = pk * out.k2a;
      out.k2b = pk * out.k2b;
      out.phase -= kPi / 2.0;
    }
  }

  // Fold the residual phase of the factorization into `phase`.
  Matrix canon = Matrix::Zero(4, 4);
  for (int j = 0; j < 4; ++j) {
    canon(j, j) = std::polar(
        1.0, out.a * diag[0](j) + out.b * diag[1](j) + out.c * diag[2](j));
  }
  canon = b * canon * b.adjoint();
  const Matrix rebuilt =
      kron(out.k1a, out.k1b) * canon * kron(out.k2a, out.k2b);
  out.phase = wrap_phase(relative_phase(u, rebuilt).first);
  return out;
}

std::vector<NativeGate> decompose_one_qubit(const Matrix& u, int q,
                                            double* phase, bool simplify) {
  const ZyzAngles z = zyz(u);
  std::vector<NativeGate> out = {NativeGate::rz(q, z.theta2),
                                 NativeGate::ry(q, z.theta1),
                                 NativeGate::rz(q, z.theta0)};
  if (simplify) {
    std::erase_if(out, [](const NativeGate& g) {
      return std::abs(g.angle) <= kAngleTolerance;
    });
  }
  if (phase) *phase += z.phase;
  return out;
}

std::vector<NativeGate> decompose_two_qubit(const Matrix& u, int q,
                                            double* phase, bool simplify) {
  const KakDecomposition k = kak_decompose(u);
  const auto zero = [](double x) { return std::abs(x) < kClassTolerance; };
  const auto quarter = [](double x) {
    return std::abs(std::abs(x) - kPi / 4.0) < kClassTolerance;
  };
  const Matrix id = Matrix::Identity(2, 2);
  const int nonzero = !zero(k.a) + !zero(k.b) + !zero(k.c);

  Skeleton sk;
  if (nonzero == 0) {
    sk.locals = {{k.k1a * k.k2a, k.k1b * k.k2b}};
  } else if (nonzero == 1 && (quarter(k.a) || quarter(k.b) || quarter(k.c))) {
    // exp(+-i pi/4 PP) = exp(+-i pi/4) (W S-+ x W S-+) CZ (W^dag x W^dag),
    // CZ = (I x H) CX (I x H).
    const double t = !zero(k.a) ? k.a : !zero(k.b) ? k.b : k.c;
    const Matrix w = !zero(k.a) ? hadamard()
                   : !zero(k.b) ? Matrix(s_gate(false) * hadamard())
                                : id;
    const Matrix s = s_gate(t > 0.0);
    const Matrix h = hadamard();
    sk.locals = {{w.adjoint() * k.k2a, h * w.adjoint() * k.k2b},
                 {k.k1a * w * s, k.k1b * w * s * h}};
    sk.control_high = {true};
  } else if (zero(k.a) || zero(k.b) || zero(k.c)) {
    // exp(i (alpha XX + gamma ZZ)) = CX (exp(i alpha X) x exp(i gamma Z)) CX,
    // with V mapping the two active axes onto (X, Z).
    Matrix v = id;
    double alpha = k.a, gamma = k.c;
    if (zero(k.c)) {
      v = pauli_exp('X', kPi / 4.0);
      gamma = k.b;
    } else if (zero(k.a)) {
      v = rz_matrix(kPi / 2.0);
      alpha = k.b;
    }
    sk.locals = {{v.adjoint() * k.k2a, v.adjoint() * k.k2b},
                 {pauli_exp('X', alpha), pauli_exp('Z', gamma)},
                 {k.k1a * v, k.k1b * v}};
    sk.control_high = {true, true};
  } else {
    // N(a, b, c) ~ (Rz(pi/2) x I) T (I x Rz(-pi/2)) with
    // T = CX10 (I x Ry(al)) CX01 (Rz(de) x Ry(be)) CX10.
    const double de = -2.0 * k.c - kPi / 2.0;
    const double be = 2.0 * k.a + kPi / 2.0;
    const double al = -2.0 * k.b - kPi / 2.0;
    sk.locals = {{k.k2a, rz_matrix(-kPi / 2.0) * k.k2b},
                 {rz_matrix(de), ry_matrix(be)},
                 {id, ry_matrix(al)},
                 {k.k1a * rz_matrix(kPi / 2.0), k.k1b}};
    sk.control_high = {false, true, false};
  }

  std::vector<NativeGate> gates = lower(sk, 0, simplify);
  double p = 0.0;
  if (simplify) peephole(gates, p);
  const auto [rel, err] = relative_phase(u, circuit_unitary(gates, 2));
  if (!(err < 1e-7)) {
    throw std::runtime_error("decompose_two_qubit: reconstruction error " +
                             std::to_string(err));
  }
  if (phase) *phase += rel;
  for (NativeGate& g : gates) {
    g.qubit += q;
    if (g.kind == GateKind::kCx) g.target += q;
  }
  return gates;
}

void peephole(std::vector<NativeGate>& gates, double& phase) {
  const auto touches = [](const NativeGate& g, int q) {
    return g.qubit == q || (g.kind == GateKind::kCx && g.target == q);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (NativeGate& g : gates) {
      if (g.kind == GateKind::kCx) continue;
      double t = std::remainder(g.angle, 4.0 * kPi);
      if (t > kPi) {
        t -= 2.0 * kPi;
        phase += kPi;
      } else if (t <= -kPi) {
        t += 2.0 * kPi;
        phase += kPi;
      }
      g.angle = t;
    }
    const auto before = gates.size();
    std::erase_if(gates, [](const NativeGate& g) {
      return g.kind != GateKind::kCx && std::abs(g.angle) <= kAngleTolerance;
    });
    changed = gates.size() != before;

    for (std::size_t i = 0; i < gates.size(); ++i) {
      const NativeGate& g = gates[i];
      std::size_t j = i + 1;
      while (j < gates.size() && !touches(gates[j], g.qubit) &&
             !(g.kind == GateKind::kCx && touches(gates[j], g.target))) {
        ++j;
      }
      if (j == gates.size()) continue;
      const NativeGate& h = gates[j];
      if (g.kind != GateKind::kCx && h.kind == g.kind && h.qubit == g.qubit) {
        gates[i].angle += h.angle;
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      } else if (g.kind == GateKind::kCx && h == g) {
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        if (i > 0) --i;
        --i;
      }
    }
  }
  phase = wrap_phase(phase);
}

NativeCircuit transpile(const LayeredCircuit& circuit,
                        const TranspileOptions& options) {
  const int n = circuit.num_qubits;
  NativeCircuit out;
  out.num_qubits = n;
  for (const Layer& layer : circuit.layers) {
    for (const TwoQubitGate& g : layer.gates) {
      if (g.qubit < 0 || g.qubit + 1 >= n) {
        throw ValidationError("two-qubit gate on qubit " +
                              std::to_string(g.qubit) + " outside 0.." +
                              std::to_string(n - 2));
      }
      for (const NativeGate& ng :
           decompose_two_qubit(g.u, g.qubit, &out.global_phase,
                               options.simplify)) {
        out.gates.push_back(ng);
      }
    }
    if (layer.cap.qubit < 0 || layer.cap.qubit >= n) {
      throw ValidationError("cap on qubit " + std::to_string(layer.cap.qubit) +
                            " outside 0.." + std::to_string(n - 1));
    }
    for (const NativeGate& ng : decompose_one_qubit(
             layer.cap.u, layer.cap.qubit, &out.global_phase, options.simplify)) {
      out.gates.push_back(ng);
    }
    out.global_phase = wrap_phase(out.global_phase);
  }
  return out;
}

GateStats gate_stats(const NativeCircuit& circuit) {
  GateStats s;
  std::vector<long long> level(static_cast<std::size_t>(circuit.num_qubits), 0);
  for (const NativeGate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kCx: {
        ++s.cx_count;
        const long long d = std::max(level[g.qubit], level[g.target]) + 1;
        level[g.qubit] = level[g.target] = d;
        s.depth = std::max(s.depth, d);
        continue;
      }
      case GateKind::kRy: ++s.ry_count; break;
      case GateKind::kRz: ++s.rz_count; break;
    }
    s.depth = std::max(s.depth, ++level[g.qubit]);
  }
  s.rotation_count = s.ry_count + s.rz_count;
  s.total = s.rotation_count + s.cx_count;
  return s;
}

void apply_native_gate(std::span<Complex> amps, int n, const NativeGate& g) {
  if (g.qubit < 0 || g.qubit >= n ||
      (g.kind == GateKind::kCx &&
       (g.target < 0 || g.target >= n || g.target == g.qubit))) {
    throw ValidationError("gate qubit index out of range for " +
                          std::to_string(n) + " qubits");
  }
  switch (g.kind) {
    case GateKind::kRy: apply_one(amps, n, g.qubit, ry_matrix(g.angle)); return;
    case GateKind::kRz: apply_one(amps, n, g.qubit, rz_matrix(g.angle)); return;
    case GateKind::kCx: {
      const std::size_t cbit = std::size_t{1} << (n - 1 - g.qubit);
      const std::size_t tbit = std::size_t{1} << (n - 1 - g.target);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
      }
      return;
    }
  }
}

Matrix circuit_unitary(const std::vector<NativeGate>& gates, int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    std::span<Complex> col(u.col(c).data(), static_cast<std::size_t>(dim));
    for (const NativeGate& g : gates) apply_native_gate(col, num_qubits, g);
  }
  return u;
}

std::string emit_qasm(const NativeCircuit& circuit) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(circuit.num_qubits) + "];\n";
  char buf[64];
  for (const NativeGate& g : circuit.gates) {
    if (g.kind == GateKind::kCx) {
      out += "cx q[" + std::to_string(g.qubit) + "],q[" +
             std::to_string(g.target) + "];\n";
      continue;
    }
    const auto res = std::to_chars(buf, buf + sizeof buf, g.angle);
    out += g.kind == GateKind::kRy ? "ry(" : "rz(";
    out.append(buf, res.ptr);
    out += ") q[" + std::to_string(g.qubit) + "];\n";
  }
  return out;
}

namespace {

class QasmParser {
 public:
  explicit QasmParser(std::string_view text) : text_(text) {}

  NativeCircuit parse() {
    NativeCircuit c;
    bool have_qreg = false;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      stmt_line_ = line_;
      const std::string word = identifier();
      if (word == "OPENQASM") {
        const std::string version = until(';');
        if (version.empty() || version.front() != '2') fail("unsupported version");
      } else if (word == "include" || word == "creg" || word == "barrier" ||
                 word == "measure") {
        until(';');
      } else if (word == "qreg") {
        if (have_qreg) fail("only one qreg is supported");
        reg_ = identifier();
        c.num_qubits = index();
        have_qreg = true;
        expect(';');
      } else if (word == "ry" || word == "rz") {
        if (!have_qreg) fail("gate before qreg");
        expect('(');
        const double angle = expr();
        expect(')');
        const int q = operand(c.num_qubits);
        expect(';');
        c.gates.push_back(word == "ry" ? NativeGate::ry(q, angle)
                                       : NativeGate::rz(q, angle));
      } else if (word == "cx" || word == "CX") {
        if (!have_qreg) fail("gate before qreg");
        const int a = operand(c.num_qubits);
        expect(',');
        const int b = operand(c.num_qubits);
        expect(';');
        if (a == b) fail("cx control equals target");
        c.gates.push_back(NativeGate::cx(a, b));
      } else {
        fail("unsupported statement '" + word + "'");
      }
    }
    if (!have_qreg) fail("missing qreg");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("qasm line " + std::to_string(stmt_line_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string until(char end) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != end) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) fail(std::string("expected '") + end + "'");
    std::string body(text_.substr(start, pos_ - start));
    ++pos_;
    const auto first = body.find_first_not_of(" \t\r\n");
    return first == std::string::npos ? std::string() : body.substr(first);
  }

  void expect(char ch) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ch) {
      fail(std::string("expected '") + ch + "'");
    }
    ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  int index() {
    expect('[');
    skip_space();
    int v = 0;
    const auto res = std::from_chars(text_.data() + pos_,
                                     text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("expected integer index");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    expect(']');
    return v;
  }

  int operand(int n) {
    if (identifier() != reg_) fail("unknown register");
    const int q = index();
    if (q < 0 || q >= n) fail("qubit index " + std::to_string(q) + " out of range");
    return q;
  }

  double expr() {
    double v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = factor();
    while (true) {
      if (accept('*')) {
        v *= factor();
      } else if (accept('/')) {
        v /= factor();
      } else {
        return v;
      }
    }
  }

  double factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      const double v = expr();
      expect(')');
      return v;
    }
    skip_space();
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return kPi;
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + pos_,
                                     text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("expected number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int stmt_line_ = 1;
  std::string reg_;
};

}  // namespace

NativeCircuit parse_qasm(std::string_view text) {
  return QasmParser(text).parse();
}

}  // namespace mpsforge
