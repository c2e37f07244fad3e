// Copyright 2026 The cwsdec Authors
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

#include "cwsdec/dense_sim.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cwsdec/errors.h"
#include "json.hpp"

namespace cwsdec {

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t hilbert_dimension(int d, std::size_t n) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);
  return dim;
}

std::vector<Complex> omega_powers(int d) {
  std::vector<Complex> w(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / d;
    w[static_cast<std::size_t>(j)] = {std::cos(angle), std::sin(angle)};
  }
  // Exact values on the axes keep d = 2 and d = 4 arithmetic exact.
  if (d % 4 == 0) {
    w[static_cast<std::size_t>(d / 4)] = {0.0, 1.0};
    w[static_cast<std::size_t>(3 * d / 4)] = {0.0, -1.0};
  }
  if (d % 2 == 0) w[static_cast<std::size_t>(d / 2)] = {-1.0, 0.0};
  return w;
}

namespace {

// Basis map of a Pauli: |i> -> w^{phase[i]} |target[i]>.
struct PauliAction {
  std::vector<std::size_t> target;
  std::vector<int> phase;
};

PauliAction pauli_action(const PauliOp& op) {
  const int d = op.modulus();
  const std::size_t n = op.num_qudits();
  const std::size_t dim = hilbert_dimension(d, n);
  PauliAction action;
  action.target.resize(dim);
  action.phase.resize(dim);
  std::vector<int> digits(n, 0);
  const auto v = op.z_exp().entries();
  const auto u = op.x_exp().entries();
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t target = 0;
    long long phase = op.phase_exp();
    for (std::size_t k = 0; k < n; ++k) {
      const int shifted = (digits[k] + u[k]) % d;
      target = target * static_cast<std::size_t>(d) + static_cast<std::size_t>(shifted);
      phase += static_cast<long long>(v[k]) * shifted;
    }
    action.target[i] = target;
    action.phase[i] = mod_d(phase, d);
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < d) break;
      digits[k] = 0;
    }
  }
  return action;
}

void require_register(const PauliOp& op, int d, std::size_t n, const char* where) {
  if (op.modulus() != d || op.num_qudits() != n) {
    throw DimensionError(std::string(where) + ": operator and state act on different registers");
  }
}

}  // namespace

StateVector::StateVector(int d, std::size_t n, Eigen::VectorXcd amplitudes)
    : d_(d), n_(n), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != hilbert_dimension(d, n)) {
    throw DimensionError("StateVector: expected " + std::to_string(hilbert_dimension(d, n)) +
                         " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

StateVector StateVector::basis_state(int d, std::size_t n, std::size_t index) {
  const std::size_t dim = hilbert_dimension(d, n);
  if (index >= dim) throw DimensionError("basis_state: index out of range");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(d, n, std::move(amps));
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (nrm < 1e-300) throw DomainError("cannot normalize a zero vector");
  return StateVector(d_, n_, amplitudes_ / nrm);
}

StateVector StateVector::scaled(Complex factor) const {
  return StateVector(d_, n_, amplitudes_ * factor);
}

SubspaceBasis::SubspaceBasis(int d, std::size_t n, Eigen::MatrixXcd columns,
                             std::vector<std::string> labels)
    : SubspaceBasis(Unchecked{}, d, n, std::move(columns), std::move(labels)) {
  const double deviation = gram_identity_deviation(columns_.adjoint() * columns_);
  if (deviation > kOrthonormalityTol) {
    std::ostringstream msg;
    msg << "basis is not orthonormal: max |G - I| = " << deviation;
    throw PreconditionError(msg.str());
  }
}

SubspaceBasis::SubspaceBasis(Unchecked, int d, std::size_t n, Eigen::MatrixXcd columns,
                             std::vector<std::string> labels)
    : d_(d), n_(n), columns_(std::move(columns)), labels_(std::move(labels)) {
  if (static_cast<std::size_t>(columns_.rows()) != hilbert_dimension(d, n)) {
    throw DimensionError("SubspaceBasis: column length does not match d^n");
  }
  if (labels_.empty()) {
    labels_.resize(rank());
    for (std::size_t i = 0; i < labels_.size(); ++i) labels_[i] = "b" + std::to_string(i);
  }
  if (labels_.size() != rank()) throw DimensionError("SubspaceBasis: one label per state");
}

SubspaceBasis make_unchecked_basis(int d, std::size_t n, Eigen::MatrixXcd columns,
                                   std::vector<std::string> labels) {
  return SubspaceBasis(SubspaceBasis::Unchecked{}, d, n, std::move(columns), std::move(labels));
}

SubspaceBasis SubspaceBasis::from_states(const std::vector<StateVector>& states,
                                         std::vector<std::string> labels) {
  if (states.empty()) throw DimensionError("from_states: need at least one state");
  const int d = states.front().modulus();
  const std::size_t n = states.front().num_qudits();
  Eigen::MatrixXcd cols(static_cast<Eigen::Index>(states.front().dimension()),
                        static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].modulus() != d || states[i].num_qudits() != n) {
      throw DimensionError("from_states: states act on different registers");
    }
    cols.col(static_cast<Eigen::Index>(i)) = states[i].amplitudes();
  }
  return SubspaceBasis(d, n, std::move(cols), std::move(labels));
}

SubspaceBasis SubspaceBasis::zero_space(int d, std::size_t n) {
  return make_unchecked_basis(
      d, n, Eigen::MatrixXcd(static_cast<Eigen::Index>(hilbert_dimension(d, n)), 0), {});
}

SubspaceBasis SubspaceBasis::full_space(int d, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(hilbert_dimension(d, n));
  return make_unchecked_basis(d, n, Eigen::MatrixXcd::Identity(dim, dim), {});
}

StateVector SubspaceBasis::state(std::size_t i) const {
  return StateVector(d_, n_, columns_.col(static_cast<Eigen::Index>(i)));
}

StateVector apply_pauli(const PauliOp& op, const StateVector& psi) {
  require_register(op, psi.modulus(), psi.num_qudits(), "apply_pauli");
  const PauliAction action = pauli_action(op);
  const auto w = omega_powers(op.modulus());
  Eigen::VectorXcd out(psi.amplitudes().size());
  const auto& in = psi.amplitudes();
  for (std::size_t i = 0; i < action.target.size(); ++i) {
    out[static_cast<Eigen::Index>(action.target[i])] =
        w[static_cast<std::size_t>(action.phase[i])] * in[static_cast<Eigen::Index>(i)];
  }
  return StateVector(psi.modulus(), psi.num_qudits(), std::move(out));
}

Eigen::MatrixXcd apply_pauli_columns(const PauliOp& op, int d, std::size_t n,
                                     const Eigen::MatrixXcd& columns) {
  require_register(op, d, n, "apply_pauli_columns");
  if (static_cast<std::size_t>(columns.rows()) != hilbert_dimension(d, n)) {
    throw DimensionError("apply_pauli_columns: column length does not match d^n");
  }
  const PauliAction action = pauli_action(op);
  const auto w = omega_powers(d);
  Eigen::MatrixXcd out(columns.rows(), columns.cols());
  for (std::size_t i = 0; i < action.target.size(); ++i) {
    out.row(static_cast<Eigen::Index>(action.target[i])) =
        w[static_cast<std::size_t>(action.phase[i])] * columns.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

Eigen::MatrixXcd dense_pauli_matrix(const PauliOp& op) {
  const int d = op.modulus();
  const auto w = omega_powers(d);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    x((i + 1) % d, i) = 1.0;
    z(i, i) = w[static_cast<std::size_t>(i)];
  }
  auto matrix_power = [d](const Eigen::MatrixXcd& m, int k) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(d, d);
    for (int j = 0; j < k; ++j) r = r * m;
    return r;
  };
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(1, 1) * w[static_cast<std::size_t>(op.phase_exp())];
  for (std::size_t k = 0; k < op.num_qudits(); ++k) {
    const Eigen::MatrixXcd local =
        matrix_power(z, op.z_exp()[k]) * matrix_power(x, op.x_exp()[k]);
    Eigen::MatrixXcd next(result.rows() * d, result.cols() * d);
    for (Eigen::Index r = 0; r < result.rows(); ++r) {
      for (Eigen::Index c = 0; c < result.cols(); ++c) {
        next.block(r * d, c * d, d, d) = result(r, c) * local;
      }
    }
    result = std::move(next);
  }
  return result;
}

namespace {

void require_order_d(const StabilizerSet& stabilizers) {
  for (std::size_t k = 0; k < stabilizers.size(); ++k) {
    if (!pow(stabilizers[k], stabilizers.modulus()).is_identity()) {
      throw UnsupportedGeneratorError("generator " + std::to_string(k) + " (" +
                                      to_string(stabilizers[k]) +
                                      ") does not have d-th power equal to the identity");
    }
  }
}

// (1/d) sum_j g^j applied to v.
Eigen::VectorXcd average_over_powers(const PauliAction& action, const std::vector<Complex>& w,
                                     int d, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd acc = v;
  Eigen::VectorXcd cur = v;
  Eigen::VectorXcd next(v.size());
  for (int j = 1; j < d; ++j) {
    for (std::size_t i = 0; i < action.target.size(); ++i) {
      next[static_cast<Eigen::Index>(action.target[i])] =
          w[static_cast<std::size_t>(action.phase[i])] * cur[static_cast<Eigen::Index>(i)];
    }
    cur.swap(next);
    acc += cur;
  }
  return acc / static_cast<double>(d);
}

}  // namespace

std::size_t stabilized_space_rank(const StabilizerSet& stabilizers) {
  require_order_d(stabilizers);
  const int d = stabilizers.modulus();
  const std::size_t m = stabilizers.size();
  const std::size_t n = stabilizers.num_qudits();
  const std::size_t terms = hilbert_dimension(d, m);
  if (terms > (1u << 22)) throw SizeError("stabilized_space_rank: d^m too large to enumerate");
  // tr(prod_k (1/d) sum_j g_k^j) = d^{n-m} * sum over pure-phase products of w^p.
  const auto w = omega_powers(d);
  Complex sum = 0.0;
  std::vector<int> exps(m, 0);
  for (std::size_t t = 0; t < terms; ++t) {
    PauliOp product = PauliOp::identity(d, n);
    for (std::size_t k = 0; k < m; ++k) product = mul(product, pow(stabilizers[k], exps[k]));
    if (product.is_pure_phase()) sum += w[static_cast<std::size_t>(product.phase_exp())];
    for (std::size_t k = m; k-- > 0;) {
      if (++exps[k] < d) break;
      exps[k] = 0;
    }
  }
  const double rank = sum.real() * std::pow(static_cast<double>(d), static_cast<double>(n) - m);
  const double rounded = std::round(rank);
  if (std::abs(rank - rounded) > 1e-6 || std::abs(sum.imag()) > 1e-6 || rounded < 0) {
    throw InvalidStabilizerError("stabilizer trace is not a non-negative integer");
  }
  return static_cast<std::size_t>(rounded);
}

StateVector stabilized_state(const StabilizerSet& stabilizers) {
  const std::size_t rank = stabilized_space_rank(stabilizers);
  if (rank != 1) {
    throw InvalidStabilizerError("stabilizer group fixes a space of dimension " +
                                 std::to_string(rank) + ", expected 1");
  }
  const int d = stabilizers.modulus();
  const std::size_t n = stabilizers.num_qudits();
  const std::size_t dim = hilbert_dimension(d, n);
  const auto w = omega_powers(d);
  std::vector<PauliAction> actions;
  for (const PauliOp& g : stabilizers.generators()) actions.push_back(pauli_action(g));

  for (std::size_t probe = 0; probe < dim; ++probe) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(probe)] = 1.0;
    for (const PauliAction& action : actions) v = average_over_powers(action, w, d, v);
    const double nrm = v.norm();
    if (nrm < 1e-6) continue;
    v /= nrm;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > 1e-10) {
        v *= std::conj(v[i]) / std::abs(v[i]);
        v[i] = std::abs(v[i]);
        break;
      }
    }
    return StateVector(d, n, std::move(v));
  }
  throw InvalidStabilizerError("no computational basis probe overlaps the stabilized space");
}

SubspaceBasis codeword_basis(const CwsCode& code) {
  const StateVector s = stabilized_state(code.stabilizers());
  std::vector<StateVector> states;
  std::vector<std::string> labels;
  for (std::size_t l = 0; l < code.dimension(); ++l) {
    states.push_back(apply_pauli(code.words()[l], s));
    labels.push_back("w" + std::to_string(l));
  }
  try {
    return SubspaceBasis::from_states(states, std::move(labels));
  } catch (const PreconditionError& e) {
    throw InvalidCodeError(std::string("word operators do not give orthonormal codewords: ") +
                           e.what());
  }
}

Projection project(const SubspaceBasis& basis, const StateVector& psi) {
  if (basis.modulus() != psi.modulus() || basis.num_qudits() != psi.num_qudits()) {
    throw DimensionError("project: basis and state act on different registers");
  }
  const Eigen::VectorXcd coeffs = basis.columns().adjoint() * psi.amplitudes();
  Eigen::VectorXcd projected = basis.columns() * coeffs;
  return {StateVector(psi.modulus(), psi.num_qudits(), std::move(projected)),
          coeffs.squaredNorm()};
}

std::string to_string(Outcome outcome) { return outcome == Outcome::kIn ? "in" : "out"; }

MeasurementResult measure_subspace(const SubspaceBasis& basis, const StateVector& psi,
                                   SeededRng& rng) {
  Projection proj = project(basis, psi);
  const double p_in = proj.probability;
  Outcome outcome;
  bool consumed = false;
  if (p_in >= 1.0 - kProbabilityTol) {
    outcome = Outcome::kIn;
  } else if (p_in <= kProbabilityTol) {
    outcome = Outcome::kOut;
  } else {
    consumed = true;
    outcome = rng.uniform() < p_in ? Outcome::kIn : Outcome::kOut;
  }
  if (outcome == Outcome::kIn) {
    return {outcome, p_in, proj.unnormalized.normalized(), consumed};
  }
  StateVector rest(psi.modulus(), psi.num_qudits(),
                   psi.amplitudes() - proj.unnormalized.amplitudes());
  return {outcome, p_in, rest.normalized(), consumed};
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.dimension() != phi.dimension() || psi.modulus() != phi.modulus()) {
    throw DimensionError("fidelity: states have different dimensions");
  }
  return std::abs(psi.amplitudes().dot(phi.amplitudes()));
}

Eigen::MatrixXcd gram_matrix(const std::vector<StateVector>& states) {
  const auto k = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& a = states[static_cast<std::size_t>(i)];
      const auto& b = states[static_cast<std::size_t>(j)];
      if (a.dimension() != b.dimension()) throw DimensionError("gram_matrix: mixed dimensions");
      g(i, j) = a.amplitudes().dot(b.amplitudes());
    }
  }
  return g;
}

double gram_identity_deviation(const Eigen::MatrixXcd& gram) {
  if (gram.size() == 0) return 0.0;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

void save_state_snapshot(const StateVector& psi, const std::filesystem::path& path) {
  nlohmann::json j;
  j["d"] = psi.modulus();
  j["n"] = psi.num_qudits();
  j["amplitudes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    j["amplitudes"].push_back({psi[i].real(), psi[i].imag()});
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << j.dump() << "\n";
}

StateVector load_state_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open snapshot " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    const int d = j.at("d").get<int>();
    const auto n = j.at("n").get<std::size_t>();
    const auto& amps = j.at("amplitudes");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] = {amps[i].at(0).get<double>(), amps[i].at(1).get<double>()};
    }
    return StateVector(d, n, std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("snapshot: ") + e.what());
  }
}

}  // namespace cwsdec
