// Copyright 2026 The wpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WPF_QSIM_HPP_
#define WPF_QSIM_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpf/blackbox.hpp"
#include "wpf/rng.hpp"

namespace wpf::qsim {

using Amp = std::complex<double>;

/// Serial kernels are the reference; parallel kernels must match them
/// bit-for-bit on permutations and to rounding on the Fourier transform.
enum class Exec { Serial, Parallel };

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kDomainTolerance = 1e-9;

/// State of a system of quantum registers. Register r occupies qubits
/// [offset(r), offset(r) + width(r)) of the basis label, register 0 lowest.
class StateVec {
   public:
    /// All registers in |0...0>.
    explicit StateVec(std::vector<unsigned> register_widths);
    /// A basis state with the given register contents.
    static StateVec basis(std::vector<unsigned> register_widths, std::span<const std::uint64_t> contents);

    unsigned num_qubits() const { return num_qubits_; }
    std::size_t num_registers() const { return widths_.size(); }
    const std::vector<unsigned> &widths() const { return widths_; }
    unsigned width(std::size_t r) const { return widths_.at(r); }
    unsigned offset(std::size_t r) const { return offsets_.at(r); }

    std::vector<Amp> &amplitudes() { return amps_; }
    const std::vector<Amp> &amplitudes() const { return amps_; }

    std::uint64_t register_value(std::uint64_t label, std::size_t r) const {
        return (label >> offsets_[r]) & ((std::uint64_t{1} << widths_[r]) - 1);
    }
    std::uint64_t label_of(std::span<const std::uint64_t> contents) const;
    double norm_squared() const;

   private:
    std::vector<unsigned> widths_;
    std::vector<unsigned> offsets_;
    unsigned num_qubits_ = 0;
    std::vector<Amp> amps_;
};

/// A unitary that permutes basis labels of `widths.size()` registers
/// (local register 0 lowest). `in_domain`, when nonempty, marks the labels
/// on which the operator's behaviour is specified.
struct PermUnitary {
    std::string name;
    std::vector<unsigned> widths;
    std::vector<std::uint64_t> perm;
    std::vector<std::uint8_t> in_domain;

    std::size_t arity_registers() const { return widths.size(); }
    unsigned total_width() const;
    bool is_bijection() const;
    PermUnitary inverse() const;

    static PermUnitary identity(std::vector<unsigned> widths);
    /// CNOT_n: (v, w) -> (v, v xor w).
    static PermUnitary cnot(unsigned n);
    static PermUnitary swap(unsigned n);
};

/// Quantum oracle family: U_w |h_1>...|h_k>|v> = |h_1>...|h_k>|v xor w(h)>,
/// extended by the identity off the carrier. Keys are symbol names.
std::map<std::string, PermUnitary> build_quantum_oracle(const BlackBoxAlgebra &bb);

/// Applies W to the named state registers (0-based, distinct), identity
/// elsewhere.
StateVec apply_on_registers(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                            Exec exec = Exec::Parallel);
/// Applies W only on the branch where bit `control_bit` of register
/// `control_register` is set.
StateVec apply_controlled(const PermUnitary &w, std::size_t control_register, unsigned control_bit,
                          std::span<const std::size_t> registers, const StateVec &state, Exec exec = Exec::Parallel);
/// Squared amplitude on labels outside W's domain (restricted to the
/// control-set branch when `control` is given).
double off_domain_mass(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                       std::optional<std::pair<std::size_t, unsigned>> control = std::nullopt,
                       Exec exec = Exec::Parallel);
/// Black-box discipline: throws ProtocolViolation when more than
/// kDomainTolerance of the mass lies outside W's domain, then applies W.
StateVec apply_oracle(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                      std::optional<std::pair<std::size_t, unsigned>> control = std::nullopt,
                      Exec exec = Exec::Parallel);

/// Hadamard on every qubit of a register.
StateVec hadamard_register(std::size_t reg, const StateVec &state, Exec exec = Exec::Parallel);
/// Inverse quantum Fourier transform on a register read as an integer.
StateVec inverse_qft_register(std::size_t reg, const StateVec &state, Exec exec = Exec::Parallel);
/// Marginal distribution of one register.
std::vector<double> register_probabilities(std::size_t reg, const StateVec &state, Exec exec = Exec::Parallel);

/// A circuit of permutation unitaries over width-n registers. The first
/// `interface` registers are supplied by the caller; the rest are ancillas
/// starting in |0^n>. After running, logical register i lives in physical
/// register `outputs[i]`.
struct Circuit {
    struct Step {
        std::shared_ptr<const PermUnitary> op;
        std::vector<std::size_t> registers;  // physical
        bool oracle = false;                 // subject to the domain check
    };

    unsigned width = 0;
    std::size_t interface = 0;
    std::size_t physical = 0;
    std::vector<Step> steps;
    std::vector<std::size_t> outputs;  // logical -> physical

    Circuit(unsigned n, std::size_t interface_registers);
    /// Wraps a single unitary acting on all of its registers in place.
    static Circuit from_unitary(std::shared_ptr<const PermUnitary> op, bool oracle);

    /// New ancilla; returns its logical index.
    std::size_t add_ancilla();
    void append(std::shared_ptr<const PermUnitary> op, std::vector<std::size_t> logical, bool oracle);
    /// Inlines `sub` on the given logical registers, allocating its ancillas
    /// and following its output relabelling.
    void append(const Circuit &sub, std::span<const std::size_t> logical);

    std::vector<unsigned> physical_widths() const { return std::vector<unsigned>(physical, width); }
    StateVec run(const StateVec &input, Exec exec = Exec::Parallel) const;
};

struct MulPair {
    Circuit m;
    Circuit m_inv;
};
struct DerivedOracle {
    Circuit mul;
    Circuit inv;
    Circuit one;
};

/// (M, M') from a quantum group oracle:
///   M:  |g>|h>|0>     -> |g>|h>|gh>            outputs (g, gh)
///   M': |g>|h>|0>|0>  -> |g>|h>|g^-1>|g^-1 h>  outputs (g, g^-1 h)
MulPair derive_mul_pair(std::shared_ptr<const PermUnitary> u_mul, std::shared_ptr<const PermUnitary> u_inv, unsigned n);
/// (U_mul, U_inv, U_one) from a pair satisfying the (M, M') contract:
///   U_mul = CNOT[4,3] M[1,4] CNOT[2,4] on |g>|h>|v>|0>
///   U_inv = CNOT[3,2] M'[1,3]^2 CNOT[1,3] on |h>|v>|0>
///   U_one = CNOT[3,2] M'[1,3] CNOT[1,3] on |h>|v>|0>
DerivedOracle derive_oracle_from_pair(const Circuit &m, const Circuit &m_inv, unsigned n);

/// In-place M and M' as single permutations: M |g>|h> = |g>|gh>,
/// M' |g>|h> = |g>|g^-1 h>, identity off the carrier.
PermUnitary exact_mul_left(const BlackBoxAlgebra &bb, const GroupSymbols &syms);
PermUnitary exact_mul_left_inverse(const BlackBoxAlgebra &bb, const GroupSymbols &syms);

/// One input basis state (interface register contents) and the register
/// values the circuit must produce for it.
struct BasisCase {
    std::vector<std::uint64_t> input;
    std::vector<std::pair<std::size_t, std::uint64_t>> expect;  // (logical register, value)
};

struct CircuitCheck {
    std::size_t cases = 0;
    std::size_t mismatches = 0;
    double max_amplitude_error = 0.0;
    bool ok() const { return mismatches == 0; }
};

/// Runs `c` once on a superposition of all cases with distinct amplitudes
/// and checks every case's image. When every physical register is pinned by
/// `expect`, the whole output statevector is compared against the expected
/// one.
CircuitCheck check_circuit(const Circuit &c, std::span<const BasisCase> cases, Exec exec = Exec::Parallel);

struct ConversionReport {
    std::string group;
    unsigned n = 0;
    CircuitCheck pair_m, pair_m_inv;               // oracle -> (M, M')
    CircuitCheck oracle_mul, oracle_inv, oracle_one;  // exact (M, M') -> oracle
    CircuitCheck round_mul, round_inv, round_one;     // oracle -> (M, M') -> oracle
    bool ok() const;
};

/// Every conversion direction against the direct oracle, on all carrier
/// basis states.
ConversionReport check_conversions(const BlackBoxAlgebra &bb, const GroupSymbols &syms = {},
                                   Exec exec = Exec::Parallel);

struct QpeOptions {
    unsigned counting_qubits = 8;
    std::size_t shots = 1;
    unsigned max_qubits = 26;
    Exec exec = Exec::Parallel;
};

struct QpeShot {
    std::uint64_t measurement = 0;
    std::vector<std::uint64_t> candidates;  // convergent denominators tried
    std::optional<std::uint64_t> verified;
};

struct QpeResult {
    std::vector<QpeShot> shots;
    /// Smallest verified s over all shots.
    std::optional<std::uint64_t> order;
    std::uint64_t queries = 0;
};

/// Phase estimation over controlled left multiplication by g^(2^j), built
/// from the quantum oracle, followed by continued-fraction postprocessing.
/// Every reported s satisfies g^s = 1, checked with counted classical
/// queries.
QpeResult order_find_qpe(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g, const QpeOptions &opts, Rng &rng);

/// Denominators of the continued-fraction convergents of y / 2^bits that
/// do not exceed `max_denominator`, in increasing order; {1} when y = 0.
std::vector<std::uint64_t> convergent_denominators(std::uint64_t y, unsigned bits, std::uint64_t max_denominator);

}  // namespace wpf::qsim

#endif  // WPF_QSIM_HPP_
