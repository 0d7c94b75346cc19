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

#include "wpf/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qsim_kernels.hpp"

namespace wpf::qsim {

namespace {

constexpr unsigned kMaxStateQubits = 30;
constexpr unsigned kMaxOracleWidth = 24;

kernels::Gather make_gather(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state) {
    if (registers.size() != w.widths.size()) {
        throw Error(ErrorKind::WidthMismatch, w.name + " acts on " + std::to_string(w.widths.size()) +
                                                  " registers, " + std::to_string(registers.size()) + " given");
    }
    std::set<std::size_t> seen;
    kernels::Gather g;
    unsigned local = 0;
    for (std::size_t k = 0; k < registers.size(); ++k) {
        const std::size_t r = registers[k];
        if (r >= state.num_registers()) throw Error(ErrorKind::IndexOutOfRange, "register " + std::to_string(r));
        if (!seen.insert(r).second) {
            throw Error(ErrorKind::OverlappingRegisters, "register " + std::to_string(r) + " named twice");
        }
        if (state.width(r) != w.widths[k]) {
            throw Error(ErrorKind::WidthMismatch, w.name + ": register " + std::to_string(r) + " has width " +
                                                      std::to_string(state.width(r)) + ", expected " +
                                                      std::to_string(w.widths[k]));
        }
        const std::uint64_t mask = (std::uint64_t{1} << w.widths[k]) - 1;
        g.state_offset.push_back(state.offset(r));
        g.local_offset.push_back(local);
        g.mask.push_back(mask);
        g.touched |= mask << state.offset(r);
        local += w.widths[k];
    }
    return g;
}

std::uint64_t control_mask(const StateVec &state, std::size_t reg, unsigned bit, std::span<const std::size_t> regs) {
    if (reg >= state.num_registers() || bit >= state.width(reg)) {
        throw Error(ErrorKind::IndexOutOfRange, "control qubit out of range");
    }
    if (std::find(regs.begin(), regs.end(), reg) != regs.end()) {
        throw Error(ErrorKind::OverlappingRegisters, "control register is also a target");
    }
    return std::uint64_t{1} << (state.offset(reg) + bit);
}

StateVec permuted(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                  std::uint64_t control, Exec exec) {
    const kernels::Gather g = make_gather(w, registers, state);
    StateVec out = state;
    if (exec == Exec::Serial) {
        kernels::permute_serial(state.amplitudes(), out.amplitudes(), g, w.perm, control);
    } else {
        kernels::permute_parallel(state.amplitudes(), out.amplitudes(), g, w.perm, control);
    }
    return out;
}

}  // namespace

StateVec::StateVec(std::vector<unsigned> register_widths) : widths_(std::move(register_widths)) {
    for (unsigned w : widths_) {
        if (w == 0) throw Error(ErrorKind::WidthMismatch, "registers need width >= 1");
        offsets_.push_back(num_qubits_);
        num_qubits_ += w;
    }
    if (num_qubits_ > kMaxStateQubits) {
        throw Error(ErrorKind::BudgetExceeded, std::to_string(num_qubits_) + " qubits exceed the simulator limit");
    }
    amps_.assign(std::size_t{1} << num_qubits_, Amp(0.0));
    amps_[0] = 1.0;
}

StateVec StateVec::basis(std::vector<unsigned> register_widths, std::span<const std::uint64_t> contents) {
    StateVec s(std::move(register_widths));
    const std::uint64_t label = s.label_of(contents);
    s.amps_[0] = 0.0;
    s.amps_[label] = 1.0;
    return s;
}

std::uint64_t StateVec::label_of(std::span<const std::uint64_t> contents) const {
    if (contents.size() != widths_.size()) throw Error(ErrorKind::WidthMismatch, "one value per register");
    std::uint64_t label = 0;
    for (std::size_t r = 0; r < widths_.size(); ++r) {
        if (contents[r] >> widths_[r]) throw Error(ErrorKind::WidthMismatch, "value does not fit its register");
        label |= contents[r] << offsets_[r];
    }
    return label;
}

double StateVec::norm_squared() const {
    double n = 0.0;
    for (const Amp &a : amps_) n += std::norm(a);
    return n;
}

unsigned PermUnitary::total_width() const {
    unsigned t = 0;
    for (unsigned w : widths) t += w;
    return t;
}

bool PermUnitary::is_bijection() const {
    if (perm.size() != (std::uint64_t{1} << total_width())) return false;
    std::vector<char> hit(perm.size(), 0);
    for (std::uint64_t y : perm) {
        if (y >= perm.size() || hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

PermUnitary PermUnitary::inverse() const {
    PermUnitary inv = *this;
    inv.name = name + "^-1";
    for (std::uint64_t x = 0; x < perm.size(); ++x) inv.perm[perm[x]] = x;
    if (!in_domain.empty()) {
        for (std::uint64_t x = 0; x < perm.size(); ++x) inv.in_domain[perm[x]] = in_domain[x];
    }
    return inv;
}

PermUnitary PermUnitary::identity(std::vector<unsigned> widths) {
    PermUnitary u{"I", std::move(widths), {}, {}};
    u.perm.resize(std::uint64_t{1} << u.total_width());
    for (std::uint64_t x = 0; x < u.perm.size(); ++x) u.perm[x] = x;
    return u;
}

PermUnitary PermUnitary::cnot(unsigned n) {
    PermUnitary u = identity({n, n});
    u.name = "CNOT_" + std::to_string(n);
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t x = 0; x < u.perm.size(); ++x) {
        const std::uint64_t v = x & mask;
        u.perm[x] = x ^ (v << n);
    }
    return u;
}

PermUnitary PermUnitary::swap(unsigned n) {
    PermUnitary u = identity({n, n});
    u.name = "SWAP_" + std::to_string(n);
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t x = 0; x < u.perm.size(); ++x) u.perm[x] = ((x & mask) << n) | (x >> n);
    return u;
}

std::map<std::string, PermUnitary> build_quantum_oracle(const BlackBoxAlgebra &bb) {
    if (bb.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty carrier");
    const unsigned n = bb.width();
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    std::map<std::string, PermUnitary> oracle;
    std::vector<Code> ops;
    for (std::size_t s = 0; s < bb.signature().size(); ++s) {
        const Symbol &sym = bb.signature()[s];
        if (n * (sym.arity + 1) > kMaxOracleWidth) {
            throw Error(ErrorKind::BudgetExceeded, "oracle for " + sym.name + " too wide to tabulate");
        }
        PermUnitary u = PermUnitary::identity(std::vector<unsigned>(sym.arity + 1, n));
        u.name = "U_" + sym.name;
        u.in_domain.assign(u.perm.size(), 0);
        for (std::uint64_t label = 0; label < u.perm.size(); ++label) {
            ops.clear();
            bool inside = true;
            for (unsigned i = 0; i < sym.arity; ++i) {
                const Code c{(label >> (i * n)) & mask};
                inside = inside && bb.in_carrier(c);
                ops.push_back(c);
            }
            if (!inside) continue;
            u.in_domain[label] = 1;
            u.perm[label] = label ^ (bb.answer(s, ops).bits << (sym.arity * n));
        }
        oracle.emplace(sym.name, std::move(u));
    }
    return oracle;
}

StateVec apply_on_registers(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                            Exec exec) {
    return permuted(w, registers, state, 0, exec);
}

StateVec apply_controlled(const PermUnitary &w, std::size_t control_register, unsigned control_bit,
                          std::span<const std::size_t> registers, const StateVec &state, Exec exec) {
    return permuted(w, registers, state, control_mask(state, control_register, control_bit, registers), exec);
}

double off_domain_mass(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                       std::optional<std::pair<std::size_t, unsigned>> control, Exec exec) {
    if (w.in_domain.empty()) return 0.0;
    const kernels::Gather g = make_gather(w, registers, state);
    const std::uint64_t cmask = control ? control_mask(state, control->first, control->second, registers) : 0;
    return exec == Exec::Serial ? kernels::off_domain_serial(state.amplitudes(), g, w.in_domain, cmask)
                                : kernels::off_domain_parallel(state.amplitudes(), g, w.in_domain, cmask);
}

StateVec apply_oracle(const PermUnitary &w, std::span<const std::size_t> registers, const StateVec &state,
                      std::optional<std::pair<std::size_t, unsigned>> control, Exec exec) {
    const double outside = off_domain_mass(w, registers, state, control, exec);
    if (outside > kDomainTolerance) {
        throw Error(ErrorKind::ProtocolViolation,
                    w.name + " applied with " + std::to_string(outside) + " of the mass outside its domain");
    }
    if (control) return apply_controlled(w, control->first, control->second, registers, state, exec);
    return apply_on_registers(w, registers, state, exec);
}

StateVec hadamard_register(std::size_t reg, const StateVec &state, Exec exec) {
    StateVec out = state;
    if (exec == Exec::Serial) {
        kernels::hadamard_serial(out.amplitudes(), state.offset(reg), state.width(reg));
    } else {
        kernels::hadamard_parallel(out.amplitudes(), state.offset(reg), state.width(reg));
    }
    return out;
}

StateVec inverse_qft_register(std::size_t reg, const StateVec &state, Exec exec) {
    StateVec out = state;
    if (exec == Exec::Serial) {
        kernels::inverse_dft_serial(state.amplitudes(), out.amplitudes(), state.offset(reg), state.width(reg));
    } else {
        kernels::inverse_dft_parallel(state.amplitudes(), out.amplitudes(), state.offset(reg), state.width(reg));
    }
    return out;
}

std::vector<double> register_probabilities(std::size_t reg, const StateVec &state, Exec exec) {
    std::vector<double> probs;
    if (exec == Exec::Serial) {
        kernels::marginal_serial(state.amplitudes(), probs, state.offset(reg), state.width(reg));
    } else {
        kernels::marginal_parallel(state.amplitudes(), probs, state.offset(reg), state.width(reg));
    }
    return probs;
}

Circuit::Circuit(unsigned n, std::size_t interface_registers)
    : width(n), interface(interface_registers), physical(interface_registers) {
    for (std::size_t i = 0; i < interface; ++i) outputs.push_back(i);
}

Circuit Circuit::from_unitary(std::shared_ptr<const PermUnitary> op, bool oracle) {
    const std::size_t k = op->widths.size();
    for (unsigned w : op->widths) {
        if (w != op->widths[0]) throw Error(ErrorKind::WidthMismatch, "circuit registers share one width");
    }
    Circuit c(op->widths.at(0), k);
    std::vector<std::size_t> regs(k);
    for (std::size_t i = 0; i < k; ++i) regs[i] = i;
    c.append(std::move(op), regs, oracle);
    return c;
}

std::size_t Circuit::add_ancilla() {
    outputs.push_back(physical++);
    return outputs.size() - 1;
}

void Circuit::append(std::shared_ptr<const PermUnitary> op, std::vector<std::size_t> logical, bool oracle) {
    for (unsigned w : op->widths) {
        if (w != width) throw Error(ErrorKind::WidthMismatch, op->name + " does not match circuit width");
    }
    if (logical.size() != op->widths.size()) throw Error(ErrorKind::WidthMismatch, op->name + " register count");
    for (std::size_t &r : logical) r = outputs.at(r);
    steps.push_back({std::move(op), std::move(logical), oracle});
}

void Circuit::append(const Circuit &sub, std::span<const std::size_t> logical) {
    if (sub.width != width) throw Error(ErrorKind::WidthMismatch, "sub-circuit width");
    if (logical.size() != sub.interface) throw Error(ErrorKind::WidthMismatch, "sub-circuit interface size");
    const std::size_t base = physical;
    physical += sub.physical - sub.interface;
    auto map = [&](std::size_t p) { return p < sub.interface ? outputs.at(logical[p]) : base + (p - sub.interface); };
    for (const Step &s : sub.steps) {
        Step mapped = s;
        for (std::size_t &r : mapped.registers) r = map(r);
        steps.push_back(std::move(mapped));
    }
    std::vector<std::size_t> after(sub.outputs.size());
    for (std::size_t j = 0; j < sub.outputs.size(); ++j) after[j] = map(sub.outputs[j]);
    for (std::size_t j = 0; j < sub.interface; ++j) outputs[logical[j]] = after[j];
    for (std::size_t j = sub.interface; j < sub.outputs.size(); ++j) outputs.push_back(after[j]);
}

StateVec Circuit::run(const StateVec &input, Exec exec) const {
    if (input.widths() != physical_widths()) throw Error(ErrorKind::WidthMismatch, "circuit input layout");
    StateVec state = input;
    for (const Step &s : steps) {
        state = s.oracle ? apply_oracle(*s.op, s.registers, state, std::nullopt, exec)
                         : apply_on_registers(*s.op, s.registers, state, exec);
    }
    return state;
}

MulPair derive_mul_pair(std::shared_ptr<const PermUnitary> u_mul, std::shared_ptr<const PermUnitary> u_inv,
                        unsigned n) {
    // M: U_mul(|g>|h>|0>) = |g>|h>|gh>; the product register becomes output 1.
    Circuit m(n, 2);
    const std::size_t prod = m.add_ancilla();
    m.append(u_mul, {0, 1, prod}, true);
    std::swap(m.outputs[1], m.outputs[prod]);

    // M': U_mul[3,2,4] U_inv[1,3] (|g>|h>|0>|0>) = |g>|h>|g^-1>|g^-1 h>.
    Circuit mi(n, 2);
    const std::size_t ginv = mi.add_ancilla();
    const std::size_t out = mi.add_ancilla();
    mi.append(u_inv, {0, ginv}, true);
    mi.append(u_mul, {ginv, 1, out}, true);
    std::swap(mi.outputs[1], mi.outputs[out]);
    return {std::move(m), std::move(mi)};
}

DerivedOracle derive_oracle_from_pair(const Circuit &m, const Circuit &m_inv, unsigned n) {
    if (m.interface != 2 || m_inv.interface != 2) throw Error(ErrorKind::WidthMismatch, "M and M' take two registers");
    auto cnot = std::make_shared<const PermUnitary>(PermUnitary::cnot(n));

    // CNOT[4,3] M[1,4] CNOT[2,4] on |g>|h>|v>|0>.
    Circuit mul(n, 3);
    const std::size_t t = mul.add_ancilla();
    mul.append(cnot, {1, t}, false);
    const std::size_t on_gt[2] = {0, t};
    mul.append(m, on_gt);
    mul.append(cnot, {t, 2}, false);

    // CNOT[3,2] M'[1,3]^2 CNOT[1,3] on |h>|v>|0>.
    Circuit inv(n, 2);
    const std::size_t ti = inv.add_ancilla();
    inv.append(cnot, {0, ti}, false);
    const std::size_t on_ht[2] = {0, ti};
    inv.append(m_inv, on_ht);
    inv.append(m_inv, on_ht);
    inv.append(cnot, {ti, 1}, false);

    // CNOT[3,2] M'[1,3] CNOT[1,3] on |h>|v>|0>.
    Circuit one(n, 2);
    const std::size_t to = one.add_ancilla();
    one.append(cnot, {0, to}, false);
    const std::size_t on_ho[2] = {0, to};
    one.append(m_inv, on_ho);
    one.append(cnot, {to, 1}, false);
    return {std::move(mul), std::move(inv), std::move(one)};
}

namespace {

PermUnitary left_action(const BlackBoxAlgebra &bb, const GroupSymbols &syms, bool inverse) {
    const unsigned n = bb.width();
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    const std::size_t mul = bb.signature().index_of(syms.mul);
    const std::size_t inv = bb.signature().index_of(syms.inv);
    PermUnitary u = PermUnitary::identity({n, n});
    u.name = inverse ? "M'" : "M";
    u.in_domain.assign(u.perm.size(), 0);
    for (Code g : bb.carrier()) {
        Code left = g;
        if (inverse) {
            const Code arg[1] = {g};
            left = bb.answer(inv, arg);
        }
        for (Code h : bb.carrier()) {
            const Code args[2] = {left, h};
            const std::uint64_t label = g.bits | (h.bits << n);
            u.perm[label] = g.bits | ((bb.answer(mul, args).bits & mask) << n);
            u.in_domain[label] = 1;
        }
    }
    return u;
}

}  // namespace

PermUnitary exact_mul_left(const BlackBoxAlgebra &bb, const GroupSymbols &syms) {
    return left_action(bb, syms, false);
}

PermUnitary exact_mul_left_inverse(const BlackBoxAlgebra &bb, const GroupSymbols &syms) {
    return left_action(bb, syms, true);
}

CircuitCheck check_circuit(const Circuit &c, std::span<const BasisCase> cases, Exec exec) {
    CircuitCheck check;
    check.cases = cases.size();
    if (cases.empty()) return check;
    StateVec input(c.physical_widths());
    input.amplitudes()[0] = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) norm += static_cast<double>((i + 1) * (i + 1));
    norm = std::sqrt(norm);
    std::map<double, std::size_t> case_of_amp;
    bool pins_everything = true;
    std::vector<std::uint64_t> contents(c.physical, 0);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (cases[i].input.size() != c.interface) throw Error(ErrorKind::WidthMismatch, "case input size");
        std::fill(contents.begin(), contents.end(), 0);
        std::copy(cases[i].input.begin(), cases[i].input.end(), contents.begin());
        const double a = static_cast<double>(i + 1) / norm;
        Amp &slot = input.amplitudes()[input.label_of(contents)];
        if (slot != 0.0) throw Error(ErrorKind::InvalidArgument, "duplicate input case");
        slot = a;
        case_of_amp.emplace(a, i);
        std::set<std::size_t> pinned;
        for (const auto &[logical, value] : cases[i].expect) pinned.insert(c.outputs.at(logical));
        pins_everything = pins_everything && pinned.size() == c.physical;
    }

    const StateVec output = c.run(input, exec);
    std::vector<char> seen(cases.size(), 0);
    const auto &amps = output.amplitudes();
    for (std::uint64_t y = 0; y < amps.size(); ++y) {
        if (amps[y] == 0.0) continue;
        auto it = case_of_amp.find(amps[y].real());
        if (amps[y].imag() != 0.0 || it == case_of_amp.end() || seen[it->second]) {
            ++check.mismatches;
            continue;
        }
        seen[it->second] = 1;
        for (const auto &[logical, value] : cases[it->second].expect) {
            if (output.register_value(y, c.outputs[logical]) != value) {
                ++check.mismatches;
                break;
            }
        }
    }
    for (char s : seen) check.mismatches += s ? 0 : 1;

    if (pins_everything) {
        // Whole-statevector comparison against the predicted image.
        std::vector<Amp> expected(amps.size(), 0.0);
        for (std::size_t i = 0; i < cases.size(); ++i) {
            std::fill(contents.begin(), contents.end(), 0);
            for (const auto &[logical, value] : cases[i].expect) contents[c.outputs[logical]] = value;
            expected[output.label_of(contents)] += static_cast<double>(i + 1) / norm;
        }
        for (std::uint64_t y = 0; y < amps.size(); ++y) {
            check.max_amplitude_error = std::max(check.max_amplitude_error, std::abs(amps[y] - expected[y]));
        }
        if (check.max_amplitude_error > 1e-12) ++check.mismatches;
    }
    return check;
}

bool ConversionReport::ok() const {
    return pair_m.ok() && pair_m_inv.ok() && oracle_mul.ok() && oracle_inv.ok() && oracle_one.ok() &&
           round_mul.ok() && round_inv.ok() && round_one.ok();
}

ConversionReport check_conversions(const BlackBoxAlgebra &bb, const GroupSymbols &syms, Exec exec) {
    const unsigned n = bb.width();
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    auto oracle = build_quantum_oracle(bb);
    auto u_mul = std::make_shared<const PermUnitary>(oracle.at(syms.mul));
    auto u_inv = std::make_shared<const PermUnitary>(oracle.at(syms.inv));
    const PermUnitary &u_one = oracle.at(syms.one);

    // Reference values read off the direct oracles.
    auto mul = [&](std::uint64_t g, std::uint64_t h) { return u_mul->perm[g | (h << n)] >> (2 * n); };
    auto inv = [&](std::uint64_t g) { return u_inv->perm[g] >> n; };
    auto xor_mul = [&](std::uint64_t g, std::uint64_t h, std::uint64_t v) {
        return (u_mul->perm[g | (h << n) | (v << (2 * n))] >> (2 * n)) & mask;
    };
    auto xor_inv = [&](std::uint64_t h, std::uint64_t v) { return (u_inv->perm[h | (v << n)] >> n) & mask; };
    auto xor_one = [&](std::uint64_t v) { return u_one.perm[v]; };
    const std::uint64_t one = xor_one(0);

    std::vector<std::uint64_t> carrier;
    for (Code c : bb.carrier()) carrier.push_back(c.bits);

    std::vector<BasisCase> m_cases, mi_cases, mul_cases, mul_iface, inv_cases, inv_iface, one_cases, one_iface;
    for (std::uint64_t g : carrier) {
        for (std::uint64_t h : carrier) {
            m_cases.push_back({{g, h}, {{0, g}, {1, mul(g, h)}, {2, h}}});
            mi_cases.push_back({{g, h}, {{0, g}, {1, mul(inv(g), h)}, {2, inv(g)}, {3, h}}});
            for (std::uint64_t v = 0; v <= mask; ++v) {
                mul_cases.push_back({{g, h, v}, {{0, g}, {1, h}, {2, xor_mul(g, h, v)}, {3, mul(g, h)}}});
                mul_iface.push_back({{g, h, v}, {{0, g}, {1, h}, {2, xor_mul(g, h, v)}}});
            }
        }
        for (std::uint64_t v = 0; v <= mask; ++v) {
            inv_cases.push_back({{g, v}, {{0, g}, {1, xor_inv(g, v)}, {2, inv(g)}}});
            inv_iface.push_back({{g, v}, {{0, g}, {1, xor_inv(g, v)}}});
            one_cases.push_back({{g, v}, {{0, g}, {1, xor_one(v)}, {2, one}}});
            one_iface.push_back({{g, v}, {{0, g}, {1, xor_one(v)}}});
        }
    }

    ConversionReport report;
    report.group = bb.source().name();
    report.n = n;
    const MulPair pair = derive_mul_pair(u_mul, u_inv, n);
    report.pair_m = check_circuit(pair.m, m_cases, exec);
    report.pair_m_inv = check_circuit(pair.m_inv, mi_cases, exec);

    const Circuit exact_m = Circuit::from_unitary(std::make_shared<const PermUnitary>(exact_mul_left(bb, syms)), true);
    const Circuit exact_mi =
        Circuit::from_unitary(std::make_shared<const PermUnitary>(exact_mul_left_inverse(bb, syms)), true);
    const DerivedOracle direct = derive_oracle_from_pair(exact_m, exact_mi, n);
    report.oracle_mul = check_circuit(direct.mul, mul_cases, exec);
    report.oracle_inv = check_circuit(direct.inv, inv_cases, exec);
    report.oracle_one = check_circuit(direct.one, one_cases, exec);

    const DerivedOracle round = derive_oracle_from_pair(pair.m, pair.m_inv, n);
    report.round_mul = check_circuit(round.mul, mul_iface, exec);
    report.round_inv = check_circuit(round.inv, inv_iface, exec);
    report.round_one = check_circuit(round.one, one_iface, exec);
    return report;
}

std::vector<std::uint64_t> convergent_denominators(std::uint64_t y, unsigned bits, std::uint64_t max_denominator) {
    std::vector<std::uint64_t> out;
    std::uint64_t a = y, b = std::uint64_t{1} << bits;
    std::uint64_t k_prev = 0, k_prev2 = 1;  // k_{-1}, k_{-2}
    while (b != 0) {
        const std::uint64_t q = a / b;
        const std::uint64_t r = a - q * b;
        const std::uint64_t k = q * k_prev + k_prev2;
        if (k > max_denominator) break;
        if (k > 0 && (out.empty() || out.back() != k)) out.push_back(k);
        k_prev2 = k_prev;
        k_prev = k;
        a = b;
        b = r;
    }
    return out;
}

namespace {

// U_mul with its first register held in the basis state |x>: acts on
// (h, v) as |h>|v> -> |h>|v xor xh>.
PermUnitary fix_first_operand(const PermUnitary &u_mul, unsigned n, std::uint64_t x) {
    PermUnitary u = PermUnitary::identity({n, n});
    u.name = u_mul.name + "[x]";
    u.in_domain.assign(u.perm.size(), 0);
    for (std::uint64_t label = 0; label < u.perm.size(); ++label) {
        const std::uint64_t full = x | (label << n);
        u.perm[label] = u_mul.perm[full] >> n;
        u.in_domain[label] = u_mul.in_domain[full];
    }
    return u;
}

}  // namespace

QpeResult order_find_qpe(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g, const QpeOptions &opts, Rng &rng) {
    const unsigned n = bb.width();
    const unsigned c = opts.counting_qubits;
    if (c == 0 || c + 2 * n > opts.max_qubits) {
        throw Error(ErrorKind::BudgetExceeded, std::to_string(c + 2 * n) + " qubits exceed the budget of " +
                                                   std::to_string(opts.max_qubits));
    }
    const std::uint64_t before = bb.queries();
    const std::size_t mul = bb.signature().index_of(syms.mul);
    const std::size_t inv = bb.signature().index_of(syms.inv);
    const Code one = bb.apply(bb.signature().index_of(syms.one), {});
    const PermUnitary u_mul = build_quantum_oracle(bb).at(syms.mul);
    const PermUnitary swap = PermUnitary::swap(n);

    // Registers: 0 counting, 1 work, 2 ancilla.
    const std::uint64_t start[3] = {0, one.bits, 0};
    StateVec state = StateVec::basis({c, n, n}, start);
    state = hadamard_register(0, state, opts.exec);
    const std::size_t work_anc[2] = {1, 2};
    const std::size_t anc_work[2] = {2, 1};
    Code x = g;
    for (unsigned j = 0; j < c; ++j) {
        if (j > 0) {
            const Code sq[2] = {x, x};
            x = bb.apply(mul, sq);
        }
        const Code arg[1] = {x};
        const Code x_inv = bb.apply(inv, arg);
        // In-place |h> -> |xh>: anc ^= xh, work ^= x^-1 (xh) = h, swap.
        const PermUnitary ux = fix_first_operand(u_mul, n, x.bits);
        const PermUnitary ux_inv = fix_first_operand(u_mul, n, x_inv.bits);
        const std::pair<std::size_t, unsigned> control{0, j};
        state = apply_oracle(ux, work_anc, state, control, opts.exec);
        state = apply_oracle(ux_inv, anc_work, state, control, opts.exec);
        state = apply_controlled(swap, 0, j, work_anc, state, opts.exec);
    }
    state = inverse_qft_register(0, state, opts.exec);
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::InvalidArgument, "state norm drifted");
    }
    const std::vector<double> probs = register_probabilities(0, state, opts.exec);
    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) cumulative[i] = acc += probs[i];

    QpeResult result;
    std::map<std::uint64_t, bool> checked;
    const std::uint64_t bound = std::uint64_t{1} << n;
    for (std::size_t shot = 0; shot < opts.shots; ++shot) {
        const double u = rng.unit() * acc;
        const auto pos = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
        QpeShot s;
        s.measurement = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(pos, probs.size() - 1));
        s.candidates = convergent_denominators(s.measurement, c, bound);
        for (std::uint64_t q : s.candidates) {
            auto it = checked.find(q);
            if (it == checked.end()) {
                it = checked.emplace(q, group_power(bb, syms, g, static_cast<std::int64_t>(q)) == one).first;
            }
            if (it->second) {
                s.verified = q;
                break;
            }
        }
        if (s.verified && (!result.order || *s.verified < *result.order)) result.order = s.verified;
        result.shots.push_back(std::move(s));
    }
    result.queries = bb.queries() - before;
    return result;
}

}  // namespace wpf::qsim
