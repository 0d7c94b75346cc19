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

#include "wpf/algebra.hpp"

#include <algorithm>
#include <set>

namespace wpf {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::IndexOutOfRange: return "index out of range";
        case ErrorKind::ArityMismatch: return "arity mismatch";
        case ErrorKind::UnknownSymbol: return "unknown symbol";
        case ErrorKind::BadInputIndex: return "bad input index";
        case ErrorKind::ForwardReference: return "forward reference";
        case ErrorKind::VarietyMismatch: return "variety mismatch";
        case ErrorKind::UnsupportedVariety: return "unsupported variety";
        case ErrorKind::BudgetExceeded: return "budget exceeded";
        case ErrorKind::ProtocolViolation: return "protocol violation";
        case ErrorKind::NoPreimage: return "no preimage";
        case ErrorKind::WidthMismatch: return "width mismatch";
        case ErrorKind::OverlappingRegisters: return "overlapping registers";
        case ErrorKind::TrivialVariety: return "trivial variety";
        case ErrorKind::Parse: return "parse error";
    }
    return "error";
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> seen;
    for (const Symbol &s : symbols_) {
        if (s.name.empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol name");
        if (!seen.insert(s.name).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate symbol " + s.name);
        }
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error(ErrorKind::UnknownSymbol, std::string(name));
    return *i;
}

Signature Signature::restrict_to(std::span<const std::string> names) const {
    for (const std::string &n : names) index_of(n);
    std::vector<Symbol> kept;
    for (const Symbol &s : symbols_) {
        if (std::find(names.begin(), names.end(), s.name) != names.end()) kept.push_back(s);
    }
    return Signature(std::move(kept));
}

std::string Signature::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i) out += ",";
        out += symbols_[i].name + "/" + std::to_string(symbols_[i].arity);
    }
    return out;
}

const Signature &group_signature() {
    static const Signature sig({{"mul", 2}, {"inv", 1}, {"one", 0}});
    return sig;
}

const Signature &ring_signature() {
    static const Signature sig({{"add", 2}, {"neg", 1}, {"zero", 0}, {"mul", 2}});
    return sig;
}

Signature GroupSymbols::as_signature() const { return Signature({{mul, 2}, {inv, 1}, {one, 0}}); }

Term Term::variable(std::uint32_t i) {
    if (i == 0) throw Error(ErrorKind::IndexOutOfRange, "variable indices start at 1");
    Term t;
    t.var = i;
    return t;
}

Term Term::apply(std::string symbol, std::vector<Term> children) {
    Term t;
    t.symbol = std::move(symbol);
    t.children = std::move(children);
    return t;
}

std::uint32_t Term::max_var() const {
    if (is_var()) return var;
    std::uint32_t m = 0;
    for (const Term &c : children) m = std::max(m, c.max_var());
    return m;
}

std::size_t Term::node_count() const {
    std::size_t n = 1;
    for (const Term &c : children) n += c.node_count();
    return n;
}

std::string Term::to_string() const {
    if (is_var()) return "a" + std::to_string(var);
    std::string out = symbol + "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += ",";
        out += children[i].to_string();
    }
    return out + ")";
}

namespace {

std::uint64_t checked_power(std::uint64_t base, unsigned exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

}  // namespace

bool next_tuple(std::span<std::size_t> digits, std::size_t base) {
    for (std::size_t i = digits.size(); i > 0; --i) {
        if (++digits[i - 1] < base) return true;
        digits[i - 1] = 0;
    }
    return false;
}

FiniteAlgebra::FiniteAlgebra(std::string name, Signature sig, std::vector<std::string> labels,
                             std::vector<std::vector<Elem>> tables)
    : name_(std::move(name)), sig_(std::move(sig)), labels_(std::move(labels)), tables_(std::move(tables)) {
    if (tables_.size() != sig_.size()) {
        throw Error(ErrorKind::InvalidArgument, "one table per symbol required");
    }
    const std::uint64_t n = labels_.size();
    for (std::size_t s = 0; s < sig_.size(); ++s) {
        const std::uint64_t expected = checked_power(n, sig_[s].arity, 1ULL << 32);
        if (tables_[s].size() != expected) {
            throw Error(ErrorKind::InvalidArgument, "table for " + sig_[s].name + " has " +
                                                        std::to_string(tables_[s].size()) +
                                                        " entries, expected " + std::to_string(expected));
        }
        for (Elem e : tables_[s]) {
            if (e >= n) throw Error(ErrorKind::InvalidArgument, "table entry outside carrier");
        }
    }
    if (n == 0) {
        for (const Symbol &s : sig_.symbols()) {
            if (s.arity == 0) {
                throw Error(ErrorKind::InvalidArgument, "empty carrier with nullary symbol " + s.name);
            }
        }
    }
}

std::optional<Elem> FiniteAlgebra::find_label(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return static_cast<Elem>(i);
    }
    return std::nullopt;
}

Elem FiniteAlgebra::apply(std::size_t symbol, std::span<const Elem> operands) const {
    if (symbol >= sig_.size()) throw Error(ErrorKind::UnknownSymbol, "symbol index out of range");
    if (operands.size() != sig_[symbol].arity) {
        throw Error(ErrorKind::ArityMismatch, "symbol " + sig_[symbol].name);
    }
    std::size_t idx = 0;
    for (Elem e : operands) {
        if (e >= labels_.size()) throw Error(ErrorKind::IndexOutOfRange, "operand outside carrier");
        idx = idx * labels_.size() + e;
    }
    return tables_[symbol][idx];
}

FiniteAlgebra FiniteAlgebra::reduct(std::span<const std::string> names) const {
    Signature sub = sig_.restrict_to(names);
    std::vector<std::vector<Elem>> tables;
    for (const Symbol &s : sub.symbols()) tables.push_back(tables_[sig_.index_of(s.name)]);
    return FiniteAlgebra(name_ + "|" + sub.to_string(), std::move(sub), labels_, std::move(tables));
}

std::vector<Elem> subalgebra_closure(const FiniteAlgebra &alg, std::span<const Elem> seeds) {
    const Signature &sig = alg.signature();
    std::vector<char> member(alg.size(), 0);
    std::vector<Elem> found;
    auto add = [&](Elem e) {
        if (!member[e]) {
            member[e] = 1;
            found.push_back(e);
        }
    };
    for (Elem e : seeds) {
        if (e >= alg.size()) throw Error(ErrorKind::IndexOutOfRange, "seed outside carrier");
        add(e);
    }
    for (std::size_t s = 0; s < sig.size(); ++s) {
        if (sig[s].arity == 0) add(alg.apply(s, {}));
    }
    // Elements found[0, processed) are closed among themselves. Processing
    // found[processed] applies every operation to tuples over found[0..processed]
    // that use it at least once.
    std::vector<Elem> args;
    for (std::size_t processed = 0; processed < found.size(); ++processed) {
        const std::size_t pool = processed + 1;
        for (std::size_t s = 0; s < sig.size(); ++s) {
            const unsigned k = sig[s].arity;
            if (k == 0) continue;
            std::vector<std::size_t> pos(k, 0);
            args.assign(k, 0);
            do {
                bool uses_new = false;
                for (unsigned i = 0; i < k; ++i) {
                    args[i] = found[pos[i]];
                    uses_new |= pos[i] == processed;
                }
                if (uses_new) add(alg.apply(s, args));
            } while (next_tuple(pos, pool));
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

bool check_identity_in_algebra(const Term &v, const Term &w, const FiniteAlgebra &alg, std::uint64_t budget) {
    const std::uint32_t vars = std::max(v.max_var(), w.max_var());
    const std::uint64_t count = checked_power(alg.size(), vars, budget);
    if (count > budget) {
        throw Error(ErrorKind::BudgetExceeded, std::to_string(alg.size()) + "^" + std::to_string(vars) +
                                                   " assignments exceed the identity-check budget");
    }
    if (vars > 0 && alg.size() == 0) return true;
    std::vector<Elem> assignment(vars, 0);
    while (true) {
        if (eval_term(v, alg, std::span<const Elem>(assignment)) !=
            eval_term(w, alg, std::span<const Elem>(assignment))) {
            return false;
        }
        std::uint32_t i = 0;
        while (i < vars) {
            if (++assignment[i] < alg.size()) break;
            assignment[i] = 0;
            ++i;
        }
        if (i == vars) return true;
    }
}

}  // namespace wpf
