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

#include "wpf/variety.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>

#include "wpf/algebras.hpp"

namespace wpf {

VarietySpec VarietySpec::all_algebras(Signature sig) {
    VarietySpec v;
    v.kind_ = VarietyKind::AllAlgebras;
    v.sig_ = std::move(sig);
    v.syms_ = GroupSymbols{"", "", ""};
    return v;
}

VarietySpec VarietySpec::all_groups(GroupSymbols syms) {
    VarietySpec v;
    v.kind_ = VarietyKind::AllGroups;
    v.sig_ = syms.as_signature();
    v.syms_ = std::move(syms);
    return v;
}

VarietySpec VarietySpec::abelian_groups(GroupSymbols syms) {
    VarietySpec v = all_groups(std::move(syms));
    v.kind_ = VarietyKind::AbelianGroups;
    return v;
}

VarietySpec VarietySpec::abelian_groups_exp(std::uint64_t e, GroupSymbols syms) {
    if (e == 0) throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
    VarietySpec v = all_groups(std::move(syms));
    v.kind_ = VarietyKind::AbelianGroupsExp;
    v.e_ = e;
    return v;
}

VarietySpec VarietySpec::elementary_abelian(std::uint64_t p, GroupSymbols syms) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "elementary abelian variety needs prime p");
    VarietySpec v = abelian_groups_exp(p, std::move(syms));
    v.kind_ = VarietyKind::ElementaryAbelian;
    return v;
}

std::optional<std::uint64_t> VarietySpec::exponent() const {
    if (kind_ == VarietyKind::AbelianGroupsExp || kind_ == VarietyKind::ElementaryAbelian) return e_;
    return std::nullopt;
}

bool VarietySpec::is_trivial() const { return kind_ == VarietyKind::AbelianGroupsExp && e_ == 1; }

std::string VarietySpec::to_string() const {
    std::string base;
    switch (kind_) {
        case VarietyKind::AllAlgebras: return "AllAlgebras(" + sig_.to_string() + ")";
        case VarietyKind::AllGroups: base = "AllGroups"; break;
        case VarietyKind::AbelianGroups: base = "AbelianGroups"; break;
        case VarietyKind::AbelianGroupsExp: base = "AbelianGroupsExp(" + std::to_string(e_) + ")"; break;
        case VarietyKind::ElementaryAbelian: base = "ElementaryAbelian(" + std::to_string(e_) + ")"; break;
    }
    if (!(syms_ == GroupSymbols{})) base += "[" + sig_.to_string() + "]";
    return base;
}

FreeElement::FreeElement(VarietySpec v, Payload p) : variety_(std::move(v)), payload_(std::move(p)) {
    const bool ok = [&] {
        switch (variety_.kind()) {
            case VarietyKind::AllAlgebras: return std::holds_alternative<Term>(payload_);
            case VarietyKind::AllGroups: return std::holds_alternative<ReducedWord>(payload_);
            case VarietyKind::AbelianGroups: return std::holds_alternative<ExpVector>(payload_);
            default: return std::holds_alternative<ExpVectorMod>(payload_);
        }
    }();
    if (!ok) throw Error(ErrorKind::VarietyMismatch, "payload does not match variety " + variety_.to_string());
    const bool canonical = std::visit(
        [&](const auto &p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ReducedWord>) {
                for (std::size_t i = 0; i < p.size(); ++i) {
                    if (p[i].first == 0 || (p[i].second != 1 && p[i].second != -1)) return false;
                    if (i && p[i].first == p[i - 1].first && p[i].second == -p[i - 1].second) return false;
                }
            } else if constexpr (std::is_same_v<P, ExpVector>) {
                for (auto [g, k] : p) {
                    if (g == 0 || k == 0) return false;
                }
            } else if constexpr (std::is_same_v<P, ExpVectorMod>) {
                for (auto [g, k] : p.entries) {
                    if (g == 0 || k == 0 || k >= *variety_.exponent()) return false;
                }
            }
            return true;
        },
        payload_);
    if (!canonical) throw Error(ErrorKind::InvalidArgument, "payload is not a normal form");
}

std::string FreeElement::to_string() const {
    struct Printer {
        std::string operator()(const Term &t) const { return t.to_string(); }
        std::string operator()(const ReducedWord &w) const {
            if (w.empty()) return "1";
            std::string out;
            for (auto [g, s] : w) {
                if (!out.empty()) out += " ";
                out += "a" + std::to_string(g) + (s < 0 ? "^-1" : "");
            }
            return out;
        }
        std::string operator()(const ExpVector &v) const {
            if (v.empty()) return "1";
            std::string out;
            for (auto [g, k] : v) {
                if (!out.empty()) out += " ";
                out += "a" + std::to_string(g) + (k == 1 ? "" : "^" + std::to_string(k));
            }
            return out;
        }
        std::string operator()(const ExpVectorMod &v) const {
            if (v.entries.empty()) return "1";
            std::string out;
            for (auto [g, k] : v.entries) {
                if (!out.empty()) out += " ";
                out += "a" + std::to_string(g) + (k == 1 ? "" : "^" + std::to_string(k));
            }
            return out;
        }
    };
    return std::visit(Printer{}, payload_);
}

FreeAlgebra::FreeAlgebra(VarietySpec v) : v_(std::move(v)), sig_(v_.signature()) {}

FreeElement FreeAlgebra::generator(std::uint32_t i) const {
    if (i == 0) throw Error(ErrorKind::IndexOutOfRange, "generator indices start at 1");
    switch (v_.kind()) {
        case VarietyKind::AllAlgebras: return FreeElement(v_, Term::variable(i));
        case VarietyKind::AllGroups: return FreeElement(v_, ReducedWord{{i, 1}});
        case VarietyKind::AbelianGroups: return FreeElement(v_, ExpVector{{i, 1}});
        default: {
            ExpVectorMod m;
            if (*v_.exponent() > 1) m.entries[i] = 1;
            return FreeElement(v_, m);
        }
    }
}

FreeElement FreeAlgebra::identity() const {
    switch (v_.kind()) {
        case VarietyKind::AllAlgebras:
            throw Error(ErrorKind::UnsupportedVariety, "AllAlgebras has no distinguished identity");
        case VarietyKind::AllGroups: return FreeElement(v_, ReducedWord{});
        case VarietyKind::AbelianGroups: return FreeElement(v_, ExpVector{});
        default: return FreeElement(v_, ExpVectorMod{});
    }
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::BudgetExceeded, "exponent overflow");
    return r;
}

ReducedWord word_mul(const ReducedWord &a, const ReducedWord &b) {
    ReducedWord out = a;
    for (const auto &letter : b) {
        if (!out.empty() && out.back().first == letter.first && out.back().second == -letter.second) {
            out.pop_back();
        } else {
            out.push_back(letter);
        }
    }
    return out;
}

ReducedWord word_inv(const ReducedWord &a) {
    ReducedWord out(a.rbegin(), a.rend());
    for (auto &letter : out) letter.second = -letter.second;
    return out;
}

}  // namespace

FreeElement FreeAlgebra::apply(std::size_t symbol, std::span<const FreeElement> ops) const {
    if (symbol >= sig_.size()) throw Error(ErrorKind::UnknownSymbol, "symbol index out of range");
    if (ops.size() != sig_[symbol].arity) throw Error(ErrorKind::ArityMismatch, sig_[symbol].name);
    for (const FreeElement &f : ops) {
        if (!(f.variety() == v_)) throw Error(ErrorKind::VarietyMismatch, "operand from another free algebra");
    }
    if (v_.kind() == VarietyKind::AllAlgebras) {
        std::vector<Term> children;
        std::size_t nodes = 1;
        for (const FreeElement &f : ops) {
            children.push_back(std::get<Term>(f.payload()));
            nodes += children.back().node_count();
        }
        if (nodes > kRawTermNodeBudget) throw Error(ErrorKind::BudgetExceeded, "raw term too large");
        return FreeElement(v_, Term::apply(sig_[symbol].name, std::move(children)));
    }
    // Group varieties: the signature is always (mul, inv, one).
    switch (v_.kind()) {
        case VarietyKind::AllGroups: {
            if (symbol == 0) {
                return FreeElement(v_, word_mul(std::get<ReducedWord>(ops[0].payload()),
                                                std::get<ReducedWord>(ops[1].payload())));
            }
            if (symbol == 1) return FreeElement(v_, word_inv(std::get<ReducedWord>(ops[0].payload())));
            return identity();
        }
        case VarietyKind::AbelianGroups: {
            if (symbol == 2) return identity();
            ExpVector out = std::get<ExpVector>(ops[0].payload());
            if (symbol == 1) {
                for (auto &[g, k] : out) k = -k;
                return FreeElement(v_, out);
            }
            for (auto [g, k] : std::get<ExpVector>(ops[1].payload())) {
                const std::int64_t s = checked_add(out[g], k);
                if (s == 0) {
                    out.erase(g);
                } else {
                    out[g] = s;
                }
            }
            return FreeElement(v_, out);
        }
        default: {
            if (symbol == 2) return identity();
            const std::uint64_t e = *v_.exponent();
            ExpVectorMod out = std::get<ExpVectorMod>(ops[0].payload());
            if (symbol == 1) {
                for (auto &[g, k] : out.entries) k = e - k;
                return FreeElement(v_, out);
            }
            for (auto [g, k] : std::get<ExpVectorMod>(ops[1].payload()).entries) {
                const std::uint64_t s = (out.entries[g] + k) % e;
                if (s == 0) {
                    out.entries.erase(g);
                } else {
                    out.entries[g] = s;
                }
            }
            return FreeElement(v_, out);
        }
    }
}

FreeElement normalize(const VarietySpec &v, const Term &t) {
    FreeAlgebra free(v);
    std::vector<FreeElement> gens;
    for (std::uint32_t i = 1; i <= t.max_var(); ++i) gens.push_back(free.generator(i));
    return eval_term(t, free, std::span<const FreeElement>(gens));
}

Term representative(const FreeElement &f) {
    const VarietySpec &v = f.variety();
    if (v.kind() == VarietyKind::AllAlgebras) return std::get<Term>(f.payload());
    const GroupSymbols &s = v.group_symbols();
    std::vector<std::pair<std::uint32_t, std::int64_t>> factors;
    std::visit(
        [&](const auto &p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ReducedWord>) {
                for (auto [i, e] : p) factors.emplace_back(i, e);
            } else if constexpr (std::is_same_v<P, ExpVector>) {
                for (auto [i, e] : p) factors.emplace_back(i, e);
            } else if constexpr (std::is_same_v<P, ExpVectorMod>) {
                for (auto [i, e] : p.entries) factors.emplace_back(i, static_cast<std::int64_t>(e));
            }
        },
        f.payload());
    std::optional<Term> acc;
    std::size_t nodes = 0;
    for (auto [i, e] : factors) {
        const std::uint64_t reps = e < 0 ? 0 - static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e);
        nodes += reps * 3;
        if (nodes > kRawTermNodeBudget) throw Error(ErrorKind::BudgetExceeded, "representative term too large");
        const Term atom = e < 0 ? Term::apply(s.inv, {Term::variable(i)}) : Term::variable(i);
        for (std::uint64_t r = 0; r < reps; ++r) acc = acc ? Term::apply(s.mul, {*acc, atom}) : atom;
    }
    return acc ? *acc : Term::apply(s.one);
}

bool free_equal(const FreeElement &a, const FreeElement &b) {
    if (!(a.variety() == b.variety())) {
        throw Error(ErrorKind::VarietyMismatch, a.variety().to_string() + " vs " + b.variety().to_string());
    }
    return a.payload() == b.payload();
}

Elem eval_free(const FreeElement &f, const FiniteAlgebra &alg, std::span<const Elem> g) {
    const VarietySpec &v = f.variety();
    auto arg = [&](std::uint32_t i) {
        if (i == 0 || i > g.size()) {
            throw Error(ErrorKind::IndexOutOfRange, "generator a" + std::to_string(i) + " but only " +
                                                        std::to_string(g.size()) + " values given");
        }
        return g[i - 1];
    };
    if (v.kind() == VarietyKind::AllAlgebras) return eval_term(std::get<Term>(f.payload()), alg, g);

    const GroupSymbols &syms = v.group_symbols();
    const std::size_t mul = alg.signature().index_of(syms.mul);
    Elem acc = alg.apply(syms.one, {});
    auto times = [&](Elem x) {
        const Elem args[2] = {acc, x};
        acc = alg.apply(mul, args);
    };
    struct Visitor {
        decltype(arg) &arg_;
        decltype(times) &times_;
        const FiniteAlgebra &alg_;
        const GroupSymbols &syms_;
        void operator()(const Term &) const {}
        void operator()(const ReducedWord &w) const {
            for (auto [i, s] : w) times_(group_power(alg_, syms_, arg_(i), s));
        }
        void operator()(const ExpVector &v) const {
            for (auto [i, k] : v) times_(group_power(alg_, syms_, arg_(i), k));
        }
        void operator()(const ExpVectorMod &v) const {
            for (auto [i, k] : v.entries) times_(group_power(alg_, syms_, arg_(i), static_cast<std::int64_t>(k)));
        }
    };
    std::visit(Visitor{arg, times, alg, syms}, f.payload());
    return acc;
}

std::vector<std::pair<Term, Term>> defining_identities(const VarietySpec &v) {
    std::vector<std::pair<Term, Term>> ids;
    if (v.kind() == VarietyKind::AllAlgebras) return ids;
    const GroupSymbols &s = v.group_symbols();
    auto z = [](std::uint32_t i) { return Term::variable(i); };
    auto mul = [&](Term a, Term b) { return Term::apply(s.mul, {std::move(a), std::move(b)}); };
    auto inv = [&](Term a) { return Term::apply(s.inv, {std::move(a)}); };
    auto one = [&] { return Term::apply(s.one); };
    ids.emplace_back(mul(mul(z(1), z(2)), z(3)), mul(z(1), mul(z(2), z(3))));
    ids.emplace_back(mul(one(), z(1)), z(1));
    ids.emplace_back(mul(z(1), one()), z(1));
    ids.emplace_back(mul(inv(z(1)), z(1)), one());
    ids.emplace_back(mul(z(1), inv(z(1))), one());
    if (v.kind() == VarietyKind::AllGroups) return ids;
    ids.emplace_back(mul(z(1), z(2)), mul(z(2), z(1)));
    if (auto e = v.exponent()) {
        Term p = z(1);
        for (std::uint64_t i = 1; i < *e; ++i) p = mul(std::move(p), z(1));
        ids.emplace_back(std::move(p), one());
    }
    return ids;
}

bool audit_membership(const VarietySpec &v, const FiniteAlgebra &alg, std::uint64_t budget) {
    if (v.kind() == VarietyKind::AllAlgebras) {
        for (const Symbol &s : v.signature().symbols()) {
            auto i = alg.signature().find(s.name);
            if (!i || alg.signature()[*i].arity != s.arity) return false;
        }
        return true;
    }
    const GroupSymbols &s = v.group_symbols();
    const Signature &sig = alg.signature();
    auto has = [&](const std::string &name, unsigned arity) {
        auto i = sig.find(name);
        return i && sig[*i].arity == arity;
    };
    if (!has(s.mul, 2) || !has(s.inv, 1) || !has(s.one, 0)) return false;
    for (const auto &[lhs, rhs] : defining_identities(v)) {
        if (!check_identity_in_algebra(lhs, rhs, alg, budget)) return false;
    }
    return true;
}

}  // namespace wpf
