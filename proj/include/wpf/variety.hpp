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

#ifndef WPF_VARIETY_HPP_
#define WPF_VARIETY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wpf/algebra.hpp"

namespace wpf {

enum class VarietyKind {
    AllAlgebras,
    AllGroups,
    AbelianGroups,
    AbelianGroupsExp,
    ElementaryAbelian,
};

/// A variety whose free algebras have a cheap normal form. Group varieties
/// carry the names of their group symbols so that, e.g., the additive group
/// of a ring is handled by the same code as a multiplicative group.
class VarietySpec {
   public:
    static VarietySpec all_algebras(Signature sig);
    static VarietySpec all_groups(GroupSymbols syms = {});
    static VarietySpec abelian_groups(GroupSymbols syms = {});
    /// Abelian groups satisfying z^e = 1.
    static VarietySpec abelian_groups_exp(std::uint64_t e, GroupSymbols syms = {});
    /// Elementary abelian p-groups. Throws unless p is prime.
    static VarietySpec elementary_abelian(std::uint64_t p, GroupSymbols syms = {});

    VarietyKind kind() const { return kind_; }
    bool is_group_variety() const { return kind_ != VarietyKind::AllAlgebras; }
    /// nullopt stands for infinite exponent.
    std::optional<std::uint64_t> exponent() const;
    /// The variety satisfies x = y (only AbelianGroupsExp(1)).
    bool is_trivial() const;
    const Signature &signature() const { return sig_; }
    const GroupSymbols &group_symbols() const { return syms_; }
    std::string to_string() const;

    bool operator==(const VarietySpec &) const = default;

   private:
    VarietyKind kind_ = VarietyKind::AllGroups;
    std::uint64_t e_ = 0;
    Signature sig_;
    GroupSymbols syms_;
};

/// Freely reduced group word: (generator, +1 | -1) letters.
using ReducedWord = std::vector<std::pair<std::uint32_t, int>>;
/// Integer exponent vector; zero entries are never stored.
using ExpVector = std::map<std::uint32_t, std::int64_t>;
/// Residues in [1, e-1]; zero entries are never stored.
struct ExpVectorMod {
    std::map<std::uint32_t, std::uint64_t> entries;
    bool operator==(const ExpVectorMod &) const = default;
};

/// An element of the free algebra F_inf(V) in normal form.
class FreeElement {
   public:
    using Payload = std::variant<Term, ReducedWord, ExpVector, ExpVectorMod>;

    FreeElement(VarietySpec v, Payload p);

    const VarietySpec &variety() const { return variety_; }
    const Payload &payload() const { return payload_; }
    std::string to_string() const;

    /// Structural equality including the variety.
    bool operator==(const FreeElement &) const = default;

   private:
    VarietySpec variety_;
    Payload payload_;
};

/// The free algebra F_inf(V) as an OmegaAlgebra over normal forms. Its
/// signature is V's signature (group varieties: mul, inv, one in that order).
class FreeAlgebra {
   public:
    using Element = FreeElement;

    /// Throws UnsupportedVariety if V has no normal form here.
    explicit FreeAlgebra(VarietySpec v);

    const Signature &signature() const { return sig_; }
    const VarietySpec &variety() const { return v_; }

    FreeElement generator(std::uint32_t i) const;
    FreeElement identity() const;
    FreeElement apply(std::size_t symbol, std::span<const FreeElement> operands) const;

   private:
    VarietySpec v_;
    Signature sig_;
};

/// Budget on raw-term size when expanding into the term algebra.
inline constexpr std::size_t kRawTermNodeBudget = 1'000'000;

FreeElement normalize(const VarietySpec &v, const Term &t);
/// A term whose normal form is f: a left-nested product of generator powers
/// written out as repeated multiplication. Throws BudgetExceeded past
/// kRawTermNodeBudget nodes.
Term representative(const FreeElement &f);
/// Throws VarietyMismatch when the varieties differ.
bool free_equal(const FreeElement &a, const FreeElement &b);

/// Evaluates the normal form at g via the group symbols of f's variety (or
/// as a term for AllAlgebras).
Elem eval_free(const FreeElement &f, const FiniteAlgebra &alg, std::span<const Elem> g);

/// g^k for any integer k using the named group symbols.
template <OmegaAlgebra A>
typename A::Element group_power(A &alg, const GroupSymbols &syms, typename A::Element g, std::int64_t k) {
    using E = typename A::Element;
    const Signature &sig = alg.signature();
    const std::size_t mul = sig.index_of(syms.mul), inv = sig.index_of(syms.inv), one = sig.index_of(syms.one);
    E base = g;
    if (k < 0) {
        const E arg[1] = {g};
        base = alg.apply(inv, std::span<const E>(arg));
    }
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    E acc = alg.apply(one, std::span<const E>());
    bool acc_is_one = true;
    while (e) {
        if (e & 1) {
            if (acc_is_one) {
                acc = base;
                acc_is_one = false;
            } else {
                const E args[2] = {acc, base};
                acc = alg.apply(mul, std::span<const E>(args));
            }
        }
        e >>= 1;
        if (e) {
            const E args[2] = {base, base};
            base = alg.apply(mul, std::span<const E>(args));
        }
    }
    return acc;
}

/// Defining identities of V, as (lhs, rhs) term pairs.
std::vector<std::pair<Term, Term>> defining_identities(const VarietySpec &v);
/// Exhaustively checks V's defining identities in `alg`.
bool audit_membership(const VarietySpec &v, const FiniteAlgebra &alg, std::uint64_t budget = kIdentityCheckBudget);

}  // namespace wpf

#endif  // WPF_VARIETY_HPP_
