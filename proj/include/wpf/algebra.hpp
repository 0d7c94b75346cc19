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

#ifndef WPF_ALGEBRA_HPP_
#define WPF_ALGEBRA_HPP_

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpf/error.hpp"

namespace wpf {

struct Symbol {
    std::string name;
    unsigned arity = 0;

    bool operator==(const Symbol &) const = default;
};

/// An ordered set of finitary operation symbols. Symbol order is significant:
/// it fixes table layout and BFS generation order.
class Signature {
   public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    std::span<const Symbol> symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    const Symbol &operator[](std::size_t i) const { return symbols_[i]; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Index of `name`, or throws UnknownSymbol.
    std::size_t index_of(std::string_view name) const;

    /// Sub-signature keeping only the named symbols, in this signature's order.
    Signature restrict_to(std::span<const std::string> names) const;

    std::string to_string() const;

    bool operator==(const Signature &) const = default;

   private:
    std::vector<Symbol> symbols_;
};

/// The group signature {mul/2, inv/1, one/0}.
const Signature &group_signature();
/// The ring signature {add/2, neg/1, zero/0, mul/2}.
const Signature &ring_signature();

/// Names of the multiplication, inversion and identity symbols of a group
/// structure inside a (possibly larger) signature.
struct GroupSymbols {
    std::string mul = "mul";
    std::string inv = "inv";
    std::string one = "one";

    static GroupSymbols multiplicative() { return {}; }
    static GroupSymbols additive() { return {"add", "neg", "zero"}; }

    Signature as_signature() const;
    bool operator==(const GroupSymbols &) const = default;
};

/// Syntax tree over variables z_1, z_2, ... A node is a variable when `var`
/// is nonzero; otherwise it applies `symbol` to `children`.
struct Term {
    std::uint32_t var = 0;
    std::string symbol;
    std::vector<Term> children;

    static Term variable(std::uint32_t i);
    static Term apply(std::string symbol, std::vector<Term> children = {});

    bool is_var() const { return var != 0; }
    /// Largest variable index, 0 for closed terms.
    std::uint32_t max_var() const;
    std::size_t node_count() const;
    /// Prefix notation, e.g. `mul(a1,inv(a2))`.
    std::string to_string() const;

    bool operator==(const Term &) const = default;
};

using Elem = std::uint32_t;

/// A finite Omega-algebra stored as dense operation tables. Elements are
/// indices into `labels()`; labels are opaque tokens used only for I/O.
class FiniteAlgebra {
   public:
    using Element = Elem;

    FiniteAlgebra() = default;
    /// `tables[s]` has |labels|^arity(s) entries, first operand most
    /// significant. Throws if a table has the wrong size or an entry is out
    /// of range.
    FiniteAlgebra(std::string name, Signature sig, std::vector<std::string> labels,
                  std::vector<std::vector<Elem>> tables);

    const std::string &name() const { return name_; }
    const Signature &signature() const { return sig_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(Elem e) const { return labels_.at(e); }
    std::optional<Elem> find_label(std::string_view label) const;
    const std::vector<Elem> &table(std::size_t symbol) const { return tables_[symbol]; }

    Elem apply(std::size_t symbol, std::span<const Elem> operands) const;
    Elem apply(std::string_view symbol, std::span<const Elem> operands) const {
        return apply(sig_.index_of(symbol), operands);
    }

    /// The algebra with only the named operations kept.
    FiniteAlgebra reduct(std::span<const std::string> names) const;

   private:
    std::string name_;
    Signature sig_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Elem>> tables_;
};

/// Anything that interprets the symbols of its signature: finite algebras,
/// black-box algebras, free algebras.
template <class A>
concept OmegaAlgebra = requires(A &a, std::size_t s, std::span<const typename A::Element> ops) {
    typename A::Element;
    { a.signature() } -> std::convertible_to<const Signature &>;
    { a.apply(s, ops) } -> std::convertible_to<typename A::Element>;
};

/// Inductive evaluation of `t` with z_i := assignment[i-1].
template <OmegaAlgebra A>
typename A::Element eval_term(const Term &t, A &alg, std::span<const typename A::Element> assignment) {
    using E = typename A::Element;
    if (t.is_var()) {
        if (t.var > assignment.size()) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "variable z" + std::to_string(t.var) + " but only " +
                            std::to_string(assignment.size()) + " values assigned");
        }
        return assignment[t.var - 1];
    }
    const Signature &sig = alg.signature();
    const std::size_t s = sig.index_of(t.symbol);
    if (sig[s].arity != t.children.size()) {
        throw Error(ErrorKind::ArityMismatch, "symbol " + t.symbol + " expects " +
                                                  std::to_string(sig[s].arity) + " operands, got " +
                                                  std::to_string(t.children.size()));
    }
    std::vector<E> args;
    args.reserve(t.children.size());
    for (const Term &c : t.children) args.push_back(eval_term(c, alg, assignment));
    return alg.apply(s, std::span<const E>(args));
}

/// Odometer step over base-`base` digit tuples, last digit fastest. Returns
/// false after wrapping back to all zeros.
bool next_tuple(std::span<std::size_t> digits, std::size_t base);

/// The smallest subalgebra containing `seeds`, sorted ascending.
std::vector<Elem> subalgebra_closure(const FiniteAlgebra &alg, std::span<const Elem> seeds);

/// Default cap on |carrier|^(#variables) for exhaustive identity checks.
inline constexpr std::uint64_t kIdentityCheckBudget = 4'000'000;

/// Whether v = w holds under every assignment of carrier elements.
bool check_identity_in_algebra(const Term &v, const Term &w, const FiniteAlgebra &alg,
                               std::uint64_t budget = kIdentityCheckBudget);

}  // namespace wpf

#endif  // WPF_ALGEBRA_HPP_
