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

#ifndef WPF_BLACKBOX_HPP_
#define WPF_BLACKBOX_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wpf/algebra.hpp"
#include "wpf/slp.hpp"
#include "wpf/variety.hpp"

namespace wpf {

/// An n-bit string, bit i of the string (from the left) stored at bit n-1-i.
struct Code {
    std::uint64_t bits = 0;
    auto operator<=>(const Code &) const = default;
};

std::string code_to_string(Code c, unsigned n);
/// Parses a string of '0'/'1'; throws Parse otherwise or when longer than 63.
Code code_from_string(std::string_view s);

}  // namespace wpf

template <>
struct std::hash<wpf::Code> {
    std::size_t operator()(const wpf::Code &c) const noexcept { return std::hash<std::uint64_t>{}(c.bits); }
};

namespace wpf {

enum class Strictness { Strict, Permissive };

/// Serializable identity of a black-box instance. The decoded table is never
/// part of it; `source` names the concrete algebra (e.g. "zn-star:15").
struct BlackBoxDescriptor {
    unsigned n = 0;
    std::uint64_t seed = 0;
    std::string source;
    Strictness strictness = Strictness::Strict;
    /// Symbols the oracle answers; empty means the full signature.
    std::vector<std::string> psi;
};

/// Encoded carrier in {0,1}^n with a query-counted operation oracle.
///
/// The adversary-facing surface is `signature`, `apply`/`query`, `width`,
/// and `queries`. `encode`, `decode` and `source` exist for the environment
/// (samplers, ground-truth certificates, the quantum oracle builder).
class BlackBoxAlgebra {
   public:
    using Element = Code;

    BlackBoxAlgebra(std::shared_ptr<const FiniteAlgebra> source, unsigned n, std::uint64_t seed,
                    Strictness strictness, std::string source_ref = {});

    /// The answered symbols (the reduct signature after `reduct`).
    const Signature &signature() const { return sig_; }
    unsigned width() const { return n_; }
    std::uint64_t seed() const { return seed_; }
    Strictness strictness() const { return strictness_; }
    std::size_t size() const { return encode_.size(); }
    /// Carrier codes in ascending order.
    const std::vector<Code> &carrier() const { return sorted_; }
    bool in_carrier(Code c) const { return decode_.count(c.bits) != 0; }

    /// The oracle's answer without touching the counter. Operands outside
    /// the carrier: strict mode throws ProtocolViolation, permissive mode
    /// answers the all-zeros string.
    Code answer(std::size_t symbol, std::span<const Code> operands) const;
    /// Counted oracle invocation by signature index.
    Code apply(std::size_t symbol, std::span<const Code> operands) {
        ++queries_;
        return answer(symbol, operands);
    }
    /// Counted oracle invocation by name. Names outside the source signature
    /// are UnknownSymbol; names omitted by a reduct are protocol violations.
    Code query(std::string_view symbol, std::span<const Code> operands);

    std::uint64_t queries() const { return queries_; }
    void reset_queries() { queries_ = 0; }

    Code encode(Elem e) const { return encode_.at(e); }
    Elem decode(Code c) const;
    const FiniteAlgebra &source() const { return *source_; }
    std::shared_ptr<const FiniteAlgebra> source_ptr() const { return source_; }
    BlackBoxDescriptor descriptor() const;

    friend BlackBoxAlgebra reduct(const BlackBoxAlgebra &bb, std::span<const std::string> psi);

   private:
    std::shared_ptr<const FiniteAlgebra> source_;
    unsigned n_;
    std::uint64_t seed_;
    Strictness strictness_;
    std::string source_ref_;
    Signature sig_;
    std::vector<std::size_t> to_source_;  // answered symbol -> source symbol
    std::vector<Code> encode_;
    std::unordered_map<std::uint64_t, Elem> decode_;
    std::vector<Code> sorted_;
    std::uint64_t queries_ = 0;
};

/// Smallest n with 2^n >= size (at least 1).
unsigned min_width(std::size_t size);

/// Wraps `alg` behind a seeded pseudorandom injection into {0,1}^n.
/// Throws InvalidArgument when 2^n < |carrier| or n > 62.
BlackBoxAlgebra wrap(const FiniteAlgebra &alg, unsigned n, std::uint64_t seed,
                     Strictness strictness = Strictness::Strict, std::string source_ref = {});
BlackBoxAlgebra wrap(std::shared_ptr<const FiniteAlgebra> alg, unsigned n, std::uint64_t seed,
                     Strictness strictness = Strictness::Strict, std::string source_ref = {});

/// Same carrier and encoding, answering only the symbols in `psi`.
BlackBoxAlgebra reduct(const BlackBoxAlgebra &bb, std::span<const std::string> psi);

/// u -> u 1 0^(n-|u|), a bijection from {0,1}^{<=n} onto {0,1}^{n+1} minus 0^{n+1}.
std::string alpha_pad(std::size_t n, std::string_view u);
/// Inverse of alpha_pad. Throws NoPreimage for 0^{n+1}.
std::string alpha_unpad(std::size_t n, std::string_view t);

/// Whether (left, right) represents a nontrivial relation among g: the two
/// programs compute different elements of F_m(V) but the same element of
/// `alg` at g.
template <OmegaAlgebra A>
bool lambda_contains(const VarietySpec &v, std::size_t m, A &alg, std::span<const typename A::Element> g,
                     const RelationPair &pair) {
    if (g.size() != m) {
        throw Error(ErrorKind::InvalidArgument,
                    "tuple has " + std::to_string(g.size()) + " elements, expected " + std::to_string(m));
    }
    for (const Slp *side : {&pair.left, &pair.right}) {
        if (auto err = validate(*side, m, v.signature())) throw *err;
    }
    if (free_equal(to_free(pair.left, v), to_free(pair.right, v))) return false;
    return run(pair.left, alg, g) == run(pair.right, alg, g);
}

}  // namespace wpf

#endif  // WPF_BLACKBOX_HPP_
