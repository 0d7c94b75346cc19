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

#include "wpf/blackbox.hpp"

#include <algorithm>
#include <unordered_set>

#include "wpf/rng.hpp"

namespace wpf {

std::string code_to_string(Code c, unsigned n) {
    std::string s(n, '0');
    for (unsigned i = 0; i < n; ++i) {
        if ((c.bits >> (n - 1 - i)) & 1) s[i] = '1';
    }
    return s;
}

Code code_from_string(std::string_view s) {
    if (s.size() > 63) throw Error(ErrorKind::Parse, "bit string longer than 63");
    Code c;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw Error(ErrorKind::Parse, "not a bit string: " + std::string(s));
        c.bits = (c.bits << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return c;
}

unsigned min_width(std::size_t size) {
    unsigned n = 1;
    while (n < 63 && (std::uint64_t{1} << n) < size) ++n;
    return n;
}

namespace {

std::vector<Code> random_injection(std::size_t count, unsigned n, std::uint64_t seed) {
    Rng rng(seed);
    const std::uint64_t space = std::uint64_t{1} << n;
    std::vector<Code> out;
    out.reserve(count);
    if (space <= 4 * count) {
        // Partial Fisher-Yates over the whole space.
        std::vector<std::uint64_t> pool(space);
        for (std::uint64_t i = 0; i < space; ++i) pool[i] = i;
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t j = i + rng.below(space - i);
            std::swap(pool[i], pool[j]);
            out.push_back(Code{pool[i]});
        }
        return out;
    }
    std::unordered_set<std::uint64_t> used;
    while (out.size() < count) {
        const std::uint64_t x = rng.below(space);
        if (used.insert(x).second) out.push_back(Code{x});
    }
    return out;
}

}  // namespace

BlackBoxAlgebra::BlackBoxAlgebra(std::shared_ptr<const FiniteAlgebra> source, unsigned n, std::uint64_t seed,
                                 Strictness strictness, std::string source_ref)
    : source_(std::move(source)),
      n_(n),
      seed_(seed),
      strictness_(strictness),
      source_ref_(std::move(source_ref)),
      sig_(source_->signature()) {
    if (n == 0 || n > 62) throw Error(ErrorKind::InvalidArgument, "encoding width must be in [1, 62]");
    if ((std::uint64_t{1} << n) < source_->size()) {
        throw Error(ErrorKind::InvalidArgument, "2^" + std::to_string(n) + " < carrier size " +
                                                    std::to_string(source_->size()));
    }
    for (std::size_t s = 0; s < sig_.size(); ++s) to_source_.push_back(s);
    encode_ = random_injection(source_->size(), n, seed);
    for (std::size_t i = 0; i < encode_.size(); ++i) decode_.emplace(encode_[i].bits, static_cast<Elem>(i));
    sorted_ = encode_;
    std::sort(sorted_.begin(), sorted_.end());
}

Code BlackBoxAlgebra::answer(std::size_t symbol, std::span<const Code> operands) const {
    if (symbol >= sig_.size()) throw Error(ErrorKind::UnknownSymbol, "symbol index out of range");
    if (operands.size() != sig_[symbol].arity) throw Error(ErrorKind::ArityMismatch, sig_[symbol].name);
    Elem args[8];
    std::vector<Elem> big;
    std::span<Elem> decoded;
    if (operands.size() <= 8) {
        decoded = std::span<Elem>(args, operands.size());
    } else {
        big.resize(operands.size());
        decoded = big;
    }
    for (std::size_t i = 0; i < operands.size(); ++i) {
        auto it = decode_.find(operands[i].bits);
        if (it == decode_.end()) {
            if (strictness_ == Strictness::Strict) {
                throw Error(ErrorKind::ProtocolViolation,
                            "operand " + code_to_string(operands[i], n_) + " of " + sig_[symbol].name +
                                " is not in the carrier");
            }
            return Code{0};
        }
        decoded[i] = it->second;
    }
    return encode_[source_->apply(to_source_[symbol], decoded)];
}

Code BlackBoxAlgebra::query(std::string_view symbol, std::span<const Code> operands) {
    ++queries_;
    if (auto s = sig_.find(symbol)) return answer(*s, operands);
    if (!source_->signature().find(symbol)) throw Error(ErrorKind::UnknownSymbol, std::string(symbol));
    if (strictness_ == Strictness::Strict) {
        throw Error(ErrorKind::ProtocolViolation, "symbol " + std::string(symbol) + " is omitted by the reduct");
    }
    return Code{0};
}

Elem BlackBoxAlgebra::decode(Code c) const {
    auto it = decode_.find(c.bits);
    if (it == decode_.end()) throw Error(ErrorKind::ProtocolViolation, code_to_string(c, n_) + " not in carrier");
    return it->second;
}

BlackBoxDescriptor BlackBoxAlgebra::descriptor() const {
    BlackBoxDescriptor d;
    d.n = n_;
    d.seed = seed_;
    d.source = source_ref_.empty() ? source_->name() : source_ref_;
    d.strictness = strictness_;
    if (sig_.size() != source_->signature().size()) {
        for (const Symbol &s : sig_.symbols()) d.psi.push_back(s.name);
    }
    return d;
}

BlackBoxAlgebra wrap(std::shared_ptr<const FiniteAlgebra> alg, unsigned n, std::uint64_t seed, Strictness strictness,
                     std::string source_ref) {
    return BlackBoxAlgebra(std::move(alg), n, seed, strictness, std::move(source_ref));
}

BlackBoxAlgebra wrap(const FiniteAlgebra &alg, unsigned n, std::uint64_t seed, Strictness strictness,
                     std::string source_ref) {
    return wrap(std::make_shared<const FiniteAlgebra>(alg), n, seed, strictness, std::move(source_ref));
}

BlackBoxAlgebra reduct(const BlackBoxAlgebra &bb, std::span<const std::string> psi) {
    BlackBoxAlgebra out = bb;
    out.sig_ = bb.sig_.restrict_to(psi);
    out.to_source_.clear();
    for (const Symbol &s : out.sig_.symbols()) out.to_source_.push_back(bb.to_source_[bb.sig_.index_of(s.name)]);
    return out;
}

std::string alpha_pad(std::size_t n, std::string_view u) {
    if (u.size() > n) {
        throw Error(ErrorKind::InvalidArgument,
                    "|u| = " + std::to_string(u.size()) + " exceeds n = " + std::to_string(n));
    }
    for (char ch : u) {
        if (ch != '0' && ch != '1') throw Error(ErrorKind::Parse, "not a bit string");
    }
    std::string t(u);
    t += '1';
    t.append(n - u.size(), '0');
    return t;
}

std::string alpha_unpad(std::size_t n, std::string_view t) {
    if (t.size() != n + 1) throw Error(ErrorKind::InvalidArgument, "expected a string of length n+1");
    for (char ch : t) {
        if (ch != '0' && ch != '1') throw Error(ErrorKind::Parse, "not a bit string");
    }
    const auto last_one = t.find_last_of('1');
    if (last_one == std::string_view::npos) throw Error(ErrorKind::NoPreimage, "the all-zeros string");
    return std::string(t.substr(0, last_one));
}

}  // namespace wpf
