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

#ifndef WPF_SLP_HPP_
#define WPF_SLP_HPP_

#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wpf/algebra.hpp"
#include "wpf/variety.hpp"

namespace wpf {

/// One straight-line-program step: either `in i` (input > 0) or an
/// operation applied to earlier positions (1-based).
struct Instr {
    std::uint32_t input = 0;
    std::string symbol;
    std::vector<std::uint32_t> operands;

    static Instr input_ref(std::uint32_t i);
    static Instr apply(std::string symbol, std::vector<std::uint32_t> operands = {});

    bool is_input() const { return input != 0; }
    bool operator==(const Instr &) const = default;
};

/// A nonempty instruction sequence; its value is the value of the last
/// instruction. Length counts input instructions.
struct Slp {
    std::vector<Instr> instrs;

    std::size_t length() const { return instrs.size(); }
    /// Largest input index referenced (0 if none).
    std::uint32_t max_input() const;

    /// Text form: one `in <i>` or `op <symbol> <j1> ...` per line.
    std::string to_text() const;
    /// Parses the text form; blank lines and `#` comments are ignored.
    static Slp from_text(std::string_view text);

    bool operator==(const Slp &) const = default;
};

struct RelationPair {
    Slp left;
    Slp right;
    bool operator==(const RelationPair &) const = default;
};

/// nullopt when `u` is a valid program over `sig` with inputs <= m.
std::optional<Error> validate(const Slp &u, std::size_t m, const Signature &sig);

/// Evaluates `u` on inputs `g`. Throws the validation error for invalid
/// programs.
template <OmegaAlgebra A>
typename A::Element run(const Slp &u, A &alg, std::span<const typename A::Element> g) {
    using E = typename A::Element;
    const Signature &sig = alg.signature();
    if (auto err = validate(u, g.size(), sig)) throw *err;
    std::vector<E> values;
    values.reserve(u.length());
    std::vector<E> args;
    for (const Instr &ins : u.instrs) {
        if (ins.is_input()) {
            values.push_back(g[ins.input - 1]);
            continue;
        }
        args.clear();
        for (std::uint32_t j : ins.operands) args.push_back(values[j - 1]);
        values.push_back(alg.apply(sig.index_of(ins.symbol), std::span<const E>(args)));
    }
    return values.back();
}

/// The free-algebra element computed from a_1, a_2, ...
FreeElement to_free(const Slp &u, const VarietySpec &v);

/// a_1^s by square-and-multiply; length <= 2 floor(log2 s) + 1.
Slp power_slp(std::uint64_t s, const GroupSymbols &syms = {});
/// [op one].
Slp identity_slp(const GroupSymbols &syms = {});

enum class BfsStatus { Found, NotMember, BudgetExhausted };

struct BfsResult {
    BfsStatus status = BfsStatus::NotMember;
    std::optional<Slp> slp;
    /// Operation applications performed (oracle queries on black boxes).
    std::uint64_t applications = 0;
};

namespace detail {

/// Growable bitset over settled-node indices.
class NodeSet {
   public:
    void set(std::size_t i) {
        if (words_.size() <= i / 64) words_.resize(i / 64 + 1, 0);
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    void merge(const NodeSet &o) {
        if (words_.size() < o.words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t w = 0; w < o.words_.size(); ++w) words_[w] |= o.words_[w];
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            }
        }
        return out;
    }

   private:
    std::vector<std::uint64_t> words_;
};

}  // namespace detail

/// Breadth-first constructive membership: explores derivations in order of
/// program length, deduplicating by value and keeping the first derivation
/// found. Ties are broken by generation order (inputs, then symbols in
/// signature order, operands lexicographic). `budget` caps operation
/// applications.
template <OmegaAlgebra A>
BfsResult shortest_slp_bfs(A &alg, std::span<const typename A::Element> g, const typename A::Element &target,
                           std::uint64_t budget) {
    using E = typename A::Element;
    const Signature &sig = alg.signature();

    struct Node {
        E value;
        std::uint32_t input = 0;
        std::size_t symbol = 0;
        std::vector<std::uint32_t> operands;  // settled indices
        detail::NodeSet deps;                 // derivation, including itself once settled
    };
    struct Pending {
        std::size_t cost;
        std::uint64_t seq;
        std::size_t node;
        bool operator>(const Pending &o) const { return cost != o.cost ? cost > o.cost : seq > o.seq; }
    };

    BfsResult result;
    std::vector<Node> candidates;
    std::vector<std::uint32_t> settled;  // candidate index per settled index
    std::unordered_map<E, std::uint32_t> settled_of;
    std::unordered_map<E, std::size_t> best_pending;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue;
    std::uint64_t seq = 0;

    auto offer = [&](Node node) {
        if (settled_of.count(node.value)) return;
        const std::size_t cost = node.deps.count() + 1;
        auto it = best_pending.find(node.value);
        if (it != best_pending.end() && it->second <= cost) return;
        best_pending[node.value] = cost;
        candidates.push_back(std::move(node));
        queue.push({cost, seq++, candidates.size() - 1});
    };
    auto emit = [&](std::uint32_t settled_idx) {
        const Node &goal = candidates[settled[settled_idx]];
        std::vector<std::size_t> order = goal.deps.members();
        std::unordered_map<std::size_t, std::uint32_t> position;
        Slp slp;
        for (std::size_t s : order) {
            const Node &n = candidates[settled[s]];
            if (n.input) {
                slp.instrs.push_back(Instr::input_ref(n.input));
            } else {
                std::vector<std::uint32_t> ops;
                for (std::uint32_t o : n.operands) ops.push_back(position.at(o));
                slp.instrs.push_back(Instr::apply(sig[n.symbol].name, std::move(ops)));
            }
            position[s] = static_cast<std::uint32_t>(slp.instrs.size());
        }
        return slp;
    };

    for (std::size_t i = 0; i < g.size(); ++i) {
        offer(Node{g[i], static_cast<std::uint32_t>(i + 1), 0, {}, {}});
    }
    for (std::size_t s = 0; s < sig.size(); ++s) {
        if (sig[s].arity != 0) continue;
        if (result.applications >= budget) {
            result.status = BfsStatus::BudgetExhausted;
            return result;
        }
        ++result.applications;
        offer(Node{alg.apply(s, std::span<const E>()), 0, s, {}, {}});
    }

    std::vector<E> args;
    std::vector<std::size_t> pos;
    while (!queue.empty()) {
        const Pending top = queue.top();
        queue.pop();
        Node &node = candidates[top.node];
        if (settled_of.count(node.value)) continue;
        const auto idx = static_cast<std::uint32_t>(settled.size());
        node.deps.set(idx);
        settled.push_back(static_cast<std::uint32_t>(top.node));
        settled_of.emplace(node.value, idx);
        best_pending.erase(node.value);
        if (node.value == target) {
            result.status = BfsStatus::Found;
            result.slp = emit(idx);
            return result;
        }
        const std::size_t pool = settled.size();
        for (std::size_t s = 0; s < sig.size(); ++s) {
            const unsigned k = sig[s].arity;
            if (k == 0) continue;
            pos.assign(k, 0);
            do {
                bool uses_new = false;
                for (unsigned i = 0; i < k; ++i) uses_new |= pos[i] == idx;
                if (!uses_new) continue;
                if (result.applications >= budget) {
                    result.status = BfsStatus::BudgetExhausted;
                    return result;
                }
                args.clear();
                Node next{E{}, 0, s, {}, {}};
                for (unsigned i = 0; i < k; ++i) {
                    const Node &op = candidates[settled[pos[i]]];
                    args.push_back(op.value);
                    next.operands.push_back(static_cast<std::uint32_t>(pos[i]));
                    next.deps.merge(op.deps);
                }
                ++result.applications;
                next.value = alg.apply(s, std::span<const E>(args));
                offer(std::move(next));
            } while (next_tuple(pos, pool));
        }
    }
    result.status = BfsStatus::NotMember;
    return result;
}

}  // namespace wpf

#endif  // WPF_SLP_HPP_
