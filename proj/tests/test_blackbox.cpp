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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "wpf/algebras.hpp"
#include "wpf/blackbox.hpp"

using namespace wpf;

namespace {

Elem el(const FiniteAlgebra &alg, std::string_view label) { return *alg.find_label(label); }

template <class F>
void expect_error(ErrorKind kind, F &&f) {
    try {
        f();
        FAIL() << "expected " << error_kind_name(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

const std::vector<std::string> kAdditive = {"add", "neg", "zero"};

}  // namespace

TEST(Wrap, Examples) {
    const FiniteAlgebra z6 = zn_add(6);
    const BlackBoxAlgebra bb = wrap(z6, 3, 1);
    std::set<Code> carrier(bb.carrier().begin(), bb.carrier().end());
    EXPECT_EQ(carrier.size(), 6u);
    for (Code c : carrier) EXPECT_LT(c.bits, 8u);

    BlackBoxAlgebra a = wrap(z6, 3, 1);
    const Code ops[2] = {a.encode(el(z6, "2")), a.encode(el(z6, "3"))};
    EXPECT_EQ(a.query("mul", ops), a.encode(el(z6, "5")));

    BlackBoxAlgebra b = wrap(z6, 3, 1);
    for (Code x : a.carrier()) {
        for (Code y : a.carrier()) {
            const Code xy[2] = {x, y};
            EXPECT_EQ(a.answer(0, xy), b.answer(0, xy));
        }
    }
}

TEST(Wrap, WidthTooSmall) {
    expect_error(ErrorKind::InvalidArgument, [] { wrap(zn_add(9), 3, 0); });
    EXPECT_EQ(min_width(9), 4u);
    EXPECT_EQ(min_width(8), 3u);
    EXPECT_EQ(min_width(1), 1u);
}

TEST(Wrap, SeedsChangeTheEncoding) {
    const FiniteAlgebra z = zn_add(50);
    const BlackBoxAlgebra a = wrap(z, 8, 1), b = wrap(z, 8, 2);
    std::size_t differ = 0;
    for (Elem e = 0; e < z.size(); ++e) differ += a.encode(e) != b.encode(e);
    EXPECT_GT(differ, 40u);
}

TEST(Wrap, PreservesStructure) {
    for (const FiniteAlgebra &alg : {zn_star(21), dihedral(4), ring_zn(6), elementary_abelian(3, 2)}) {
        const BlackBoxAlgebra bb = wrap(alg, min_width(alg.size()) + 2, 42);
        const Signature &sig = alg.signature();
        for (std::size_t s = 0; s < sig.size(); ++s) {
            std::vector<std::size_t> pos(sig[s].arity, 0);
            do {
                std::vector<Elem> h;
                std::vector<Code> c;
                for (std::size_t p : pos) {
                    h.push_back(static_cast<Elem>(p));
                    c.push_back(bb.encode(static_cast<Elem>(p)));
                }
                ASSERT_EQ(bb.decode(bb.answer(s, c)), alg.apply(s, std::span<const Elem>(h)));
            } while (next_tuple(pos, alg.size()));
        }
    }
}

TEST(Query, CountsEveryInvocation) {
    const FiniteAlgebra z6 = zn_add(6);
    BlackBoxAlgebra bb = wrap(z6, 3, 1);
    EXPECT_EQ(bb.queries(), 0u);
    EXPECT_EQ(bb.query("one", {}), bb.encode(el(z6, "0")));
    EXPECT_EQ(bb.queries(), 1u);
    const Code x[1] = {bb.encode(el(z6, "1"))};
    bb.query("inv", x);
    EXPECT_EQ(bb.queries(), 2u);
    bb.answer(1, x);
    EXPECT_EQ(bb.queries(), 2u);
}

TEST(Query, StrictModeRejectsOffCarrierOperands) {
    const FiniteAlgebra z6 = zn_add(6);
    BlackBoxAlgebra strict = wrap(z6, 3, 1);
    Code outside{0};
    for (std::uint64_t v = 0; v < 8; ++v) {
        if (!strict.in_carrier(Code{v})) outside = Code{v};
    }
    const Code ops[2] = {outside, outside};
    expect_error(ErrorKind::ProtocolViolation, [&] { strict.query("mul", ops); });
    EXPECT_EQ(strict.queries(), 1u);

    BlackBoxAlgebra permissive = wrap(z6, 3, 1, Strictness::Permissive);
    EXPECT_EQ(permissive.query("mul", ops), Code{0});

    expect_error(ErrorKind::UnknownSymbol, [&] { strict.query("pow", ops); });
    expect_error(ErrorKind::ArityMismatch, [&] { strict.query("inv", ops); });
}

TEST(Query, DecodeRejectsUnknownStrings) {
    const BlackBoxAlgebra bb = wrap(zn_add(3), 4, 9);
    std::size_t rejected = 0;
    for (std::uint64_t v = 0; v < 16; ++v) {
        if (bb.in_carrier(Code{v})) continue;
        EXPECT_THROW(bb.decode(Code{v}), Error);
        ++rejected;
    }
    EXPECT_EQ(rejected, 13u);
}

TEST(Reduct, Examples) {
    const FiniteAlgebra ring = ring_zn(6);
    const BlackBoxAlgebra full = wrap(ring, 3, 5);
    BlackBoxAlgebra add = reduct(full, kAdditive);
    EXPECT_EQ(add.signature().to_string(), "add/2,neg/1,zero/0");
    const FiniteAlgebra z6 = zn_add(6);
    for (Elem x = 0; x < 6; ++x) {
        for (Elem y = 0; y < 6; ++y) {
            const Code ops[2] = {add.encode(x), add.encode(y)};
            const Elem zs[2] = {el(z6, ring.label(x)), el(z6, ring.label(y))};
            EXPECT_EQ(ring.label(add.decode(add.query("add", ops))), z6.label(z6.apply("mul", zs)));
        }
    }
    const Code ops[2] = {add.encode(1), add.encode(2)};
    expect_error(ErrorKind::ProtocolViolation, [&] { add.query("mul", ops); });

    const std::vector<std::string> all = {"add", "neg", "zero", "mul"};
    BlackBoxAlgebra same = reduct(full, all);
    BlackBoxAlgebra copy = full;
    for (Code x : full.carrier()) {
        for (Code y : full.carrier()) {
            const Code xy[2] = {x, y};
            EXPECT_EQ(same.query("mul", xy), copy.query("mul", xy));
            EXPECT_EQ(same.query("add", xy), copy.query("add", xy));
        }
    }
    const std::vector<std::string> bad = {"xor"};
    expect_error(ErrorKind::UnknownSymbol, [&] { reduct(full, bad); });
}

TEST(Reduct, DescriptorRecordsPsi) {
    const BlackBoxAlgebra bb = reduct(wrap(ring_zn(6), 4, 77, Strictness::Strict, "ring-zn:6"), kAdditive);
    const BlackBoxDescriptor d = bb.descriptor();
    EXPECT_EQ(d.n, 4u);
    EXPECT_EQ(d.seed, 77u);
    EXPECT_EQ(d.source, "ring-zn:6");
    EXPECT_EQ(d.psi, kAdditive);
}

TEST(Alpha, Examples) {
    EXPECT_EQ(alpha_pad(4, "01"), "01100");
    EXPECT_EQ(alpha_pad(0, ""), "1");
    EXPECT_EQ(alpha_unpad(4, "01100"), "01");
    expect_error(ErrorKind::NoPreimage, [] { alpha_unpad(2, "000"); });
    EXPECT_EQ(alpha_unpad(0, "1"), "");
    expect_error(ErrorKind::InvalidArgument, [] { alpha_pad(1, "01"); });
}

TEST(Alpha, ExhaustiveBijectionUpToTwelve) {
    for (std::size_t n = 0; n <= 12; ++n) {
        std::set<std::string> image;
        std::size_t domain = 0;
        for (std::size_t len = 0; len <= n; ++len) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
                std::string u;
                for (std::size_t i = 0; i < len; ++i) u += (v >> (len - 1 - i)) & 1 ? '1' : '0';
                const std::string t = alpha_pad(n, u);
                ASSERT_EQ(t, oracle::pad(n, u));
                ASSERT_EQ(t.size(), n + 1);
                ASSERT_EQ(alpha_unpad(n, t), u);
                image.insert(t);
                ++domain;
            }
        }
        EXPECT_EQ(image.size(), domain);
        EXPECT_EQ(image.size(), (std::size_t{1} << (n + 1)) - 1);
        EXPECT_FALSE(image.count(std::string(n + 1, '0')));
    }
}

TEST(Lambda, Examples) {
    const VarietySpec ab = VarietySpec::abelian_groups();
    const FiniteAlgebra z6 = zn_add(6);
    const Elem g[1] = {el(z6, "2")};
    const RelationPair p3{power_slp(3), identity_slp()};
    EXPECT_TRUE(lambda_contains(ab, 1, z6, std::span<const Elem>(g), p3));
    const RelationPair same{power_slp(3), power_slp(3)};
    EXPECT_FALSE(lambda_contains(ab, 1, z6, std::span<const Elem>(g), same));
    const FiniteAlgebra z7 = zn_star(7);
    const Elem h[1] = {el(z7, "3")};
    EXPECT_FALSE(lambda_contains(ab, 1, z7, std::span<const Elem>(h), RelationPair{power_slp(2), identity_slp()}));
}

TEST(Lambda, Errors) {
    const FiniteAlgebra z6 = zn_add(6);
    const Elem g[1] = {0};
    const RelationPair bad{Slp{{Instr::input_ref(2)}}, identity_slp()};
    EXPECT_THROW(lambda_contains(VarietySpec::abelian_groups(), 1, z6, std::span<const Elem>(g), bad), Error);
    EXPECT_THROW(lambda_contains(VarietySpec::abelian_groups(), 2, z6, std::span<const Elem>(g),
                                 RelationPair{identity_slp(), identity_slp()}),
                 Error);
}

// A relation found on the group reduct stays a relation of the full algebra.
TEST(Lambda, InclusionUnderReducts) {
    Rng rng(31);
    const GroupSymbols add_syms = GroupSymbols::additive();
    std::size_t accepted = 0;
    for (std::uint32_t n : {6u, 8u, 12u, 15u}) {
        const FiniteAlgebra ring = ring_zn(n);
        const FiniteAlgebra reduct_alg = ring.reduct(kAdditive);
        const VarietySpec small = VarietySpec::abelian_groups(add_syms);
        const VarietySpec full = VarietySpec::all_algebras(ring_signature());
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t m = 1 + rng.below(2);
            std::vector<Elem> g;
            for (std::size_t i = 0; i < m; ++i) g.push_back(static_cast<Elem>(rng.below(n)));
            const RelationPair pair{oracle::random_slp(rng, m, small.signature(), 6),
                                    oracle::random_slp(rng, m, small.signature(), 6)};
            if (!lambda_contains(small, m, reduct_alg, std::span<const Elem>(g), pair)) continue;
            ++accepted;
            EXPECT_TRUE(lambda_contains(full, m, ring, std::span<const Elem>(g), pair));
        }
    }
    for (const FiniteAlgebra &alg : {zn_star(15), dihedral(3)}) {
        const VarietySpec v = VarietySpec::all_groups();
        const VarietySpec raw = VarietySpec::all_algebras(alg.signature());
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<Elem> g = {static_cast<Elem>(rng.below(alg.size()))};
            const RelationPair pair{oracle::random_slp(rng, 1, v.signature(), 6), oracle::random_slp(rng, 1, v.signature(), 6)};
            if (!lambda_contains(v, 1, alg, std::span<const Elem>(g), pair)) continue;
            ++accepted;
            EXPECT_TRUE(lambda_contains(raw, 1, alg, std::span<const Elem>(g), pair));
        }
    }
    EXPECT_GT(accepted, 50u);
}

TEST(Lambda, IsomorphismInvariant) {
    Rng rng(8);
    for (const FiniteAlgebra &alg : {zn_star(35), elementary_abelian(2, 3), dihedral(5)}) {
        const VarietySpec v = VarietySpec::all_groups();
        BlackBoxAlgebra bb = wrap(alg, min_width(alg.size()) + 1, rng.next());
        for (int rep = 0; rep < 300; ++rep) {
            const std::size_t m = 1 + rng.below(2);
            std::vector<Elem> g;
            std::vector<Code> c;
            for (std::size_t i = 0; i < m; ++i) {
                g.push_back(static_cast<Elem>(rng.below(alg.size())));
                c.push_back(bb.encode(g.back()));
            }
            const RelationPair pair{oracle::random_slp(rng, m, v.signature(), 8), oracle::random_slp(rng, m, v.signature(), 8)};
            EXPECT_EQ(lambda_contains(v, m, alg, std::span<const Elem>(g), pair),
                      lambda_contains(v, m, bb, std::span<const Code>(c), pair));
        }
    }
}

TEST(Accounting, RunQueriesEqualApplyInstructions) {
    Rng rng(12);
    const FiniteAlgebra alg = zn_star(91);
    BlackBoxAlgebra bb = wrap(alg, 7, 3);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t m = 1 + rng.below(3);
        std::vector<Code> g;
        for (std::size_t i = 0; i < m; ++i) g.push_back(bb.carrier()[rng.below(bb.size())]);
        const Slp u = oracle::random_slp(rng, m, group_signature(), 15);
        std::uint64_t applies = 0;
        for (const Instr &ins : u.instrs) applies += !ins.is_input();
        const std::uint64_t before = bb.queries();
        run(u, bb, std::span<const Code>(g));
        EXPECT_EQ(bb.queries() - before, applies);
    }
}

TEST(Code, StringConversions) {
    EXPECT_EQ(code_to_string(Code{5}, 4), "0101");
    EXPECT_EQ(code_from_string("0101"), Code{5});
    EXPECT_THROW(code_from_string("01x"), Error);
}
