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

#ifndef WPF_FAMILIES_HPP_
#define WPF_FAMILIES_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wpf/algebra.hpp"
#include "wpf/rng.hpp"
#include "wpf/variety.hpp"

namespace wpf {

/// Univariate polynomial with nonnegative integer coefficients, written
/// like `k+1`, `2k^2+3` or `5`.
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<std::uint64_t> coeffs);
    static Poly parse(std::string_view text);
    static Poly constant(std::uint64_t c) { return Poly({c}); }

    /// Throws BudgetExceeded on overflow.
    std::uint64_t operator()(std::uint64_t x) const;
    std::string to_string() const;
    bool operator==(const Poly &) const = default;

   private:
    std::vector<std::uint64_t> coeffs_;  // coeffs_[i] multiplies x^i
};

enum class FamilyKind { ZnAdd, ZnStar, ElemAbelian, RingZn, DirectPower };

/// A computational family at desk scale: a finite enumeration of the index
/// set D, per-level subsets D_k, the algebra H_d at each index, and the
/// encoding width xi(d) bounded by a declared polynomial eta(|d|).
///
/// Index strings: decimal moduli for zn-add, zn-star and ring-zn ("15");
/// "p^k" for elem-abelian ("2^3"); "n^e" for direct-power ("15^2").
/// Levels: list families use all of D at every k; elem-abelian and
/// direct-power use the single exponent clamp(k) within their range.
class Family {
   public:
    static Family zn_add(std::vector<std::uint32_t> moduli);
    static Family zn_star(std::vector<std::uint32_t> moduli);
    static Family elem_abelian(std::uint32_t p, std::uint32_t k_min, std::uint32_t k_max);
    /// Full ring signature add/neg/zero/mul.
    static Family ring_zn(std::vector<std::uint32_t> moduli);
    /// Direct powers of zn-add:n or zn-star:n.
    static Family direct_power(FamilyKind base, std::uint32_t n, std::uint32_t e_min, std::uint32_t e_max);

    /// name is one of zn-add, zn-star, elem-abelian, ring-zn, direct-power.
    /// params: "15,21,33" or "6..30" for list families, "p=2,k=2..4" for
    /// elem-abelian, "base=zn-star:15,e=1..3" for direct-power.
    static Family parse(std::string_view name, std::string_view params);

    FamilyKind kind() const { return kind_; }
    const std::string &name() const { return name_; }
    /// Canonical parameter string.
    std::string params() const;

    /// The variety the family's algebras are taken in (the trivial variety
    /// when every algebra is a singleton).
    const VarietySpec &variety() const { return variety_; }
    /// The group structure the attacks use.
    const GroupSymbols &group_symbols() const { return syms_; }

    const std::vector<std::string> &indices() const { return indices_; }
    /// D_k; never empty.
    std::vector<std::string> level(std::uint64_t k) const;
    /// Declared bound on index length at level k.
    std::size_t theta(std::uint64_t k) const;
    /// Declared bound eta with xi(d) <= eta(|d|).
    const Poly &eta() const { return eta_; }

    std::shared_ptr<const FiniteAlgebra> algebra_at(std::string_view d) const;
    /// Name of H_d that algebra_from_source accepts, e.g. "zn-star:15",
    /// "elem-abelian:2^3", "direct-power:zn-star:15^2".
    std::string source_ref(std::string_view d) const;
    /// Encoding width: the least n with 2^n >= |H_d|.
    unsigned xi(std::string_view d) const;

    /// Uniform draw from D_k.
    std::string sample_index(std::uint64_t k, Rng &rng) const;
    /// Uniform draw from the carrier of H_d.
    static Elem sample_element(const FiniteAlgebra &alg, Rng &rng);

    /// Variety of the Gamma-reducts. Throws InvalidArgument when gamma does
    /// not name a group structure of the family.
    VarietySpec reduct_variety(const GroupSymbols &gamma) const;

    /// Throws InvalidArgument unless every d in D_k has |d| <= theta(k) and
    /// xi(d) <= eta(|d|).
    void check_length_discipline(std::uint64_t k) const;

   private:
    Family() = default;
    void finish();

    FamilyKind kind_ = FamilyKind::ZnAdd;
    std::string name_;
    std::vector<std::uint32_t> moduli_;  // list families
    std::uint32_t p_ = 0;                // elem-abelian prime or direct-power base modulus
    FamilyKind base_ = FamilyKind::ZnAdd;
    std::uint32_t e_min_ = 0, e_max_ = 0;
    std::vector<std::string> indices_;
    VarietySpec variety_;
    GroupSymbols syms_;
    Poly eta_;
    std::size_t theta_ = 0;
    bool trivial_ = false;
};

const char *family_kind_name(FamilyKind kind);

/// The algebra named by Family::source_ref.
std::shared_ptr<const FiniteAlgebra> algebra_from_source(std::string_view ref);

/// "additive", "multiplicative", or "full" (the family's own group symbols).
GroupSymbols parse_gamma(std::string_view text, const Family &f);

}  // namespace wpf

#endif  // WPF_FAMILIES_HPP_
