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

#ifndef WPF_ALGEBRAS_HPP_
#define WPF_ALGEBRAS_HPP_

#include <cstdint>

#include "wpf/algebra.hpp"

namespace wpf {

// Concrete finite algebras used by the families and the tests. Groups use
// the multiplicative group signature even when the operation is addition.

/// Z_n under addition, labels "0".."n-1".
FiniteAlgebra zn_add(std::uint32_t n);
/// Units of Z_n under multiplication, labels are the residues.
FiniteAlgebra zn_star(std::uint32_t n);
/// (Z_p)^k under addition, labels are '.'-joined coordinates ("1.0.1").
FiniteAlgebra elementary_abelian(std::uint32_t p, std::uint32_t k);
/// The ring Z_n over {add, neg, zero, mul}.
FiniteAlgebra ring_zn(std::uint32_t n);
/// Dihedral group of order 2n; r^i is "r<i>", s r^i is "s<i>".
FiniteAlgebra dihedral(std::uint32_t n);
/// The direct power alg^e with componentwise operations.
FiniteAlgebra direct_power(const FiniteAlgebra &alg, std::uint32_t e);

bool is_prime(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace wpf

#endif  // WPF_ALGEBRAS_HPP_
