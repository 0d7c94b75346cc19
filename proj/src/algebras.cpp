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

#include "wpf/algebras.hpp"

#include <numeric>

namespace wpf {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

std::vector<std::string> decimal_labels(std::uint32_t n) {
    std::vector<std::string> out;
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

}  // namespace

FiniteAlgebra zn_add(std::uint32_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "zn_add needs n >= 1");
    std::vector<Elem> mul(std::size_t{n} * n), inv(n), one{0};
    for (std::uint32_t a = 0; a < n; ++a) {
        inv[a] = (n - a) % n;
        for (std::uint32_t b = 0; b < n; ++b) mul[std::size_t{a} * n + b] = (a + b) % n;
    }
    return FiniteAlgebra("Z" + std::to_string(n), group_signature(), decimal_labels(n), {mul, inv, one});
}

FiniteAlgebra zn_star(std::uint32_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "zn_star needs n >= 1");
    std::vector<std::uint32_t> units;
    std::vector<std::int64_t> index(n, -1);
    for (std::uint32_t a = 0; a < n; ++a) {
        if (std::gcd(a, n) == 1 || n == 1) {
            index[a] = static_cast<std::int64_t>(units.size());
            units.push_back(a);
        }
    }
    const std::size_t k = units.size();
    std::vector<Elem> mul(k * k), inv(k), one{static_cast<Elem>(index[1 % n])};
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t prod = std::uint64_t{units[i]} * units[j] % n;
            mul[i * k + j] = static_cast<Elem>(index[prod]);
            if (prod == 1 % n) inv[i] = static_cast<Elem>(j);
        }
    }
    std::vector<std::string> labels;
    for (std::uint32_t u : units) labels.push_back(std::to_string(u));
    return FiniteAlgebra("Z" + std::to_string(n) + "*", group_signature(), std::move(labels), {mul, inv, one});
}

FiniteAlgebra elementary_abelian(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "elementary abelian group needs prime p");
    FiniteAlgebra base = zn_add(p);
    if (k == 0) {
        return FiniteAlgebra("Z" + std::to_string(p) + "^0", group_signature(), {"()"}, {{0}, {0}, {0}});
    }
    FiniteAlgebra out = direct_power(base, k);
    return FiniteAlgebra("Z" + std::to_string(p) + "^" + std::to_string(k), out.signature(), out.labels(),
                         {out.table(0), out.table(1), out.table(2)});
}

FiniteAlgebra ring_zn(std::uint32_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "ring_zn needs n >= 1");
    std::vector<Elem> add(std::size_t{n} * n), neg(n), zero{0}, mul(std::size_t{n} * n);
    for (std::uint32_t a = 0; a < n; ++a) {
        neg[a] = (n - a) % n;
        for (std::uint32_t b = 0; b < n; ++b) {
            add[std::size_t{a} * n + b] = (a + b) % n;
            mul[std::size_t{a} * n + b] = static_cast<Elem>(std::uint64_t{a} * b % n);
        }
    }
    return FiniteAlgebra("RingZ" + std::to_string(n), ring_signature(), decimal_labels(n), {add, neg, zero, mul});
}

FiniteAlgebra dihedral(std::uint32_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "dihedral needs n >= 1");
    // Element (f, i) = s^f r^i is stored at index f*n + i.
    const std::uint32_t size = 2 * n;
    auto compose = [n](std::uint32_t x, std::uint32_t y) {
        const std::uint32_t f1 = x / n, i1 = x % n, f2 = y / n, i2 = y % n;
        // r^i s = s r^{-i}
        const std::uint32_t i = f2 ? (n - i1 % n + i2) % n : (i1 + i2) % n;
        return ((f1 ^ f2) * n) + i;
    };
    std::vector<Elem> mul(std::size_t{size} * size), inv(size), one{0};
    for (std::uint32_t x = 0; x < size; ++x) {
        for (std::uint32_t y = 0; y < size; ++y) {
            mul[std::size_t{x} * size + y] = compose(x, y);
            if (compose(x, y) == 0) inv[x] = y;
        }
    }
    std::vector<std::string> labels;
    for (std::uint32_t x = 0; x < size; ++x) labels.push_back((x < n ? "r" : "s") + std::to_string(x % n));
    return FiniteAlgebra("D" + std::to_string(n), group_signature(), std::move(labels), {mul, inv, one});
}

namespace {

constexpr std::size_t kMaxTableEntries = std::size_t{1} << 26;

}  // namespace

FiniteAlgebra direct_power(const FiniteAlgebra &alg, std::uint32_t e) {
    if (e == 0) throw Error(ErrorKind::InvalidArgument, "direct_power needs exponent >= 1");
    const std::size_t b = alg.size();
    std::size_t size = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (size > (1u << 24) / std::max<std::size_t>(b, 1)) {
            throw Error(ErrorKind::BudgetExceeded, "direct power too large");
        }
        size *= b;
    }
    // Element x has coordinates x_0 .. x_{e-1}, x_0 most significant.
    std::vector<Elem> coords(size * e);
    for (std::size_t x = 0; x < size; ++x) {
        std::size_t rest = x;
        for (std::uint32_t i = e; i > 0; --i) {
            coords[x * e + i - 1] = static_cast<Elem>(rest % b);
            rest /= b;
        }
    }
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < size; ++x) {
        std::string l;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (i) l += ".";
            l += alg.label(coords[x * e + i]);
        }
        labels.push_back(std::move(l));
    }
    const Signature &sig = alg.signature();
    std::vector<std::vector<Elem>> tables;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        const unsigned k = sig[s].arity;
        std::size_t entries = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (entries > kMaxTableEntries / size) throw Error(ErrorKind::BudgetExceeded, "direct power table too large");
            entries *= size;
        }
        std::vector<Elem> table(entries);
        std::vector<std::size_t> args(k);
        std::vector<Elem> comp(k);
        for (std::size_t idx = 0; idx < entries; ++idx) {
            std::size_t rest = idx;
            for (unsigned i = k; i > 0; --i) {
                args[i - 1] = rest % size;
                rest /= size;
            }
            std::size_t out = 0;
            for (std::uint32_t c = 0; c < e; ++c) {
                for (unsigned i = 0; i < k; ++i) comp[i] = coords[args[i] * e + c];
                out = out * b + alg.apply(s, comp);
            }
            table[idx] = static_cast<Elem>(out);
        }
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(alg.name() + "^" + std::to_string(e), sig, std::move(labels), std::move(tables));
}

}  // namespace wpf
