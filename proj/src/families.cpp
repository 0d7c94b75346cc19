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

#include "wpf/families.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "wpf/algebras.hpp"
#include "wpf/blackbox.hpp"

namespace wpf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorKind::Parse, "expected a nonnegative integer for " + std::string(what) + ", got '" +
                                          std::string(s) + "'");
    }
    return v;
}

std::uint32_t parse_u32(std::string_view s, std::string_view what) {
    const std::uint64_t v = parse_uint(s, what);
    if (v > UINT32_MAX) throw Error(ErrorKind::Parse, std::string(what) + " out of range");
    return static_cast<std::uint32_t>(v);
}

/// "a..b" or "a".
std::pair<std::uint32_t, std::uint32_t> parse_range(std::string_view s, std::string_view what) {
    const std::size_t dots = s.find("..");
    if (dots == std::string_view::npos) {
        const std::uint32_t v = parse_u32(s, what);
        return {v, v};
    }
    const std::uint32_t lo = parse_u32(trim(s.substr(0, dots)), what);
    const std::uint32_t hi = parse_u32(trim(s.substr(dots + 2)), what);
    if (lo > hi) throw Error(ErrorKind::Parse, "empty range for " + std::string(what));
    return {lo, hi};
}

std::vector<std::uint32_t> parse_moduli(std::string_view params) {
    std::vector<std::uint32_t> out;
    for (std::string_view part : split(params, ',')) {
        const auto [lo, hi] = parse_range(part, "modulus");
        if (hi - lo > 1'000'000) throw Error(ErrorKind::BudgetExceeded, "modulus range too long");
        for (std::uint64_t n = lo; n <= hi; ++n) out.push_back(static_cast<std::uint32_t>(n));
    }
    return out;
}

std::string format_range(std::uint32_t lo, std::uint32_t hi) {
    return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t &out) { return __builtin_mul_overflow(a, b, &out); }

}  // namespace

Poly::Poly(std::vector<std::uint64_t> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::parse(std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact.empty()) throw Error(ErrorKind::Parse, "empty polynomial");
    std::vector<std::uint64_t> coeffs;
    char var = 0;
    for (std::string_view term : split(compact, '+')) {
        std::size_t i = 0;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
        const bool has_coef = i > 0;
        const std::uint64_t coef = has_coef ? parse_uint(term.substr(0, i), "coefficient") : 1;
        if (i < term.size() && term[i] == '*' && has_coef) ++i;
        std::uint64_t power = 0;
        if (i < term.size() && std::isalpha(static_cast<unsigned char>(term[i]))) {
            if (var && term[i] != var) throw Error(ErrorKind::Parse, "polynomial mixes variables");
            var = term[i++];
            power = 1;
            if (i < term.size() && term[i] == '^') {
                power = parse_uint(term.substr(i + 1), "exponent");
                i = term.size();
            }
        } else if (!has_coef) {
            throw Error(ErrorKind::Parse, "bad polynomial term '" + std::string(term) + "'");
        }
        if (i != term.size()) throw Error(ErrorKind::Parse, "bad polynomial term '" + std::string(term) + "'");
        if (power > 64) throw Error(ErrorKind::Parse, "polynomial degree above 64");
        if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
        coeffs[power] += coef;
    }
    return Poly(std::move(coeffs));
}

std::uint64_t Poly::operator()(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (mul_overflows(acc, x, acc) || __builtin_add_overflow(acc, *it, &acc)) {
            throw Error(ErrorKind::BudgetExceeded, "polynomial value overflows");
        }
    }
    return acc;
}

std::string Poly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i > 0; --i) {
        const std::size_t power = i - 1;
        const std::uint64_t c = coeffs_[power];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (power == 0 || c != 1) out += std::to_string(c);
        if (power >= 1) out += "k";
        if (power >= 2) out += "^" + std::to_string(power);
    }
    return out;
}

const char *family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::ZnAdd:
            return "zn-add";
        case FamilyKind::ZnStar:
            return "zn-star";
        case FamilyKind::ElemAbelian:
            return "elem-abelian";
        case FamilyKind::RingZn:
            return "ring-zn";
        case FamilyKind::DirectPower:
            return "direct-power";
    }
    return "?";
}

Family Family::zn_add(std::vector<std::uint32_t> moduli) {
    Family f;
    f.kind_ = FamilyKind::ZnAdd;
    f.moduli_ = std::move(moduli);
    f.finish();
    return f;
}

Family Family::zn_star(std::vector<std::uint32_t> moduli) {
    Family f;
    f.kind_ = FamilyKind::ZnStar;
    f.moduli_ = std::move(moduli);
    f.finish();
    return f;
}

Family Family::ring_zn(std::vector<std::uint32_t> moduli) {
    Family f;
    f.kind_ = FamilyKind::RingZn;
    f.moduli_ = std::move(moduli);
    f.finish();
    return f;
}

Family Family::elem_abelian(std::uint32_t p, std::uint32_t k_min, std::uint32_t k_max) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "elem-abelian needs a prime p");
    Family f;
    f.kind_ = FamilyKind::ElemAbelian;
    f.p_ = p;
    f.e_min_ = k_min;
    f.e_max_ = k_max;
    f.finish();
    return f;
}

Family Family::direct_power(FamilyKind base, std::uint32_t n, std::uint32_t e_min, std::uint32_t e_max) {
    if (base != FamilyKind::ZnAdd && base != FamilyKind::ZnStar) {
        throw Error(ErrorKind::InvalidArgument, "direct-power base must be zn-add or zn-star");
    }
    if (e_min == 0) throw Error(ErrorKind::InvalidArgument, "direct-power exponents start at 1");
    Family f;
    f.kind_ = FamilyKind::DirectPower;
    f.base_ = base;
    f.p_ = n;
    f.e_min_ = e_min;
    f.e_max_ = e_max;
    f.finish();
    return f;
}

Family Family::parse(std::string_view name, std::string_view params) {
    if (name == "zn-add") return zn_add(parse_moduli(params));
    if (name == "zn-star") return zn_star(parse_moduli(params));
    if (name == "ring-zn") return ring_zn(parse_moduli(params));
    if (name != "elem-abelian" && name != "direct-power") {
        throw Error(ErrorKind::UnknownSymbol, "unknown family " + std::string(name));
    }
    std::map<std::string, std::string, std::less<>> kv;
    for (std::string_view part : split(params, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, "expected key=value, got '" + std::string(part) + "'");
        kv[std::string(trim(part.substr(0, eq)))] = std::string(trim(part.substr(eq + 1)));
    }
    auto get = [&](std::string_view key) -> const std::string & {
        auto it = kv.find(key);
        if (it == kv.end()) throw Error(ErrorKind::Parse, std::string(name) + " needs " + std::string(key) + "=...");
        return it->second;
    };
    if (name == "elem-abelian") {
        const auto [lo, hi] = parse_range(get("k"), "k");
        return elem_abelian(parse_u32(get("p"), "p"), lo, hi);
    }
    if (name == "direct-power") {
        const std::string &base = get("base");
        const std::size_t colon = base.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::Parse, "base must look like zn-star:15");
        const std::string_view base_name = std::string_view(base).substr(0, colon);
        FamilyKind kind;
        if (base_name == "zn-add") {
            kind = FamilyKind::ZnAdd;
        } else if (base_name == "zn-star") {
            kind = FamilyKind::ZnStar;
        } else {
            throw Error(ErrorKind::Parse, "unsupported direct-power base " + std::string(base_name));
        }
        const auto [lo, hi] = parse_range(get("e"), "e");
        return direct_power(kind, parse_u32(std::string_view(base).substr(colon + 1), "base modulus"), lo, hi);
    }
    throw Error(ErrorKind::Parse, "unknown family '" + std::string(name) + "'");
}

void Family::finish() {
    name_ = family_kind_name(kind_);
    std::uint64_t largest = 0;
    switch (kind_) {
        case FamilyKind::ZnAdd:
        case FamilyKind::ZnStar:
        case FamilyKind::RingZn: {
            if (moduli_.empty()) throw Error(ErrorKind::InvalidArgument, name_ + " needs at least one modulus");
            std::sort(moduli_.begin(), moduli_.end());
            moduli_.erase(std::unique(moduli_.begin(), moduli_.end()), moduli_.end());
            if (moduli_.front() == 0) throw Error(ErrorKind::InvalidArgument, "moduli start at 1");
            for (std::uint32_t n : moduli_) {
                indices_.push_back(std::to_string(n));
                largest = std::max<std::uint64_t>(largest, algebra_at(indices_.back())->size());
            }
            eta_ = Poly({0, 4});
            break;
        }
        case FamilyKind::ElemAbelian:
        case FamilyKind::DirectPower: {
            if (e_min_ > e_max_) throw Error(ErrorKind::InvalidArgument, "empty exponent range");
            const std::uint64_t base = kind_ == FamilyKind::ElemAbelian ? p_
                                       : base_ == FamilyKind::ZnAdd ? wpf::zn_add(p_).size()
                                                                    : wpf::zn_star(p_).size();
            for (std::uint32_t e = e_min_; e <= e_max_; ++e) indices_.push_back(std::to_string(p_) + "^" + std::to_string(e));
            largest = (base > 1 && e_max_ > 0) ? 2 : 1;
            eta_ = Poly({0, 0, 4});
            break;
        }
    }
    theta_ = 0;
    for (const std::string &d : indices_) theta_ = std::max(theta_, d.size());

    syms_ = kind_ == FamilyKind::RingZn ? GroupSymbols::additive() : GroupSymbols::multiplicative();
    const bool trivial = largest <= 1;
    switch (kind_) {
        case FamilyKind::ZnAdd:
        case FamilyKind::ZnStar:
        case FamilyKind::DirectPower:
            variety_ = trivial ? VarietySpec::abelian_groups_exp(1) : VarietySpec::abelian_groups();
            break;
        case FamilyKind::ElemAbelian:
            variety_ = trivial ? VarietySpec::abelian_groups_exp(1) : VarietySpec::elementary_abelian(p_);
            break;
        case FamilyKind::RingZn:
            variety_ = VarietySpec::all_algebras(ring_signature());
            break;
    }
    trivial_ = trivial;
}

std::string Family::params() const {
    switch (kind_) {
        case FamilyKind::ZnAdd:
        case FamilyKind::ZnStar:
        case FamilyKind::RingZn: {
            // Collapse consecutive runs so "6..30" round-trips.
            std::string out;
            for (std::size_t i = 0; i < moduli_.size();) {
                std::size_t j = i;
                while (j + 1 < moduli_.size() && moduli_[j + 1] == moduli_[j] + 1) ++j;
                if (!out.empty()) out += ",";
                out += format_range(moduli_[i], moduli_[j]);
                i = j + 1;
            }
            return out;
        }
        case FamilyKind::ElemAbelian:
            return "p=" + std::to_string(p_) + ",k=" + format_range(e_min_, e_max_);
        case FamilyKind::DirectPower:
            return std::string("base=") + family_kind_name(base_) + ":" + std::to_string(p_) +
                   ",e=" + format_range(e_min_, e_max_);
    }
    return {};
}

std::vector<std::string> Family::level(std::uint64_t k) const {
    if (kind_ == FamilyKind::ElemAbelian || kind_ == FamilyKind::DirectPower) {
        const std::uint64_t e = std::clamp<std::uint64_t>(k, e_min_, e_max_);
        return {std::to_string(p_) + "^" + std::to_string(e)};
    }
    return indices_;
}

std::size_t Family::theta(std::uint64_t) const { return theta_; }

std::shared_ptr<const FiniteAlgebra> Family::algebra_at(std::string_view d) const {
    const std::string ref = name_ + ":" + std::string(d);
    switch (kind_) {
        case FamilyKind::ZnAdd:
        case FamilyKind::ZnStar:
        case FamilyKind::RingZn: {
            const std::uint32_t n = parse_u32(d, "index");
            if (!std::binary_search(moduli_.begin(), moduli_.end(), n)) {
                throw Error(ErrorKind::InvalidArgument, "index " + std::string(d) + " is not in " + name_);
            }
            if (kind_ == FamilyKind::ZnAdd) return std::make_shared<const FiniteAlgebra>(wpf::zn_add(n));
            if (kind_ == FamilyKind::ZnStar) return std::make_shared<const FiniteAlgebra>(wpf::zn_star(n));
            return std::make_shared<const FiniteAlgebra>(wpf::ring_zn(n));
        }
        case FamilyKind::ElemAbelian:
        case FamilyKind::DirectPower: {
            const std::size_t caret = d.find('^');
            if (caret == std::string_view::npos || parse_u32(d.substr(0, caret), "index base") != p_) {
                throw Error(ErrorKind::InvalidArgument, "index " + std::string(d) + " is not in " + name_);
            }
            const std::uint32_t e = parse_u32(d.substr(caret + 1), "index exponent");
            if (e < e_min_ || e > e_max_) {
                throw Error(ErrorKind::InvalidArgument, "index " + std::string(d) + " is not in " + name_);
            }
            if (kind_ == FamilyKind::ElemAbelian) return std::make_shared<const FiniteAlgebra>(wpf::elementary_abelian(p_, e));
            const FiniteAlgebra base = base_ == FamilyKind::ZnAdd ? wpf::zn_add(p_) : wpf::zn_star(p_);
            return std::make_shared<const FiniteAlgebra>(wpf::direct_power(base, e));
        }
    }
    throw Error(ErrorKind::InvalidArgument, ref);
}

std::string Family::source_ref(std::string_view d) const {
    if (kind_ == FamilyKind::DirectPower) return name_ + ":" + family_kind_name(base_) + ":" + std::string(d);
    return name_ + ":" + std::string(d);
}

std::shared_ptr<const FiniteAlgebra> algebra_from_source(std::string_view ref) {
    const std::size_t colon = ref.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "source must look like <family>:<index>");
    const std::string_view name = ref.substr(0, colon);
    std::string_view d = ref.substr(colon + 1);
    if (name == "direct-power") {
        const std::size_t base_colon = d.find(':');
        const std::size_t caret = d.find('^');
        if (base_colon == std::string_view::npos || caret == std::string_view::npos || caret < base_colon) {
            throw Error(ErrorKind::Parse, "direct-power source must look like direct-power:zn-star:15^2");
        }
        const std::string e(d.substr(caret + 1));
        const Family f = Family::parse(name, "base=" + std::string(d.substr(0, caret)) + ",e=" + e);
        return f.algebra_at(d.substr(base_colon + 1));
    }
    if (name == "elem-abelian") {
        const std::size_t caret = d.find('^');
        if (caret == std::string_view::npos) throw Error(ErrorKind::Parse, "elem-abelian source must look like elem-abelian:2^3");
        const Family f = Family::parse(name, "p=" + std::string(d.substr(0, caret)) + ",k=" + std::string(d.substr(caret + 1)));
        return f.algebra_at(d);
    }
    return Family::parse(name, d).algebra_at(d);
}

unsigned Family::xi(std::string_view d) const { return min_width(algebra_at(d)->size()); }

std::string Family::sample_index(std::uint64_t k, Rng &rng) const {
    const std::vector<std::string> dk = level(k);
    return dk[rng.below(dk.size())];
}

Elem Family::sample_element(const FiniteAlgebra &alg, Rng &rng) {
    if (alg.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty carrier");
    return static_cast<Elem>(rng.below(alg.size()));
}

VarietySpec Family::reduct_variety(const GroupSymbols &gamma) const {
    if (kind_ == FamilyKind::RingZn) {
        if (gamma == GroupSymbols::additive()) {
            return trivial_ ? VarietySpec::abelian_groups_exp(1, gamma) : VarietySpec::abelian_groups(gamma);
        }
    } else if (gamma == syms_) {
        return variety_;
    }
    throw Error(ErrorKind::InvalidArgument, "{" + gamma.mul + "," + gamma.inv + "," + gamma.one +
                                                "} is not a group structure of " + name_);
}

void Family::check_length_discipline(std::uint64_t k) const {
    for (const std::string &d : level(k)) {
        if (d.size() > theta(k)) {
            throw Error(ErrorKind::InvalidArgument, "index " + d + " longer than theta(k)");
        }
        if (xi(d) > eta_(d.size())) {
            throw Error(ErrorKind::InvalidArgument, "xi(" + d + ") = " + std::to_string(xi(d)) + " exceeds eta(|d|) = " +
                                                        std::to_string(eta_(d.size())));
        }
    }
}

GroupSymbols parse_gamma(std::string_view text, const Family &f) {
    if (text == "additive") return GroupSymbols::additive();
    if (text == "multiplicative") return GroupSymbols::multiplicative();
    if (text == "full") return f.group_symbols();
    throw Error(ErrorKind::Parse, "gamma must be additive, multiplicative or full");
}

}  // namespace wpf
