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

#include "wpf/slp.hpp"

#include <algorithm>
#include <sstream>

namespace wpf {

Instr Instr::input_ref(std::uint32_t i) {
    if (i == 0) throw Error(ErrorKind::BadInputIndex, "input indices start at 1");
    Instr ins;
    ins.input = i;
    return ins;
}

Instr Instr::apply(std::string symbol, std::vector<std::uint32_t> operands) {
    Instr ins;
    ins.symbol = std::move(symbol);
    ins.operands = std::move(operands);
    return ins;
}

std::uint32_t Slp::max_input() const {
    std::uint32_t m = 0;
    for (const Instr &ins : instrs) m = std::max(m, ins.input);
    return m;
}

std::string Slp::to_text() const {
    std::string out;
    for (const Instr &ins : instrs) {
        if (ins.is_input()) {
            out += "in " + std::to_string(ins.input) + "\n";
            continue;
        }
        out += "op " + ins.symbol;
        for (std::uint32_t j : ins.operands) out += " " + std::to_string(j);
        out += "\n";
    }
    return out;
}

namespace {

std::uint32_t parse_index(const std::string &tok, std::size_t line) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(tok, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != tok.size() || tok.empty() || tok[0] == '-' || v == 0 || v > UINT32_MAX) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": expected positive integer, got '" + tok + "'");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

Slp Slp::from_text(std::string_view text) {
    Slp slp;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream words(line);
        std::string kw;
        if (!(words >> kw)) continue;
        if (kw == "in") {
            std::string tok, extra;
            if (!(words >> tok) || (words >> extra)) {
                throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected `in <i>`");
            }
            slp.instrs.push_back(Instr::input_ref(parse_index(tok, lineno)));
        } else if (kw == "op") {
            std::string sym, tok;
            if (!(words >> sym)) {
                throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": missing symbol");
            }
            std::vector<std::uint32_t> ops;
            while (words >> tok) ops.push_back(parse_index(tok, lineno));
            slp.instrs.push_back(Instr::apply(sym, std::move(ops)));
        } else {
            throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }
    if (slp.instrs.empty()) throw Error(ErrorKind::Parse, "empty straight-line program");
    return slp;
}

std::optional<Error> validate(const Slp &u, std::size_t m, const Signature &sig) {
    if (u.instrs.empty()) return Error(ErrorKind::InvalidArgument, "straight-line program must be nonempty");
    for (std::size_t k = 1; k <= u.instrs.size(); ++k) {
        const Instr &ins = u.instrs[k - 1];
        const std::string where = "instruction " + std::to_string(k);
        if (ins.is_input()) {
            if (ins.input > m) {
                return Error(ErrorKind::BadInputIndex,
                             where + " reads input " + std::to_string(ins.input) + " of " + std::to_string(m));
            }
            continue;
        }
        auto s = sig.find(ins.symbol);
        if (!s) return Error(ErrorKind::UnknownSymbol, where + " uses " + ins.symbol);
        if (sig[*s].arity != ins.operands.size()) {
            return Error(ErrorKind::ArityMismatch, where + ": " + ins.symbol + " takes " +
                                                       std::to_string(sig[*s].arity) + " operands");
        }
        for (std::uint32_t j : ins.operands) {
            if (j == 0 || j >= k) {
                return Error(ErrorKind::ForwardReference, where + " references position " + std::to_string(j));
            }
        }
    }
    return std::nullopt;
}

FreeElement to_free(const Slp &u, const VarietySpec &v) {
    FreeAlgebra free(v);
    std::vector<FreeElement> gens;
    for (std::uint32_t i = 1; i <= u.max_input(); ++i) gens.push_back(free.generator(i));
    return run(u, free, std::span<const FreeElement>(gens));
}

Slp power_slp(std::uint64_t s, const GroupSymbols &syms) {
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "power_slp needs s >= 1");
    Slp slp;
    slp.instrs.push_back(Instr::input_ref(1));
    const int top = 63 - std::countl_zero(s);
    for (int bit = top - 1; bit >= 0; --bit) {
        const auto last = static_cast<std::uint32_t>(slp.instrs.size());
        slp.instrs.push_back(Instr::apply(syms.mul, {last, last}));
        if ((s >> bit) & 1) {
            const auto sq = static_cast<std::uint32_t>(slp.instrs.size());
            slp.instrs.push_back(Instr::apply(syms.mul, {sq, 1}));
        }
    }
    return slp;
}

Slp identity_slp(const GroupSymbols &syms) {
    Slp slp;
    slp.instrs.push_back(Instr::apply(syms.one));
    return slp;
}

}  // namespace wpf
