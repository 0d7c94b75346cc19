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

#include "wpf/text_io.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace wpf {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

class TermParser {
   public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term parse() {
        Term t = term();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return t;
    }

   private:
    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::string ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }
    static bool is_variable(const std::string &id) {
        if (id.size() < 2 || (id[0] != 'a' && id[0] != 'z')) return false;
        for (std::size_t i = 1; i < id.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
        }
        return id[1] != '0';
    }
    Term term() {
        const std::string id = ident();
        skip_ws();
        const bool call = pos_ < text_.size() && text_[pos_] == '(';
        if (!call) {
            if (is_variable(id)) return Term::variable(static_cast<std::uint32_t>(std::stoul(id.substr(1))));
            return Term::apply(id);
        }
        ++pos_;
        std::vector<Term> children;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            return Term::apply(id);
        }
        while (true) {
            children.push_back(term());
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated argument list");
            if (text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (text_[pos_] == ')') {
                ++pos_;
                break;
            }
            fail("expected ',' or ')'");
        }
        return Term::apply(id, std::move(children));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Signature parse_signature(std::string_view text) {
    std::vector<Symbol> syms;
    std::string s(text);
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto slash = item.find('/');
        if (slash == std::string::npos) throw Error(ErrorKind::Parse, "expected name/arity, got '" + item + "'");
        const std::string arity = trim(item.substr(slash + 1));
        if (arity.empty() || arity.find_first_not_of("0123456789") != std::string::npos) {
            throw Error(ErrorKind::Parse, "bad arity in '" + item + "'");
        }
        syms.push_back({trim(item.substr(0, slash)), static_cast<unsigned>(std::stoul(arity))});
    }
    return Signature(std::move(syms));
}

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

FiniteAlgebra parse_algebra(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<Signature> sig;
    std::vector<std::string> labels;
    std::map<std::string, std::vector<std::string>> raw;
    std::string current;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("signature:", 0) == 0) {
            sig = parse_signature(line.substr(10));
        } else if (line.rfind("carrier:", 0) == 0) {
            std::istringstream words(line.substr(8));
            std::string w;
            while (words >> w) labels.push_back(w);
        } else if (line.rfind("table ", 0) == 0) {
            current = trim(line.substr(6));
            if (raw.count(current)) throw Error(ErrorKind::Parse, "duplicate table " + current);
            raw[current];
        } else {
            if (current.empty()) throw Error(ErrorKind::Parse, "row outside a table: '" + line + "'");
            std::istringstream words(line);
            std::string w;
            while (words >> w) raw[current].push_back(w);
        }
    }
    if (!sig) throw Error(ErrorKind::Parse, "missing signature line");
    std::map<std::string, Elem> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!index.emplace(labels[i], static_cast<Elem>(i)).second) {
            throw Error(ErrorKind::Parse, "duplicate carrier label " + labels[i]);
        }
    }
    std::vector<std::vector<Elem>> tables;
    for (const Symbol &s : sig->symbols()) {
        auto it = raw.find(s.name);
        if (it == raw.end()) throw Error(ErrorKind::Parse, "missing table for " + s.name);
        std::vector<Elem> t;
        for (const std::string &w : it->second) {
            auto e = index.find(w);
            if (e == index.end()) throw Error(ErrorKind::Parse, "table " + s.name + " uses unknown label " + w);
            t.push_back(e->second);
        }
        std::size_t expect = 1;
        for (unsigned i = 0; i < s.arity; ++i) expect *= labels.size();
        if (t.size() != expect) {
            throw Error(ErrorKind::Parse, "table " + s.name + " has " + std::to_string(t.size()) + " entries, expected " +
                                              std::to_string(expect));
        }
        tables.push_back(std::move(t));
        raw.erase(it);
    }
    if (!raw.empty()) throw Error(ErrorKind::Parse, "table for undeclared symbol " + raw.begin()->first);
    return FiniteAlgebra(std::move(name), std::move(*sig), std::move(labels), std::move(tables));
}

std::string format_algebra(const FiniteAlgebra &alg) {
    std::string out = "signature: " + alg.signature().to_string() + "\ncarrier:";
    for (const std::string &l : alg.labels()) out += " " + l;
    out += "\n";
    const std::size_t n = alg.size();
    for (std::size_t s = 0; s < alg.signature().size(); ++s) {
        out += "table " + alg.signature()[s].name + "\n";
        const auto &t = alg.table(s);
        const std::size_t row = alg.signature()[s].arity == 0 ? 1 : n;
        for (std::size_t i = 0; i < t.size(); ++i) {
            out += alg.label(t[i]);
            out += (i + 1) % row == 0 ? "\n" : " ";
        }
    }
    return out;
}

}  // namespace wpf
