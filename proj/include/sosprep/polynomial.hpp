#pragma once

#include "sosprep/rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sosprep {

// Exponent vector alpha identifying the monomial x^alpha = x1^a1 ... xn^an.
// All entries nonnegative; length is the ambient variable count.
using DegreeVector = std::vector<int>;

inline int total_degree(const DegreeVector& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

inline DegreeVector add(const DegreeVector& a, const DegreeVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("degree vector length mismatch");
    DegreeVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

// Graded lexicographic basis order: x^a precedes x^b iff deg a < deg b, or
// degrees tie and the first nonzero entry of a-b is positive. This is the
// order that lists [1, x1, x2, x1^2, x1x2, x2^2] for n=2, d=2.
inline bool graded_lex_precedes(const DegreeVector& a, const DegreeVector& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

struct GradedLexLess {
    bool operator()(const DegreeVector& a, const DegreeVector& b) const {
        return graded_lex_precedes(a, b);
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Sparse multivariate polynomial over exact rationals. Terms map degree
// vectors to nonzero coefficients; the key set is exactly the support.
class Polynomial {
public:
    using TermMap = std::map<DegreeVector, Rat, GradedLexLess>;

    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("nvars must be positive");
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const DegreeVector& alpha, const Rat& c) {
        if (static_cast<int>(alpha.size()) != nvars_)
            throw std::invalid_argument("degree vector length mismatch");
        for (int e : alpha)
            if (e < 0) throw std::invalid_argument("negative exponent");
        if (c == 0) return;
        auto it = terms_.find(alpha);
        if (it == terms_.end()) {
            terms_.emplace(alpha, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rat coefficient(const DegreeVector& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::vector<DegreeVector> support() const {
        std::vector<DegreeVector> out;
        out.reserve(terms_.size());
        for (const auto& [a, c] : terms_) out.push_back(a);
        return out;
    }

    bool operator==(const Polynomial& rhs) const {
        return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
    }

    Polynomial operator+(const Polynomial& rhs) const {
        check_nvars(rhs);
        Polynomial out = *this;
        for (const auto& [a, c] : rhs.terms_) out.add_term(a, c);
        return out;
    }

    Polynomial operator-(const Polynomial& rhs) const {
        check_nvars(rhs);
        Polynomial out = *this;
        for (const auto& [a, c] : rhs.terms_) out.add_term(a, -c);
        return out;
    }

    Polynomial operator*(const Polynomial& rhs) const {
        check_nvars(rhs);
        Polynomial out(nvars_);
        for (const auto& [a, ca] : terms_)
            for (const auto& [b, cb] : rhs.terms_) out.add_term(add(a, b), ca * cb);
        return out;
    }

    Polynomial scaled(const Rat& c) const {
        Polynomial out(nvars_);
        if (c == 0) return out;
        for (const auto& [a, ca] : terms_) out.terms_.emplace(a, ca * c);
        return out;
    }

private:
    void check_nvars(const Polynomial& rhs) const {
        if (nvars_ != rhs.nvars_) throw std::invalid_argument("nvars mismatch");
    }

    int nvars_;
    TermMap terms_;
};

inline Polynomial multiply(const Polynomial& p, const Polynomial& q) { return p * q; }

// Sum of f_i^2; the constructive side of the SOS definition.
inline Polynomial sum_of_squares(const std::vector<Polynomial>& fs) {
    if (fs.empty()) throw std::invalid_argument("sum_of_squares: empty list");
    Polynomial out(fs.front().nvars());
    for (const auto& f : fs) out = out + f * f;
    return out;
}

// Max total degree over the support; 0 for the zero polynomial by convention.
inline int degree(const Polynomial& p) {
    int d = 0;
    for (const auto& [a, c] : p.terms()) d = std::max(d, total_degree(a));
    return d;
}

inline int min_degree(const Polynomial& p) {
    int d = 0;
    bool first = true;
    for (const auto& [a, c] : p.terms()) {
        int t = total_degree(a);
        if (first || t < d) d = t;
        first = false;
    }
    return d;
}

namespace detail {

class PolyLexer {
public:
    explicit PolyLexer(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        return text_[pos_++];
    }
    std::size_t pos() const { return pos_; }

    // INT, INT/INT or DECIMAL
    std::string number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected number", pos_);
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == fs) throw ParseError("expected digits after decimal point", pos_);
        }
        return text_.substr(start, pos_ - start);
    }

    std::size_t integer(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(std::string("expected ") + what, pos_);
        return std::stoull(text_.substr(start, pos_ - start));
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

struct RawTerm {
    Rat coeff;
    std::map<std::size_t, int> powers;  // variable index (1-based) -> exponent
};

}  // namespace detail

// Grammar:
//   poly    := ['-'] term (('+'|'-') term)*
//   term    := coeff ('*' varpow)* | varpow ('*' varpow)*
//   varpow  := 'x' INT ['^' INT]
//   coeff   := INT | INT '/' INT | DECIMAL
// Like terms are combined and zero terms dropped. nvars is the declared
// value, or the max variable index encountered (1 for a constant).
inline Polynomial parse_polynomial(const std::string& text, std::optional<int> nvars = {}) {
    detail::PolyLexer lex(text);
    if (lex.eof()) throw ParseError("empty input", 0);
    if (nvars && *nvars < 1) throw std::invalid_argument("declared nvars must be positive");

    std::vector<detail::RawTerm> raw;
    bool negate = false;
    if (lex.peek() == '-') {
        lex.get();
        negate = true;
    } else if (lex.peek() == '+') {
        throw ParseError("unexpected '+'", lex.pos());
    }

    std::size_t max_var = 0;
    for (;;) {
        detail::RawTerm term;
        term.coeff = negate ? Rat(-1) : Rat(1);

        auto read_varpow = [&]() {
            std::size_t at = lex.pos();
            if (lex.get() != 'x') throw ParseError("expected variable", at);
            std::size_t idx = lex.integer("variable index");
            if (idx == 0) throw ParseError("variable index must be >= 1", at);
            if (nvars && idx > static_cast<std::size_t>(*nvars))
                throw ParseError("variable index exceeds declared nvars", at);
            int exp = 1;
            if (lex.peek() == '^') {
                lex.get();
                exp = static_cast<int>(lex.integer("exponent"));
                if (exp < 1) throw ParseError("exponent must be >= 1", at);
            }
            term.powers[idx] += exp;
            max_var = std::max(max_var, idx);
        };

        if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
            std::string num = lex.number();
            if (lex.peek() == '/') {
                lex.get();
                num += "/" + lex.number();
            }
            term.coeff *= parse_rational(num);
            while (lex.peek() == '*') {
                lex.get();
                read_varpow();
            }
        } else if (lex.peek() == 'x') {
            read_varpow();
            while (lex.peek() == '*') {
                lex.get();
                read_varpow();
            }
        } else {
            throw ParseError("expected term", lex.pos());
        }
        raw.push_back(std::move(term));

        if (lex.eof()) break;
        char op = lex.get();
        if (op == '+')
            negate = false;
        else if (op == '-')
            negate = true;
        else
            throw ParseError("expected '+' or '-'", lex.pos() - 1);
        if (lex.eof()) throw ParseError("trailing operator", lex.pos());
    }

    int n = nvars ? *nvars : static_cast<int>(std::max<std::size_t>(max_var, 1));
    Polynomial p(n);
    for (const auto& t : raw) {
        DegreeVector alpha(n, 0);
        for (const auto& [idx, exp] : t.powers) alpha[idx - 1] = exp;
        p.add_term(alpha, t.coeff);
    }
    return p;
}

// Canonical text: total degree descending, ties in basis order (x1-major
// first), "0" for the zero polynomial. parse_polynomial(format_polynomial(p))
// == p.
inline std::string format_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<DegreeVector, Rat>> ordered(p.terms().begin(), p.terms().end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        int da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da > db;
        return graded_lex_precedes(a.first, b.first);
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [alpha, c] : ordered) {
        Rat mag = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;

        std::string vars;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i + 1);
            if (alpha[i] > 1) vars += "^" + std::to_string(alpha[i]);
        }
        if (vars.empty()) {
            out << rational_to_string(mag);
        } else if (mag == 1) {
            out << vars;
        } else {
            out << rational_to_string(mag) << "*" << vars;
        }
    }
    return out.str();
}

}  // namespace sosprep
