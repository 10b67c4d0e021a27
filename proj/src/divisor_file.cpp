#include "apdiv/divisor_file.hpp"

#include "apdiv/errors.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace apdiv {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int line;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip();
        if (pos_ >= text_.size()) return {Token::End, "", line_};
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return {Token::Ident, std::string(text_.substr(start, pos_ - start)), line_};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            std::size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                    text_[pos_] == '.'))
                ++pos_;
            return {Token::Number, std::string(text_.substr(start, pos_ - start)), line_};
        }
        if (c == '{' || c == '}' || c == '[' || c == ']' || c == ',' || c == '=') {
            ++pos_;
            return {Token::Punct, std::string(1, c), line_};
        }
        throw ParseError("line " + std::to_string(line_) + ": unexpected character '" +
                         std::string(1, c) + "'");
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { advance(); }

    Divisor parse() {
        FieldPtr field;
        if (cur_.kind == Token::Ident && cur_.text == "field") {
            advance();
            field = parse_field_block();
        } else {
            field = field_rationals();
        }

        expect_ident("m");
        expect_punct("=");
        long long m = take_integer("m");
        if (m < 1) fail("m must be >= 1");

        std::vector<Pair> pairs;
        while (cur_.kind != Token::End) {
            expect_ident("pair");
            int line = cur_.line;
            expect_ident("mult");
            expect_punct("=");
            long long mult = take_integer("mult");
            if (mult == 0) fail_at(line, "pair multiplicity must be nonzero");
            expect_ident("lambda");
            expect_punct("=");
            ScalarVec lambda = take_vector(field, m);
            expect_ident("mu");
            expect_punct("=");
            ScalarVec mu = take_vector(field, m);
            if (is_zero_vec(lambda) && is_zero_vec(mu))
                fail_at(line, "the zero pair is not a valid summand");
            pairs.push_back(Pair{std::move(lambda), std::move(mu), mult});
        }
        return Divisor(std::move(field), static_cast<int>(m), std::move(pairs));
    }

private:
    Lexer lex_;
    Token cur_{Token::End, "", 0};

    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg) { fail_at(cur_.line, msg); }
    [[noreturn]] void fail_at(int line, const std::string& msg) {
        throw ParseError("line " + std::to_string(line) + ": " + msg);
    }

    void expect_ident(const std::string& name) {
        if (cur_.kind != Token::Ident || cur_.text != name)
            fail("expected '" + name + "', found '" + cur_.text + "'");
        advance();
    }

    void expect_punct(const std::string& p) {
        if (cur_.kind != Token::Punct || cur_.text != p)
            fail("expected '" + p + "', found '" + cur_.text + "'");
        advance();
    }

    Rat take_rational(const char* what) {
        if (cur_.kind != Token::Number)
            fail(std::string("expected a rational for ") + what + ", found '" + cur_.text + "'");
        auto r = parse_rational(cur_.text);
        if (!r) fail("malformed rational '" + cur_.text + "' (exact p/q only, no floats)");
        advance();
        return *r;
    }

    long long take_integer(const char* what) {
        Rat r = take_rational(what);
        if (boost::multiprecision::denominator(r) != 1)
            fail(std::string(what) + " must be an integer");
        Int n = boost::multiprecision::numerator(r);
        if (n > std::numeric_limits<long long>::max() ||
            n < std::numeric_limits<long long>::min())
            fail(std::string(what) + " out of range");
        return n.convert_to<long long>();
    }

    std::vector<Rat> take_rational_list(const char* what) {
        expect_punct("[");
        std::vector<Rat> out;
        if (!(cur_.kind == Token::Punct && cur_.text == "]")) {
            out.push_back(take_rational(what));
            while (cur_.kind == Token::Punct && cur_.text == ",") {
                advance();
                out.push_back(take_rational(what));
            }
        }
        expect_punct("]");
        return out;
    }

    FieldPtr parse_field_block() {
        expect_punct("{");
        std::vector<Rat> minpoly;
        std::vector<Rat> interval;
        bool assert_irreducible = false;
        bool saw_minpoly = false, saw_interval = false, saw_flag = false;
        while (!(cur_.kind == Token::Punct && cur_.text == "}")) {
            if (cur_.kind != Token::Ident) fail("expected a field key");
            std::string key = cur_.text;
            advance();
            expect_punct("=");
            if (key == "minpoly") {
                if (saw_minpoly) fail("duplicate minpoly");
                minpoly = take_rational_list("minpoly");
                saw_minpoly = true;
            } else if (key == "interval") {
                if (saw_interval) fail("duplicate interval");
                interval = take_rational_list("interval");
                saw_interval = true;
            } else if (key == "assert_irreducible") {
                if (saw_flag) fail("duplicate assert_irreducible");
                if (cur_.kind != Token::Ident || (cur_.text != "true" && cur_.text != "false"))
                    fail("assert_irreducible must be true or false");
                assert_irreducible = cur_.text == "true";
                advance();
                saw_flag = true;
            } else {
                fail("unknown field key '" + key + "'");
            }
            if (cur_.kind == Token::Punct && cur_.text == ",") advance();
        }
        expect_punct("}");
        if (!saw_minpoly) fail("field block needs minpoly");
        if (!saw_interval) fail("field block needs interval");
        if (interval.size() != 2) fail("interval needs exactly two endpoints");
        return field_new(std::move(minpoly), interval[0], interval[1], assert_irreducible);
    }

    Scalar take_scalar(const FieldPtr& field) {
        if (cur_.kind == Token::Punct && cur_.text == "[") {
            int line = cur_.line;
            std::vector<Rat> coeffs = take_rational_list("scalar coefficient");
            if (coeffs.size() > static_cast<std::size_t>(field->degree()))
                fail_at(line, "scalar literal longer than the field degree");
            return Scalar(field, std::move(coeffs));
        }
        return Scalar::rational(field, take_rational("scalar"));
    }

    ScalarVec take_vector(const FieldPtr& field, long long m) {
        int line = cur_.line;
        expect_punct("[");
        ScalarVec out;
        if (!(cur_.kind == Token::Punct && cur_.text == "]")) {
            out.push_back(take_scalar(field));
            while (cur_.kind == Token::Punct && cur_.text == ",") {
                advance();
                out.push_back(take_scalar(field));
            }
        }
        expect_punct("]");
        if (static_cast<long long>(out.size()) != m)
            fail_at(line, "vector has " + std::to_string(out.size()) + " components, need " +
                              std::to_string(m));
        return out;
    }
};

}  // namespace

Divisor parse_divisor(std::string_view text) { return Parser(text).parse(); }

Divisor load_divisor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_divisor(ss.str());
}

}  // namespace apdiv
