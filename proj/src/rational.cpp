#include "apdiv/rational.hpp"

#include <cctype>

namespace apdiv {

std::string rat_to_string(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::optional<Rat> parse_rational(std::string_view text) {
    std::size_t i = 0;
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out.push_back(text[i]);
            ++i;
        }
        return i > start;
    };
    std::string num, den;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        num.push_back(text[i]);
        ++i;
    }
    if (!digits(num)) return std::nullopt;
    if (i < text.size() && text[i] == '/') {
        ++i;
        if (!digits(den)) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    Int n(num);
    Int d = den.empty() ? Int(1) : Int(den);
    if (d == 0) return std::nullopt;
    return Rat(n, d);
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace apdiv
