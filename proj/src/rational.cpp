#include "vmet/rational.hpp"

#include <cctype>
#include <ostream>

namespace vmet {

static bool valid_int_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::optional<Rational> Rational::try_parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_int_token(text)) return std::nullopt;
        return Rational(mpq_class(mpz_class(text)));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid_int_token(num) || !valid_int_token(den)) return std::nullopt;
    mpz_class d(den);
    if (d == 0) return std::nullopt;
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::parse(const std::string& text) {
    auto r = try_parse(text);
    if (!r) throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    return *r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace vmet
