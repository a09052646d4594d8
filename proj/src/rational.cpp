#include "pwlfix/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace pwlfix {

Rational::Rational(long num, long den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    v_ = mpq_class(static_cast<signed long>(num), static_cast<signed long>(den));
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw ParseError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) throw ParseError("non-finite double cannot convert to rational");
    Rational r;
    mpq_set_d(r.v_.get_mpq_t(), d);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ParseError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw ParseError("reciprocal of zero");
    return Rational(den(), num());
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
    return p;
}

}  // namespace

Rational parse_rational(std::string_view token) {
    // Trim surrounding whitespace.
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
    if (token.empty()) throw ParseError("empty scalar token");

    const std::string text(token);

    if (auto slash = text.find('/'); slash != std::string::npos) {
        const std::string ns = text.substr(0, slash);
        const std::string ds = text.substr(slash + 1);
        try {
            // Base must be explicit: mpz_class's default auto-detect would
            // read a leading 0 as octal.
            mpz_class num(ns, 10), den(ds, 10);
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed rational token '" + text + "'");
        }
    }

    std::string_view rest = text;
    bool negative = false;
    if (rest.front() == '+' || rest.front() == '-') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    std::string_view mant = rest;
    long exp10 = 0;
    if (auto epos = rest.find_first_of("eE"); epos != std::string_view::npos) {
        mant = rest.substr(0, epos);
        std::string_view es = rest.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6) throw ParseError("malformed exponent in '" + text + "'");
        exp10 = std::stol(std::string(es));
        if (eneg) exp10 = -exp10;
    }

    std::string_view ipart = mant;
    std::string_view fpart;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
        ipart = mant.substr(0, dot);
        fpart = mant.substr(dot + 1);
    }
    if (ipart.empty() && fpart.empty()) throw ParseError("malformed scalar token '" + text + "'");
    if ((!ipart.empty() && !all_digits(ipart)) || (!fpart.empty() && !all_digits(fpart)))
        throw ParseError("malformed scalar token '" + text + "'");

    std::string digits = std::string(ipart) + std::string(fpart);
    mpz_class mantissa(digits.empty() ? "0" : digits, 10);
    if (negative) mantissa = -mantissa;

    const long shift = exp10 - static_cast<long>(fpart.size());
    if (shift >= 0) return Rational(mpz_class(mantissa * pow10(static_cast<unsigned long>(shift))), mpz_class(1));
    return Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
}

}  // namespace pwlfix
