#include "maap/rational.hpp"

#include <cctype>

namespace maap {

Rational::Rational(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::abs() const {
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::optional<Rational> Rational::try_parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpq_class q{mpz_class(std::string(num)), mpz_class(std::string(den))};
        if (q.get_den() == 0) return std::nullopt;
        q.canonicalize();
        r.v_ = q;
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ipart = s.substr(0, dot);
        std::string_view fpart = s.substr(dot + 1);
        if (ipart.empty() && fpart.empty()) return std::nullopt;
        if (!ipart.empty() && !all_digits(ipart)) return std::nullopt;
        if (!fpart.empty() && !all_digits(fpart)) return std::nullopt;
        mpz_class scale = 1;
        for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
        mpz_class num = ipart.empty() ? mpz_class(0) : mpz_class(std::string(ipart));
        num *= scale;
        if (!fpart.empty()) num += mpz_class(std::string(fpart));
        mpq_class q(num, scale);
        q.canonicalize();
        r.v_ = q;
    } else {
        if (!all_digits(s)) return std::nullopt;
        r.v_ = mpq_class(mpz_class(std::string(s)));
    }
    if (neg) r.v_ = -r.v_;
    return r;
}

Rational Rational::from_string(std::string_view s) {
    auto r = try_parse(s);
    if (!r) throw ParseError("cannot parse rational: '" + std::string(s) + "'");
    return *r;
}

}  // namespace maap
