#include "tropcross/rational.hpp"

#include <numeric>

namespace tropcross {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { fail(ErrorKind::Format, "malformed rational '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view part, bool allow_sign) {
        if (part.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
    if (num[0] == '+') num.erase(0, 1);
    BigInt n(num), d(den);
    if (d == 0) bad();
    return Rational(n, d);
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

BigInt floor_of(const Rational& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::int64_t to_int64(const BigInt& z) {
    if (z > BigInt(INT64_MAX) || z < BigInt(INT64_MIN))
        fail(ErrorKind::Validation, "integer out of 64-bit range");
    return z.convert_to<std::int64_t>();
}

BigInt lcm_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

Length::Length(Rational value) : value_(std::move(value)) {
    if (value_ <= 0) fail(ErrorKind::Validation, "edge length must be positive, got " + to_string(value_));
}

Length Length::infinite() {
    Length l;
    l.infinite_ = true;
    return l;
}

const Rational& Length::value() const {
    if (infinite_) fail(ErrorKind::Precondition, "value() of an infinite length");
    return value_;
}

bool operator==(const Length& a, const Length& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

bool operator<(const Length& a, const Length& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
}

Length parse_length(std::string_view text) {
    if (text == "inf") return Length::infinite();
    return Length(parse_rational(text));
}

std::string to_string(const Length& len) { return len.is_infinite() ? "inf" : to_string(len.value()); }

std::int64_t gcd_of(const IVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

IVec primitive_of(const IVec& v) {
    auto g = gcd_of(v);
    if (g == 0) fail(ErrorKind::Validation, "zero direction vector");
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

}  // namespace tropcross
