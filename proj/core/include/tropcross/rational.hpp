#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropcross {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

enum class ErrorKind { Validation, Format, RetryBudget, Precondition };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Accepts "p", "p/q", "-p/q"; throws Error(Format).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);
Rational abs_of(const Rational& r);
int sign_of(const Rational& r);
double to_double(const Rational& r);
std::int64_t to_int64(const BigInt& z);
BigInt lcm_of(const BigInt& a, const BigInt& b);

// Edge length: a positive rational or the INFINITE tag.
class Length {
public:
    Length() = default;
    explicit Length(Rational value);
    static Length infinite();

    bool is_infinite() const noexcept { return infinite_; }
    // Throws Error(Precondition) on an infinite length.
    const Rational& value() const;

    friend bool operator==(const Length& a, const Length& b);
    friend bool operator<(const Length& a, const Length& b);

private:
    Rational value_{1};
    bool infinite_ = false;
};

// "inf" or a rational string.
Length parse_length(std::string_view text);
std::string to_string(const Length& len);

using IVec = std::vector<std::int64_t>;

std::int64_t gcd_of(const IVec& v);
// Throws if v is zero.
IVec primitive_of(const IVec& v);

}  // namespace tropcross
