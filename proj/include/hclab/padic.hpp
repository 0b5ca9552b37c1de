#pragma once

#include "hclab/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hclab {

/// Truncated p-adic group p^{-m} Z_p / p^K Z_p.
///
/// `precision` is K, `window` is m (0 for Z_p). Elements are stored through
/// the residue of p^m x modulo p^{K+m}, so the group is isomorphic to
/// Z / p^{K+m} Z and every operation below is exact on that quotient.
struct PAdicContext {
    unsigned p = 2;
    unsigned precision = 1;
    unsigned window = 0;

    unsigned digits() const noexcept { return precision + window; }
    std::uint64_t modulus() const;
    std::uint64_t power(unsigned e) const;
    bool is_zp() const noexcept { return window == 0; }

    /// Throws std::invalid_argument unless p is prime and p^{K+m} < 2^62.
    void validate() const;

    friend bool operator==(const PAdicContext&, const PAdicContext&) = default;
};

bool is_prime(unsigned n) noexcept;

/// Element of a PAdicContext, written additively.
class PAdicNumber {
public:
    explicit PAdicNumber(PAdicContext ctx);

    static PAdicNumber from_integer(const PAdicContext& ctx, long long value);
    /// Accepts any rational whose denominator has p-adic valuation <= m.
    static PAdicNumber from_rational(const PAdicContext& ctx, const Rational& value);
    /// Base-p digits of the stored residue, least significant first.
    static PAdicNumber from_digits(const PAdicContext& ctx, std::span<const unsigned> digits);
    static PAdicNumber from_residue(const PAdicContext& ctx, std::uint64_t residue);

    const PAdicContext& context() const noexcept { return ctx_; }
    std::uint64_t residue() const noexcept { return residue_; }
    /// Stored residue reduced to its lowest `level` digits.
    std::uint64_t residue_at(unsigned level) const;
    std::vector<unsigned> digits() const;

    /// v_p(x), or nullopt when every stored digit is zero (precision cap).
    std::optional<int> valuation() const;
    /// |x|_p = p^{-v_p(x)}, 0 at the precision cap.
    Rational norm() const;
    bool is_zero() const noexcept { return residue_ == 0; }

    PAdicNumber operator+(const PAdicNumber& other) const;
    PAdicNumber operator-(const PAdicNumber& other) const;
    PAdicNumber operator-() const;
    /// Ring product; only defined on Z_p contexts (window 0).
    PAdicNumber operator*(const PAdicNumber& other) const;
    PAdicNumber scaled(long long n) const;
    /// x * p^e for e >= 0.
    PAdicNumber times_p_power(unsigned e) const;
    /// x / p^e. Requires p^e to divide the stored residue; the e top digits
    /// that division cannot recover are filled with zeros.
    PAdicNumber divided_by_p_power(unsigned e) const;

    /// Canonical representative: "7" on Z_p, "7/3" for residue 7 in a window-1 context.
    std::string to_string() const;

    friend bool operator==(const PAdicNumber&, const PAdicNumber&) = default;

private:
    PAdicContext ctx_;
    std::uint64_t residue_ = 0;
};

/// Multiplicative inverse of a unit modulo `modulus`.
std::uint64_t inverse_mod(std::uint64_t value, std::uint64_t modulus);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) noexcept;

} // namespace hclab
