#include "hclab/padic.hpp"

#include "hclab/errors.hpp"

#include <stdexcept>

namespace hclab {

bool is_prime(unsigned n) noexcept
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::uint64_t PAdicContext::power(unsigned e) const
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= p;
    return r;
}

std::uint64_t PAdicContext::modulus() const
{
    return power(digits());
}

void PAdicContext::validate() const
{
    if (!is_prime(p))
        throw std::invalid_argument("p-adic context: p = " + std::to_string(p) + " is not prime");
    if (precision == 0)
        throw std::invalid_argument("p-adic context: precision must be at least 1");
    unsigned __int128 m = 1;
    for (unsigned i = 0; i < digits(); ++i) {
        m *= p;
        if (m >= (static_cast<unsigned __int128>(1) << 62))
            throw std::invalid_argument("p-adic context: p^(K+m) does not fit in 62 bits");
    }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) noexcept
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus);
}

std::uint64_t inverse_mod(std::uint64_t value, std::uint64_t modulus)
{
    if (modulus == 1)
        return 0;
    __int128 t = 0, new_t = 1;
    __int128 r = modulus, new_r = value % modulus;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1)
        throw std::domain_error("inverse_mod: value is not a unit");
    if (t < 0)
        t += modulus;
    return static_cast<std::uint64_t>(t);
}

PAdicNumber::PAdicNumber(PAdicContext ctx) : ctx_(ctx)
{
    ctx_.validate();
}

PAdicNumber PAdicNumber::from_residue(const PAdicContext& ctx, std::uint64_t residue)
{
    PAdicNumber x(ctx);
    x.residue_ = residue % ctx.modulus();
    return x;
}

PAdicNumber PAdicNumber::from_integer(const PAdicContext& ctx, long long value)
{
    PAdicNumber x(ctx);
    const std::uint64_t mod = ctx.modulus();
    // p^m * value mod p^{K+m}
    __int128 v = static_cast<__int128>(value) % static_cast<__int128>(mod);
    if (v < 0)
        v += mod;
    x.residue_ = mul_mod(static_cast<std::uint64_t>(v), ctx.power(ctx.window) % mod, mod);
    return x;
}

PAdicNumber PAdicNumber::from_rational(const PAdicContext& ctx, const Rational& value)
{
    PAdicNumber x(ctx);
    const std::uint64_t mod = ctx.modulus();
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    unsigned den_val = 0;
    while (den % ctx.p == 0) {
        den /= ctx.p;
        ++den_val;
    }
    if (den_val > ctx.window)
        throw WindowExceeded("rational " + hclab::to_string(value) + " has valuation below -" +
                             std::to_string(ctx.window));
    auto reduce = [mod](const BigInt& n) {
        BigInt r = n % mod;
        if (r < 0)
            r += mod;
        return r.convert_to<std::uint64_t>();
    };
    std::uint64_t n = reduce(num);
    std::uint64_t unit_inv = inverse_mod(reduce(den), mod);
    std::uint64_t shift = ctx.power(ctx.window - den_val) % mod;
    x.residue_ = mul_mod(mul_mod(n, unit_inv, mod), shift, mod);
    return x;
}

PAdicNumber PAdicNumber::from_digits(const PAdicContext& ctx, std::span<const unsigned> digits)
{
    if (digits.size() > ctx.digits())
        throw std::invalid_argument("PAdicNumber: more digits than the context stores");
    std::uint64_t r = 0, scale = 1;
    for (unsigned d : digits) {
        if (d >= ctx.p)
            throw std::invalid_argument("PAdicNumber: digit out of range");
        r += d * scale;
        scale *= ctx.p;
    }
    return from_residue(ctx, r);
}

std::uint64_t PAdicNumber::residue_at(unsigned level) const
{
    if (level > ctx_.digits())
        level = ctx_.digits();
    return residue_ % ctx_.power(level);
}

std::vector<unsigned> PAdicNumber::digits() const
{
    std::vector<unsigned> d(ctx_.digits());
    std::uint64_t r = residue_;
    for (auto& digit : d) {
        digit = static_cast<unsigned>(r % ctx_.p);
        r /= ctx_.p;
    }
    return d;
}

std::optional<int> PAdicNumber::valuation() const
{
    if (residue_ == 0)
        return std::nullopt;
    int v = 0;
    std::uint64_t r = residue_;
    while (r % ctx_.p == 0) {
        r /= ctx_.p;
        ++v;
    }
    return v - static_cast<int>(ctx_.window);
}

Rational PAdicNumber::norm() const
{
    auto v = valuation();
    if (!v)
        return Rational(0);
    if (*v >= 0)
        return Rational(1, BigInt(ctx_.power(static_cast<unsigned>(*v))));
    return Rational(BigInt(ctx_.power(static_cast<unsigned>(-*v))));
}

PAdicNumber PAdicNumber::operator+(const PAdicNumber& other) const
{
    if (!(ctx_ == other.ctx_))
        throw ContextMismatch("p-adic addition across different contexts");
    const std::uint64_t mod = ctx_.modulus();
    return from_residue(ctx_, (residue_ + other.residue_) % mod);
}

PAdicNumber PAdicNumber::operator-() const
{
    const std::uint64_t mod = ctx_.modulus();
    return from_residue(ctx_, (mod - residue_) % mod);
}

PAdicNumber PAdicNumber::operator-(const PAdicNumber& other) const
{
    return *this + (-other);
}

PAdicNumber PAdicNumber::operator*(const PAdicNumber& other) const
{
    if (!(ctx_ == other.ctx_))
        throw ContextMismatch("p-adic product across different contexts");
    if (!ctx_.is_zp())
        throw WindowExceeded("p-adic ring product is only available on Z_p contexts");
    return from_residue(ctx_, mul_mod(residue_, other.residue_, ctx_.modulus()));
}

PAdicNumber PAdicNumber::scaled(long long n) const
{
    const std::uint64_t mod = ctx_.modulus();
    __int128 v = static_cast<__int128>(n) % static_cast<__int128>(mod);
    if (v < 0)
        v += mod;
    return from_residue(ctx_, mul_mod(residue_, static_cast<std::uint64_t>(v), mod));
}

PAdicNumber PAdicNumber::times_p_power(unsigned e) const
{
    if (e >= ctx_.digits())
        return PAdicNumber(ctx_);
    return from_residue(ctx_, mul_mod(residue_, ctx_.power(e), ctx_.modulus()));
}

PAdicNumber PAdicNumber::divided_by_p_power(unsigned e) const
{
    if (e > ctx_.digits() || residue_ % ctx_.power(e) != 0)
        throw WindowExceeded("division by p^" + std::to_string(e) + " leaves the window");
    return from_residue(ctx_, residue_ / ctx_.power(e));
}

std::string PAdicNumber::to_string() const
{
    if (ctx_.is_zp())
        return std::to_string(residue_);
    return hclab::to_string(Rational(BigInt(residue_), BigInt(ctx_.power(ctx_.window))));
}

} // namespace hclab
