#include "hclab/ball_set.hpp"

#include "hclab/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hclab {

namespace {

// b is contained in (or equal to) outer
bool inside(const Ball& b, const Ball& outer, const PAdicContext& ctx)
{
    return b.level >= outer.level && b.center % ctx.power(outer.level) == outer.center;
}

bool intersects(const Ball& a, const Ball& b, const PAdicContext& ctx)
{
    return inside(a, b, ctx) || inside(b, a, ctx);
}

} // namespace

BallSet::BallSet(PAdicContext ctx) : ctx_(ctx)
{
    ctx_.validate();
}

BallSet BallSet::whole(const PAdicContext& ctx)
{
    BallSet s(ctx);
    s.balls_.push_back({0, 0});
    return s;
}

BallSet BallSet::ball(const PAdicNumber& center, int radius_exp)
{
    const PAdicContext& ctx = center.context();
    const int level = radius_exp + static_cast<int>(ctx.window);
    if (level < 0 || level > static_cast<int>(ctx.digits()))
        throw WindowExceeded("ball radius exponent " + std::to_string(radius_exp) + " is outside [-" +
                             std::to_string(ctx.window) + ", " + std::to_string(ctx.precision) + "]");
    BallSet s(ctx);
    const auto lv = static_cast<unsigned>(level);
    s.balls_.push_back({center.residue_at(lv), lv});
    return s;
}

BallSet BallSet::from_balls(const PAdicContext& ctx, std::vector<Ball> balls)
{
    BallSet s(ctx);
    for (Ball& b : balls) {
        if (b.level > ctx.digits())
            throw WindowExceeded("ball level " + std::to_string(b.level) + " exceeds the stored precision");
        b.center %= ctx.power(b.level);
    }
    s.balls_ = std::move(balls);
    s.normalize();
    return s;
}

void BallSet::normalize()
{
    std::sort(balls_.begin(), balls_.end());
    balls_.erase(std::unique(balls_.begin(), balls_.end()), balls_.end());

    // drop balls inside a coarser one
    std::vector<Ball> kept;
    for (const Ball& b : balls_) {
        bool covered = false;
        for (const Ball& k : kept)
            if (inside(b, k, ctx_)) {
                covered = true;
                break;
            }
        if (!covered)
            kept.push_back(b);
    }

    // merge complete sibling families, finest level first
    std::map<unsigned, std::set<std::uint64_t>> by_level;
    for (const Ball& b : kept)
        by_level[b.level].insert(b.center);
    for (unsigned level = ctx_.digits(); level > 0; --level) {
        auto it = by_level.find(level);
        if (it == by_level.end())
            continue;
        const std::uint64_t parent_mod = ctx_.power(level - 1);
        std::map<std::uint64_t, unsigned> family;
        for (std::uint64_t c : it->second)
            ++family[c % parent_mod];
        for (const auto& [parent, count] : family) {
            if (count != ctx_.p)
                continue;
            for (unsigned t = 0; t < ctx_.p; ++t)
                it->second.erase(parent + t * parent_mod);
            by_level[level - 1].insert(parent);
        }
    }

    balls_.clear();
    for (const auto& [level, centers] : by_level)
        for (std::uint64_t c : centers)
            balls_.push_back({c, level});
    std::sort(balls_.begin(), balls_.end());
}

void BallSet::check_context(const BallSet& other) const
{
    if (!(ctx_ == other.ctx_))
        throw ContextMismatch("ball sets from different p-adic contexts");
}

Rational BallSet::measure() const
{
    Rational m = 0;
    for (const Ball& b : balls_)
        m += Rational(1, BigInt(ctx_.power(b.level)));
    return m;
}

bool BallSet::contains_residue(std::uint64_t residue) const
{
    for (const Ball& b : balls_)
        if (residue % ctx_.power(b.level) == b.center)
            return true;
    return false;
}

bool BallSet::contains(const PAdicNumber& x) const
{
    if (!(x.context() == ctx_))
        throw ContextMismatch("p-adic element from a different context");
    return contains_residue(x.residue());
}

BallSet BallSet::unite(const BallSet& other) const
{
    check_context(other);
    std::vector<Ball> all = balls_;
    all.insert(all.end(), other.balls_.begin(), other.balls_.end());
    return from_balls(ctx_, std::move(all));
}

BallSet BallSet::complement() const
{
    std::vector<Ball> out;
    auto recurse = [&](auto&& self, const Ball& b) -> void {
        bool hit = false;
        for (const Ball& s : balls_) {
            if (inside(b, s, ctx_))
                return;
            hit = hit || intersects(b, s, ctx_);
        }
        if (!hit) {
            out.push_back(b);
            return;
        }
        const std::uint64_t step = ctx_.power(b.level);
        for (unsigned t = 0; t < ctx_.p; ++t)
            self(self, Ball{b.center + t * step, b.level + 1});
    };
    recurse(recurse, Ball{0, 0});
    return from_balls(ctx_, std::move(out));
}

BallSet BallSet::intersect(const BallSet& other) const
{
    check_context(other);
    std::vector<Ball> out;
    for (const Ball& a : balls_)
        for (const Ball& b : other.balls_) {
            if (inside(a, b, ctx_))
                out.push_back(a);
            else if (inside(b, a, ctx_))
                out.push_back(b);
        }
    return from_balls(ctx_, std::move(out));
}

} // namespace hclab
