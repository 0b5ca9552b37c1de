#pragma once

#include "hclab/borel_form.hpp"
#include "hclab/padic.hpp"
#include "hclab/rational.hpp"

#include <cstdint>
#include <vector>

namespace hclab {

/// Closed ball of a p-adic context in stored-residue coordinates: the stored
/// residues congruent to `center` modulo p^level. For the point x' and radius
/// p^{-j} this is x' + p^j Z_p with level = j + m.
struct Ball {
    std::uint64_t center = 0;
    unsigned level = 0;

    friend auto operator<=>(const Ball&, const Ball&) = default;
};

/// Finite union of p-adic balls. Every member is clopen, so boundaries are
/// empty and every nonempty member is Form1.
///
/// Normalized form: balls pairwise disjoint, no ball contained in another, no
/// complete family of p sibling balls (those merge into their parent), sorted
/// by (level, center).
class BallSet {
public:
    explicit BallSet(PAdicContext ctx);

    static BallSet whole(const PAdicContext& ctx);
    /// x' + p^j Z_p, j in [-m, K].
    static BallSet ball(const PAdicNumber& center, int radius_exp);
    static BallSet from_balls(const PAdicContext& ctx, std::vector<Ball> balls);

    const PAdicContext& context() const noexcept { return ctx_; }
    const std::vector<Ball>& balls() const noexcept { return balls_; }
    bool empty() const noexcept { return balls_.empty(); }

    /// Haar measure with the window normalized to 1: sum of p^{-level}.
    Rational measure() const;

    bool contains(const PAdicNumber& x) const;
    bool contains_residue(std::uint64_t residue) const;

    BallSet unite(const BallSet& other) const;
    BallSet intersect(const BallSet& other) const;
    BallSet complement() const;

    FormTag form() const noexcept { return balls_.empty() ? FormTag::Form2 : FormTag::Form1; }

    friend bool operator==(const BallSet& a, const BallSet& b) { return a.ctx_ == b.ctx_ && a.balls_ == b.balls_; }

private:
    void normalize();
    void check_context(const BallSet& other) const;

    PAdicContext ctx_;
    std::vector<Ball> balls_;
};

} // namespace hclab
