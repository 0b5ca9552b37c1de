#include "hclab/finite_group.hpp"

#include "hclab/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <stdexcept>

namespace hclab {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<FiniteElement>> cayley)
    : name_(std::move(name)), order_(cayley.size())
{
    if (order_ == 0)
        throw std::invalid_argument("FiniteGroup: empty Cayley table");
    table_.reserve(order_ * order_);
    for (const auto& r : cayley) {
        if (r.size() != order_)
            throw std::invalid_argument("FiniteGroup: Cayley table is not square");
        for (FiniteElement v : r) {
            if (v >= order_)
                throw std::invalid_argument("FiniteGroup: entry out of range");
            table_.push_back(v);
        }
    }

    // Latin square
    for (std::size_t i = 0; i < order_; ++i) {
        std::vector<bool> seen_row(order_, false), seen_col(order_, false);
        for (std::size_t j = 0; j < order_; ++j) {
            FiniteElement r = table_[i * order_ + j];
            FiniteElement c = table_[j * order_ + i];
            if (seen_row[r] || seen_col[c])
                throw std::invalid_argument("FiniteGroup: Cayley table of '" + name_ + "' is not a Latin square");
            seen_row[r] = seen_col[c] = true;
        }
    }

    bool found = false;
    for (std::size_t e = 0; e < order_ && !found; ++e) {
        bool is_identity = true;
        for (std::size_t x = 0; x < order_ && is_identity; ++x)
            is_identity = table_[e * order_ + x] == x && table_[x * order_ + e] == x;
        if (is_identity) {
            identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw std::invalid_argument("FiniteGroup: no identity in '" + name_ + "'");

    inverses_.assign(order_, 0);
    for (std::size_t x = 0; x < order_; ++x) {
        for (std::size_t y = 0; y < order_; ++y) {
            if (table_[x * order_ + y] == identity_) {
                if (table_[y * order_ + x] != identity_)
                    throw std::invalid_argument("FiniteGroup: one-sided inverse in '" + name_ + "'");
                inverses_[x] = y;
                break;
            }
        }
    }

    if (order_ <= 64) {
        for (std::size_t x = 0; x < order_; ++x)
            for (std::size_t y = 0; y < order_; ++y)
                for (std::size_t z = 0; z < order_; ++z) {
                    FiniteElement xy = table_[x * order_ + y];
                    FiniteElement yz = table_[y * order_ + z];
                    if (table_[xy * order_ + z] != table_[x * order_ + yz])
                        throw std::invalid_argument("FiniteGroup: '" + name_ + "' is not associative");
                }
    }
}

void FiniteGroup::check(FiniteElement x) const
{
    if (x >= order_)
        throw ContextMismatch("element " + std::to_string(x) + " is not in " + name_);
}

FiniteElement FiniteGroup::mul(FiniteElement x, FiniteElement y) const
{
    check(x);
    check(y);
    return table_[x * order_ + y];
}

FiniteElement FiniteGroup::inverse(FiniteElement x) const
{
    check(x);
    return inverses_[x];
}

FiniteElement FiniteGroup::pow(FiniteElement a, long long n) const
{
    check(a);
    FiniteElement base = n < 0 ? inverses_[a] : a;
    // negate through unsigned to stay defined for LLONG_MIN
    unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
    FiniteElement result = identity_;
    while (e != 0) {
        if (e & 1ULL)
            result = table_[result * order_ + base];
        e >>= 1ULL;
        base = table_[base * order_ + base];
    }
    return result;
}

std::size_t FiniteGroup::element_order(FiniteElement a) const
{
    check(a);
    std::size_t n = 1;
    FiniteElement x = a;
    while (x != identity_) {
        x = table_[x * order_ + a];
        ++n;
    }
    return n;
}

bool FiniteGroup::generates(FiniteElement a) const
{
    return element_order(a) == order_;
}

bool FiniteGroup::is_cyclic() const
{
    for (FiniteElement a = 0; a < order_; ++a)
        if (generates(a))
            return true;
    return false;
}

std::span<const FiniteElement> FiniteGroup::row(FiniteElement x) const
{
    check(x);
    return {table_.data() + x * order_, order_};
}

FiniteGroup cyclic_group(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("cyclic_group: order must be positive");
    std::vector<std::vector<FiniteElement>> t(n, std::vector<FiniteElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = (i + j) % n;
    return FiniteGroup("Z" + std::to_string(n), std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h)
{
    const std::size_t ng = g.order(), nh = h.order();
    std::vector<std::vector<FiniteElement>> t(ng * nh, std::vector<FiniteElement>(ng * nh));
    for (std::size_t a = 0; a < ng * nh; ++a)
        for (std::size_t b = 0; b < ng * nh; ++b)
            t[a][b] = g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh);
    return FiniteGroup(g.name() + "x" + h.name(), std::move(t));
}

namespace {

using Perm = std::vector<std::size_t>;

Perm compose(const Perm& p, const Perm& q)
{
    // (p q)(i) = p(q(i))
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = p[q[i]];
    return r;
}

FiniteGroup from_generators(std::string name, const std::vector<Perm>& generators)
{
    const std::size_t degree = generators.front().size();
    Perm id(degree);
    for (std::size_t i = 0; i < degree; ++i)
        id[i] = i;
    std::vector<Perm> elements{id};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const Perm& g : generators) {
            Perm next = compose(elements[i], g);
            if (std::find(elements.begin(), elements.end(), next) == elements.end())
                elements.push_back(std::move(next));
        }
    }
    std::sort(elements.begin(), elements.end());
    std::map<Perm, std::size_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i)
        index[elements[i]] = i;
    std::vector<std::vector<FiniteElement>> t(elements.size(), std::vector<FiniteElement>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
            t[i][j] = index.at(compose(elements[i], elements[j]));
    return FiniteGroup(std::move(name), std::move(t));
}

} // namespace

FiniteGroup klein_four_group()
{
    FiniteGroup z2 = cyclic_group(2);
    FiniteGroup v = direct_product(z2, z2);
    std::vector<std::vector<FiniteElement>> t(4, std::vector<FiniteElement>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            t[i][j] = v.mul(i, j);
    return FiniteGroup("V4", std::move(t));
}

FiniteGroup symmetric_group_3()
{
    return from_generators("S3", {{1, 0, 2}, {1, 2, 0}});
}

FiniteGroup dihedral_group_4()
{
    // rotation and reflection of the square's vertices
    return from_generators("D4", {{1, 2, 3, 0}, {0, 3, 2, 1}});
}

FiniteGroup alternating_group_4()
{
    return from_generators("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}});
}

FiniteGroup quaternion_group()
{
    // elements +-1, +-i, +-j, +-k as (sign, unit) with unit 0..3 = 1,i,j,k
    struct Q {
        int sign;
        int unit;
    };
    // unit products: table[u][v] = (sign, unit)
    static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> prod{{
        {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
        {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
        {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
        {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
    }};
    auto encode = [](Q q) { return static_cast<std::size_t>(q.unit * 2 + (q.sign < 0 ? 1 : 0)); };
    auto decode = [](std::size_t i) { return Q{(i % 2) ? -1 : 1, static_cast<int>(i / 2)}; };
    std::vector<std::vector<FiniteElement>> t(8, std::vector<FiniteElement>(8));
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            Q x = decode(a), y = decode(b);
            auto [s, u] = prod[x.unit][y.unit];
            t[a][b] = encode(Q{x.sign * y.sign * s, u});
        }
    return FiniteGroup("Q8", std::move(t));
}

FiniteGroup finite_group_by_name(std::string_view name)
{
    if (name == "V4")
        return klein_four_group();
    if (name == "S3")
        return symmetric_group_3();
    if (name == "D4")
        return dihedral_group_4();
    if (name == "Q8")
        return quaternion_group();
    if (name == "A4")
        return alternating_group_4();

    // products of cyclic factors: Z2xZ4xZ2, ...
    std::vector<std::size_t> factors;
    std::string_view rest = name;
    while (!rest.empty()) {
        if (rest.front() != 'Z')
            throw ParseError("unknown finite group '" + std::string(name) + "'");
        rest.remove_prefix(1);
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
        if (ec != std::errc() || n == 0)
            throw ParseError("unknown finite group '" + std::string(name) + "'");
        factors.push_back(n);
        rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
        if (!rest.empty()) {
            if (rest.front() != 'x')
                throw ParseError("unknown finite group '" + std::string(name) + "'");
            rest.remove_prefix(1);
            if (rest.empty())
                throw ParseError("unknown finite group '" + std::string(name) + "'");
        }
    }
    if (factors.empty())
        throw ParseError("unknown finite group '" + std::string(name) + "'");
    std::size_t total = 1;
    for (std::size_t f : factors) {
        total *= f;
        if (total > 4096)
            throw ParseError("finite group '" + std::string(name) + "' is too large");
    }
    FiniteGroup g = cyclic_group(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i)
        g = direct_product(g, cyclic_group(factors[i]));
    return g;
}

std::vector<FiniteGroup> finite_group_catalog()
{
    std::vector<FiniteGroup> groups;
    for (std::size_t n = 1; n <= 16; ++n)
        groups.push_back(cyclic_group(n));
    groups.push_back(klein_four_group());
    for (const char* name : {"Z2xZ4", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ6", "Z2xZ8", "Z4xZ4", "Z2xZ2xZ4", "Z2xZ2xZ2xZ2"})
        groups.push_back(finite_group_by_name(name));
    groups.push_back(symmetric_group_3());
    groups.push_back(dihedral_group_4());
    groups.push_back(quaternion_group());
    groups.push_back(alternating_group_4());
    return groups;
}

} // namespace hclab
