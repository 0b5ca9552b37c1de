#pragma once

#include "hclab/borel_form.hpp"
#include "hclab/errors.hpp"
#include "hclab/finite_group.hpp"
#include "hclab/rational.hpp"

#include <vector>

namespace hclab {

/// Arbitrary subset of a finite group. Every subset is clopen in the discrete
/// topology, so the algebra is the full power set.
class FiniteSubset {
public:
    FiniteSubset() = default;
    explicit FiniteSubset(std::size_t group_order) : bits_(group_order, false) {}

    static FiniteSubset whole(std::size_t group_order)
    {
        FiniteSubset s(group_order);
        s.bits_.assign(group_order, true);
        return s;
    }

    static FiniteSubset of(std::size_t group_order, const std::vector<FiniteElement>& members)
    {
        FiniteSubset s(group_order);
        for (FiniteElement x : members)
            s.insert(x);
        return s;
    }

    std::size_t group_order() const noexcept { return bits_.size(); }

    void insert(FiniteElement x)
    {
        if (x >= bits_.size())
            throw ContextMismatch("element outside the finite group");
        bits_[x] = true;
    }

    bool contains(FiniteElement x) const
    {
        if (x >= bits_.size())
            throw ContextMismatch("element outside the finite group");
        return bits_[x];
    }

    std::size_t size() const noexcept
    {
        std::size_t n = 0;
        for (bool b : bits_)
            n += b;
        return n;
    }

    bool empty() const noexcept { return size() == 0; }

    Rational measure() const { return Rational(static_cast<long>(size()), static_cast<long>(bits_.size())); }

    FiniteSubset unite(const FiniteSubset& other) const
    {
        check(other);
        FiniteSubset s = *this;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            s.bits_[i] = bits_[i] || other.bits_[i];
        return s;
    }

    FiniteSubset intersect(const FiniteSubset& other) const
    {
        check(other);
        FiniteSubset s = *this;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            s.bits_[i] = bits_[i] && other.bits_[i];
        return s;
    }

    FiniteSubset complement() const
    {
        FiniteSubset s = *this;
        s.bits_.flip();
        return s;
    }

    FormTag form() const noexcept { return empty() ? FormTag::Form2 : FormTag::Form1; }

    std::vector<FiniteElement> members() const
    {
        std::vector<FiniteElement> out;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i])
                out.push_back(i);
        return out;
    }

    friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

private:
    void check(const FiniteSubset& other) const
    {
        if (other.bits_.size() != bits_.size())
            throw ContextMismatch("subsets of groups of different order");
    }

    std::vector<bool> bits_;
};

} // namespace hclab
