#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hclab {

/// Elements of a finite group are indices into its Cayley table.
using FiniteElement = std::size_t;

/// A finite group given by an explicit Cayley table.
///
/// Construction validates the group axioms: the table must be a Latin square
/// with a two-sided identity, and for orders up to 64 associativity is checked
/// exhaustively. The group is written multiplicatively.
class FiniteGroup {
public:
    FiniteGroup(std::string name, std::vector<std::vector<FiniteElement>> cayley);

    const std::string& name() const noexcept { return name_; }
    std::size_t order() const noexcept { return order_; }
    FiniteElement identity() const noexcept { return identity_; }
    bool contains(FiniteElement x) const noexcept { return x < order_; }

    FiniteElement mul(FiniteElement x, FiniteElement y) const;
    FiniteElement inverse(FiniteElement x) const;

    /// a^n for any integer n, by repeated squaring.
    FiniteElement pow(FiniteElement a, long long n) const;

    /// Least n >= 1 with a^n = e.
    std::size_t element_order(FiniteElement a) const;

    /// True iff <a> = G.
    bool generates(FiniteElement a) const;
    bool is_cyclic() const;

    std::span<const FiniteElement> row(FiniteElement x) const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b)
    {
        return a.name_ == b.name_ && a.table_ == b.table_;
    }

private:
    void check(FiniteElement x) const;

    std::string name_;
    std::size_t order_ = 0;
    std::vector<FiniteElement> table_;
    FiniteElement identity_ = 0;
    std::vector<FiniteElement> inverses_;
};

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup klein_four_group();
FiniteGroup symmetric_group_3();
FiniteGroup dihedral_group_4();
FiniteGroup quaternion_group();
FiniteGroup alternating_group_4();

/// Resolves "Z6", "Z2xZ4", "V4", "S3", "D4", "Q8", "A4".
FiniteGroup finite_group_by_name(std::string_view name);

/// Every built-in group: cyclic groups up to order 16, the abelian products of
/// order at most 16, and the non-abelian samples S3, D4, Q8, A4.
std::vector<FiniteGroup> finite_group_catalog();

} // namespace hclab
