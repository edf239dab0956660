#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace curvlab {

// Exponent vector of a monomial z^I in m variables.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t m) : exps_(m, 0) {}
    explicit MultiIndex(std::vector<int> exps);
    MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}

    static MultiIndex unit(std::size_t m, std::size_t i);

    std::size_t size() const { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<int>& exponents() const { return exps_; }

    int total_degree() const;
    bool is_zero() const { return total_degree() == 0; }

    // Componentwise I <= J (the order used for H_delta blocks).
    bool divides(const MultiIndex& other) const;

    MultiIndex operator+(const MultiIndex& other) const;
    MultiIndex operator-(const MultiIndex& other) const;

    // I! = prod I_k!
    double factorial() const;

    // Number of multi-indices J <= I, i.e. prod (I_k + 1).
    std::size_t box_size() const;

    // Positions carrying a nonzero exponent, and their count.
    std::vector<std::size_t> support() const;
    std::size_t support_size() const { return support().size(); }

    // All J <= I in colexicographic order.
    std::vector<MultiIndex> box() const;

    std::string to_string() const;

    bool operator==(const MultiIndex&) const = default;
    // Lexicographic on the raw vector; only used for map keys.
    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> exps_;
};

// Colexicographic comparison: compare exponents from the last position
// backwards, the first difference decides.
bool colex_less(const MultiIndex& a, const MultiIndex& b);

// All monomials of total degree <= order in m variables, stored by degree and
// colexicographically within a degree. Shared, immutable and cached.
class MonomialBasis {
public:
    static std::shared_ptr<const MonomialBasis> get(std::size_t m, int order);

    std::size_t vars() const { return m_; }
    int order() const { return order_; }
    std::size_t size() const { return monomials_.size(); }

    const MultiIndex& operator[](std::size_t k) const { return monomials_[k]; }
    const std::vector<MultiIndex>& monomials() const { return monomials_; }
    int degree(std::size_t k) const { return degrees_[k]; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Position of I, or npos if it is beyond the order.
    std::size_t find(const MultiIndex& idx) const;
    std::size_t index_of(const MultiIndex& idx) const; // throws if absent

    // Position of I + e_i, or npos.
    std::size_t raise(std::size_t k, std::size_t var) const { return raise_[k * m_ + var]; }
    // Position of I - e_i, or npos when I_i == 0.
    std::size_t lower(std::size_t k, std::size_t var) const { return lower_[k * m_ + var]; }

    // Pairs (P, I - P) over all P <= I; drives Cauchy products.
    struct Split {
        std::size_t left;
        std::size_t right;
    };
    const std::vector<Split>& splits(std::size_t k) const { return splits_[k]; }

    // Pairs (Q, P + Q) over all Q with P + Q in the basis: the inverse of splits.
    struct Shift {
        std::size_t other;
        std::size_t sum;
    };
    const std::vector<Shift>& shifts(std::size_t p) const { return shifts_[p]; }

    // First position of each degree block; degree_begin(order + 1) == size().
    std::size_t degree_begin(int d) const { return degree_begin_[static_cast<std::size_t>(d)]; }

private:
    MonomialBasis(std::size_t m, int order);

    std::size_t m_;
    int order_;
    std::vector<MultiIndex> monomials_;
    std::vector<int> degrees_;
    std::map<MultiIndex, std::size_t> lookup_;
    std::vector<std::size_t> raise_;
    std::vector<std::size_t> lower_;
    std::vector<std::vector<Split>> splits_;
    std::vector<std::vector<Shift>> shifts_;
    std::vector<std::size_t> degree_begin_;
};

} // namespace curvlab
