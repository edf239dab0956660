#include "curvlab/multi_index.hpp"

#include "curvlab/error.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace curvlab {

MultiIndex::MultiIndex(std::vector<int> exps) : exps_(std::move(exps))
{
    for (int e : exps_) {
        if (e < 0)
            throw Error("MultiIndex: negative exponent");
    }
}

MultiIndex MultiIndex::unit(std::size_t m, std::size_t i)
{
    MultiIndex r(m);
    r.exps_.at(i) = 1;
    return r;
}

int MultiIndex::total_degree() const
{
    return std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool MultiIndex::divides(const MultiIndex& other) const
{
    if (other.size() != size())
        return false;
    for (std::size_t k = 0; k < size(); ++k) {
        if (exps_[k] > other.exps_[k])
            return false;
    }
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const
{
    if (other.size() != size())
        throw ShapeMismatch("MultiIndex: size mismatch");
    MultiIndex r(*this);
    for (std::size_t k = 0; k < size(); ++k)
        r.exps_[k] += other.exps_[k];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const
{
    if (other.size() != size())
        throw ShapeMismatch("MultiIndex: size mismatch");
    std::vector<int> e(exps_);
    for (std::size_t k = 0; k < size(); ++k)
        e[k] -= other.exps_[k];
    return MultiIndex(std::move(e));
}

double MultiIndex::factorial() const
{
    double f = 1.0;
    for (int e : exps_) {
        for (int j = 2; j <= e; ++j)
            f *= j;
    }
    return f;
}

std::size_t MultiIndex::box_size() const
{
    std::size_t p = 1;
    for (int e : exps_)
        p *= static_cast<std::size_t>(e + 1);
    return p;
}

std::vector<std::size_t> MultiIndex::support() const
{
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < size(); ++k) {
        if (exps_[k] != 0)
            s.push_back(k);
    }
    return s;
}

std::vector<MultiIndex> MultiIndex::box() const
{
    // Odometer with the first position running fastest yields colex order.
    std::vector<MultiIndex> out;
    out.reserve(box_size());
    std::vector<int> cur(size(), 0);
    while (true) {
        out.emplace_back(cur);
        std::size_t k = 0;
        while (k < size() && cur[k] == exps_[k]) {
            cur[k] = 0;
            ++k;
        }
        if (k == size())
            break;
        ++cur[k];
    }
    return out;
}

std::string MultiIndex::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < size(); ++k)
        os << (k ? "," : "") << exps_[k];
    os << ')';
    return os.str();
}

bool colex_less(const MultiIndex& a, const MultiIndex& b)
{
    for (std::size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k])
            return a[k] < b[k];
    }
    return false;
}

namespace {

void enumerate_degree(std::size_t m, int d, std::vector<int>& cur, std::size_t pos,
                      std::vector<MultiIndex>& out)
{
    if (pos + 1 == m) {
        cur[pos] = d;
        out.emplace_back(cur);
        return;
    }
    for (int e = 0; e <= d; ++e) {
        cur[pos] = e;
        enumerate_degree(m, d - e, cur, pos + 1, out);
    }
}

} // namespace

MonomialBasis::MonomialBasis(std::size_t m, int order) : m_(m), order_(order)
{
    if (m == 0)
        throw Error("MonomialBasis: need at least one variable");
    if (order < 0)
        throw Error("MonomialBasis: negative order");

    for (int d = 0; d <= order; ++d) {
        degree_begin_.push_back(monomials_.size());
        std::vector<MultiIndex> block;
        std::vector<int> cur(m, 0);
        enumerate_degree(m, d, cur, 0, block);
        std::sort(block.begin(), block.end(), colex_less);
        for (auto& b : block) {
            monomials_.push_back(std::move(b));
            degrees_.push_back(d);
        }
    }
    degree_begin_.push_back(monomials_.size());

    for (std::size_t k = 0; k < monomials_.size(); ++k)
        lookup_.emplace(monomials_[k], k);

    const std::size_t n = monomials_.size();
    raise_.assign(n * m, npos);
    lower_.assign(n * m, npos);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t v = 0; v < m; ++v) {
            MultiIndex e = MultiIndex::unit(m, v);
            raise_[k * m + v] = find(monomials_[k] + e);
            if (monomials_[k][v] > 0)
                lower_[k * m + v] = find(monomials_[k] - e);
        }
    }

    splits_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& p : monomials_[k].box())
            splits_[k].push_back({find(p), find(monomials_[k] - p)});
    }
    shifts_.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& sp : splits_[k])
            shifts_[sp.left].push_back({sp.right, k});
}

std::size_t MonomialBasis::find(const MultiIndex& idx) const
{
    if (idx.size() != m_)
        return npos;
    auto it = lookup_.find(idx);
    return it == lookup_.end() ? npos : it->second;
}

std::size_t MonomialBasis::index_of(const MultiIndex& idx) const
{
    auto k = find(idx);
    if (k == npos)
        throw OrderError("monomial " + idx.to_string() + " exceeds truncation order " +
                         std::to_string(order_));
    return k;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(std::size_t m, int order)
{
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(m, order);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    std::shared_ptr<const MonomialBasis> b(new MonomialBasis(m, order));
    cache.emplace(key, b);
    return b;
}

} // namespace curvlab
