#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace msfem {

/// Symbolic compressed-row structure of a square matrix.
/// Column indices are strictly increasing within each row.
class SparsityPattern
{
public:
    /// Rows may be unsorted and contain duplicates.
    static std::shared_ptr<const SparsityPattern> from_rows(std::vector<std::vector<int>> rows);
    /// Takes ready CSR arrays; rows must already be sorted and unique.
    static std::shared_ptr<const SparsityPattern> from_csr(std::vector<int> row_ptr, std::vector<int> cols)
    {
        auto p = std::make_shared<SparsityPattern>();
        p->row_ptr_ = std::move(row_ptr);
        p->cols_ = std::move(cols);
        return p;
    }

    int size() const { return static_cast<int>(row_ptr_.size()) - 1; }
    int nnz() const { return static_cast<int>(cols_.size()); }
    std::span<const int> row_ptr() const { return row_ptr_; }
    std::span<const int> cols() const { return cols_; }
    std::span<const int> row(int r) const
    {
        return {cols_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
    }

    /// Position of (r, c) in the value array, or -1.
    int find(int r, int c) const
    {
        const auto cs = row(r);
        const auto it = std::lower_bound(cs.begin(), cs.end(), c);
        if (it == cs.end() || *it != c) return -1;
        return row_ptr_[r] + static_cast<int>(it - cs.begin());
    }

    bool structurally_symmetric() const;

private:
    std::vector<int> row_ptr_{0};
    std::vector<int> cols_;
};

inline std::shared_ptr<const SparsityPattern> SparsityPattern::from_rows(std::vector<std::vector<int>> rows)
{
    auto p = std::make_shared<SparsityPattern>();
    p->row_ptr_.reserve(rows.size() + 1);
    std::size_t total = 0;
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        total += r.size();
    }
    p->cols_.reserve(total);
    for (auto& r : rows) {
        p->cols_.insert(p->cols_.end(), r.begin(), r.end());
        p->row_ptr_.push_back(static_cast<int>(p->cols_.size()));
        std::vector<int>().swap(r);
    }
    return p;
}

inline bool SparsityPattern::structurally_symmetric() const
{
    for (int r = 0; r < size(); ++r)
        for (int c : row(r))
            if (find(c, r) < 0) return false;
    return true;
}

namespace detail {
template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
} // namespace detail

/// Compressed-row matrix sharing an immutable sparsity pattern.
template <class T>
class CsrMatrix
{
public:
    using value_type = T;

    CsrMatrix() = default;
    explicit CsrMatrix(std::shared_ptr<const SparsityPattern> pattern)
        : pattern_(std::move(pattern)), values_(pattern_->nnz(), T{})
    {
    }

    int rows() const { return pattern_ ? pattern_->size() : 0; }
    int nnz() const { return static_cast<int>(values_.size()); }
    const SparsityPattern& pattern() const { return *pattern_; }
    const std::shared_ptr<const SparsityPattern>& pattern_ptr() const { return pattern_; }
    std::span<T> values() { return values_; }
    std::span<const T> values() const { return values_; }

    /// Entry (r, c); zero when outside the pattern.
    T at(int r, int c) const
    {
        const int pos = pattern_->find(r, c);
        return pos < 0 ? T{} : values_[pos];
    }

    void add(int r, int c, T v)
    {
        const int pos = pattern_->find(r, c);
        if (pos < 0)
            throw std::out_of_range("entry (" + std::to_string(r) + "," + std::to_string(c) +
                                    ") outside sparsity pattern");
        values_[pos] += v;
    }

    /// y = A x
    void multiply(std::span<const T> x, std::span<T> y) const
    {
        const auto rp = pattern_->row_ptr();
        const auto cols = pattern_->cols();
        const int n = rows();
        for (int r = 0; r < n; ++r) {
            T s{};
            for (int p = rp[r]; p < rp[r + 1]; ++p) s += values_[p] * x[cols[p]];
            y[r] = s;
        }
    }

    /// y = A x for a real matrix acting on complex vectors.
    template <class U>
        requires(!std::is_same_v<U, T>)
    void multiply(std::span<const U> x, std::span<U> y) const
    {
        const auto rp = pattern_->row_ptr();
        const auto cols = pattern_->cols();
        for (int r = 0; r < rows(); ++r) {
            U s{};
            for (int p = rp[r]; p < rp[r + 1]; ++p) s += values_[p] * x[cols[p]];
            y[r] = s;
        }
    }

    std::vector<T> operator*(std::span<const T> x) const
    {
        std::vector<T> y(rows());
        multiply(x, std::span<T>(y));
        return y;
    }

    std::vector<T> diagonal() const
    {
        std::vector<T> d(rows());
        for (int r = 0; r < rows(); ++r) d[r] = at(r, r);
        return d;
    }

    void scale(T s)
    {
        for (auto& v : values_) v *= s;
    }

    /// this += alpha * other. The pattern of `other` must be contained in ours.
    template <class U>
    void add_scaled(T alpha, const CsrMatrix<U>& other)
    {
        if (other.pattern_ptr() == pattern_) {
            const auto ov = other.values();
            for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += alpha * ov[p];
            return;
        }
        const auto& op = other.pattern();
        const auto ov = other.values();
        for (int r = 0; r < rows(); ++r) {
            const auto mine = pattern_->row(r);
            int p = pattern_->row_ptr()[r];
            const int base = p;
            for (int q = op.row_ptr()[r]; q < op.row_ptr()[r + 1]; ++q) {
                const int c = op.cols()[q];
                while (p < base + static_cast<int>(mine.size()) && pattern_->cols()[p] < c) ++p;
                if (p == base + static_cast<int>(mine.size()) || pattern_->cols()[p] != c)
                    throw std::invalid_argument("add_scaled: pattern is not a subset");
                values_[p] += alpha * ov[q];
            }
        }
    }

    /// Replace rows and columns flagged in `mask` by the identity.
    void eliminate(std::span<const char> mask)
    {
        const auto rp = pattern_->row_ptr();
        const auto cols = pattern_->cols();
        for (int r = 0; r < rows(); ++r)
            for (int p = rp[r]; p < rp[r + 1]; ++p)
                if (mask[r] || mask[cols[p]]) values_[p] = (r == cols[p] && mask[r]) ? T{1} : T{};
    }

    /// max |A_ij - A_ji| over the pattern.
    double max_asymmetry() const
    {
        double m = 0.0;
        const auto rp = pattern_->row_ptr();
        const auto cols = pattern_->cols();
        for (int r = 0; r < rows(); ++r)
            for (int p = rp[r]; p < rp[r + 1]; ++p) m = std::max(m, std::abs(values_[p] - at(cols[p], r)));
        return m;
    }

    /// MatrixMarket coordinate dump (1-based indices).
    void write_matrix_market(const std::string& path) const
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path);
        const bool cx = detail::is_complex<T>::value;
        out << "%%MatrixMarket matrix coordinate " << (cx ? "complex" : "real") << " general\n";
        out << rows() << ' ' << rows() << ' ' << nnz() << '\n';
        out << std::setprecision(17) << std::scientific;
        const auto rp = pattern_->row_ptr();
        const auto cols = pattern_->cols();
        for (int r = 0; r < rows(); ++r)
            for (int p = rp[r]; p < rp[r + 1]; ++p) {
                out << r + 1 << ' ' << cols[p] + 1 << ' ';
                if constexpr (detail::is_complex<T>::value)
                    out << values_[p].real() << ' ' << values_[p].imag() << '\n';
                else
                    out << values_[p] << '\n';
            }
    }

private:
    std::shared_ptr<const SparsityPattern> pattern_;
    std::vector<T> values_;
};

using RealMatrix = CsrMatrix<double>;
using ComplexMatrix = CsrMatrix<std::complex<double>>;

} // namespace msfem
