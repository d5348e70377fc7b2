#include "torusfill/lattice.hpp"

#include <algorithm>
#include <limits>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace torusfill {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, Int fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Int> entries)
{
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, i) = entries[i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Seq>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("IntMatrix::from_rows: row length mismatch");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
}

Seq IntMatrix::row_vector(std::size_t i) const
{
    auto r = row(i);
    return Seq(r.begin(), r.end());
}

Seq IntMatrix::column_vector(std::size_t j) const
{
    Seq out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, j);
    return out;
}

std::vector<Seq> IntMatrix::row_vectors() const
{
    std::vector<Seq> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out.push_back(row_vector(i));
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    IntMatrix s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            s(i, j) = (*this)(r0 + i, c0 + j);
    return s;
}

bool IntMatrix::is_symmetric() const
{
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

bool IntMatrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0)
                return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, Int k)
{
    if (k == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(i, c) = checked::add((*this)(i, c), checked::mul(k, (*this)(j, c)));
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, Int k)
{
    if (k == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, i) = checked::add((*this)(r, i), checked::mul(k, (*this)(r, j)));
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(i, c) = checked::neg((*this)(i, c));
}

void IntMatrix::negate_col(std::size_t j)
{
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, j) = checked::neg((*this)(r, j));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            __int128 acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += static_cast<__int128>(a(i, k)) * b(k, j);
            p(i, j) = checked::narrow(acc);
        }
    return p;
}

Seq operator*(const IntMatrix& m, std::span<const Int> v)
{
    if (m.cols() != v.size())
        throw std::invalid_argument("IntMatrix: dimension mismatch in matrix-vector product");
    Seq out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        __int128 acc = 0;
        for (std::size_t k = 0; k < v.size(); ++k)
            acc += static_cast<__int128>(m(i, k)) * v[k];
        out[i] = checked::narrow(acc);
    }
    return out;
}

std::string IntMatrix::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i)
            os << ", ";
        os << '[' << to_string(row_vector(i)) << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// BigMatrix

BigMatrix::BigMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

BigMatrix::BigMatrix(const IntMatrix& m) : BigMatrix(m.rows(), m.cols())
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = m(i, j);
}

BigMatrix BigMatrix::identity(std::size_t n)
{
    BigMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

BigMatrix BigMatrix::transpose() const
{
    BigMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix BigMatrix::narrow() const
{
    static const BigInt lo = std::numeric_limits<Int>::min();
    static const BigInt hi = std::numeric_limits<Int>::max();
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const BigInt& x = (*this)(i, j);
            if (x < lo || x > hi)
                throw OverflowError("BigMatrix::narrow: entry does not fit in 64 bits");
            m(i, j) = static_cast<Int>(x);
        }
    return m;
}

BigInt BigMatrix::max_abs() const
{
    BigInt best = 0;
    for (const auto& x : data_)
        best = std::max(best, BigInt(abs(x)));
    return best;
}

BigMatrix operator*(const BigMatrix& a, const BigMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("BigMatrix: dimension mismatch in product");
    BigMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const BigInt& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += x * b(k, j);
        }
    return c;
}

std::string BigMatrix::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

BigInt determinant(const BigMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    BigMatrix a = m;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if (q * b != a && ((a < 0) != (b < 0)))
        --q;
    return q;
}

struct Hermite {
    BigMatrix h; ///< echelon rows first, zero rows last
    BigMatrix b; ///< unimodular, b * input == h
    std::size_t rank = 0;
};

/// Row Hermite form by integral LLL with the Havas-Majewski-Matthews pivot rule.
/// The multiplier rows belonging to zero rows of h come out LLL-reduced, which keeps b small.
Hermite lll_hermite(const BigMatrix& input)
{
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    BigMatrix a = input;
    BigMatrix b = BigMatrix::identity(m);
    // 1-based Gram-Schmidt data of integral LLL
    std::vector<BigInt> dd(m + 1, 1);
    std::vector<std::vector<BigInt>> lam(m + 1, std::vector<BigInt>(m + 1));

    auto lead = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            if (a(i - 1, j) != 0)
                return j;
        return n;
    };
    auto negate = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            a(i - 1, j) = -a(i - 1, j);
        for (std::size_t j = 0; j < m; ++j)
            b(i - 1, j) = -b(i - 1, j);
        for (std::size_t r = 1; r <= m; ++r)
            for (std::size_t s = 1; s < r; ++s)
                if (r == i || s == i)
                    lam[r][s] = -lam[r][s];
    };
    auto sub_row = [&](std::size_t k, std::size_t i, const BigInt& q) {
        for (std::size_t j = 0; j < n; ++j)
            a(k - 1, j) -= q * a(i - 1, j);
        for (std::size_t j = 0; j < m; ++j)
            b(k - 1, j) -= q * b(i - 1, j);
        lam[k][i] -= q * dd[i];
        for (std::size_t j = 1; j < i; ++j)
            lam[k][j] -= q * lam[i][j];
    };
    auto reduce = [&](std::size_t k, std::size_t i) {
        std::size_t c1 = lead(i);
        if (c1 < n && a(i - 1, c1) < 0)
            negate(i);
        std::size_t c2 = lead(k);
        if (c2 < n && a(k - 1, c2) < 0)
            negate(k);
        BigInt q = 0;
        if (c1 < n)
            q = floor_div(a(k - 1, c1), a(i - 1, c1));
        else if (2 * abs(lam[k][i]) > dd[i])
            q = floor_div(2 * lam[k][i] + dd[i], 2 * dd[i]);
        if (q != 0)
            sub_row(k, i, q);
        return std::pair{c1, c2};
    };
    auto swap = [&](std::size_t k) {
        for (std::size_t j = 0; j < n; ++j)
            std::swap(a(k - 1, j), a(k - 2, j));
        for (std::size_t j = 0; j < m; ++j)
            std::swap(b(k - 1, j), b(k - 2, j));
        for (std::size_t j = 1; j + 1 < k; ++j)
            std::swap(lam[k][j], lam[k - 1][j]);
        const BigInt l = lam[k][k - 1];
        for (std::size_t i = k + 1; i <= m; ++i) {
            BigInt t = lam[i][k - 1] * dd[k] - lam[i][k] * l;
            lam[i][k - 1] = (lam[i][k - 1] * l + lam[i][k] * dd[k - 2]) / dd[k - 1];
            lam[i][k] = t / dd[k - 1];
        }
        dd[k - 1] = (dd[k - 2] * dd[k] + l * l) / dd[k - 1];
    };

    std::size_t k = 2;
    while (k <= m) {
        auto [c1, c2] = reduce(k, k - 1);
        // Lovasz condition with constant 3/4 on rows that are already zero
        bool lovasz = c1 == n && c2 == n && 4 * (dd[k - 2] * dd[k] + lam[k][k - 1] * lam[k][k - 1]) < 3 * dd[k - 1] * dd[k - 1];
        if ((c1 < n && c1 <= c2) || lovasz) {
            swap(k);
            if (k > 2)
                --k;
        } else {
            for (std::size_t i = k - 1; i-- > 1;)
                reduce(k, i);
            ++k;
        }
    }
    if (m == 1) {
        std::size_t c = lead(1);
        if (c < n && a(0, c) < 0)
            negate(1);
    }

    // the loop leaves zero rows first and leading columns decreasing; reverse both
    Hermite out{BigMatrix(m, n), BigMatrix(m, m), 0};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            out.h(i, j) = a(m - 1 - i, j);
        for (std::size_t j = 0; j < m; ++j)
            out.b(i, j) = b(m - 1 - i, j);
        bool zero = true;
        for (std::size_t j = 0; j < n && zero; ++j)
            zero = a(m - 1 - i, j) == 0;
        if (!zero)
            ++out.rank;
    }
    return out;
}

bool is_monomial(const BigMatrix& a)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        int count = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            count += a(i, j) != 0;
        if (count > 1)
            return false;
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        int count = 0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            count += a(i, j) != 0;
        if (count > 1)
            return false;
    }
    return true;
}

} // namespace

std::size_t SmithForm::rank() const
{
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
        if (d(i, i) != 0)
            ++r;
    return r;
}

Seq SmithForm::invariant_factors() const
{
    Seq out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
        if (d(i, i) != 0)
            out.push_back(d(i, i));
    return out;
}

SmithForm smith_normal_form(const IntMatrix& m)
{
    const std::size_t nr = m.rows();
    const std::size_t nc = m.cols();
    BigMatrix a(m);
    BigMatrix u = BigMatrix::identity(nr);
    BigMatrix v = BigMatrix::identity(nc);

    // Alternate row and column Hermite forms until at most one entry per row and column survives.
    // When two survivors violate divisibility, add one column into the other and go again.
    while (true) {
        while (!is_monomial(a)) {
            Hermite r = lll_hermite(a);
            a = std::move(r.h);
            u = r.b * u;
            if (is_monomial(a))
                break;
            Hermite c = lll_hermite(a.transpose());
            a = c.h.transpose();
            v = v * c.b.transpose();
        }
        std::vector<std::pair<std::size_t, std::size_t>> pos;
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                if (a(i, j) != 0)
                    pos.emplace_back(i, j);
        bool fixed = false;
        for (auto [pi, pj] : pos) {
            for (auto [qi, qj] : pos) {
                if (pi == qi)
                    continue;
                const BigInt x = abs(a(pi, pj)), y = abs(a(qi, qj));
                if (x <= y && y % x != 0) {
                    for (std::size_t i = 0; i < nr; ++i)
                        a(i, pj) += a(i, qj);
                    for (std::size_t i = 0; i < nc; ++i)
                        v(i, pj) += v(i, qj);
                    fixed = true;
                    break;
                }
            }
            if (fixed)
                break;
        }
        if (!fixed)
            break;
    }

    // permute survivors onto the diagonal in increasing order
    std::vector<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            if (a(i, j) != 0)
                pos.emplace_back(i, j);
    std::stable_sort(pos.begin(), pos.end(), [&](const auto& p, const auto& q) {
        return abs(a(p.first, p.second)) < abs(a(q.first, q.second));
    });
    std::vector<std::size_t> rows, cols;
    std::vector<bool> row_used(nr), col_used(nc);
    for (auto [i, j] : pos) {
        rows.push_back(i);
        cols.push_back(j);
        row_used[i] = col_used[j] = true;
    }
    for (std::size_t i = 0; i < nr; ++i)
        if (!row_used[i])
            rows.push_back(i);
    for (std::size_t j = 0; j < nc; ++j)
        if (!col_used[j])
            cols.push_back(j);

    BigMatrix d(nr, nc), pu(nr, nr), pv(nc, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j)
            d(i, j) = a(rows[i], cols[j]);
        for (std::size_t j = 0; j < nr; ++j)
            pu(i, j) = u(rows[i], j);
    }
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            pv(i, j) = v(i, cols[j]);
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (d(i, i) < 0) {
            d(i, i) = -d(i, i);
            for (std::size_t j = 0; j < nr; ++j)
                pu(i, j) = -pu(i, j);
        }
    return {d.narrow(), std::move(pu), std::move(pv)};
}

bool verify_smith_form(const IntMatrix& m, const SmithForm& f)
{
    if (f.u.rows() != m.rows() || f.v.rows() != m.cols())
        return false;
    if (f.u * BigMatrix(m) * f.v != BigMatrix(f.d))
        return false;
    if (!f.d.is_diagonal())
        return false;
    if (abs(determinant(f.u)) != 1 || abs(determinant(f.v)) != 1)
        return false;
    const std::size_t k = std::min(f.d.rows(), f.d.cols());
    for (std::size_t i = 0; i < k; ++i) {
        if (f.d(i, i) < 0)
            return false;
        if (i + 1 < k) {
            Int cur = f.d(i, i), next = f.d(i + 1, i + 1);
            if (cur == 0 && next != 0)
                return false;
            if (cur != 0 && next % cur != 0)
                return false;
        }
    }
    return true;
}

CokernelInvariants cokernel_invariants(const IntMatrix& m)
{
    SmithForm f = smith_normal_form(m);
    CokernelInvariants out;
    out.free_rank = m.rows() - f.rank();
    for (Int x : f.invariant_factors())
        if (x > 1)
            out.torsion.push_back(x);
    return out;
}

// ---------------------------------------------------------------------------
// Determinant, rank, kernels

Int determinant(const IntMatrix& m)
{
    if (!m.is_square())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    std::vector<__int128> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = m(i, j);
    auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };

    int sign = 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && at(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(k, j), at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                // Bareiss step; every intermediate is a minor of m
                __int128 num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                at(i, j) = checked::narrow(num / prev);
            }
        prev = at(k, k);
    }
    return checked::narrow(sign * at(n - 1, n - 1));
}

std::size_t matrix_rank(const IntMatrix& m)
{
    return smith_normal_form(m).rank();
}

IntMatrix hermite_normal_form(const IntMatrix& m)
{
    IntMatrix a = m;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        while (true) {
            std::size_t pi = a.rows();
            for (std::size_t i = row; i < a.rows(); ++i)
                if (a(i, col) != 0 && (pi == a.rows() || checked::abs(a(i, col)) < checked::abs(a(pi, col))))
                    pi = i;
            if (pi == a.rows())
                break;
            a.swap_rows(row, pi);
            bool clear = true;
            for (std::size_t i = row + 1; i < a.rows(); ++i) {
                if (a(i, col) == 0)
                    continue;
                a.add_row_multiple(i, row, checked::neg(floor_div(a(i, col), a(row, col))));
                if (a(i, col) != 0)
                    clear = false;
            }
            if (clear)
                break;
        }
        if (a(row, col) == 0)
            continue;
        if (a(row, col) < 0)
            a.negate_row(row);
        for (std::size_t i = 0; i < row; ++i)
            a.add_row_multiple(i, row, checked::neg(floor_div(a(i, col), a(row, col))));
        ++row;
    }
    return a.submatrix(0, 0, row, a.cols());
}

std::vector<Seq> integer_kernel(const IntMatrix& m)
{
    const std::size_t n = m.cols();
    if (m.rows() == 0)
        return IntMatrix::identity(n).row_vectors();
    // multiplier rows that kill m^T form a reduced kernel basis
    Hermite h = lll_hermite(BigMatrix(m.transpose()));
    if (h.rank == n)
        return {};
    BigMatrix k(n - h.rank, n);
    for (std::size_t i = h.rank; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            k(i - h.rank, j) = h.b(i, j);
    return hermite_normal_form(k.narrow()).row_vectors();
}

Seq leading_principal_minors(const IntMatrix& m)
{
    if (!m.is_square())
        throw std::invalid_argument("leading_principal_minors: matrix not square");
    Seq out;
    for (std::size_t k = 1; k <= m.rows(); ++k)
        out.push_back(determinant(m.submatrix(0, 0, k, k)));
    return out;
}

bool is_negative_definite(const IntMatrix& gram)
{
    Seq minors = leading_principal_minors(gram);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        // D_k must have sign (-1)^k
        bool odd = (k % 2) == 0;
        if (odd ? minors[k] >= 0 : minors[k] <= 0)
            return false;
    }
    return true;
}

Signature signature(const IntMatrix& s)
{
    using boost::multiprecision::cpp_rational;
    if (!s.is_symmetric())
        throw std::invalid_argument("signature: matrix not symmetric");
    const std::size_t n = s.rows();
    std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = s(i, j);

    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][p] == 0)
            ++p;
        if (p == n) {
            // zero diagonal: a_ij != 0 lets row/col i += row/col j create 2 a_ij on the diagonal
            std::size_t fi = n, fj = n;
            for (std::size_t i = k; i < n && fi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        fi = i;
                        fj = j;
                        break;
                    }
            if (fi == n) {
                sig.zero += n - k;
                break;
            }
            for (std::size_t c = 0; c < n; ++c)
                a[fi][c] += a[fj][c];
            for (std::size_t r = 0; r < n; ++r)
                a[r][fi] += a[r][fj];
            p = fi;
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            for (auto& r : a)
                std::swap(r[p], r[k]);
        }
        const cpp_rational pivot = a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0)
                continue;
            cpp_rational f = a[i][k] / pivot;
            for (std::size_t c = k; c < n; ++c)
                a[i][c] -= f * a[k][c];
            for (std::size_t r = k; r < n; ++r)
                a[r][i] -= f * a[r][k];
        }
        if (pivot > 0)
            ++sig.positive;
        else
            ++sig.negative;
    }
    return sig;
}

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// ---------------------------------------------------------------------------
// Sublattices

Int pair(const IntMatrix& gram, std::span<const Int> x, std::span<const Int> y)
{
    if (x.size() != gram.rows() || y.size() != gram.cols())
        throw std::invalid_argument("pair: vector length does not match the form");
    __int128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            acc += static_cast<__int128>(x[i]) * gram(i, j) * y[j];
    }
    return checked::narrow(acc);
}

Sublattice::Sublattice(IntMatrix ambient_gram, std::vector<Seq> basis)
    : gram_(std::move(ambient_gram)), basis_(std::move(basis))
{
    if (!gram_.is_symmetric())
        throw DomainError("Sublattice: ambient form must be symmetric");
    for (const auto& b : basis_)
        if (b.size() != gram_.rows())
            throw DomainError("Sublattice: basis vector has wrong length");
    if (!basis_.empty() && matrix_rank(basis_matrix()) != basis_.size())
        throw DomainError("Sublattice: basis vectors are linearly dependent");
}

IntMatrix Sublattice::basis_matrix() const
{
    return IntMatrix::from_rows(basis_, gram_.rows());
}

IntMatrix Sublattice::gram() const
{
    const std::size_t k = basis_.size();
    IntMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j)
            g(i, j) = g(j, i) = pair(gram_, basis_[i], basis_[j]);
    return g;
}

bool Sublattice::is_saturated() const
{
    if (basis_.empty())
        return true;
    for (Int x : smith_normal_form(basis_matrix()).invariant_factors())
        if (x != 1)
            return false;
    return true;
}

Sublattice orthogonal_complement(const IntMatrix& ambient_gram, const std::vector<Seq>& vectors)
{
    const std::size_t n = ambient_gram.rows();
    std::vector<Seq> basis;
    if (vectors.empty()) {
        basis = IntMatrix::identity(n).row_vectors();
    } else {
        IntMatrix pairing = IntMatrix::from_rows(vectors, n) * ambient_gram;
        basis = integer_kernel(pairing);
    }
    for (const auto& b : basis)
        for (const auto& v : vectors)
            if (pair(ambient_gram, b, v) != 0)
                throw std::logic_error("orthogonal_complement: basis vector not orthogonal to input");
    return Sublattice(ambient_gram, std::move(basis));
}

LatticeInvariants lattice_invariants(const IntMatrix& gram)
{
    if (!gram.is_symmetric())
        throw DomainError("lattice_invariants: Gram matrix must be symmetric");
    LatticeInvariants inv;
    inv.rank = gram.rows();
    inv.det = determinant(gram);
    inv.parity = Parity::Even;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0)
            inv.parity = Parity::Odd;
    inv.signature = signature(gram);
    inv.elementary_divisors = smith_normal_form(gram).invariant_factors();
    return inv;
}

LatticeInvariants lattice_invariants(const Sublattice& l)
{
    return lattice_invariants(l.gram());
}

RadicalQuotient radical_and_quotient(const Sublattice& l)
{
    const IntMatrix g = l.gram();
    const std::size_t k = g.rows();
    // rows of the multiplier: the first r span a complement of the radical, the rest span the radical
    Hermite h = lll_hermite(BigMatrix(g));
    const IntMatrix b = h.b.narrow();
    const std::size_t r = h.rank;

    RadicalQuotient out;
    out.radical_rank = k - r;
    for (std::size_t c = r; c < k; ++c) {
        Seq v(l.ambient_rank(), 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = checked::add(v[j], checked::mul(b(c, i), l.basis()[i][j]));
        out.radical_basis.push_back(std::move(v));
    }
    IntMatrix w = b.submatrix(0, 0, r, k);
    out.quotient = lattice_invariants(w * g * w.transpose());
    return out;
}

} // namespace torusfill
