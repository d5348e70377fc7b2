#pragma once

#include "torusfill/integer.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace torusfill {

/// Dense row-major integer matrix with overflow-checked arithmetic.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0);
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(std::span<const Int> entries);
    static IntMatrix from_rows(const std::vector<Seq>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Seq row_vector(std::size_t i) const;
    Seq column_vector(std::size_t j) const;
    std::vector<Seq> row_vectors() const;

    IntMatrix transpose() const;
    IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_diagonal() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /// row i += k * row j
    void add_row_multiple(std::size_t i, std::size_t j, Int k);
    /// col i += k * col j
    void add_col_multiple(std::size_t i, std::size_t j, Int k);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

Seq operator*(const IntMatrix& m, std::span<const Int> v);

using BigInt = boost::multiprecision::cpp_int;

/// Unbounded integer matrix; unimodular transforms can outgrow 64 bits even when M and D fit.
class BigMatrix {
public:
    BigMatrix() = default;
    BigMatrix(std::size_t rows, std::size_t cols);
    explicit BigMatrix(const IntMatrix& m);

    static BigMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    BigMatrix transpose() const;
    /// Throws OverflowError when an entry does not fit in Int.
    IntMatrix narrow() const;
    /// Largest absolute entry.
    BigInt max_abs() const;

    friend BigMatrix operator*(const BigMatrix& a, const BigMatrix& b);
    friend bool operator==(const BigMatrix& a, const BigMatrix& b) = default;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

BigInt determinant(const BigMatrix& m);

/// U * M * V == D with D diagonal, d_1 | d_2 | ... and all d_i >= 0.
struct SmithForm {
    IntMatrix d;
    BigMatrix u;
    BigMatrix v;

    std::size_t rank() const;
    /// Nonzero diagonal entries in order.
    Seq invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Checks U*M*V == D, unimodularity of U and V, and the divisibility chain.
bool verify_smith_form(const IntMatrix& m, const SmithForm& f);

struct CokernelInvariants {
    std::size_t free_rank = 0;
    Seq torsion; ///< invariant factors > 1

    friend bool operator==(const CokernelInvariants&, const CokernelInvariants&) = default;
};

/// coker(M : Z^cols -> Z^rows).
CokernelInvariants cokernel_invariants(const IntMatrix& m);

/// Exact determinant (fraction-free elimination, 128-bit intermediates).
Int determinant(const IntMatrix& m);

std::size_t matrix_rank(const IntMatrix& m);

/// Saturated basis (as rows) of {x in Z^cols : M x = 0}, in Hermite normal form.
std::vector<Seq> integer_kernel(const IntMatrix& m);

/// Row-style Hermite normal form of the row span; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Leading principal minors D_1 .. D_n.
Seq leading_principal_minors(const IntMatrix& m);

bool is_negative_definite(const IntMatrix& gram);

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact signature by congruence diagonalization over the rationals.
Signature signature(const IntMatrix& symmetric);

enum class Parity { Even, Odd };

const char* to_string(Parity p);

/// A subgroup of Z^n given by a basis, with the ambient bilinear form.
class Sublattice {
public:
    Sublattice(IntMatrix ambient_gram, std::vector<Seq> basis);

    const IntMatrix& ambient_gram() const { return gram_; }
    const std::vector<Seq>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    std::size_t ambient_rank() const { return gram_.rows(); }

    /// Gram matrix of the basis.
    IntMatrix gram() const;
    IntMatrix basis_matrix() const;
    bool is_saturated() const;

private:
    IntMatrix gram_;
    std::vector<Seq> basis_;
};

struct LatticeInvariants {
    std::size_t rank = 0;
    Int det = 0;
    Parity parity = Parity::Even;
    Signature signature;
    Seq elementary_divisors; ///< nonzero invariant factors of the Gram matrix

    friend bool operator==(const LatticeInvariants&, const LatticeInvariants&) = default;
};

/// Pairing of two ambient vectors under gram.
Int pair(const IntMatrix& gram, std::span<const Int> x, std::span<const Int> y);

/// Saturated sublattice of vectors orthogonal to every vector in `vectors`.
Sublattice orthogonal_complement(const IntMatrix& ambient_gram, const std::vector<Seq>& vectors);

LatticeInvariants lattice_invariants(const IntMatrix& gram);
LatticeInvariants lattice_invariants(const Sublattice& l);

struct RadicalQuotient {
    std::size_t radical_rank = 0;
    std::vector<Seq> radical_basis; ///< in ambient coordinates
    LatticeInvariants quotient;
};

/// Radical of the restricted form and invariants of the induced form on L / radical.
RadicalQuotient radical_and_quotient(const Sublattice& l);

} // namespace torusfill
