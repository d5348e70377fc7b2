#pragma once

#include "torusfill/integer.hpp"
#include "torusfill/lattice.hpp"

#include <string>
#include <vector>

namespace torusfill {

/// 2x2 integer matrix of determinant 1.
class Mat2 {
public:
    /// Throws DomainError unless a*d - b*c == 1.
    Mat2(Int a, Int b, Int c, Int d);

    static Mat2 identity() { return {1, 0, 0, 1}; }
    /// S = [[0,1],[-1,0]]
    static Mat2 S() { return {0, 1, -1, 0}; }
    /// T = [[1,1],[0,1]]
    static Mat2 T() { return {1, 1, 0, 1}; }

    Int a() const { return a_; }
    Int b() const { return b_; }
    Int c() const { return c_; }
    Int d() const { return d_; }

    Int trace() const { return checked::add(a_, d_); }
    Mat2 inverse() const;
    Mat2 pow(Int k) const;
    IntMatrix to_matrix() const { return {{a_, b_}, {c_, d_}}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend Mat2 operator-(const Mat2& x);
    friend bool operator==(const Mat2&, const Mat2&) = default;

    std::string str() const;

private:
    Int a_, b_, c_, d_;
};

/// Conjugation P * M * P^-1.
Mat2 conjugate(const Mat2& p, const Mat2& m);

/// A finite integer string, read cyclically unless `cyclic` is false.
struct MonodromyString {
    Seq entries;
    bool cyclic = true;

    bool is_hyperbolic_standard() const;
};

/// All entries >= 2 and at least one >= 3.
bool is_hyperbolic_standard(const Seq& d);

/// F(x) = [[x,1],[-1,0]] = T^-x S.
Mat2 factor(Int x);

/// A(d) = F(d_m) ... F(d_1).
Mat2 compose_A(const Seq& d);

enum class TraceKind { Elliptic, Parabolic, Hyperbolic };

const char* to_string(TraceKind k);

struct TraceClass {
    TraceKind kind;
    Int trace;
};

TraceClass classify_trace(const Mat2& m);

enum class StGenerator { S, T };

struct StLetter {
    StGenerator gen;
    Int exponent;
};

/// sign * (letters multiplied left to right).
struct StWord {
    int sign = 1;
    std::vector<StLetter> letters;

    std::string str() const;
};

Mat2 eval_st_word(const StWord& word);

/// The word sign * T^-d_m S ... T^-d_1 S, which evaluates to sign * A(d).
StWord st_factorization(const Seq& d, int sign = 1);

/// The word sign * T^-d_1 S T^-d_2 S ... T^-d_m S, letters taken in the order of d.
/// It evaluates to sign * A(reverse of d).
StWord st_word_in_order(const Seq& d, int sign = 1);

/// Left rotation by k: (d_k+1, ..., d_m, d_1, ..., d_k) in 1-based terms.
Seq rotate(const Seq& d, std::size_t k);

/// Lexicographically minimal rotation.
Seq cyclic_canonical(const Seq& d);

bool cyclic_equal(const Seq& x, const Seq& y);

/// The involution swapping "+3 blocks" and runs of 2s.
/// Input is rotated to its first entry >= 3 before parsing; output is not canonicalized.
Seq rho(const Seq& d);

struct StandardForm {
    int sign;
    Seq d; ///< cyclic canonical
    Mat2 conjugator; ///< conjugator * M * conjugator^-1 == sign * A(d)
};

/// Conjugacy normal form of a hyperbolic matrix.
StandardForm hyperbolic_standard_form(const Mat2& m);

using H1Invariants = CokernelInvariants;

/// First homology of the torus bundle: Z + coker(M - I).
H1Invariants h1_torus_bundle(const Mat2& m);

} // namespace torusfill
