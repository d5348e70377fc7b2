#include "torusfill/sl2z.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace torusfill {

Mat2::Mat2(Int a, Int b, Int c, Int d) : a_(a), b_(b), c_(c), d_(d)
{
    if (static_cast<__int128>(a) * d - static_cast<__int128>(b) * c != 1)
        throw DomainError("Mat2: determinant is not 1");
}

Mat2 Mat2::inverse() const
{
    return {d_, checked::neg(b_), checked::neg(c_), a_};
}

Mat2 Mat2::pow(Int k) const
{
    Mat2 base = k < 0 ? inverse() : *this;
    Int e = k < 0 ? checked::neg(k) : k;
    Mat2 out = identity();
    while (e > 0) {
        if (e & 1)
            out = out * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return out;
}

Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {checked::dot2(x.a_, y.a_, x.b_, y.c_), checked::dot2(x.a_, y.b_, x.b_, y.d_),
            checked::dot2(x.c_, y.a_, x.d_, y.c_), checked::dot2(x.c_, y.b_, x.d_, y.d_)};
}

Mat2 operator-(const Mat2& x)
{
    return {checked::neg(x.a_), checked::neg(x.b_), checked::neg(x.c_), checked::neg(x.d_)};
}

std::string Mat2::str() const
{
    std::ostringstream os;
    os << "[[" << a_ << ',' << b_ << "],[" << c_ << ',' << d_ << "]]";
    return os.str();
}

Mat2 conjugate(const Mat2& p, const Mat2& m)
{
    return p * m * p.inverse();
}

bool is_hyperbolic_standard(const Seq& d)
{
    if (d.empty())
        return false;
    bool some3 = false;
    for (Int x : d) {
        if (x < 2)
            return false;
        some3 = some3 || x >= 3;
    }
    return some3;
}

bool MonodromyString::is_hyperbolic_standard() const
{
    return torusfill::is_hyperbolic_standard(entries);
}

Mat2 factor(Int x)
{
    return {x, 1, -1, 0};
}

Mat2 compose_A(const Seq& d)
{
    if (d.empty())
        throw DomainError("compose_A: empty string");
    Mat2 m = Mat2::identity();
    for (Int x : d)
        m = factor(x) * m;
    return m;
}

const char* to_string(TraceKind k)
{
    switch (k) {
    case TraceKind::Elliptic:
        return "elliptic";
    case TraceKind::Parabolic:
        return "parabolic";
    case TraceKind::Hyperbolic:
        return "hyperbolic";
    }
    return "?";
}

TraceClass classify_trace(const Mat2& m)
{
    Int t = m.trace();
    Int at = checked::abs(t);
    TraceKind k = at < 2 ? TraceKind::Elliptic : at == 2 ? TraceKind::Parabolic : TraceKind::Hyperbolic;
    return {k, t};
}

std::string StWord::str() const
{
    std::ostringstream os;
    if (sign < 0)
        os << '-';
    for (const auto& l : letters) {
        os << (l.gen == StGenerator::S ? 'S' : 'T');
        if (l.exponent != 1)
            os << '^' << l.exponent;
    }
    return os.str();
}

Mat2 eval_st_word(const StWord& word)
{
    if (word.letters.empty())
        throw DomainError("eval_st_word: empty word");
    if (word.sign != 1 && word.sign != -1)
        throw DomainError("eval_st_word: sign must be +1 or -1");
    Mat2 m = Mat2::identity();
    for (const auto& l : word.letters) {
        if (l.gen == StGenerator::T)
            m = m * Mat2{1, l.exponent, 0, 1};
        else
            m = m * Mat2::S().pow(((l.exponent % 4) + 4) % 4);
    }
    return word.sign < 0 ? -m : m;
}

StWord st_factorization(const Seq& d, int sign)
{
    if (d.empty())
        throw DomainError("st_factorization: empty string");
    StWord w{sign, {}};
    for (auto it = d.rbegin(); it != d.rend(); ++it) {
        w.letters.push_back({StGenerator::T, checked::neg(*it)});
        w.letters.push_back({StGenerator::S, 1});
    }
    return w;
}

StWord st_word_in_order(const Seq& d, int sign)
{
    return st_factorization(Seq(d.rbegin(), d.rend()), sign);
}

Seq rotate(const Seq& d, std::size_t k)
{
    if (d.empty())
        return d;
    Seq out(d.size());
    std::rotate_copy(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k % d.size()), d.end(), out.begin());
    return out;
}

Seq cyclic_canonical(const Seq& d)
{
    Seq best = d;
    for (std::size_t k = 1; k < d.size(); ++k) {
        Seq r = rotate(d, k);
        if (r < best)
            best = std::move(r);
    }
    return best;
}

bool cyclic_equal(const Seq& x, const Seq& y)
{
    return x.size() == y.size() && cyclic_canonical(x) == cyclic_canonical(y);
}

Seq rho(const Seq& d)
{
    if (!is_hyperbolic_standard(d))
        throw DomainError("rho: string needs all entries >= 2 and some entry >= 3");
    auto first = std::find_if(d.begin(), d.end(), [](Int x) { return x >= 3; });
    Seq r = rotate(d, static_cast<std::size_t>(first - d.begin()));

    Seq out;
    std::size_t i = 0;
    while (i < r.size()) {
        Int n = r[i] - 3;
        Int m = 0;
        ++i;
        while (i < r.size() && r[i] == 2) {
            ++m;
            ++i;
        }
        out.push_back(checked::add(m, 3));
        out.insert(out.end(), static_cast<std::size_t>(n), 2);
    }
    return out;
}

namespace {

/// First digit of the reduction: floor(u) + 1 with u = (a - d + sqrt(t^2 - 4)) / (-2c),
/// minus the attracting fixed point of z -> (az + b) / (cz + d).
Int next_digit(const Mat2& b)
{
    Int t = b.trace();
    Int disc = checked::sub(checked::mul(t, t), 4);
    Int r = isqrt(disc);
    Int p = checked::sub(b.d(), b.a());
    Int q = checked::mul(2, b.c());
    int s = -1;
    if (q < 0) {
        p = checked::neg(p);
        q = checked::neg(q);
        s = 1;
    }
    // r < sqrt(disc) < r + 1 since disc is never a square for |t| > 2
    Int fl = s > 0 ? floor_div(checked::add(p, r), q) : floor_div(checked::sub(checked::sub(p, r), 1), q);
    return checked::add(fl, 1);
}

using Key = std::tuple<Int, Int, Int, Int>;

Key key_of(const Mat2& m) { return {m.a(), m.b(), m.c(), m.d()}; }

} // namespace

StandardForm hyperbolic_standard_form(const Mat2& m)
{
    TraceClass tc = classify_trace(m);
    if (tc.kind != TraceKind::Hyperbolic)
        throw DomainError("hyperbolic_standard_form: |trace| must exceed 2");
    const int sign = tc.trace > 0 ? 1 : -1;
    Mat2 b = sign > 0 ? m : -m;
    Mat2 p = Mat2::identity();

    // Conjugating A(d) by S T^(d_m) rotates the string, so once the orbit enters the reduced
    // matrices it is periodic and the digits read off one period spell the string backwards.
    std::map<Key, std::size_t> seen;
    Seq digits;
    const std::size_t max_steps = 100000;
    while (!seen.contains(key_of(b))) {
        if (digits.size() > max_steps)
            throw ResourceError("hyperbolic_standard_form: reduction did not become periodic");
        seen.emplace(key_of(b), digits.size());
        Int k = next_digit(b);
        Mat2 g = Mat2::S() * Mat2{1, k, 0, 1};
        b = conjugate(g, b);
        p = g * p;
        digits.push_back(k);
    }
    Seq period(digits.begin() + static_cast<std::ptrdiff_t>(seen.at(key_of(b))), digits.end());
    std::reverse(period.begin(), period.end());

    const Mat2 base = compose_A(period);
    Seq d = period;
    Mat2 power = base;
    while (power != b) {
        if (d.size() > max_steps)
            throw std::logic_error("hyperbolic_standard_form: periodic matrix is not a power of the period");
        power = power * base;
        d.insert(d.end(), period.begin(), period.end());
    }

    // F(d_1) A(d) F(d_1)^-1 == A(d_2, ..., d_m, d_1)
    const Seq canon = cyclic_canonical(d);
    while (d != canon) {
        Mat2 f = factor(d.front());
        b = conjugate(f, b);
        p = f * p;
        d = rotate(d, 1);
    }
    if (!is_hyperbolic_standard(d) || conjugate(p, sign > 0 ? m : -m) != compose_A(d))
        throw std::logic_error("hyperbolic_standard_form: reduction produced an inconsistent result");
    return {sign, std::move(d), p};
}

H1Invariants h1_torus_bundle(const Mat2& m)
{
    IntMatrix x = m.to_matrix();
    x(0, 0) = checked::sub(x(0, 0), 1);
    x(1, 1) = checked::sub(x(1, 1), 1);
    if (determinant(x) == 0)
        throw DomainError("h1_torus_bundle: det(M - I) = 0, trace-2 parabolic outside scope");
    CokernelInvariants c = cokernel_invariants(x);
    return {c.free_rank + 1, c.torsion};
}

} // namespace torusfill
