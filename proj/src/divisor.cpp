#include "torusfill/divisor.hpp"

#include "torusfill/blowup.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace torusfill {

const char* to_string(SurfaceModel m)
{
    return m == SurfaceModel::CP2 ? "CP2" : "S2xS2";
}

IntMatrix Ambient::gram() const
{
    IntMatrix g(rank(), rank());
    if (model == SurfaceModel::CP2) {
        g(0, 0) = 1;
    } else {
        g(0, 1) = 1;
        g(1, 0) = 1;
    }
    for (std::size_t i = base_rank(); i < rank(); ++i)
        g(i, i) = -1;
    return g;
}

Seq Ambient::anticanonical() const
{
    Seq k(rank(), -1);
    if (model == SurfaceModel::CP2) {
        k[0] = 3;
    } else {
        k[0] = 2;
        k[1] = 2;
    }
    return k;
}

std::string Ambient::str() const
{
    std::string base = model == SurfaceModel::CP2 ? "CP2" : "S2xS2";
    return N == 0 ? base : base + "#" + std::to_string(N) + "(-CP2)";
}

Int pairing(const Ambient& amb, const Seq& x, const Seq& y)
{
    if (x.size() != amb.rank() || y.size() != amb.rank())
        throw DomainError("pairing: class does not live in " + amb.str());
    __int128 acc = 0;
    if (amb.model == SurfaceModel::CP2) {
        acc += static_cast<__int128>(x[0]) * y[0];
    } else {
        acc += static_cast<__int128>(x[0]) * y[1] + static_cast<__int128>(x[1]) * y[0];
    }
    for (std::size_t i = amb.base_rank(); i < amb.rank(); ++i)
        acc -= static_cast<__int128>(x[i]) * y[i];
    return checked::narrow(acc);
}

Int pairing(const HClass& x, const HClass& y)
{
    if (!(x.ambient == y.ambient))
        throw DomainError("pairing: classes live in different ambients");
    return pairing(x.ambient, x.coords, y.coords);
}

Seq parse_class(const Ambient& amb, std::string_view text)
{
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t.push_back(ch);
    if (t.empty())
        throw DomainError("parse_class: empty class");
    Seq out = amb.zero();
    if (t == "0")
        return out;

    auto fail = [&](const std::string& why) {
        throw DomainError("parse_class: " + why + " in '" + std::string(text) + "'");
    };
    std::size_t pos = 0;
    while (pos < t.size()) {
        Int sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            fail("missing sign between terms");
        }
        Int coef = 1;
        std::size_t start = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
            ++pos;
        if (pos > start) {
            auto [p, ec] = std::from_chars(t.data() + start, t.data() + pos, coef);
            if (ec != std::errc())
                fail("bad coefficient");
        }
        if (pos >= t.size())
            fail("dangling coefficient");
        std::size_t idx;
        char sym = t[pos++];
        if (sym == 'e') {
            std::size_t s2 = pos;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
                ++pos;
            std::size_t k = 0;
            auto [p, ec] = std::from_chars(t.data() + s2, t.data() + pos, k);
            if (ec != std::errc() || pos == s2)
                fail("exceptional class needs an index");
            if (k < 1 || k > amb.N)
                fail("e" + std::to_string(k) + " is not a class of " + amb.str());
            idx = amb.e_index(k);
        } else if (amb.model == SurfaceModel::CP2 && sym == 'h') {
            idx = 0;
        } else if (amb.model == SurfaceModel::S2xS2 && (sym == 's' || sym == 'f')) {
            idx = sym == 's' ? 0 : 1;
        } else {
            fail(std::string("unknown symbol '") + sym + "'");
        }
        out[idx] = checked::add(out[idx], checked::mul(sign, coef));
    }
    return out;
}

std::string format_class(const Ambient& amb, const Seq& coords)
{
    if (coords.size() != amb.rank())
        throw DomainError("format_class: class does not live in " + amb.str());
    std::ostringstream os;
    bool first = true;
    auto term = [&](Int c, const std::string& sym) {
        if (c == 0)
            return;
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        if (checked::abs(c) != 1)
            os << checked::abs(c);
        os << sym;
        first = false;
    };
    if (amb.model == SurfaceModel::CP2) {
        term(coords[0], "h");
    } else {
        term(coords[0], "s");
        term(coords[1], "f");
    }
    for (std::size_t i = 1; i <= amb.N; ++i)
        term(coords[amb.e_index(i)], "e" + std::to_string(i));
    return first ? "0" : os.str();
}

Int adjunction_genus(const HClass& c)
{
    Int self = pairing(c.ambient, c.coords, c.coords);
    Int kc = pairing(c.ambient, c.ambient.anticanonical(), c.coords);
    Int num = checked::add(checked::sub(self, kc), 2);
    if (num % 2 != 0)
        throw DomainError("adjunction_genus: C.C - K.C is odd");
    return num / 2;
}

Seq extend(const Seq& coords, std::size_t rank)
{
    if (rank < coords.size())
        throw std::invalid_argument("extend: target rank is smaller");
    Seq out = coords;
    out.resize(rank, 0);
    return out;
}

Seq Divisor::total_class() const
{
    Seq t = ambient.zero();
    for (const auto& c : components)
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = checked::add(t[i], c.coords[i]);
    return t;
}

Divisor Divisor::from_classes(const Ambient& amb, const std::vector<std::string>& classes,
                              std::optional<std::size_t> marked)
{
    Divisor D{amb, {}, marked};
    for (std::size_t i = 0; i < classes.size(); ++i)
        D.components.push_back({"C" + std::to_string(i + 1), parse_class(amb, classes[i])});
    return D;
}

namespace {

Divisor grown(const Divisor& D, std::size_t extra)
{
    Divisor out = D;
    out.ambient.N += extra;
    for (auto& c : out.components)
        c.coords = extend(c.coords, out.ambient.rank());
    return out;
}

} // namespace

Divisor blowup_generic(const Divisor& D, std::size_t i, std::size_t times)
{
    if (i >= D.size())
        throw DomainError("blowup_generic: component index out of range");
    if (times == 0)
        throw DomainError("blowup_generic: at least one blowup is required");
    const std::size_t first = D.ambient.N + 1;
    Divisor out = grown(D, times);
    for (std::size_t k = 0; k < times; ++k)
        out.components[i].coords[out.ambient.e_index(first + k)] = -1;
    return out;
}

Divisor blowup_node(const Divisor& D, std::size_t i, std::size_t j, NodeTransform t)
{
    const std::size_t n = D.size();
    if (i >= n || j >= n || i == j)
        throw DomainError("blowup_node: component indices out of range");
    if (j != (i + 1) % n) {
        if (i != (j + 1) % n)
            throw DomainError("blowup_node: components are not cyclically adjacent");
        std::swap(i, j);
    }
    if (pairing(D.ambient, D.components[i].coords, D.components[j].coords) < 1)
        throw DomainError("blowup_node: components do not meet");

    Divisor out = grown(D, 1);
    const std::size_t e = out.ambient.e_index(out.ambient.N);
    out.components[i].coords[e] -= 1;
    out.components[j].coords[e] -= 1;
    if (t == NodeTransform::Total) {
        Seq ex = out.ambient.zero();
        ex[e] = 1;
        out.components.insert(out.components.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                              Component{"E" + std::to_string(out.ambient.N), std::move(ex)});
        if (out.marked && *out.marked > i)
            ++*out.marked;
    }
    return out;
}

IntMatrix intersection_matrix(const Divisor& D)
{
    const std::size_t n = D.size();
    IntMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            q(i, j) = q(j, i) = pairing(D.ambient, D.components[i].coords, D.components[j].coords);
    return q;
}

Int DualGraph::nodes() const
{
    Int total = 0;
    for (std::size_t i = 0; i < adjacency.rows(); ++i)
        for (std::size_t j = i + 1; j < adjacency.cols(); ++j)
            total = checked::add(total, adjacency(i, j));
    return total;
}

DualGraph dual_graph(const Divisor& D)
{
    IntMatrix q = intersection_matrix(D);
    DualGraph g;
    for (std::size_t i = 0; i < q.rows(); ++i) {
        g.weights.push_back(q(i, i));
        q(i, i) = 0;
    }
    g.adjacency = std::move(q);
    return g;
}

bool is_cycle_configuration(const Divisor& D)
{
    const std::size_t n = D.size();
    if (n < 2)
        return false;
    const IntMatrix q = intersection_matrix(D);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int expected = 0;
            if (n == 2)
                expected = 2;
            else if (j == i + 1 || (i == 0 && j == n - 1))
                expected = 1;
            if (q(i, j) != expected)
                return false;
        }
    return true;
}

namespace {

struct Describe {
    std::string operator()(const EllipticLeft& x) const { return "elliptic-left(eps=" + std::to_string(x.eps) + ")"; }
    std::string operator()(const EllipticRight& x) const { return "elliptic-right(eps=" + std::to_string(x.eps) + ")"; }
    std::string operator()(const Parabolic& x) const { return "parabolic(n=" + std::to_string(x.n) + ")"; }
    std::string operator()(const HypSingle& x) const { return "hyperbolic-single(c1=" + std::to_string(x.c1) + ")"; }
    std::string operator()(const HypCycle& x) const
    {
        return "hyperbolic-cycle(d=" + to_string(x.d) + ", s=" + to_string(x.s) +
               ", rotation=" + std::to_string(x.rotation) + ")";
    }
};

void check_eps(int eps)
{
    if (eps < -1 || eps > 1)
        throw DomainError("cap: eps must be -1, 0 or 1");
}

Divisor label(Divisor D, const std::vector<std::string>& names)
{
    for (std::size_t i = 0; i < names.size(); ++i)
        D.components[i].label = names[i];
    return D;
}

Seq cycle_target(const HypCycle& x)
{
    return rotate(rho(x.d), x.rotation);
}

struct Realize {
    Divisor operator()(const EllipticLeft& x) const
    {
        check_eps(x.eps);
        Divisor D = Divisor::from_classes({}, {"h", "h", "h"}, 0);
        D = blowup_generic(D, 1, 1);
        if (x.eps < 2)
            D = blowup_generic(D, 2, static_cast<std::size_t>(2 - x.eps));
        return label(D, {"L1", "L2", "L3"});
    }
    Divisor operator()(const EllipticRight& x) const
    {
        check_eps(x.eps);
        Divisor D = Divisor::from_classes({}, {"h", "2h"});
        D = blowup_generic(D, 0, 2);
        D = blowup_generic(D, 1, static_cast<std::size_t>(6 - x.eps));
        return label(D, {"L", "Q"});
    }
    Divisor operator()(const Parabolic& x) const
    {
        if (x.n > 4)
            throw DomainError("parabolic cap: the configuration with n > 4 does not embed in a closed symplectic 4-manifold");
        Divisor D = Divisor::from_classes({}, {"h", "2h"});
        D = blowup_generic(D, 0, 1);
        if (x.n < 4)
            D = blowup_generic(D, 1, static_cast<std::size_t>(4 - x.n));
        return label(D, {"F", "C"});
    }
    Divisor operator()(const HypSingle& x) const
    {
        if (x.c1 < 3)
            throw DomainError("hyperbolic single cap: c1 must be at least 3");
        Divisor D = Divisor::from_classes({}, {"h", "2h"}, 0);
        D = blowup_generic(D, 1, static_cast<std::size_t>(x.c1 + 2));
        return label(D, {"S", "Q"});
    }
    Divisor operator()(const HypCycle& x) const
    {
        Seq c = cycle_target(x);
        if (x.rotation >= c.size())
            throw DomainError("hyperbolic cycle cap: rotation out of range");
        return realize_cycle(c, x.s);
    }
};

struct Boundary {
    Mat2 operator()(const EllipticLeft& x) const
    {
        check_eps(x.eps);
        return -compose_A({-x.eps});
    }
    Mat2 operator()(const EllipticRight& x) const
    {
        check_eps(x.eps);
        return compose_A({1, 2 - x.eps});
    }
    Mat2 operator()(const Parabolic& x) const { return compose_A({0, checked::neg(x.n)}); }
    Mat2 operator()(const HypSingle& x) const { return -compose_A({x.c1}); }
    Mat2 operator()(const HypCycle& x) const { return -compose_A(cycle_target(x)); }
};

} // namespace

std::string describe(const CapSpec& spec)
{
    return std::visit(Describe{}, spec);
}

Divisor realize_cycle(const Seq& c, const Seq& s)
{
    if (c.size() < 2 || s.size() != c.size())
        throw DomainError("realize_cycle: target and blowup sequence need equal length >= 2");
    if (!dominates(s, c))
        throw DomainError("realize_cycle: " + to_string(s) + " is not dominated by " + to_string(c));
    auto path = blowup_path(s);
    if (!path)
        throw DomainError("realize_cycle: " + to_string(s) + " is not a blowup of (0,0)");

    // component 0 is the +1 line; the chain starts at index 1
    Divisor D = Divisor::from_classes({}, {"h", "h", "h"}, 0);
    for (std::size_t i : *path)
        D = blowup_node(D, i, i + 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] > s[i])
            D = blowup_generic(D, i + 1, static_cast<std::size_t>(c[i] - s[i]));

    D.components[0].label = "S";
    for (std::size_t i = 1; i < D.size(); ++i)
        D.components[i].label = "C" + std::to_string(i);
    return D;
}

Divisor realize_cap(const CapSpec& spec)
{
    return std::visit(Realize{}, spec);
}

Mat2 cycle_monodromy(const Seq& weights, int edge_sign_product)
{
    if (edge_sign_product != 1 && edge_sign_product != -1)
        throw DomainError("cycle_monodromy: edge sign product must be +1 or -1");
    Seq d;
    for (Int w : weights)
        d.push_back(checked::neg(w));
    Mat2 m = compose_A(d);
    return edge_sign_product < 0 ? -m : m;
}

Mat2 boundary_monodromy(const CapSpec& spec)
{
    return std::visit(Boundary{}, spec);
}

bool anticanonical_check(const Divisor& D)
{
    return D.total_class() == D.ambient.anticanonical();
}

ComplementHomology complement_homology(const Divisor& D)
{
    ComplementHomology h;
    const std::size_t k = D.size();
    if (k == 0)
        throw DomainError("complement_homology: empty divisor");
    // H_1 of the complement is the cokernel of H_2(X) -> Z^k, a -> (a . C_i)
    IntMatrix classes = IntMatrix::from_rows([&] {
        std::vector<Seq> rows;
        for (const auto& c : D.components)
            rows.push_back(c.coords);
        return rows;
    }(), D.ambient.rank());
    h.pairing_rank = matrix_rank(classes * D.ambient.gram());
    h.b1 = k - h.pairing_rank;
    h.b3 = 0;
    h.divisor_euler = checked::sub(2 * static_cast<Int>(k), dual_graph(D).nodes());
    h.euler = checked::sub(D.ambient.euler_characteristic(), h.divisor_euler);
    Int b2 = h.euler - 1 + static_cast<Int>(h.b1) + static_cast<Int>(h.b3);
    if (b2 < 0)
        throw DomainError("complement_homology: negative second Betti number, divisor is not a configuration of spheres");
    h.b2 = static_cast<std::size_t>(b2);
    return h;
}

} // namespace torusfill
