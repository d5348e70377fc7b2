#include "torusfill/fillings.hpp"

#include "torusfill/sl2z.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace torusfill {

// ---------------------------------------------------------------------------
// Hyperbolic census

Divisor relabel_canonical(const Divisor& D)
{
    const std::size_t base = D.ambient.base_rank();
    std::vector<Seq> cols;
    for (std::size_t i = 1; i <= D.ambient.N; ++i) {
        Seq col;
        for (const auto& c : D.components)
            col.push_back(c.coords[D.ambient.e_index(i)]);
        cols.push_back(std::move(col));
    }
    std::sort(cols.begin(), cols.end(), std::greater<>());
    Divisor out = D;
    for (std::size_t k = 0; k < D.size(); ++k)
        for (std::size_t i = 0; i < cols.size(); ++i)
            out.components[k].coords[base + i] = cols[i][k];
    return out;
}

HyperbolicCensus hyperbolic_filling_census(const Seq& d, std::size_t limit)
{
    auto witness = is_embeddable(d, limit);
    if (!witness)
        throw DomainError("hyperbolic_filling_census: " + to_string(d) + " is not embeddable");

    HyperbolicCensus out;
    out.d = d;
    out.witness = *witness;
    out.cap = realize_cap(HypCycle{d, witness->blowup, witness->rotation});
    // node between the first two chain spheres, away from the +1 sphere at index 0
    out.blown_up = blowup_node(out.cap, 1, 2);

    const Seq w = dual_graph(out.blown_up).weights;
    Seq ct(w.begin() + 1, w.end());
    for (auto& x : ct)
        x = checked::neg(x);
    ct.front() += 1;
    ct.back() += 1;
    out.blown_up_target = ct;

    const Seq total = out.blown_up.total_class();
    const Int square = pairing(out.blown_up.ambient, total, total);
    if (square > 9)
        throw std::logic_error("hyperbolic_filling_census: total class has square above 9");
    FillingInvariants& inv = out.invariants;
    inv.N = static_cast<std::size_t>(9 - square);
    const std::size_t b2_cap = out.cap.size();
    if (inv.N + 1 < b2_cap)
        throw std::logic_error("hyperbolic_filling_census: negative second Betti number");
    inv.b2 = inv.N + 1 - b2_cap;
    inv.b3 = 0;
    inv.b1 = complement_homology(out.blown_up).b1;
    inv.c1_trivial = anticanonical_check(out.blown_up);

    std::set<std::vector<Component>> seen;
    for (const Seq& s : dominated_blowups(ct, limit)) {
        Divisor D = realize_cycle(ct, s);
        Divisor canon = relabel_canonical(D);
        if (!seen.insert(canon.components).second)
            continue;
        ComplementHomology h = complement_homology(D);
        bool ok = D.ambient.N == inv.N && h.b1 == inv.b1 && h.b2 == inv.b2 && anticanonical_check(D);
        out.configurations_agree = out.configurations_agree && ok;
        inv.c1_trivial = inv.c1_trivial && anticanonical_check(D);
        out.configurations.push_back({s, std::move(D), h});
    }
    inv.class_count_bound = out.configurations.size();
    return out;
}

bool euler_consistency(const Divisor& cap, const FillingInvariants& fill, std::string* diagnostic)
{
    const Int k = static_cast<Int>(cap.size());
    // X is the cap's own ambient; fill.N may count one further node blowup
    const Int b2x = static_cast<Int>(cap.ambient.rank());
    const Int chi_x = b2x + 2;
    const Int chi_cap = 2 * k - dual_graph(cap).nodes();
    const Int b1p = static_cast<Int>(fill.b1), b2p = static_cast<Int>(fill.b2), b3p = static_cast<Int>(fill.b3);
    const Int chi_p = 1 - b1p + b2p - b3p;
    // b2(Y) - (b2(W) + b2(P)) + b2(X) - b1(Y) + b1(W) + b1(P) with b1(Y) = b2(Y) = b1(W) = 1
    const Int rank_sum = 1 - (k + b2p) + b2x - 1 + 1 + b1p;
    const bool ok = chi_x == chi_cap + chi_p && rank_sum == 0;
    if (diagnostic) {
        *diagnostic = "chi(X)=" + std::to_string(chi_x) + " chi(cap)=" + std::to_string(chi_cap) +
                      " chi(P)=" + std::to_string(chi_p) + " rank identity=" + std::to_string(rank_sum);
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Parabolic Diophantine systems

const char* to_string(ParabolicFilter f)
{
    switch (f) {
    case ParabolicFilter::None:
        return "none";
    case ParabolicFilter::DisjointExceptional:
        return "disjoint-exceptional";
    case ParabolicFilter::ExtraUnitCoefficients:
        return "extra-unit-coefficients";
    case ParabolicFilter::SecondExceptional:
        return "second-exceptional";
    }
    return "?";
}

namespace {

// Search box. Survivors have a = 2, b_1 = 0 (or b = 1) and 4 - n unit coefficients,
// so coefficients up to 6 and at most 12 indices hold every survivor for -7 <= n <= 4.
constexpr Int max_coefficient = 6;
constexpr std::size_t max_indices = 12;

using Counts = std::array<std::size_t, max_coefficient + 1>;

void for_each_counts(std::size_t budget, const std::function<void(const Counts&)>& fn)
{
    Counts cnt{};
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t left) {
        if (v > static_cast<std::size_t>(max_coefficient)) {
            fn(cnt);
            return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
            cnt[v] = k;
            rec(v + 1, left - k);
        }
        cnt[v] = 0;
    };
    rec(0, budget);
}

/// Coefficients in descending order.
Seq expand(const Counts& cnt)
{
    Seq out;
    for (Int v = max_coefficient; v >= 0; --v)
        out.insert(out.end(), cnt[static_cast<std::size_t>(v)], v);
    return out;
}

/// Minimality filters on the coefficients of the exceptional classes not used by F.
ParabolicFilter classify(const Counts& cnt, Int n)
{
    // e_j with coefficient 0 is disjoint from both spheres
    if (cnt[0] > 0)
        return ParabolicFilter::DisjointExceptional;
    // blowing down the surplus unit spheres would embed the configuration with n > 4
    if (static_cast<Int>(cnt[1]) > 4 - n)
        return ParabolicFilter::ExtraUnitCoefficients;
    // h - e_1 - e_j (or f - e_j) is an exceptional class disjoint from both spheres
    if (cnt[2] > 0)
        return ParabolicFilter::SecondExceptional;
    return ParabolicFilter::None;
}

void split(ParabolicBranch& br, ParabolicSolution sol)
{
    if (sol.rejected_by == ParabolicFilter::None)
        br.filtered.push_back(sol);
    br.raw.push_back(std::move(sol));
}

} // namespace

ParabolicReport parabolic_solutions(Int n)
{
    if (n > 4)
        throw DomainError("parabolic: for n > 4 the configuration of a 0-sphere and an n-sphere meeting twice does not "
                          "embed in any closed symplectic 4-manifold");
    if (4 - n > static_cast<Int>(max_indices) - 1)
        throw ResourceError("parabolic: n = " + std::to_string(n) + " needs more exceptional classes than the search box holds");

    ParabolicReport rep;
    rep.n = n;

    // CP2 branch: F = h - e_1, C = a h - sum b_i e_i
    for (Int a = 0; a <= max_coefficient; ++a)
        for (Int b1 = 0; b1 <= max_coefficient; ++b1)
            for_each_counts(max_indices - 1, [&](const Counts& cnt) {
                Int sum = 0, sq = 0;
                for (Int v = 0; v <= max_coefficient; ++v) {
                    sum += v * static_cast<Int>(cnt[static_cast<std::size_t>(v)]);
                    sq += v * v * static_cast<Int>(cnt[static_cast<std::size_t>(v)]);
                }
                if (n != a * a - b1 * b1 - sq || 3 * a - b1 - sum != n + 2 || a - b1 != 2)
                    return;
                ParabolicSolution sol;
                sol.model = SurfaceModel::CP2;
                sol.a = a;
                sol.coeffs = {b1};
                Seq rest = expand(cnt);
                sol.coeffs.insert(sol.coeffs.end(), rest.begin(), rest.end());
                sol.N = sol.coeffs.size();
                Ambient amb = sol.ambient();
                sol.F = amb.zero();
                sol.F[0] = 1;
                sol.F[amb.e_index(1)] = -1;
                sol.C = amb.zero();
                sol.C[0] = a;
                for (std::size_t i = 0; i < sol.N; ++i)
                    sol.C[amb.e_index(i + 1)] = -sol.coeffs[i];
                sol.rejected_by = classify(cnt, n);
                split(rep.cp2, std::move(sol));
            });

    // S2xS2 branch: F = f, C = a s + b f - sum c_i e_i
    for (Int a = 0; a <= max_coefficient; ++a)
        for (Int b = 0; b <= max_coefficient; ++b)
            for_each_counts(max_indices, [&](const Counts& cnt) {
                Int sum = 0, sq = 0;
                for (Int v = 0; v <= max_coefficient; ++v) {
                    sum += v * static_cast<Int>(cnt[static_cast<std::size_t>(v)]);
                    sq += v * v * static_cast<Int>(cnt[static_cast<std::size_t>(v)]);
                }
                if (n != 2 * a * b - sq || 2 * a + 2 * b - sum != n + 2 || a != 2)
                    return;
                ParabolicSolution sol;
                sol.model = SurfaceModel::S2xS2;
                sol.a = a;
                sol.b = b;
                sol.coeffs = expand(cnt);
                sol.N = sol.coeffs.size();
                Ambient amb = sol.ambient();
                sol.F = amb.zero();
                sol.F[1] = 1;
                sol.C = amb.zero();
                sol.C[0] = a;
                sol.C[1] = b;
                for (std::size_t i = 0; i < sol.N; ++i)
                    sol.C[amb.e_index(i + 1)] = -sol.coeffs[i];
                sol.rejected_by = classify(cnt, n);
                split(rep.s2xs2, std::move(sol));
            });
    return rep;
}

Divisor parabolic_divisor(const ParabolicSolution& sol)
{
    return Divisor{sol.ambient(), {{"F", sol.F}, {"C", sol.C}}, std::nullopt};
}

FillingInvariants parabolic_filling(const ParabolicSolution& sol)
{
    Divisor D = parabolic_divisor(sol);
    ComplementHomology h = complement_homology(D);
    FillingInvariants f;
    f.N = sol.N;
    f.b1 = h.b1;
    f.b2 = h.b2;
    f.b3 = h.b3;
    f.c1_trivial = anticanonical_check(D);
    f.class_count_bound = 1;
    return f;
}

// ---------------------------------------------------------------------------
// Determinant family

const char* to_string(DistfillSite s)
{
    return s == DistfillSite::FourthSphere ? "fourth" : "last";
}

std::vector<std::string> distfill_base_classes(int which)
{
    if (which == 1)
        return {"h", "h-e1-e2-e4", "e4-e5-e6", "e2-e3-e4", "e3-e7", "e1-e2-e3", "h-e1-e8-e9"};
    if (which == 2)
        return {"h", "h-e1-e2-e5", "e2-e3-e4", "e4-e6-e7", "e3-e4", "e1-e2-e3", "h-e1-e8-e9"};
    throw DomainError("distfill: divisor index must be 1 or 2");
}

std::vector<Seq> distfill_reference_basis(int which)
{
    const Ambient amb{SurfaceModel::CP2, 9};
    std::vector<std::string> text;
    if (which == 1)
        text = {"e5-e6", "e1+e3-e4-e5+e7-e8", "e8-e9"};
    else if (which == 2)
        text = {"e6-e7", "-3e1-2e2-e3-e4+5e5-e6+3e9", "e8-e9"};
    else
        throw DomainError("distfill: divisor index must be 1 or 2");
    std::vector<Seq> out;
    for (const auto& t : text)
        out.push_back(parse_class(amb, t));
    return out;
}

Divisor distfill_divisor(int which, std::size_t N, DistfillSite site)
{
    Divisor D = Divisor::from_classes({SurfaceModel::CP2, 9}, distfill_base_classes(which), 0);
    if (N > 0)
        D = blowup_generic(D, site == DistfillSite::FourthSphere ? 3 : 6, N);
    return D;
}

namespace {

LatticeInvariants complement_invariants(const Divisor& D)
{
    std::vector<Seq> classes;
    for (const auto& c : D.components)
        classes.push_back(c.coords);
    return lattice_invariants(orthogonal_complement(D.ambient.gram(), classes));
}

} // namespace

DistfillResult distfill_family(std::size_t N, DistfillSite site, std::size_t limit)
{
    if (N > limit)
        throw ResourceError("distfill: N = " + std::to_string(N) + " exceeds limit " + std::to_string(limit));
    DistfillResult r;
    r.N = N;
    r.site = site;
    r.lattice1 = complement_invariants(distfill_divisor(1, N, site));
    r.lattice2 = complement_invariants(distfill_divisor(2, N, site));
    r.det1 = r.lattice1.det;
    r.det2 = r.lattice2.det;
    const Int base = 9 * static_cast<Int>(N) + 20;
    r.expected1 = N % 2 == 1 ? base : -base;
    r.expected2 = 9 * r.expected1;
    r.matches_formula = r.det1 == r.expected1 && r.det2 == r.expected2;
    if (!r.matches_formula)
        r.warnings.push_back("N=" + std::to_string(N) + ", site " + to_string(site) +
                             ": direct complement determinants (" + std::to_string(r.det1) + ", " +
                             std::to_string(r.det2) + ") differ from the closed formula (" +
                             std::to_string(r.expected1) + ", " + std::to_string(r.expected2) +
                             "); both are reported");
    return r;
}

// ---------------------------------------------------------------------------
// Tight contact structures

std::uint64_t rotation_tuple_product(const Seq& d)
{
    if (!is_hyperbolic_standard(d))
        throw DomainError("contact: " + to_string(d) + " is not a hyperbolic standard string");
    std::uint64_t p = 1;
    for (Int x : d)
        if (__builtin_mul_overflow(p, static_cast<std::uint64_t>(x - 1), &p))
            throw OverflowError("contact: tuple count overflows 64 bits");
    return p;
}

std::uint64_t count_rotation_tuples(const Seq& d)
{
    if (!is_hyperbolic_standard(d))
        throw DomainError("contact: " + to_string(d) + " is not a hyperbolic standard string");
    const std::size_t m = d.size();
    std::vector<Int> r(m), hi(m);
    for (std::size_t j = 0; j < m; ++j) {
        hi[j] = d[j] - 2;
        r[j] = -hi[j];
    }
    std::uint64_t count = 0;
    while (true) {
        ++count;
        std::size_t j = 0;
        for (; j < m; ++j) {
            if (r[j] < hi[j]) {
                r[j] += 2;
                break;
            }
            r[j] = -hi[j];
        }
        if (j == m)
            return count;
    }
}

ContactCensus tight_structure_census(const Seq& d, std::uint64_t tuple_limit, bool list_tuples)
{
    if (!list_tuples) {
        ContactCensus c;
        c.d = d;
        c.vot_count = count_rotation_tuples(d);
        return c;
    }
    const std::uint64_t expected = rotation_tuple_product(d);
    if (expected > tuple_limit)
        throw ResourceError("contact: " + std::to_string(expected) + " rotation tuples exceed limit " +
                            std::to_string(tuple_limit));
    ContactCensus c;
    c.d = d;
    c.rotation_tuples.reserve(expected);
    Seq r(d.size());
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == d.size()) {
            c.rotation_tuples.push_back(r);
            return;
        }
        for (Int v = -(d[j] - 2); v <= d[j] - 2; v += 2) {
            r[j] = v;
            rec(j + 1);
        }
    };
    rec(0);
    c.vot_count = c.rotation_tuples.size();
    c.ut_count = 1;
    return c;
}

bool is_rotation_tuple(const Seq& d, const Seq& r)
{
    if (d.size() != r.size())
        return false;
    for (std::size_t j = 0; j < d.size(); ++j) {
        Int bound = d[j] - 2;
        if (bound < 0 || checked::abs(r[j]) > bound || (bound - r[j]) % 2 != 0)
            return false;
    }
    return true;
}

const char* to_string(DoubleCoverVerdict v)
{
    return v == DoubleCoverVerdict::VirtuallyOvertwisted ? "virtually-overtwisted" : "inconclusive";
}

DoubleCoverVerdict double_cover_obstruction(const Seq& d, const Seq& r)
{
    if (!is_hyperbolic_standard(d))
        throw DomainError("double cover: " + to_string(d) + " is not a hyperbolic standard string");
    if (!is_rotation_tuple(d, r))
        throw DomainError("double cover: " + to_string(r) + " is not a rotation tuple for " + to_string(d));
    // (r, -r) against eps * (d' - 2) for eps = +1 and eps = -1
    for (int eps : {1, -1}) {
        bool match = true;
        for (std::size_t j = 0; j < d.size() && match; ++j) {
            const Int p = eps * (d[j] - 2);
            match = r[j] == p && -r[j] == p;
        }
        if (match)
            return DoubleCoverVerdict::Inconclusive;
    }
    return DoubleCoverVerdict::VirtuallyOvertwisted;
}

} // namespace torusfill
