#include "oracles.hpp"

#include "torusfill/fillings.hpp"
#include "torusfill/sl2z.hpp"

#include <doctest.h>

#include <random>

using namespace torusfill;

namespace {

std::uint64_t product_minus_one(const Seq& d)
{
    std::uint64_t p = 1;
    for (Int x : d)
        p *= static_cast<std::uint64_t>(x - 1);
    return p;
}

/// Every rotation tuple, listed by nested loops over each admissible range.
std::vector<Seq> all_rotation_tuples(const Seq& d)
{
    std::vector<Seq> out{{}};
    for (Int x : d) {
        std::vector<Seq> next;
        for (const Seq& p : out)
            for (Int r = -(x - 2); r <= x - 2; r += 2) {
                Seq q = p;
                q.push_back(r);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("census of (5)")
{
    HyperbolicCensus c = hyperbolic_filling_census({5});
    CHECK(c.invariants.N == 6);
    CHECK(c.invariants.b2 == 3);
    CHECK(c.invariants.b1 == 0);
    CHECK(c.invariants.c1_trivial);
    CHECK(c.invariants.class_count_bound == 1);
    CHECK(c.configurations_agree);
    CHECK(euler_consistency(c.cap, c.invariants));
    CHECK(anticanonical_check(c.blown_up));
}

TEST_CASE("census of a string with two fillings")
{
    Seq d = rho({3, 3, 3, 2, 3, 3});
    HyperbolicCensus c = hyperbolic_filling_census(d);
    CHECK(c.invariants.class_count_bound >= 2);
    CHECK(c.configurations_agree);
    for (const auto& conf : c.configurations) {
        CHECK(conf.homology.b2 == c.invariants.b2);
        CHECK(anticanonical_check(conf.divisor));
    }
    CHECK(euler_consistency(c.cap, c.invariants));
}

TEST_CASE("census rejects non-embeddable strings")
{
    CHECK_THROWS_AS(hyperbolic_filling_census({3}), DomainError);
    CHECK_THROWS_AS(hyperbolic_filling_census({2, 2}), DomainError);
}

TEST_CASE("census configurations share Betti numbers")
{
    std::mt19937_64 rng(307);
    int seen = 0;
    for (int t = 0; t < 300 && seen < 25; ++t) {
        Seq d = oracle::random_hyperbolic(rng, 4, 6);
        if (rho(d).size() > 8 || !is_embeddable(d))
            continue;
        HyperbolicCensus c = hyperbolic_filling_census(d);
        ++seen;
        CHECK(c.configurations_agree);
        CHECK(c.invariants.class_count_bound == c.configurations.size());
        for (const auto& conf : c.configurations)
            CHECK(conf.homology.b2 == c.invariants.b2);
        CHECK(euler_consistency(c.cap, c.invariants));
    }
    CHECK(seen > 5);
}

TEST_CASE("euler_consistency catches a wrong b2")
{
    HyperbolicCensus c = hyperbolic_filling_census({5});
    FillingInvariants bad = c.invariants;
    bad.b2 += 1;
    std::string why;
    CHECK(!euler_consistency(c.cap, bad, &why));
    CHECK(!why.empty());
}

TEST_CASE("relabel_canonical ignores the order of exceptional classes")
{
    Ambient amb{SurfaceModel::CP2, 3};
    Divisor a{amb, {{"A", parse_class(amb, "h-e1-e2")}, {"B", parse_class(amb, "e2-e3")}}};
    Divisor b{amb, {{"A", parse_class(amb, "h-e3-e1")}, {"B", parse_class(amb, "e1-e2")}}};
    CHECK(relabel_canonical(a) == relabel_canonical(b));
}

TEST_CASE("parabolic solutions")
{
    for (Int n = 0; n <= 4; ++n) {
        ParabolicReport r = parabolic_solutions(n);
        REQUIRE(r.cp2.filtered.size() == 1);
        REQUIRE(r.s2xs2.filtered.size() == 1);
        const auto& p = r.cp2.filtered[0];
        const auto& q = r.s2xs2.filtered[0];
        CHECK(p.a == 2);
        CHECK(p.N == static_cast<std::size_t>(5 - n));
        CHECK(p.F == parse_class(p.ambient(), "h-e1"));
        std::string c = "2h";
        for (Int i = 2; i <= 5 - n; ++i)
            c += "-e" + std::to_string(i);
        CHECK(p.C == parse_class(p.ambient(), c));
        CHECK(q.b == 1);
        CHECK(q.N == static_cast<std::size_t>(4 - n));
        CHECK(q.F == parse_class(q.ambient(), "f"));
        std::string cs = "2s+f";
        for (Int i = 1; i <= 4 - n; ++i)
            cs += "-e" + std::to_string(i);
        CHECK(q.C == parse_class(q.ambient(), cs));
        CHECK(anticanonical_check(parabolic_divisor(p)));
        CHECK(anticanonical_check(parabolic_divisor(q)));
        CHECK(parabolic_filling(p).b2 == parabolic_filling(q).b2);
    }
    CHECK(parabolic_solutions(2).cp2.raw.size() > 1);
    CHECK(parabolic_solutions(2).s2xs2.raw.size() > 1);
    CHECK_THROWS_AS(parabolic_solutions(5), DomainError);
}

TEST_CASE("raw parabolic solutions are genus-zero pairs with the right squares")
{
    for (Int n = 0; n <= 4; ++n) {
        ParabolicReport r = parabolic_solutions(n);
        for (const auto* branch : {&r.cp2, &r.s2xs2})
            for (const auto& s : branch->raw) {
                Ambient amb = s.ambient();
                CHECK(pairing(amb, s.F, s.F) == 0);
                CHECK(pairing(amb, s.C, s.C) == n);
                CHECK(pairing(amb, s.F, s.C) == 2);
                if (s.rejected_by == ParabolicFilter::None) {
                    Seq sum = s.F;
                    for (std::size_t i = 0; i < sum.size(); ++i)
                        sum[i] += s.C[i];
                    CHECK(sum == amb.anticanonical());
                }
                CHECK(adjunction_genus({amb, s.F}) == 0);
                CHECK(adjunction_genus({amb, s.C}) == 0);
            }
    }
}

TEST_CASE("distfill at N = 0 and the family")
{
    DistfillResult z = distfill_family(0);
    CHECK(z.det1 == -20);
    CHECK(z.det2 == -180);
    CHECK(z.lattice1.parity == Parity::Even);
    CHECK(z.lattice2.parity == Parity::Even);
    CHECK(z.matches_formula);

    for (std::size_t n = 1; n <= 4; ++n) {
        DistfillResult last = distfill_family(n, DistfillSite::LastSphere);
        CHECK(last.matches_formula);
        CHECK(last.det2 == 9 * last.det1);
        DistfillResult fourth = distfill_family(n);
        CHECK((fourth.matches_formula || !fourth.warnings.empty()));
    }
    CHECK(distfill_family(1).expected1 == 29);
    CHECK(distfill_family(2).expected2 == -342);
    CHECK_THROWS_AS(distfill_family(51), ResourceError);
}

TEST_CASE("reference bases are orthogonal to the divisor classes")
{
    Ambient amb{SurfaceModel::CP2, 9};
    for (int which : {1, 2}) {
        auto basis = distfill_reference_basis(which);
        REQUIRE(basis.size() == 3);
        for (const auto& v : basis)
            for (const auto& s : distfill_base_classes(which))
                CHECK(pairing(amb, v, parse_class(amb, s)) == 0);
        CHECK(lattice_invariants(Sublattice(amb.gram(), basis)).det == (which == 1 ? -20 : -180));
    }
}

TEST_CASE("contact census examples")
{
    CHECK(tight_structure_census({3}).vot_count == 2);
    CHECK(tight_structure_census({4, 3}).vot_count == 6);
    CHECK(tight_structure_census({3, 3, 4, 3, 3}).vot_count == 48);
    CHECK(tight_structure_census({3}).ut_count == 1);
    CHECK_THROWS_AS(tight_structure_census({2, 2}), DomainError);
}

TEST_CASE("rotation tuples match nested-loop enumeration")
{
    oracle::for_each_string(4, 2, 6, [](const Seq& d) {
        if (!is_hyperbolic_standard(d))
            return;
        auto expected = all_rotation_tuples(d);
        ContactCensus c = tight_structure_census(d);
        CHECK(c.vot_count == product_minus_one(d));
        CHECK(count_rotation_tuples(d) == expected.size());
        CHECK(c.rotation_tuples == expected);
        for (const auto& r : expected)
            CHECK(is_rotation_tuple(d, r));
    });
}

TEST_CASE("double cover obstruction")
{
    CHECK(double_cover_obstruction({3}, {1}) == DoubleCoverVerdict::VirtuallyOvertwisted);
    CHECK(double_cover_obstruction({4, 3}, {0, 1}) == DoubleCoverVerdict::VirtuallyOvertwisted);
    for (const auto& r : all_rotation_tuples({5, 3, 2}))
        CHECK(double_cover_obstruction({5, 3, 2}, r) == DoubleCoverVerdict::VirtuallyOvertwisted);
    CHECK(!is_rotation_tuple({3}, {0}));
}
