#include "oracles.hpp"

#include "torusfill/blowup.hpp"
#include "torusfill/divisor.hpp"
#include "torusfill/fillings.hpp"
#include "torusfill/json.hpp"

#include <doctest.h>

#include <random>

using namespace torusfill;

namespace {

Ambient cp2(std::size_t n) { return {SurfaceModel::CP2, n}; }

std::vector<std::string> classes_of(const Divisor& D)
{
    std::vector<std::string> out;
    for (const auto& c : D.components)
        out.push_back(format_class(D.ambient, c.coords));
    return out;
}

Divisor triangle() { return Divisor::from_classes(cp2(0), {"h", "h", "h"}, 0); }

/// Expected dual-graph weights for a cap.
Seq target_weights(const CapSpec& spec, const Seq& c)
{
    if (auto* e = std::get_if<EllipticLeft>(&spec))
        return {1, 0, e->eps - 1};
    if (auto* e = std::get_if<EllipticRight>(&spec))
        return {-1, e->eps - 2};
    if (auto* p = std::get_if<Parabolic>(&spec))
        return {0, p->n};
    if (auto* h = std::get_if<HypSingle>(&spec))
        return {1, 2 - h->c1};
    Seq w{1};
    for (std::size_t i = 0; i < c.size(); ++i)
        w.push_back((i == 0 || i + 1 == c.size()) ? 1 - c[i] : -c[i]);
    return w;
}

std::vector<CapSpec> cap_grid()
{
    std::vector<CapSpec> specs;
    for (int eps : {-1, 0, 1}) {
        specs.push_back(EllipticLeft{eps});
        specs.push_back(EllipticRight{eps});
    }
    for (Int n = 0; n <= 4; ++n)
        specs.push_back(Parabolic{n});
    for (Int c1 = 3; c1 <= 8; ++c1)
        specs.push_back(HypSingle{c1});
    oracle::for_each_string(6, 2, 7, [&](const Seq& d) {
        if (!is_hyperbolic_standard(d) || d != cyclic_canonical(d) || rho(d).size() > 6)
            return;
        if (auto w = is_embeddable(d))
            specs.push_back(HypCycle{d, w->blowup, w->rotation});
    });
    return specs;
}

} // namespace

TEST_CASE("pairing examples")
{
    Ambient a = cp2(2);
    CHECK(pairing(a, parse_class(a, "h"), parse_class(a, "h")) == 1);
    CHECK(pairing(a, parse_class(a, "h-e1"), parse_class(a, "2h-e2")) == 2);
    Ambient s{SurfaceModel::S2xS2, 0};
    CHECK(pairing(s, parse_class(s, "f"), parse_class(s, "2s+f")) == 2);
    CHECK_THROWS_AS(pairing(HClass{a, parse_class(a, "h")}, HClass{s, parse_class(s, "s")}), DomainError);
}

TEST_CASE("class parsing round trip")
{
    Ambient a = cp2(9);
    for (const char* text : {"h", "2h-e2-e3-e4-e5", "-3e1-2e2-e3-e4+5e5-e6+3e9", "e8-e9", "0"})
        CHECK(format_class(a, parse_class(a, text)) == text);
    CHECK_THROWS_AS(parse_class(a, "e10"), DomainError);
    CHECK_THROWS_AS(parse_class(a, "s"), DomainError);
    CHECK_THROWS_AS(parse_class(a, "2x"), DomainError);
}

TEST_CASE("adjunction genus examples")
{
    Ambient a = cp2(9);
    CHECK(adjunction_genus({a, parse_class(a, "h")}) == 0);
    CHECK(adjunction_genus({a, parse_class(a, "2h-e2-e3-e4-e5")}) == 0);
    CHECK(adjunction_genus({a, parse_class(a, "3h-e1-e2-e3-e4-e5-e6-e7-e8-e9")}) == 1);
}

TEST_CASE("blowup_generic examples")
{
    Divisor t = blowup_generic(triangle(), 1, 1);
    CHECK(t.ambient == cp2(1));
    CHECK(classes_of(t) == std::vector<std::string>{"h", "h-e1", "h"});

    Divisor lc = Divisor::from_classes(cp2(0), {"h", "2h"}, 0);
    Divisor b = blowup_generic(lc, 1, 6);
    CHECK(classes_of(b) == std::vector<std::string>{"h", "2h-e1-e2-e3-e4-e5-e6"});
    CHECK(dual_graph(b).weights == Seq{1, -2});
    CHECK_THROWS_AS(blowup_generic(lc, 1, 0), DomainError);
}

TEST_CASE("blowup_node_total examples")
{
    Divisor d1 = blowup_node_total(triangle(), 1, 2);
    CHECK(classes_of(d1) == std::vector<std::string>{"h", "h-e1", "e1", "h-e1"});
    CHECK(dual_graph(d1).weights == Seq{1, 0, -1, 0});

    Divisor d2 = blowup_node_total(d1, 1, 2);
    CHECK(dual_graph(d2).weights == Seq{1, -1, -1, -2, 0});

    Divisor d3 = blowup_node_total(d2, 2, 3);
    CHECK(dual_graph(d3).weights == Seq{1, -1, -2, -1, -3, 0});
    CHECK(classes_of(d3) == std::vector<std::string>{"h", "h-e1-e2", "e2-e3", "e3", "e1-e2-e3", "h-e1"});

    Divisor apart = Divisor::from_classes(cp2(1), {"h", "e1"});
    CHECK_THROWS_AS(blowup_node_total(apart, 0, 1), DomainError);
}

TEST_CASE("dual_graph examples")
{
    DualGraph t = dual_graph(triangle());
    CHECK(t.weights == Seq{1, 1, 1});
    CHECK(t.adjacency == IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});

    DualGraph lc = dual_graph(Divisor::from_classes(cp2(0), {"h", "2h"}));
    CHECK(lc.weights == Seq{1, 4});
    CHECK(lc.adjacency(0, 1) == 2);

    DualGraph p = dual_graph(realize_cap(Parabolic{4}));
    CHECK(p.weights == Seq{0, 4});
    CHECK(p.adjacency(0, 1) == 2);
}

TEST_CASE("realize_cap examples")
{
    Divisor el = realize_cap(EllipticLeft{1});
    CHECK(el.ambient == cp2(2));
    CHECK(classes_of(el) == std::vector<std::string>{"h", "h-e1", "h-e2"});
    CHECK(dual_graph(el).weights == Seq{1, 0, 0});

    Divisor p = realize_cap(Parabolic{4});
    CHECK(p.ambient == cp2(1));
    CHECK(classes_of(p) == std::vector<std::string>{"h-e1", "2h"});

    Divisor h = realize_cap(HypCycle{{5}, {1, 1, 1}, 0});
    CHECK(h.ambient == cp2(5));
    CHECK(classes_of(h) == std::vector<std::string>{"h", "h-e1-e2-e3", "e1-e4", "h-e1-e5"});
    CHECK(dual_graph(h).weights == Seq{1, -2, -2, -1});

    CHECK_THROWS_AS(realize_cap(Parabolic{5}), DomainError);
    CHECK_THROWS_AS(realize_cap(HypSingle{2}), DomainError);
    CHECK_THROWS_AS(realize_cap(EllipticLeft{2}), DomainError);
    CHECK_THROWS_AS(realize_cap(HypCycle{{5}, {2, 1, 2, 1}, 0}), DomainError);
    CHECK_THROWS_AS(realize_cap(HypCycle{{5}, {1, 1}, 0}), DomainError);
}

TEST_CASE("cycle_monodromy examples")
{
    Seq c{3, 2, 2};
    CHECK(cycle_monodromy({-3, -2, -2}, -1) == -compose_A(c));
    CHECK(cycle_monodromy({-3, -2, -4, -2}, 1) == compose_A({3, 2, 4, 2}));
    for (int eps : {-1, 0, 1})
        CHECK(cycle_monodromy({eps - 1, 0, 1}, 1) == -compose_A({-eps}));
}

TEST_CASE("anticanonical examples")
{
    CHECK(anticanonical_check(realize_cap(Parabolic{4})));
    CHECK(anticanonical_check(realize_cap(EllipticRight{0})));
    Divisor d1 = Divisor::from_classes(cp2(9), distfill_base_classes(1));
    CHECK(anticanonical_check(d1));
    CHECK(!anticanonical_check(Divisor::from_classes(cp2(1), {"h", "h-e1"})));
}

TEST_CASE("every cap over the grid matches its target graph")
{
    auto specs = cap_grid();
    CHECK(specs.size() > 21);
    for (const auto& spec : specs) {
        CAPTURE(describe(spec));
        Divisor D = realize_cap(spec);
        Seq c;
        if (auto* h = std::get_if<HypCycle>(&spec))
            c = rotate(rho(h->d), h->rotation);
        CHECK(dual_graph(D).weights == target_weights(spec, c));
        CHECK(anticanonical_check(D));
        CHECK(is_cycle_configuration(D));
        for (std::size_t i = 0; i < D.size(); ++i)
            CHECK(adjunction_genus(D.class_of(i)) == 0);

        IntMatrix q = intersection_matrix(D);
        Mat2 mono = boundary_monodromy(spec);
        CHECK(cokernel_invariants(q).torsion == h1_torus_bundle(mono).torsion);
        CHECK(!is_negative_definite(q));
    }
}

TEST_CASE("hyperbolic cycle boundary trace equals trace of -A(rho(d))")
{
    oracle::for_each_string(5, 2, 6, [](const Seq& d) {
        if (!is_hyperbolic_standard(d) || d != cyclic_canonical(d) || rho(d).size() > 12)
            return;
        auto w = is_embeddable(d);
        if (!w)
            return;
        Divisor D = realize_cap(HypCycle{d, w->blowup, w->rotation});
        Mat2 m = -compose_A(rho(d));
        CHECK(cycle_monodromy(dual_graph(D).weights, 1).trace() == m.trace());
        CHECK(boundary_monodromy(HypCycle{d, w->blowup, w->rotation}).trace() == m.trace());
        auto sf = hyperbolic_standard_form(m);
        CHECK(sf.sign == -1);
        CHECK(cyclic_equal(sf.d, rho(d)));
    });
}

TEST_CASE("random blowup sequences preserve the anticanonical class")
{
    std::mt19937_64 rng(211);
    for (int t = 0; t < 1000; ++t) {
        Divisor D = t % 2 ? realize_cap(EllipticLeft{static_cast<int>(t % 3) - 1}) : realize_cap(Parabolic{t % 5});
        std::size_t steps = 1 + rng() % 6;
        for (std::size_t s = 0; s < steps; ++s) {
            std::size_t i = rng() % D.size();
            if (rng() % 2) {
                Divisor before = D;
                D = blowup_generic(D, i, 1 + rng() % 2);
                CHECK(D.size() == before.size());
            } else {
                std::size_t j = (i + 1) % D.size();
                Divisor before = D;
                D = blowup_node_total(D, i, j);
                CHECK(D.size() == before.size() + 1);
            }
            CHECK(anticanonical_check(D));
        }
    }
}

TEST_CASE("node blowup keeps pairings between untouched components")
{
    std::mt19937_64 rng(223);
    for (int t = 0; t < 200; ++t) {
        Divisor D = realize_cap(EllipticLeft{static_cast<int>(t % 3) - 1});
        for (int s = 0; s < 3; ++s) {
            std::size_t i = rng() % D.size(), j = (i + 1) % D.size();
            IntMatrix before = intersection_matrix(D);
            Divisor E = blowup_node_total(D, i, j);
            IntMatrix after = intersection_matrix(E);
            std::size_t ins = j == 0 ? D.size() : j;
            auto map = [&](std::size_t k) { return k < ins ? k : k + 1; };
            for (std::size_t a = 0; a < D.size(); ++a)
                for (std::size_t b = 0; b < D.size(); ++b) {
                    bool touched = a == i || a == j || b == i || b == j;
                    if (!touched)
                        CHECK(after(map(a), map(b)) == before(a, b));
                }
            D = E;
        }
    }
}

TEST_CASE("divisor JSON round trip")
{
    for (const auto& spec : cap_grid()) {
        Divisor D = realize_cap(spec);
        Json j = to_json(D);
        CHECK(divisor_from_json(Json::parse(j.dump())) == D);
    }
    CHECK_THROWS_AS(divisor_from_json(Json::parse(R"({"model":"K3","N":0,"components":[]})")), DomainError);
}
