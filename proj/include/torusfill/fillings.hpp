#pragma once

#include "torusfill/blowup.hpp"
#include "torusfill/divisor.hpp"
#include "torusfill/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace torusfill {

struct FillingInvariants {
    std::size_t N = 0;
    std::size_t b1 = 0;
    std::size_t b2 = 0;
    std::size_t b3 = 0;
    bool c1_trivial = false;
    std::size_t class_count_bound = 0;
};

/// One homology configuration of the blown-up cap, up to relabeling of exceptional classes.
struct CensusConfiguration {
    Seq blowup;
    Divisor divisor;
    ComplementHomology homology;
};

struct HyperbolicCensus {
    Seq d;
    EmbeddingWitness witness;
    Divisor cap;
    Divisor blown_up;   ///< cap with the node between the first two chain spheres blown up
    Seq blown_up_target; ///< chain string of the blown-up cap
    FillingInvariants invariants;
    std::vector<CensusConfiguration> configurations;
    bool configurations_agree = true; ///< all share N, b1, b2 and the anticanonical check
};

HyperbolicCensus hyperbolic_filling_census(const Seq& d, std::size_t limit = default_blowup_limit);

/// Exceptional columns sorted, so two divisors related by relabeling e_i compare equal.
Divisor relabel_canonical(const Divisor& D);

/// Checks chi(X) = chi(cap) + chi(P) and the Mayer-Vietoris rank identity with b1(Y) = b2(Y) = b1(W) = 1,
/// where X is the ambient of cap.
bool euler_consistency(const Divisor& cap, const FillingInvariants& fill, std::string* diagnostic = nullptr);

enum class ParabolicFilter {
    None,
    DisjointExceptional, ///< some b_j = 0 (j > 1) or c_j = 0: e_j misses both spheres
    ExtraUnitCoefficients, ///< more than 4 - n unit coefficients: blowing them down gives n > 4
    SecondExceptional, ///< some b_j = 2 (j > 1) or c_j = 2: h - e_1 - e_j or f - e_j is exceptional and disjoint
};

const char* to_string(ParabolicFilter f);

struct ParabolicSolution {
    SurfaceModel model = SurfaceModel::CP2;
    Int a = 0;
    Int b = 0;     ///< coefficient of f (S2xS2 branch only)
    Seq coeffs;    ///< b_1, ..., b_N (CP2) or c_1, ..., c_N (S2xS2)
    std::size_t N = 0;
    Seq F;
    Seq C;
    ParabolicFilter rejected_by = ParabolicFilter::None;

    Ambient ambient() const { return {model, N}; }
};

struct ParabolicBranch {
    std::vector<ParabolicSolution> raw;      ///< every solution of the system within the search box
    std::vector<ParabolicSolution> filtered; ///< survivors of the minimality filters
};

struct ParabolicReport {
    Int n = 0;
    ParabolicBranch cp2;
    ParabolicBranch s2xs2;
};

/// Exhaustive solution of the two Diophantine systems for the parabolic cap of A(0, -n), n <= 4.
ParabolicReport parabolic_solutions(Int n);

/// Cap divisor F + C in the ambient of a filtered solution.
Divisor parabolic_divisor(const ParabolicSolution& sol);

/// Filling invariants derived from a filtered solution.
FillingInvariants parabolic_filling(const ParabolicSolution& sol);

enum class DistfillSite {
    FourthSphere, ///< e2-e3-e4 on the first divisor, e4-e6-e7 on the second
    LastSphere,   ///< h-e1-e8-e9 on both
};

const char* to_string(DistfillSite s);

inline constexpr std::size_t default_distfill_limit = 50;

/// Base classes of the two divisors in CP2#9 (which = 1 or 2).
std::vector<std::string> distfill_base_classes(int which);

/// The two reference orthogonal bases in CP2#9 coordinates (which = 1 or 2).
std::vector<Seq> distfill_reference_basis(int which);

Divisor distfill_divisor(int which, std::size_t N, DistfillSite site = DistfillSite::FourthSphere);

struct DistfillResult {
    std::size_t N = 0;
    DistfillSite site = DistfillSite::FourthSphere;
    LatticeInvariants lattice1;
    LatticeInvariants lattice2;
    Int det1 = 0;
    Int det2 = 0;
    Int expected1 = 0; ///< (-1)^(N+1) (9N + 20)
    Int expected2 = 0; ///< 9 * expected1
    bool matches_formula = false;
    std::vector<std::string> warnings;
};

DistfillResult distfill_family(std::size_t N, DistfillSite site = DistfillSite::FourthSphere,
                               std::size_t limit = default_distfill_limit);

struct ContactCensus {
    Seq d;
    std::uint64_t vot_count = 0;
    std::uint64_t ut_count = 1;
    std::vector<Seq> rotation_tuples;
};

inline constexpr std::uint64_t default_tuple_limit = 1'000'000;

/// Product of (d_j - 1); throws DomainError unless d is a hyperbolic standard string.
std::uint64_t rotation_tuple_product(const Seq& d);

/// Counts rotation tuples by walking them one at a time, without storing them.
std::uint64_t count_rotation_tuples(const Seq& d);

/// With list_tuples false the tuples are only counted, and tuple_limit does not apply.
ContactCensus tight_structure_census(const Seq& d, std::uint64_t tuple_limit = default_tuple_limit,
                                     bool list_tuples = true);

/// r_j in {-(d_j - 2), -(d_j - 2) + 2, ..., d_j - 2}.
bool is_rotation_tuple(const Seq& d, const Seq& r);

enum class DoubleCoverVerdict { VirtuallyOvertwisted, Inconclusive };

const char* to_string(DoubleCoverVerdict v);

/// Compares (r, -r) with the patterns eps * (d' - 2), d' = (d, d), eps = +-1.
DoubleCoverVerdict double_cover_obstruction(const Seq& d, const Seq& r);

} // namespace torusfill
