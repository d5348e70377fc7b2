#pragma once

#include "torusfill/integer.hpp"
#include "torusfill/lattice.hpp"
#include "torusfill/sl2z.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace torusfill {

enum class SurfaceModel { CP2, S2xS2 };

const char* to_string(SurfaceModel m);

/// H_2 of CP^2 # N(-CP^2) with basis h, e_1..e_N, or of (S^2 x S^2) # N(-CP^2) with basis s, f, e_1..e_N.
struct Ambient {
    SurfaceModel model = SurfaceModel::CP2;
    std::size_t N = 0;

    std::size_t base_rank() const { return model == SurfaceModel::CP2 ? 1 : 2; }
    std::size_t rank() const { return base_rank() + N; }
    /// Index of e_i (1-based i) in a coordinate vector.
    std::size_t e_index(std::size_t i) const { return base_rank() + i - 1; }
    IntMatrix gram() const;
    /// 3h - sum e_i, or 2s + 2f - sum e_i.
    Seq anticanonical() const;
    Seq zero() const { return Seq(rank(), 0); }
    Int euler_characteristic() const { return static_cast<Int>(rank()) + 2; }
    std::string str() const;

    friend bool operator==(const Ambient&, const Ambient&) = default;
};

struct HClass {
    Ambient ambient;
    Seq coords;
};

Int pairing(const Ambient& amb, const Seq& x, const Seq& y);
/// Throws DomainError when the ambients differ.
Int pairing(const HClass& x, const HClass& y);

/// Parses e.g. "2h-e1-e2", "2s+f-e3", "0".
Seq parse_class(const Ambient& amb, std::string_view text);
std::string format_class(const Ambient& amb, const Seq& coords);

/// (C.C - K.C + 2) / 2 with K the anticanonical class; DomainError on odd numerator.
Int adjunction_genus(const HClass& c);

/// Zero-pads coordinates to a larger ambient.
Seq extend(const Seq& coords, std::size_t rank);

struct Component {
    std::string label;
    Seq coords;

    friend auto operator<=>(const Component&, const Component&) = default;
};

/// Cyclically ordered spheres recorded by their homology classes.
struct Divisor {
    Ambient ambient;
    std::vector<Component> components;
    std::optional<std::size_t> marked; ///< the +1 sphere, when there is one

    std::size_t size() const { return components.size(); }
    HClass class_of(std::size_t i) const { return {ambient, components.at(i).coords}; }
    Seq total_class() const;

    static Divisor from_classes(const Ambient& amb, const std::vector<std::string>& classes,
                                std::optional<std::size_t> marked = std::nullopt);

    friend bool operator==(const Divisor&, const Divisor&) = default;
};

/// Blows up `times` generic points of component i (0-based).
Divisor blowup_generic(const Divisor& D, std::size_t i, std::size_t times);

enum class NodeTransform { Total, Proper };

/// Blows up the node between cyclically adjacent components i and j (0-based).
/// Total inserts the exceptional sphere between them in the cyclic order.
Divisor blowup_node(const Divisor& D, std::size_t i, std::size_t j, NodeTransform t = NodeTransform::Total);

inline Divisor blowup_node_total(const Divisor& D, std::size_t i, std::size_t j)
{
    return blowup_node(D, i, j, NodeTransform::Total);
}

IntMatrix intersection_matrix(const Divisor& D);

struct DualGraph {
    Seq weights;
    IntMatrix adjacency; ///< off-diagonal pairings, zero diagonal

    /// Total number of intersection points (sum of the upper triangle).
    Int nodes() const;
};

DualGraph dual_graph(const Divisor& D);

/// Every component meets exactly its two cyclic neighbours, once each (twice when there are two).
bool is_cycle_configuration(const Divisor& D);

struct EllipticLeft {
    int eps;
};
struct EllipticRight {
    int eps;
};
struct Parabolic {
    Int n;
};
struct HypSingle {
    Int c1;
};
/// Cycle cap for d, built from a blowup s of (0,0) dominated by rotate(rho(d), rotation).
struct HypCycle {
    Seq d;
    Seq s;
    std::size_t rotation = 0;
};

using CapSpec = std::variant<EllipticLeft, EllipticRight, Parabolic, HypSingle, HypCycle>;

std::string describe(const CapSpec& spec);

/// The +1 line followed by a chain with weights (1 - c_1, -c_2, ..., -c_l-1, 1 - c_l),
/// obtained from three lines by replaying the blowups of s at nodes and then c_i - s_i generic blowups.
Divisor realize_cycle(const Seq& c, const Seq& s);

Divisor realize_cap(const CapSpec& spec);

/// edge_sign_product * A(-w_1, ..., -w_l).
Mat2 cycle_monodromy(const Seq& weights, int edge_sign_product);

/// Monodromy of the plumbing boundary for each cap: -A(-eps), A(1, 2 - eps), A(0, -n), -A(c_1), -A(c).
Mat2 boundary_monodromy(const CapSpec& spec);

bool anticanonical_check(const Divisor& D);

/// Betti numbers of the complement of a regular neighbourhood of a connected divisor of spheres.
struct ComplementHomology {
    std::size_t pairing_rank = 0;
    std::size_t b1 = 0;
    std::size_t b2 = 0;
    std::size_t b3 = 0;
    Int euler = 0;
    Int divisor_euler = 0;
};

ComplementHomology complement_homology(const Divisor& D);

} // namespace torusfill
