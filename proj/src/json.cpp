#include "torusfill/json.hpp"

namespace torusfill {

Json to_json(const Mat2& m)
{
    return Json::array({Json::array({m.a(), m.b()}), Json::array({m.c(), m.d()})});
}

Json to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(m.row_vector(i));
    return rows;
}

Json to_json(const LatticeInvariants& inv)
{
    Json j;
    j["rank"] = inv.rank;
    j["det"] = inv.det;
    j["parity"] = to_string(inv.parity);
    j["signature"] = Json::array({inv.signature.positive, inv.signature.negative, inv.signature.zero});
    j["elementary_divisors"] = inv.elementary_divisors;
    return j;
}

Json to_json(const CokernelInvariants& c)
{
    Json j;
    j["free_rank"] = c.free_rank;
    j["torsion"] = c.torsion;
    return j;
}

Json to_json(const EmbeddingWitness& w)
{
    Json j;
    j["blowup"] = w.blowup;
    j["target"] = w.target;
    j["rotation"] = w.rotation;
    return j;
}

Json to_json(const Divisor& D)
{
    Json j;
    j["model"] = to_string(D.ambient.model);
    j["N"] = D.ambient.N;
    Json comps = Json::array();
    for (const auto& c : D.components) {
        Json cj;
        cj["label"] = c.label;
        cj["class"] = format_class(D.ambient, c.coords);
        cj["coords"] = c.coords;
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    j["marked"] = D.marked ? Json(*D.marked) : Json(nullptr);
    return j;
}

Json to_json(const DualGraph& g)
{
    Json j;
    j["weights"] = g.weights;
    j["adjacency"] = to_json(g.adjacency);
    return j;
}

Json to_json(const ComplementHomology& h)
{
    Json j;
    j["b1"] = h.b1;
    j["b2"] = h.b2;
    j["b3"] = h.b3;
    j["euler"] = h.euler;
    j["divisor_euler"] = h.divisor_euler;
    j["pairing_rank"] = h.pairing_rank;
    return j;
}

Json to_json(const FillingInvariants& f)
{
    Json j;
    j["N"] = f.N;
    j["b1"] = f.b1;
    j["b2"] = f.b2;
    j["b3"] = f.b3;
    j["c1_trivial"] = f.c1_trivial;
    j["class_count_bound"] = f.class_count_bound;
    return j;
}

Json to_json(const ParabolicSolution& s)
{
    const Ambient amb = s.ambient();
    Json j;
    j["model"] = to_string(s.model);
    j["a"] = s.a;
    if (s.model == SurfaceModel::S2xS2)
        j["b"] = s.b;
    j["coefficients"] = s.coeffs;
    j["N"] = s.N;
    j["F"] = format_class(amb, s.F);
    j["C"] = format_class(amb, s.C);
    j["rejected_by"] = to_string(s.rejected_by);
    return j;
}

Json to_json(const DistfillResult& r)
{
    Json j;
    j["N"] = r.N;
    j["site"] = to_string(r.site);
    j["det1"] = r.det1;
    j["det2"] = r.det2;
    j["parity1"] = to_string(r.lattice1.parity);
    j["parity2"] = to_string(r.lattice2.parity);
    j["expected1"] = r.expected1;
    j["expected2"] = r.expected2;
    j["matches_formula"] = r.matches_formula;
    j["lattice1"] = to_json(r.lattice1);
    j["lattice2"] = to_json(r.lattice2);
    return j;
}

Divisor divisor_from_json(const Json& j)
{
    try {
        Ambient amb;
        const std::string model = j.at("model").get<std::string>();
        if (model == "CP2")
            amb.model = SurfaceModel::CP2;
        else if (model == "S2xS2")
            amb.model = SurfaceModel::S2xS2;
        else
            throw DomainError("divisor json: unknown model '" + model + "'");
        amb.N = j.at("N").get<std::size_t>();
        Divisor D{amb, {}, std::nullopt};
        for (const auto& cj : j.at("components")) {
            Component c;
            c.label = cj.value("label", "");
            if (cj.contains("coords"))
                c.coords = cj.at("coords").get<Seq>();
            else
                c.coords = parse_class(amb, cj.at("class").get<std::string>());
            if (c.coords.size() != amb.rank())
                throw DomainError("divisor json: coordinate vector has the wrong length");
            D.components.push_back(std::move(c));
        }
        if (j.contains("marked") && !j.at("marked").is_null())
            D.marked = j.at("marked").get<std::size_t>();
        return D;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("divisor json: ") + e.what());
    }
}

} // namespace torusfill
