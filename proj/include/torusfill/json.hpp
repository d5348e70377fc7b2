#pragma once

#include "torusfill/blowup.hpp"
#include "torusfill/divisor.hpp"
#include "torusfill/fillings.hpp"
#include "torusfill/lattice.hpp"
#include "torusfill/sl2z.hpp"

#include <json.hpp>

namespace torusfill {

using Json = nlohmann::ordered_json;

Json to_json(const Mat2& m);
Json to_json(const IntMatrix& m);
Json to_json(const LatticeInvariants& inv);
Json to_json(const CokernelInvariants& c);
Json to_json(const EmbeddingWitness& w);
Json to_json(const Divisor& D);
Json to_json(const DualGraph& g);
Json to_json(const ComplementHomology& h);
Json to_json(const FillingInvariants& f);
Json to_json(const ParabolicSolution& s);
Json to_json(const DistfillResult& r);

/// Inverse of to_json(Divisor); coordinates win over the class strings when both are present.
Divisor divisor_from_json(const Json& j);

} // namespace torusfill
