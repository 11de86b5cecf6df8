#pragma once

#include "pythlab/admissibility.hpp"
#include "pythlab/classify.hpp"
#include "pythlab/json_io.hpp"
#include "pythlab/length.hpp"
#include "pythlab/sos.hpp"

namespace pythlab {

Json squares_to_json(const std::vector<WeightedSquare>& squares);
std::vector<WeightedSquare> squares_from_json(const Json& j);

Json dual_to_json(const DualWitness& w);
DualWitness dual_from_json(const Json& j);

Json certificate_to_json(const SosCertificate& cert);
SosCertificate certificate_from_json(const Json& j);

Json admissibility_to_json(const AdmissibilityVerdict& v);
Json obstruction_to_json(const TwoSquaresObstruction& o);
Json length_to_json(const LengthResult& r);
Json surface_verdict_to_json(const SurfaceVerdict& v);

}  // namespace pythlab
