#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sptk/algebra.hpp"
#include "sptk/category.hpp"
#include "sptk/geometry.hpp"
#include "sptk/metric.hpp"
#include "sptk/report.hpp"
#include "sptk/triple.hpp"

// JSON encodings. Character and vertex indices are 1-based on disk; infinite
// values are written as the string "inf". Readers throw Error(parse_error).
namespace sptk::io {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text);
/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

/// Finite numbers as numbers; +-inf as "inf"/"-inf"; NaN as "nan".
Json number(double x);
double number_from_json(const Json& j);

/// Square matrices as {"dim", "entries"}; rectangular ones as {"rows", "cols", "entries"}.
/// Entries are [re, im] pairs; plain numbers are read as real.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const FiniteCommutativeAlgebra& a);
FiniteCommutativeAlgebra algebra_from_json(const Json& j);

Json to_json(const State& s);
State state_from_json(const Json& j);

Json to_json(const AlgebraHom& phi);
AlgebraHom hom_from_json(const Json& j, int source_characters);

/// Reader also accepts {"triple": {...}}.
Json to_json(const SpectralTriple& t);
SpectralTriple triple_from_json(const Json& j);

Json to_json(const HochschildChain& c);
HochschildChain chain_from_json(const Json& j);

/// Reader also accepts {"geometry": {...}}.
Json to_json(const DiscreteGeometry& g);
DiscreteGeometry geometry_from_json(const Json& j);

Json to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j, int source_characters);

Json to_json(const DistanceValue& d, bool with_certificate = true);
Json to_json(const DistanceMatrix& m, bool with_certificates = false);

Json to_json(const Report& r);
Json to_json(const RealStructureReport& r);
Json to_json(const OrientabilityReport& r);
Json to_json(const ComparisonReport& r);
Json to_json(const ContractionReport& r);

}  // namespace sptk::io
