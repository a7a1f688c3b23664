#include "sptk/errors.hpp"

namespace sptk {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_hermitian: return "NotHermitian";
    case ErrorCode::not_normal: return "NotNormal";
    case ErrorCode::not_commuting: return "NotCommuting";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::invalid_algebra: return "InvalidAlgebra";
    case ErrorCode::empty_fiber: return "EmptyFiber";
    case ErrorCode::invalid_state: return "InvalidState";
    case ErrorCode::algebra_mismatch: return "AlgebraMismatch";
    case ErrorCode::invalid_homomorphism: return "InvalidHomomorphism";
    case ErrorCode::no_real_structure: return "NoRealStructure";
    case ErrorCode::degree_zero: return "DegreeZero";
    case ErrorCode::parity_mismatch: return "ParityMismatch";
    case ErrorCode::real_structure_mismatch: return "RealStructureMismatch";
    case ErrorCode::not_invariant: return "NotInvariant";
    case ErrorCode::too_many_characters: return "TooManyCharacters";
    case ErrorCode::too_many_grid_points: return "TooManyGridPoints";
    case ErrorCode::invalid_morphism: return "InvalidMorphism";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::endpoint_mismatch: return "EndpointMismatch";
    case ErrorCode::not_isometric: return "NotIsometric";
    case ErrorCode::not_onto_components: return "NotOntoComponents";
    case ErrorCode::nonpositive_length: return "NonpositiveLength";
    case ErrorCode::too_few_points: return "TooFewPoints";
    case ErrorCode::invalid_geometry: return "InvalidGeometry";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sptk
