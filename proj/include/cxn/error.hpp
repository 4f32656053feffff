#ifndef CXN_ERROR_HPP
#define CXN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cxn {

enum class errc {
  dangling_facet,
  dimension_mismatch,
  duplicate_facet,
  duplicate_id,
  sign_in_unoriented,
  duplicate_vertex_in_simplex,
  cycle_too_short,
  vertex_index_out_of_range,
  unknown_cell,
  k_out_of_range,
  not_square,
  not_oriented,
  width_mismatch,
  missing_feature,
  missing_context,
  shape_mismatch,
  config_invalid,
  syntax,
  io_failure,
};

const char* errc_name(errc code);

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::dangling_facet: return "DanglingFacet";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::duplicate_facet: return "DuplicateFacet";
    case errc::duplicate_id: return "DuplicateId";
    case errc::sign_in_unoriented: return "SignInUnoriented";
    case errc::duplicate_vertex_in_simplex: return "DuplicateVertexInSimplex";
    case errc::cycle_too_short: return "CycleTooShort";
    case errc::vertex_index_out_of_range: return "VertexIndexOutOfRange";
    case errc::unknown_cell: return "UnknownCell";
    case errc::k_out_of_range: return "KOutOfRange";
    case errc::not_square: return "NotSquare";
    case errc::not_oriented: return "NotOriented";
    case errc::width_mismatch: return "WidthMismatch";
    case errc::missing_feature: return "MissingFeature";
    case errc::missing_context: return "MissingContext";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::config_invalid: return "ConfigInvalid";
    case errc::syntax: return "Syntax";
    case errc::io_failure: return "IoFailure";
  }
  return "Error";
}

}  // namespace cxn

#endif
