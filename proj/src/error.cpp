// SPDX-License-Identifier: Apache-2.0
#include "dynscene/error.hpp"

namespace dynscene {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::truncated_file: return "TruncatedFile";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::empty_mesh: return "EmptyMesh";
    case Errc::bad_range: return "BadRange";
    case Errc::placement_failed: return "PlacementFailed";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::no_free_space: return "NoFreeSpace";
    case Errc::grid_too_large: return "GridTooLarge";
    case Errc::too_short: return "TooShort";
    case Errc::empty_mask: return "EmptyMask";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::bad_counts: return "BadCounts";
    case Errc::empty_list: return "EmptyList";
    case Errc::io_failure: return "IoFailure";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::unknown_image: return "UnknownImage";
    case Errc::bad_category: return "BadCategory";
    case Errc::unknown_recipe: return "UnknownRecipe";
    case Errc::parse_error: return "ParseError";
    case Errc::bad_config: return "BadConfig";
  }
  return "UnknownError";
}

int errc_exit_code(Errc code) {
  return code == Errc::invariant_violation ? 3 : 2;
}

}  // namespace dynscene
