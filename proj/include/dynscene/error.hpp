// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dynscene {

enum class Errc {
  empty_input,
  truncated_file,
  syntax_error,
  empty_mesh,
  bad_range,
  placement_failed,
  out_of_range,
  no_free_space,
  grid_too_large,
  too_short,
  empty_mask,
  dimension_mismatch,
  bad_counts,
  empty_list,
  io_failure,
  invariant_violation,
  unknown_image,
  bad_category,
  unknown_recipe,
  parse_error,
  bad_config,
};

const char* errc_name(Errc code);

// Exit code the CLI maps an error class to: 2 = data error, 3 = internal.
int errc_exit_code(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace dynscene
