// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "datr/commands.hpp"
#include "datr/parser.hpp"

namespace datr::test {

inline std::string sample_path(const std::string& name) { return std::string(DATR_SAMPLES_DIR) + "/" + name; }

inline Theory parse_or_throw(const std::string& text) {
  TheoryParse r = parse_theory(text);
  if (!r.theory) {
    std::string msg;
    for (const auto& d : r.diagnostics) msg += format_diagnostic(d) + "\n";
    throw std::runtime_error("parse failed:\n" + msg);
  }
  return *r.theory;
}

inline Theory verbs() {
  static const Theory t = parse_or_throw(*cli::read_file(sample_path("verbs.dtr")));
  return t;
}

inline Path path(std::initializer_list<const char*> atoms) { return Path(atoms); }
inline ValueSeq value(std::initializer_list<const char*> atoms) { return ValueSeq(atoms); }

}  // namespace datr::test
