#pragma once

#include <stdexcept>
#include <string>

namespace relkit {

// Base class for all library-raised runtime failures.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured work or size cap would be exceeded.  Carries the cap name so
// callers (and the CLI, which maps this to exit code 3) can report which knob
// to raise.
struct cap_exceeded : error {
  cap_exceeded(const std::string& cap, const std::string& detail)
      : error("cap exceeded [" + cap + "]: " + detail), cap_name(cap) {}
  std::string cap_name;
};

// Malformed textual input (cycle notation, group specs, JSON payloads).
// Mapped to exit code 4 by the CLI.
struct parse_error : error {
  explicit parse_error(const std::string& what, std::size_t position = npos)
      : error(what), pos(position) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t pos;
};

// A named precondition of an operation does not hold (basic-lemma and
// wreath-construction hypotheses, degree mismatches, etc.).
struct precondition_error : error {
  precondition_error(const std::string& name, const std::string& detail)
      : error("precondition violated [" + name + "]: " + detail),
        precondition(name) {}
  std::string precondition;
};

}  // namespace relkit
