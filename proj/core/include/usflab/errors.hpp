#pragma once

#include <stdexcept>
#include <string>

namespace usflab {

// Every failure the library reports deliberately.  Tests match on the code;
// the message is for humans and makes no stability promise.
enum class Errc {
  disconnected_network,
  invalid_edge,
  invalid_vertex,
  nonpositive_conductance,
  empty_exterior,
  cycle_in_contract_set,
  too_many_trees,
  null_conditioning_event,
  self_loop,
  wired_endpoint,
  step_cap_exceeded,
  unsupported_outcome,
  missing_wired_vertex,
  inconsistent_forest,
  fixture_missing,
  negative_mass,
  parse_error,
  bad_params,
  unknown_family,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::disconnected_network: return "DisconnectedNetwork";
    case Errc::invalid_edge: return "InvalidEdge";
    case Errc::invalid_vertex: return "InvalidVertex";
    case Errc::nonpositive_conductance: return "NonpositiveConductance";
    case Errc::empty_exterior: return "EmptyExterior";
    case Errc::cycle_in_contract_set: return "CycleInContractSet";
    case Errc::too_many_trees: return "TooManyTrees";
    case Errc::null_conditioning_event: return "NullConditioningEvent";
    case Errc::self_loop: return "SelfLoop";
    case Errc::wired_endpoint: return "WiredEndpoint";
    case Errc::step_cap_exceeded: return "StepCapExceeded";
    case Errc::unsupported_outcome: return "UnsupportedOutcome";
    case Errc::missing_wired_vertex: return "MissingWiredVertex";
    case Errc::inconsistent_forest: return "InconsistentForest";
    case Errc::fixture_missing: return "FixtureMissing";
    case Errc::negative_mass: return "NegativeMass";
    case Errc::parse_error: return "ParseError";
    case Errc::bad_params: return "BadParams";
    case Errc::unknown_family: return "UnknownFamily";
  }
  return "UnknownError";
}

}  // namespace usflab
