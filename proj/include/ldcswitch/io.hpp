#pragma once

#include <stdexcept>
#include <string>

#include "ldcswitch/graphcheck.hpp"
#include "ldcswitch/network.hpp"
#include "ldcswitch/reductions.hpp"
#include "ldcswitch/solvers.hpp"
#include "ldcswitch/verify.hpp"

namespace ldcswitch {

/// Malformed input document; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numbers are written as "p/q" or "p" strings and "inf"; plain JSON integers
// are accepted on input. Omitted bus bounds default to "0", omitted
// switchable to true, omitted line ids to "a-b".
Network parse_network(const std::string& text);
std::string write_network(const Network& net);

/// {"vertices": [...], "edges": [[u, v], ...], "a": u, "b": v}
GraphInstance parse_graph(const std::string& text);
std::string write_graph(const GraphInstance& graph);

/// {"X": [...], "Y": [...], "W": [...], "d": [{"x", "y", "w", "cost"}, ...]} with every triple listed once.
M3daInstance parse_m3da(const std::string& text);
std::string write_m3da(const M3daInstance& instance);

/// {"root": r, "tree_edges": [[parent, child], ...], "levels": [[...], ...]}
TreeAnnotation parse_annotation(const std::string& text);
std::string write_annotation(const TreeAnnotation& annotation);

std::string write_operating_point(const OperatingPoint& op);

/// Per-bus table of theta, pgen and pload (by bus id) plus the switch set.
std::string render_operating_point(const OperatingPoint& op);

std::string render_report(const VerificationReport& report);
std::string render_report_structured(const VerificationReport& report);

}  // namespace ldcswitch
