#pragma once

#include <string>

#include "maap/ir.hpp"

namespace maap {

// JSON document for a program:
//   {"inputs":[...], "outputs":[...], "body": {...}}
// Instruction objects carry "kind" tags "affine" | "max" | "min" | "seq" |
// "par"; loops are written in their unrolled form (which changes neither the
// semantics nor the ledger). Rationals are encoded as {"num": "...",
// "den": "..."} decimal strings. Field order is fixed, so equal programs
// serialize to identical bytes.
std::string maap_to_json(const MaapProgram& p);

// Parses and structurally normalizes; throws ParseError on malformed input.
MaapProgram maap_from_json(const std::string& doc);

}  // namespace maap
