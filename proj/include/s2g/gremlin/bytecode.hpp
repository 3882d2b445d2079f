#pragma once

#include <string>
#include <string_view>

#include "s2g/gremlin/traversal.hpp"

namespace s2g::gremlin {

/// Serializes a traversal as an instruction list:
///
///   {"@type":"traversal","steps":[["V"],["match",{...},{...}],["select","n"]]}
///
/// Each instruction is an array of the operator name followed by its
/// flattened arguments. Nested traversals use the same object form;
/// predicates are {"@type":"P","op":"gt","value":30} (or "op":"or" with a
/// "preds" array), variable references {"@type":"varref","name":"y"}, and
/// the unbound constant {"@type":"unbound"}. Keys appear in exactly that
/// order and the output has no insignificant whitespace.
std::string to_bytecode(const Traversal& traversal);

/// Inverse of to_bytecode. Throws Error(BytecodeDecodeError) naming the JSON
/// path of the offending element, e.g. `$.steps[1][2].op`.
Traversal from_bytecode(std::string_view document);

}  // namespace s2g::gremlin
