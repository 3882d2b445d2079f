#pragma once

#include <string>
#include <string_view>

#include "s2g/gremlin/traversal.hpp"

namespace s2g::gremlin {

/// Gremlin-Groovy text. The top level is prefixed `g.`, nested traversals
/// `__.`. Names (labels, keys, ids, variables) are single-quoted; string
/// literals are double-quoted so that `P.eq("y")` (a value) and `P.eq('y')`
/// (a variable reference) stay distinct.
///
///   g.V().match(__.as('p').values('name').as('n')).select('n')
std::string to_groovy(const Traversal& traversal);

/// Reads back text produced by to_groovy. Throws Error(GroovyDecodeError).
Traversal from_groovy(std::string_view text);

}  // namespace s2g::gremlin
