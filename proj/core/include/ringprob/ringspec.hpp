#pragma once

#include "ringprob/ring.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ringprob {

/// Parses the ring-spec grammar (whitespace-insensitive):
///
///   spec := atom ( "x" atom )*
///   atom := "Z" int | "GF" int | "M" int "(" "GF" int ")"
///         | "chain(" q "," m ")" | "GR(" p "," k "," r ")"
///         | "triv(" q "," m ")" | "table:" path
///
/// Grammar violations throw ParseError with the offending position; semantic
/// violations (GF6, a reducible GR modulus, a failed table audit) throw
/// RingError with kValidationError.
Ring parse_ring_spec(std::string_view text);

/// Reads {"size": N, "one": i, "add": [[...]], "mul": [[...]]}.
TableData table_from_json(std::string_view json_text);

/// Cayley tables of any ring of at most kTableRingLimit elements, in the same
/// JSON schema.
std::string table_to_json(const Ring& ring);

/// Loads a table ring from disk, or from the fixtures compiled into the
/// library when no such file exists and the file name matches one of them.
Ring load_table_ring(const std::string& path);

/// JSON text of a compiled-in fixture, looked up by file name.
std::optional<std::string_view> builtin_table_fixture(std::string_view file_name);

}  // namespace ringprob
