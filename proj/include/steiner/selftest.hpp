#pragma once

#include <iosfwd>

namespace steiner {

// Compact invariant suite behind the `selftest` CLI verb: exact rearrangement
// identities, kernel backend equivalence, persistence round-trip, surface
// scheme exactness. Prints one PASS/FAIL line per check; returns the number
// of failures. Output is deterministic and byte-identical for any worker
// count.
int selftest(std::ostream& out);

} // namespace steiner
