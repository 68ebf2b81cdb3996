#pragma once

// Partition files.
//
// A partition file is a JSON document written in a fixed layout so that
// equal partitions produce byte-identical files:
//
//   {
//     "format": "vspart-partition",
//     "version": 1,
//     "p": 2,
//     "e": 1,
//     "modulus": [0,1],
//     "n": 4,
//     "header": {"rule":"spread","note":"d=2","parts":[]},
//     "components": [
//       [[0,0,1,0],[0,0,0,1]],
//       ...
//     ]
//   }
//
// "header" (provenance) is optional. Each component is its reduced
// row-echelon basis; rows hold element codes. Components appear in canonical
// order.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vspart/partition.hpp"

namespace vspart {

std::string to_text(const Partition& p);
void write_partition(std::ostream& os, const Partition& p);
void write_partition_file(const std::string& path, const Partition& p);

struct ReadOptions {
  /// Accept non-canonical bases or component order, re-canonicalizing them.
  bool force = false;
};

struct ReadResult {
  Partition partition;
  /// False when the input had to be re-canonicalized (only possible with force).
  bool canonical = true;
  std::vector<std::string> warnings;
};

/// Throws ParseError for malformed input and NonCanonicalInput for
/// non-canonical input unless options.force is set.
ReadResult read_partition(std::istream& is, ReadOptions options = {});
ReadResult read_partition_text(const std::string& text, ReadOptions options = {});
ReadResult read_partition_file(const std::string& path, ReadOptions options = {});

nlohmann::json to_json(const Provenance& p);
Provenance provenance_from_json(const nlohmann::json& j);

}  // namespace vspart
