#pragma once

// Batch driver. Every subcommand turns its flags into a self-contained params
// object, so an artifact {schema_version, command, params, result, verdict}
// can be replayed from its params alone.

#include "tatekit/json_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tatekit::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

struct Caps {
  std::size_t support = 4096;
  std::size_t refinement_depth = 256;
  std::size_t certificate_unknowns = 4096;
  std::size_t max_steps = 64;
};

struct SessionConfig {
  std::map<std::string, Json> fields;  // id -> field json
  std::vector<RadiusDecl> radii;
  Caps caps;
  std::string out_dir = "out";

  // Fields q3, f2, f4, ratfun; radii r1 and rtest.
  static SessionConfig defaults();
  static SessionConfig from_json(const Json& j);
  static SessionConfig load(const std::string& path);
  Json to_json() const;

  // Throws PreconditionFailed on an unknown id or a non-positive precision.
  Json field(const std::string& id, std::optional<std::int64_t> precision = std::nullopt) const;
  const RadiusDecl& radius(const std::string& id) const;
  void validate() const;
};

const std::vector<std::string>& command_names();

struct Outcome {
  Json artifact;
  std::string summary;
  int exit_code = kExitPass;
};

// params must be fully resolved (field and radius declarations inlined).
Outcome run(const std::string& command, const Json& params);

// Replays a stored artifact (or a bare certificate) and compares.
Outcome check(const Json& stored);

std::string dump(const Json& artifact);

}  // namespace tatekit::cli
