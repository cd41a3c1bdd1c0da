#pragma once

#include <string>

#include "fpp/environment.hpp"

namespace fpp {

/// Binary container: magic "FPPE", version u16, d u16, per-axis lo/hi i64,
/// Q u64, then one little-endian u32 per canonical edge in canonical order.
/// A JSON sidecar (path + ".json") carries the provenance.
void save_environment(const Environment& env, const std::string& path);

Environment load_environment(const std::string& path);

}  // namespace fpp
