#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "respond/model.hpp"

namespace respond {

/// Parses a model document:
///
///   {
///     "omega_ref": 1.0,                 // optional, default 1
///     "modes": 2,
///     "states": [{"epsilon": 0.0, "omega": [..], "delta": [..],
///                 "duschinsky": [[..], ..]}, ...],   // duschinsky optional (I)
///     "dipoles": [[..], ..],
///     "gamma_deph": 0.0, "gamma_relax": 0.0       // optional, default 0
///   }
///
/// Frequencies are already divided by omega_ref. Every violation throws
/// SchemaError with a message of the form "line N: ...".
VibronicModel parse_model(std::string_view text);
VibronicModel load_model(const std::filesystem::path& path);

/// Inverse of parse_model; doubles are written with round-trip precision.
std::string serialize_model(const VibronicModel& model);

}  // namespace respond
