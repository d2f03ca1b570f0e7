#pragma once

#include <string>

#include <json.hpp>

#include "forrlab/bent.hpp"
#include "forrlab/forrelation.hpp"
#include "forrlab/games.hpp"
#include "forrlab/spreads.hpp"

// Versioned JSON (and raw-array) serialization for the shared file formats.
namespace forrlab::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Spread: {"schema": "spread/1", "n", "m", "subspaces": [["0x3", ...], ...]}
json spread_to_json(const spreads::Spread& s);
spreads::Spread spread_from_json(const json& j);

// Instance export; the hidden fields (label, spread, D, offset) are only
// included on request.
json instance_to_json(const forrel::ForrelationInstance& inst, bool reveal_hidden);
forrel::ForrelationInstance instance_from_json(const json& j);

// SignTable / FourierTable: JSON header plus a raw little-endian sidecar.
// header: {"schema": "table/1", "n", "kind": "sign"|"fourier",
//          "encoding": "int8-le"|"int32-le", "count", "data_file"}
void write_sign_table(const bent::SignTable& t, const std::string& path_prefix);
bent::SignTable read_sign_table(const std::string& path_prefix);
void write_fourier_table(const bent::FourierTable& t, const std::string& path_prefix);
bent::FourierTable read_fourier_table(const std::string& path_prefix);

json transcript_to_json(const games::Transcript& t);
games::Transcript transcript_from_json(const json& j);

json outcome_to_json(const games::GameOutcome& o);

} // namespace forrlab::io
