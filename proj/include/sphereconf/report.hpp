#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "sphereconf/diagnostics.hpp"

namespace sphereconf {

/// Versioned JSON view of a RunReport (schema_version 1). Wall time is
/// nondeterministic and only included when asked for.
nlohmann::json report_to_json(const RunReport& report, const std::string& input_path,
                              const std::string& input_format,
                              const std::string& area_normalization,
                              bool include_timing);

/// Per-iteration history: columns k, residual_h1, residual_h2, c_k, E_D.
/// Fields a run does not produce stay empty.
void write_history_csv(std::ostream& out, const RunReport& report);

/// One corpus row per mesh (batch mode).
struct BatchRow {
    std::string mesh_id;
    bool failed = false;
    std::string error;
    RunReport report;
};

void write_batch_csv_header(std::ostream& out);
void write_batch_csv_row(std::ostream& out, const BatchRow& row);

}  // namespace sphereconf
