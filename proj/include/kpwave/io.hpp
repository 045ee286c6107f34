#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpwave/diagnostics.hpp"
#include "kpwave/spectral.hpp"

namespace kpwave {

inline constexpr int kSnapshotFormatVersion = 1;

/// Payload: Nx*Ny little-endian float64, x fastest. Metadata: one-line JSON
/// sidecar with at least t, Nx, Ny, Lx, Ly and format_version.
struct Snapshot {
  nlohmann::json metadata;
  RealField field;
};

void write_snapshot(const std::filesystem::path& payload, const std::filesystem::path& sidecar,
                    const Snapshot& snapshot);
Snapshot read_snapshot(const std::filesystem::path& payload, const std::filesystem::path& sidecar);

inline constexpr const char* kDiagnosticsHeader = "t,l2,delta,linf,energy,dev_linf,dev_l2";

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path);

}  // namespace kpwave
