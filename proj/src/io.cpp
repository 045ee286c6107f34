#include "kpwave/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kpwave {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) {
      r = (r << 8) | ((v >> (8 * i)) & 0xffu);
    }
    return r;
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(const std::filesystem::path& payload, const std::filesystem::path& sidecar,
                    const Snapshot& snapshot) {
  const auto& f = snapshot.field;
  std::ofstream bin(payload, std::ios::binary);
  if (!bin) {
    throw std::runtime_error("cannot open " + payload.string() + " for writing");
  }
  std::vector<std::uint64_t> words(static_cast<std::size_t>(f.size()));
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    words[i] = to_little_endian(std::bit_cast<std::uint64_t>(f.data()[i]));
  }
  bin.write(reinterpret_cast<const char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
  if (!bin) {
    throw std::runtime_error("failed writing " + payload.string());
  }

  nlohmann::json meta = snapshot.metadata;
  meta["Nx"] = f.rows();
  meta["Ny"] = f.cols();
  meta["format_version"] = kSnapshotFormatVersion;
  std::ofstream side(sidecar);
  if (!side) {
    throw std::runtime_error("cannot open " + sidecar.string() + " for writing");
  }
  side << meta.dump() << '\n';
}

Snapshot read_snapshot(const std::filesystem::path& payload, const std::filesystem::path& sidecar) {
  std::ifstream side(sidecar);
  if (!side) {
    throw std::runtime_error("cannot open " + sidecar.string());
  }
  std::string line;
  std::getline(side, line);
  Snapshot s;
  s.metadata = nlohmann::json::parse(line);
  if (s.metadata.value("format_version", 0) != kSnapshotFormatVersion) {
    throw std::runtime_error("unsupported snapshot format_version in " + sidecar.string());
  }
  const auto nx = s.metadata.at("Nx").get<Eigen::Index>();
  const auto ny = s.metadata.at("Ny").get<Eigen::Index>();

  std::ifstream bin(payload, std::ios::binary);
  if (!bin) {
    throw std::runtime_error("cannot open " + payload.string());
  }
  std::vector<std::uint64_t> words(static_cast<std::size_t>(nx * ny));
  bin.read(reinterpret_cast<char*>(words.data()),
           static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
  if (bin.gcount() != static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)) ||
      bin.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("snapshot payload length does not match Nx*Ny in " +
                             payload.string());
  }
  s.field.resize(nx, ny);
  for (Eigen::Index i = 0; i < s.field.size(); ++i) {
    s.field.data()[i] = std::bit_cast<double>(to_little_endian(words[i]));
  }
  return s;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  out << kDiagnosticsHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.t) << ',' << format_number(r.l2) << ',' << format_number(r.delta) << ','
        << format_number(r.linf) << ',' << format_number(r.energy) << ','
        << format_number(r.dev_linf) << ',' << format_number(r.dev_l2) << '\n';
  }
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_diagnostics_csv(out, records);
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::string line;
  std::getline(in, line);
  if (line != kDiagnosticsHeader) {
    throw std::runtime_error("unexpected diagnostics header in " + path.string());
  }
  std::vector<DiagnosticsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    double v[7];
    for (double& x : v) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("short diagnostics row in " + path.string());
      }
      x = std::strtod(cell.c_str(), nullptr);
    }
    records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return records;
}

}  // namespace kpwave
