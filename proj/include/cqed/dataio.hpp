#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/estimators.hpp"
#include "cqed/field_map.hpp"
#include "cqed/fitting.hpp"
#include "cqed/spectral_model.hpp"

namespace cqed {

inline constexpr std::string_view kResultSchema = "cqed-spectrokit/1";

// Touchstone v1 two-port: option line `# <HZ|KHZ|MHZ|GHZ> S <DB|MA|RI> R
// <impedance>` (case-insensitive tokens, exactly this order), `!` comments,
// data rows of 9 columns (f, then S11 S21 S12 S22 as pairs). Returns the S21
// trace converted to dB on a Hz axis, with the reference impedance recorded
// in the metadata. v2 keyword blocks are rejected with UnsupportedVersion.
Spectrum parseTouchstone(std::string_view text);

// Headered CSV, comma separator, '.' decimal, \n or \r\n line ends.
// Sweep columns: freq_hz,s21_db. Map columns: b_tesla,freq_hz,s21_db in any
// row order; all rows of a field must share the frequency grid exactly.
Spectrum parseSweepCsv(std::string_view text);
FieldMap parseMapCsv(std::string_view text);

// Temperature points CSV for the scaling fit: columns temp_k,gc_hz
// (gc_hz is the measured coupling /2pi in Hz; converted to rad/s).
std::vector<TempPoint> parseTemperaturePointsCsv(std::string_view text);

std::string writeSweepCsv(const Spectrum& spec);
std::string writeMapCsv(const FieldMap& map);

// Deterministic JSON emission: stable insertion-ordered keys, numbers with 17
// significant digits (std::to_chars, general format), schema version field
// "schema": "cqed-spectrokit/1". Two serializations of the same value are
// byte-identical.
class ResultJson {
 public:
  ResultJson();
  ResultJson& add(std::string_view key, double value);
  ResultJson& add(std::string_view key, std::int64_t value);
  ResultJson& add(std::string_view key, int value) {
    return add(key, static_cast<std::int64_t>(value));
  }
  ResultJson& add(std::string_view key, bool value);
  ResultJson& add(std::string_view key, std::string_view value);
  ResultJson& add(std::string_view key, const char* value) {
    return add(key, std::string_view(value));
  }
  std::string str() const;

 private:
  std::string body_;
};

// 17-significant-digit representation of a double (round-trips exactly).
std::string formatDouble17(double value);

// Fit results: schema, type, one key per named parameter, stderr_<name>
// keys, residual_rms_<residualUnit>, iterations, converged.
std::string writeResultJson(const FitResult& result, std::string_view type,
                            std::string_view residualUnit);
std::string writeResultJson(const PhotonEstimate& estimate,
                            const std::optional<PolarizationAdvisory>&
                                advisory = {});
std::string writeResultJson(const VacuumFieldEstimate& estimate);

// Synthetic map builder: per field value the coupled system is rebuilt with
// the Zeeman detuning at that field, the temperature-appropriate coupling
// gcOfTemperature(sys.gCollective treated as the zero-temperature prefactor)
// and the effectiveLinewidthAt(tempK) spin width; noise is additive Gaussian
// in dB, deterministic for a given seed (byte-identical matrices).
FieldMap generateMap(const CoupledSystem& sys,
                     const std::vector<double>& fieldGrid,
                     const std::vector<double>& freqGrid, double tempK,
                     double noiseSigmaDb, std::uint64_t seed,
                     const PhysicalConstants& consts = kConstants);

// Default synthetic grids: field step 0.2 mT over bRes +- 15 mT (151
// points); frequency step 50 kHz over f0 +- 150 MHz (6001 points).
std::vector<double> defaultFieldGrid(double bRes);
std::vector<double> defaultFreqGrid(double f0);

}  // namespace cqed
