#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cqed/spectral_model.hpp"

namespace cqed {

struct FieldMapMeta {
  std::optional<double> temperatureK;  // K
  std::optional<double> powerDbm;      // dBm

  friend bool operator==(const FieldMapMeta&, const FieldMapMeta&) = default;
};

// 2D transmission map: sorted field axis (T), shared strictly increasing
// frequency grid (Hz), row-major S21 matrix (field x frequency, dB), all
// finite.
struct FieldMap {
  std::vector<double> fields;  // T, strictly increasing
  std::vector<double> freqs;   // Hz, strictly increasing
  std::vector<double> s21Db;   // row-major fields.size() x freqs.size()
  FieldMapMeta meta;

  double at(std::size_t fieldIdx, std::size_t freqIdx) const {
    return s21Db[fieldIdx * freqs.size() + freqIdx];
  }

  // One field row as a Spectrum; carries the map metadata and the row field.
  Spectrum row(std::size_t fieldIdx) const;

  friend bool operator==(const FieldMap&, const FieldMap&) = default;
};

void validate(const FieldMap& map);

}  // namespace cqed
