#include "cqed/field_map.hpp"

#include <cmath>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

Spectrum FieldMap::row(std::size_t fieldIdx) const {
  if (fieldIdx >= fields.size())
    fail(ErrorCode::InvalidArgument,
         "field row " + std::to_string(fieldIdx) + " out of range (" +
             std::to_string(fields.size()) + " rows)");
  Spectrum spec;
  spec.freqs = freqs;
  spec.s21Db.assign(s21Db.begin() + static_cast<std::ptrdiff_t>(fieldIdx * freqs.size()),
                    s21Db.begin() + static_cast<std::ptrdiff_t>((fieldIdx + 1) * freqs.size()));
  spec.meta.fieldT = fields[fieldIdx];
  spec.meta.temperatureK = meta.temperatureK;
  spec.meta.powerDbm = meta.powerDbm;
  return spec;
}

void validate(const FieldMap& map) {
  if (map.fields.empty() || map.freqs.size() < 3)
    fail(ErrorCode::InvalidArgument,
         "field map needs at least 1 field and 3 frequencies, got " +
             std::to_string(map.fields.size()) + " x " +
             std::to_string(map.freqs.size()));
  if (map.s21Db.size() != map.fields.size() * map.freqs.size())
    fail(ErrorCode::RaggedGrid,
         "field map has " + std::to_string(map.s21Db.size()) +
             " values for a " + std::to_string(map.fields.size()) + " x " +
             std::to_string(map.freqs.size()) + " grid");
  for (std::size_t i = 0; i < map.fields.size(); ++i) {
    if (!std::isfinite(map.fields[i]))
      fail(ErrorCode::NonFiniteValue,
           "field axis contains a non-finite value at index " +
               std::to_string(i));
    if (i > 0 && !(map.fields[i] > map.fields[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "field axis must be strictly increasing (violated at index " +
               std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i < map.freqs.size(); ++i) {
    if (!std::isfinite(map.freqs[i]))
      fail(ErrorCode::NonFiniteValue,
           "frequency axis contains a non-finite value at index " +
               std::to_string(i));
    if (i > 0 && !(map.freqs[i] > map.freqs[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "frequency axis must be strictly increasing (violated at index " +
               std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i < map.s21Db.size(); ++i)
    if (!std::isfinite(map.s21Db[i]))
      fail(ErrorCode::NonFiniteValue,
           "transmission map contains a non-finite value at flat index " +
               std::to_string(i));
}

}  // namespace cqed
