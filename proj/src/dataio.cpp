#include "cqed/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cqed/random.hpp"
#include "cqed/spin_ensemble.hpp"

namespace cqed {

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> splitOn(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = line.find(sep, pos);
    if (c == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, c - pos));
    pos = c + 1;
  }
  return fields;
}

std::vector<std::string_view> whitespaceTokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r')
      ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::string upperCopy(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return out;
}

double parseNumber(std::string_view token, std::size_t lineNo) {
  token = trimmed(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size())
    fail(ErrorCode::InvalidArgument,
         "cannot parse \"" + std::string(token) + "\" as a number on line " +
             std::to_string(lineNo));
  if (!std::isfinite(value))
    fail(ErrorCode::NonFiniteValue,
         "non-finite value \"" + std::string(token) + "\" on line " +
             std::to_string(lineNo));
  return value;
}

}  // namespace

Spectrum parseTouchstone(std::string_view text) {
  const std::vector<std::string_view> lines = splitLines(text);
  bool haveOptions = false;
  double freqScale = 0;
  enum class Format { Db, Ma, Ri } format = Format::Db;
  double impedance = 50.0;
  Spectrum spec;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t lineNo = li + 1;
    std::string_view line = lines[li];
    const std::size_t bang = line.find('!');
    if (bang != std::string_view::npos) line = line.substr(0, bang);
    line = trimmed(line);
    if (line.empty()) continue;

    if (line.front() == '[')
      fail(ErrorCode::UnsupportedVersion,
           "Touchstone v2 keyword block on line " + std::to_string(lineNo) +
               "; only v1 files are supported");

    if (line.front() == '#') {
      if (haveOptions)
        fail(ErrorCode::MalformedOptionLine,
             "second option line on line " + std::to_string(lineNo));
      if (!spec.freqs.empty())
        fail(ErrorCode::MalformedOptionLine,
             "option line on line " + std::to_string(lineNo) +
                 " appears after data");
      line.remove_prefix(1);
      const std::vector<std::string_view> tokens = whitespaceTokens(line);
      if (tokens.size() != 5)
        fail(ErrorCode::MalformedOptionLine,
             "option line needs exactly \"<unit> S <format> R <impedance>\", "
             "got " +
                 std::to_string(tokens.size()) + " tokens on line " +
                 std::to_string(lineNo));
      const std::string unit = upperCopy(tokens[0]);
      if (unit == "HZ")
        freqScale = 1.0;
      else if (unit == "KHZ")
        freqScale = 1e3;
      else if (unit == "MHZ")
        freqScale = 1e6;
      else if (unit == "GHZ")
        freqScale = 1e9;
      else
        fail(ErrorCode::MalformedOptionLine,
             "unknown frequency unit \"" + std::string(tokens[0]) +
                 "\" on line " + std::to_string(lineNo));
      if (upperCopy(tokens[1]) != "S")
        fail(ErrorCode::MalformedOptionLine,
             "expected parameter type S, got \"" + std::string(tokens[1]) +
                 "\" on line " + std::to_string(lineNo));
      const std::string fmt = upperCopy(tokens[2]);
      if (fmt == "DB")
        format = Format::Db;
      else if (fmt == "MA")
        format = Format::Ma;
      else if (fmt == "RI")
        format = Format::Ri;
      else
        fail(ErrorCode::MalformedOptionLine,
             "unknown data format \"" + std::string(tokens[2]) +
                 "\" on line " + std::to_string(lineNo));
      if (upperCopy(tokens[3]) != "R")
        fail(ErrorCode::MalformedOptionLine,
             "expected reference token R, got \"" + std::string(tokens[3]) +
                 "\" on line " + std::to_string(lineNo));
      impedance = parseNumber(tokens[4], lineNo);
      if (impedance <= 0)
        fail(ErrorCode::MalformedOptionLine,
             "reference impedance must be positive, got " +
                 std::string(tokens[4]) + " on line " +
                 std::to_string(lineNo));
      haveOptions = true;
      continue;
    }

    if (!haveOptions)
      fail(ErrorCode::MalformedOptionLine,
           "data on line " + std::to_string(lineNo) +
               " before any option line");
    const std::vector<std::string_view> tokens = whitespaceTokens(line);
    if (tokens.size() != 9)
      fail(ErrorCode::WrongPortCount,
           "two-port rows need 9 columns (f and four S pairs), got " +
               std::to_string(tokens.size()) + " on line " +
               std::to_string(lineNo));
    double row[9];
    for (std::size_t k = 0; k < 9; ++k) row[k] = parseNumber(tokens[k], lineNo);
    const double f = row[0] * freqScale;
    if (!spec.freqs.empty() && !(f > spec.freqs.back()))
      fail(ErrorCode::NonMonotonicFrequency,
           "frequency does not increase on line " + std::to_string(lineNo));
    // v1 two-port column order: S11, S21, S12, S22.
    const double a = row[3], b = row[4];
    double s21Db = 0;
    switch (format) {
      case Format::Db:
        s21Db = a;
        break;
      case Format::Ma:
        s21Db = 20.0 * std::log10(a);
        break;
      case Format::Ri:
        s21Db = 20.0 * std::log10(std::hypot(a, b));
        break;
    }
    if (!std::isfinite(s21Db))
      fail(ErrorCode::NonFiniteValue,
           "S21 is not representable in dB on line " + std::to_string(lineNo));
    spec.freqs.push_back(f);
    spec.s21Db.push_back(s21Db);
  }

  if (!haveOptions)
    fail(ErrorCode::MalformedOptionLine, "no option line found");
  spec.meta.impedanceOhm = impedance;
  validate(spec);
  return spec;
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lineNos;
};

CsvTable parseCsv(std::string_view text) {
  // Tolerate a UTF-8 byte-order mark in front of the header.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF")
    text.remove_prefix(3);
  const std::vector<std::string_view> lines = splitLines(text);
  CsvTable table;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = trimmed(lines[li]);
    if (line.empty()) continue;
    const std::vector<std::string_view> fields = splitOn(lines[li], ',');
    if (table.header.empty()) {
      for (std::string_view f : fields)
        table.header.emplace_back(trimmed(f));
      continue;
    }
    if (fields.size() != table.header.size())
      fail(ErrorCode::RaggedGrid,
           "row on line " + std::to_string(li + 1) + " has " +
               std::to_string(fields.size()) + " fields, header has " +
               std::to_string(table.header.size()));
    std::vector<double> row(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k)
      row[k] = parseNumber(fields[k], li + 1);
    table.rows.push_back(std::move(row));
    table.lineNos.push_back(li + 1);
  }
  if (table.header.empty())
    fail(ErrorCode::MissingColumn, "no header line found");
  return table;
}

std::size_t columnIndex(const CsvTable& table, std::string_view name) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == name) return i;
  fail(ErrorCode::MissingColumn,
       "missing required column \"" + std::string(name) + "\"");
}

}  // namespace

Spectrum parseSweepCsv(std::string_view text) {
  const CsvTable table = parseCsv(text);
  const std::size_t fCol = columnIndex(table, "freq_hz");
  const std::size_t sCol = columnIndex(table, "s21_db");
  Spectrum spec;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double f = table.rows[r][fCol];
    if (!spec.freqs.empty() && !(f > spec.freqs.back()))
      fail(ErrorCode::NonMonotonicFrequency,
           "frequency does not increase on line " +
               std::to_string(table.lineNos[r]));
    spec.freqs.push_back(f);
    spec.s21Db.push_back(table.rows[r][sCol]);
  }
  validate(spec);
  return spec;
}

FieldMap parseMapCsv(std::string_view text) {
  const CsvTable table = parseCsv(text);
  const std::size_t bCol = columnIndex(table, "b_tesla");
  const std::size_t fCol = columnIndex(table, "freq_hz");
  const std::size_t sCol = columnIndex(table, "s21_db");

  std::map<double, std::vector<std::pair<double, double>>> byField;
  for (const std::vector<double>& row : table.rows)
    byField[row[bCol]].push_back({row[fCol], row[sCol]});

  FieldMap map;
  for (auto& [b, samples] : byField) {
    std::sort(samples.begin(), samples.end());
    std::vector<double> freqs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      freqs[i] = samples[i].first;
      if (i > 0 && !(freqs[i] > freqs[i - 1]))
        fail(ErrorCode::InvalidArgument,
             "duplicate sample at b_tesla=" + formatDouble17(b) +
                 ", freq_hz=" + formatDouble17(freqs[i]));
    }
    if (map.fields.empty()) {
      map.freqs = freqs;
    } else if (freqs != map.freqs) {
      fail(ErrorCode::RaggedGrid,
           "field b_tesla=" + formatDouble17(b) +
               " does not share the common frequency grid");
    }
    map.fields.push_back(b);
    for (const auto& [f, s] : samples) map.s21Db.push_back(s);
  }
  validate(map);
  return map;
}

std::vector<TempPoint> parseTemperaturePointsCsv(std::string_view text) {
  const CsvTable table = parseCsv(text);
  const std::size_t tCol = columnIndex(table, "temp_k");
  const std::size_t gCol = columnIndex(table, "gc_hz");
  std::vector<TempPoint> points;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double t = table.rows[r][tCol];
    if (t <= 0)
      fail(ErrorCode::InvalidArgument,
           "temperature must be positive, got " + formatDouble17(t) +
               " on line " + std::to_string(table.lineNos[r]));
    points.push_back({t, kTwoPi * table.rows[r][gCol]});
  }
  return points;
}

std::string writeSweepCsv(const Spectrum& spec) {
  validate(spec);
  std::string out = "freq_hz,s21_db\n";
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    out += formatDouble17(spec.freqs[i]);
    out += ',';
    out += formatDouble17(spec.s21Db[i]);
    out += '\n';
  }
  return out;
}

std::string writeMapCsv(const FieldMap& map) {
  validate(map);
  std::string out = "b_tesla,freq_hz,s21_db\n";
  for (std::size_t i = 0; i < map.fields.size(); ++i)
    for (std::size_t j = 0; j < map.freqs.size(); ++j) {
      out += formatDouble17(map.fields[i]);
      out += ',';
      out += formatDouble17(map.freqs[j]);
      out += ',';
      out += formatDouble17(map.at(i, j));
      out += '\n';
    }
  return out;
}

std::string formatDouble17(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(
      buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc())
    fail(ErrorCode::NonFiniteValue, "cannot format value");
  return std::string(buf, end);
}

namespace {

void appendEscaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
}

}  // namespace

ResultJson::ResultJson() {
  body_ = "\"schema\":\"";
  body_ += kResultSchema;
  body_ += '"';
}

ResultJson& ResultJson::add(std::string_view key, double value) {
  if (!std::isfinite(value))
    fail(ErrorCode::NonFiniteValue,
         "cannot serialize non-finite value for key \"" + std::string(key) +
             "\"");
  body_ += ",\"";
  appendEscaped(body_, key);
  body_ += "\":";
  body_ += formatDouble17(value);
  return *this;
}

ResultJson& ResultJson::add(std::string_view key, std::int64_t value) {
  body_ += ",\"";
  appendEscaped(body_, key);
  body_ += "\":";
  body_ += std::to_string(value);
  return *this;
}

ResultJson& ResultJson::add(std::string_view key, bool value) {
  body_ += ",\"";
  appendEscaped(body_, key);
  body_ += "\":";
  body_ += value ? "true" : "false";
  return *this;
}

ResultJson& ResultJson::add(std::string_view key, std::string_view value) {
  body_ += ",\"";
  appendEscaped(body_, key);
  body_ += "\":\"";
  appendEscaped(body_, value);
  body_ += '"';
  return *this;
}

std::string ResultJson::str() const { return "{" + body_ + "}"; }

std::string writeResultJson(const FitResult& result, std::string_view type,
                            std::string_view residualUnit) {
  ResultJson json;
  json.add("type", type);
  for (std::size_t i = 0; i < result.paramNames.size(); ++i)
    json.add(result.paramNames[i], result.params[static_cast<Eigen::Index>(i)]);
  for (std::size_t i = 0; i < result.paramNames.size(); ++i)
    json.add("stderr_" + result.paramNames[i],
             result.stdErrs[static_cast<Eigen::Index>(i)]);
  json.add(std::string("residual_rms_") + std::string(residualUnit),
           result.residualNorm);
  json.add("iterations", static_cast<std::int64_t>(result.iterations));
  json.add("converged", result.converged);
  return json.str();
}

std::string writeResultJson(const PhotonEstimate& estimate,
                            const std::optional<PolarizationAdvisory>&
                                advisory) {
  ResultJson json;
  json.add("type", "estimate_photons");
  json.add("p_circ_w", estimate.pCirc);
  json.add("n_photons", estimate.nPh);
  if (advisory) {
    json.add("photon_spin_ratio", advisory->ratio);
    json.add("linear_regime", advisory->linearRegime);
  }
  return json.str();
}

std::string writeResultJson(const VacuumFieldEstimate& estimate) {
  ResultJson json;
  json.add("type", "estimate_vacuum");
  json.add("i_vac_a", estimate.iVac);
  json.add("b_vac_t", estimate.bVac);
  json.add("g_single_hz", estimate.gSingle / kTwoPi);
  return json.str();
}

FieldMap generateMap(const CoupledSystem& sys,
                     const std::vector<double>& fieldGrid,
                     const std::vector<double>& freqGrid, double tempK,
                     double noiseSigmaDb, std::uint64_t seed,
                     const PhysicalConstants& consts) {
  validate(sys);
  if (fieldGrid.empty())
    fail(ErrorCode::InvalidArgument, "field grid must not be empty");
  if (!std::isfinite(tempK) || tempK <= 0)
    fail(ErrorCode::InvalidArgument, "temperature must be positive (K)");
  if (!std::isfinite(noiseSigmaDb) || noiseSigmaDb < 0)
    fail(ErrorCode::InvalidArgument, "noise sigma must be non-negative (dB)");

  CoupledSystem local = sys;
  local.gCollective =
      gcOfTemperature(sys.gCollective, sys.res.f0, tempK, consts);
  local.gammaSpin = effectiveLinewidthAt(tempK);

  FieldMap map;
  map.fields = fieldGrid;
  map.freqs = freqGrid;
  map.s21Db.reserve(fieldGrid.size() * freqGrid.size());
  GaussianStream noise(seed);
  for (double b : fieldGrid) {
    local.fp.b = b;
    for (double f : freqGrid) {
      double value = coupledS21(local, f, consts);
      if (noiseSigmaDb > 0.0) value += noiseSigmaDb * noise.next();
      map.s21Db.push_back(value);
    }
  }
  map.meta.temperatureK = tempK;
  validate(map);
  return map;
}

std::vector<double> defaultFieldGrid(double bRes) {
  if (!std::isfinite(bRes))
    fail(ErrorCode::InvalidArgument, "resonance field must be finite (T)");
  std::vector<double> grid(151);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = bRes - 0.015 + 0.0002 * static_cast<double>(i);
  return grid;
}

std::vector<double> defaultFreqGrid(double f0) {
  if (!std::isfinite(f0) || f0 <= 0)
    fail(ErrorCode::InvalidArgument, "center frequency must be positive (Hz)");
  std::vector<double> grid(6001);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = f0 - 150e6 + 50e3 * static_cast<double>(i);
  return grid;
}

}  // namespace cqed
