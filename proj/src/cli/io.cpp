/**
 * Copyright 2026 The homsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hom/cli/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <unistd.h>

#include "hom/errors.hpp"

namespace hom::cli {

namespace {

constexpr std::string_view kCsvHeader = "delay_um,rate_hz,err_hz";

double parse_field(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(fmt::format("curve CSV line {}: '{}' is not a number", line_no, field));
  }
  return value;
}

}  // namespace

std::string curve_to_csv(const std::vector<DipPoint>& points) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& p : points) out += fmt::format("{:.17g},{:.17g},{:.17g}\n", p.delay_um, p.rate_hz, p.err_hz);
  return out;
}

std::vector<DipPoint> curve_from_csv(std::string_view text) {
  std::vector<DipPoint> points;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ValidationError(fmt::format("curve CSV must start with header '{}'", kCsvHeader));
      }
      header_seen = true;
      continue;
    }
    std::array<std::string_view, 3> fields;
    std::size_t n = 0;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      if (n == fields.size()) throw ValidationError(fmt::format("curve CSV line {}: expected 3 fields", line_no));
      fields[n++] = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n != fields.size()) throw ValidationError(fmt::format("curve CSV line {}: expected 3 fields", line_no));
    DipPoint p{parse_field(fields[0], line_no), parse_field(fields[1], line_no), parse_field(fields[2], line_no)};
    if (p.rate_hz < 0.0 || p.err_hz < 0.0) {
      throw ValidationError(fmt::format("curve CSV line {}: rates and errors must be non-negative", line_no));
    }
    points.push_back(p);
  }
  if (!header_seen) throw ValidationError("curve CSV is empty");
  return points;
}

nlohmann::json fit_to_json(const analysis::DipFit& fit) {
  nlohmann::json out = {
      {"S", fit.S},
      {"V", fit.V},
      {"sigma_tau_um", fit.sigma_tau_um},
      {"fwhm_um", fit.fwhm_um},
      {"residual", fit.residual},
      {"iterations", fit.iterations},
      {"converged", fit.converged},
  };
  if (!fit.warning.empty()) out["warning"] = fit.warning;
  return out;
}

std::string content_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                     tm.tm_min, tm.tm_sec);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += fmt::format(".tmp-{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(fmt::format("short write to '{}'", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
  }
}

}  // namespace hom::cli
