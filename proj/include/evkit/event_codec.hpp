// Copyright 2026 The evkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVKIT_EVENT_CODEC_HPP
#define EVKIT_EVENT_CODEC_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evkit/event_model.hpp"

namespace evkit
{

// EVS1 container
//
//   offset  size  field
//   0       5     magic "EVS1\n"
//   5       1     version (1)
//   6       2     width, u16 little-endian
//   8       2     height, u16 little-endian
//   10      4     reserved, zero
//   14      16*N  records
//
// record: t u64 LE | x u16 LE | y u16 LE | p u8 (0=OFF, 1=ON) | 3 zero pad bytes
inline constexpr std::size_t kEvs1HeaderSize = 14;
inline constexpr std::size_t kEvs1RecordSize = 16;
inline constexpr std::uint8_t kEvs1Version = 1;

struct Evs1Header
{
  std::uint8_t version = kEvs1Version;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
};

struct CsvDecodeOptions
{
  /// Geometry to attach; inferred as (max x + 1, max y + 1) when absent.
  std::optional<SensorGeometry> geometry;
  /// Stable-sort out-of-order input instead of rejecting it.
  bool sort = false;
};

/// Parses `t_us,x,y,p` lines (optional `t,x,y,p` header). Throws ParseError with
/// the 1-based line number, OrderError for unsorted input, FormatError for
/// coordinates outside a supplied geometry.
EventStream decode_csv(std::string_view text, const CsvDecodeOptions & opts = {});

/// Canonical form: no header, one `t,x,y,p` line per event, newline-terminated.
std::string encode_csv(const EventStream & stream);

std::vector<std::uint8_t> encode_evs1(const EventStream & stream);

/// Throws FormatError on bad magic/version, truncation, or coordinates outside
/// the header geometry; OrderError on decreasing timestamps. Nonzero padding
/// or reserved bytes are reported through `warnings` and otherwise ignored.
EventStream decode_evs1(std::span<const std::uint8_t> bytes, std::vector<std::string> & warnings);
EventStream decode_evs1(std::span<const std::uint8_t> bytes);

Evs1Header read_evs1_header(std::span<const std::uint8_t> bytes);

// File helpers dispatching on extension (.csv / .evs1).
EventStream read_event_file(
  const std::filesystem::path & path, const CsvDecodeOptions & csv_opts = {},
  std::vector<std::string> * warnings = nullptr);
void write_event_file(const std::filesystem::path & path, const EventStream & stream);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path & path);
std::string read_text_file(const std::filesystem::path & path);
void write_binary_file(const std::filesystem::path & path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path & path, std::string_view text);

}  // namespace evkit

#endif  // EVKIT_EVENT_CODEC_HPP
